// Copyright 2026 The vsic Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Static S = 3/2 ground-state spin model.
//
// Basis convention used by every matrix in the library:
//   index 0 -> |+3/2>, 1 -> |+1/2>, 2 -> |-1/2>, 3 -> |-3/2>,
// i.e. index i carries S_z eigenvalue m = 3/2 - i.
// Frequencies and energies are linear MHz, times are microseconds, fields mT.

#pragma once

#include <array>

#include "vsic/linalg.hpp"

namespace vsic {

inline constexpr std::array<double, 4> kSpinProjection = {1.5, 0.5, -0.5, -1.5};

/// Spin-3/2 ground-state constants.
struct SpinQuartetParams {
  double gamma = 28.0;  ///< MHz/mT
  double d = 2.0;       ///< MHz; the zero-field splitting is 2D
  double b0 = 6.0;      ///< mT, parallel to the c axis

  void validate() const;
};

struct SpinMatrices {
  Mat4c sx, sy, sz;
};

/// Resonances between neighbouring S_z levels.
enum class Transition {
  f1,  ///< |-3/2> <-> |-1/2>
  f2,  ///< |-1/2> <-> |+1/2>
  f3,  ///< |+1/2> <-> |+3/2>
};

/// Basis indices (lower m, upper m) coupled by a transition.
std::array<int, 2> transition_levels(Transition t);

struct EnergyLevels {
  std::array<double, 4> eps{};  ///< MHz, in basis order
  double f1 = 0, f2 = 0, f3 = 0;

  double frequency(Transition t) const;
};

SpinMatrices spin_matrices();

/// H = gamma B0 Sz + D (Sz^2 - S(S+1)/3), traceless.
Mat4c static_hamiltonian(const SpinQuartetParams& p);

EnergyLevels transition_frequencies(const SpinQuartetParams& p);

}  // namespace vsic
