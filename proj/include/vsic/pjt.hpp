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

// Pseudo-Jahn-Teller energetics of an A + E electronic manifold coupled
// linearly to an E vibrational mode.

#pragma once

namespace vsic {

struct PJTParams {
  double g_coupling = 1.0;  ///< G
  double k_elastic = 1.0;   ///< K
  double delta = 0.0;       ///< A-E splitting, energy units of G^2/K

  void validate() const;
};

struct PJTEnergy {
  double e_jt = 0.0;
  double q_min = 0.0;
  double epsilon0 = 0.0;  ///< G^2 / 2K
  double q0 = 0.0;        ///< G / K
  bool stable = false;    ///< true when the distorted minimum exists
};

/// Closed form. Stable (|Delta / 4 eps0| < 1): q_min = sqrt(q0^2 - (Delta/2G)^2),
/// e_jt = -Delta/6 - eps0 - Delta^2/(16 eps0). Otherwise q_min = 0 and e_jt is
/// the lowest level at Q = 0, -Delta/6 - |Delta|/2.
PJTEnergy pjt_energy(const PJTParams& p);

struct PJTNumeric {
  double e_jt = 0.0;
  double q = 0.0;
};

/// Lowest eigenvalue of G [[0, th, -eta], [th, 0, 0], [-eta, 0, 0]] +
/// (Delta/3) diag(-2, 1, 1) plus K Q^2 / 2, minimized over the radius Q by
/// golden-section search on [0, 2G/K + 1].
PJTNumeric pjt_potential_minimize(const PJTParams& p);

/// Lowest adiabatic energy at radius Q (theta = Q, eta = 0).
double pjt_adiabatic_energy(const PJTParams& p, double q);

}  // namespace vsic
