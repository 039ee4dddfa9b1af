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

// Electron-phonon coupling strength of a localized defect versus temperature.

#pragma once

#include <span>
#include <vector>

namespace vsic {

struct PhononParams {
  double v_sound = 7.1e3;   ///< m/s
  double r_bohr = 2.7e-9;   ///< m
  double mode_mass = 1.0;   ///< arbitrary; cancels under normalization
  double hbar = 1.054571817e-34;  ///< J s
  double k_b = 1.380649e-23;      ///< J/K

  void validate() const;
};

/// g^2 = (rho_D f xi)^2 with rho_D = 3 w^2 / (2 v^3 pi^2), f = (1 + r^2 q^2/4)^-2,
/// xi^2 = hbar w / (2 M v^2), q = w / v and hbar w = k_B T, divided by its
/// maximum over the grid. An all-zero curve is returned unnormalized.
std::vector<double> phonon_coupling_curve(const PhononParams& ph, std::span<const double> t_grid);

/// Temperature of the analytic maximum, where r^2 q^2 / 4 = 5/3.
double phonon_peak_temperature(const PhononParams& ph);

}  // namespace vsic
