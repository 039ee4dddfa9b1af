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

#include "vsic/phonon.hpp"

#include <algorithm>
#include <cmath>

#include "vsic/errors.hpp"

namespace vsic {

void PhononParams::validate() const {
  if (!(v_sound > 0.0) || !(r_bohr > 0.0)) throw DomainError("v_sound and r_bohr must be > 0");
  if (!(mode_mass > 0.0) || !(hbar > 0.0) || !(k_b > 0.0)) throw DomainError("mass and constants must be > 0");
}

std::vector<double> phonon_coupling_curve(const PhononParams& ph, std::span<const double> t_grid) {
  ph.validate();
  std::vector<double> g2(t_grid.size(), 0.0);
  for (std::size_t i = 0; i < t_grid.size(); ++i) {
    const double t = t_grid[i];
    if (!(t >= 0.0)) throw DomainError("temperatures must be >= 0");
    const double w = ph.k_b * t / ph.hbar;
    const double q = w / ph.v_sound;
    const double rho = 3.0 * w * w / (2.0 * std::pow(ph.v_sound, 3) * M_PI * M_PI);
    const double f = std::pow(1.0 + ph.r_bohr * ph.r_bohr * q * q / 4.0, -2.0);
    const double xi2 = ph.hbar * w / (2.0 * ph.mode_mass * ph.v_sound * ph.v_sound);
    g2[i] = rho * rho * f * f * xi2;
  }
  const double peak = g2.empty() ? 0.0 : *std::max_element(g2.begin(), g2.end());
  if (peak > 0.0) {
    for (double& v : g2) v /= peak;
  }
  return g2;
}

double phonon_peak_temperature(const PhononParams& ph) {
  ph.validate();
  const double q = 2.0 * std::sqrt(5.0 / 3.0) / ph.r_bohr;
  return ph.hbar * q * ph.v_sound / ph.k_b;
}

}  // namespace vsic
