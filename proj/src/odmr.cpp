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

#include "vsic/odmr.hpp"

#include <cmath>

#include "vsic/errors.hpp"
#include "vsic/simd/kernels.hpp"

namespace vsic {

std::vector<double> odmr_spectrum(const EnergyLevels& levels, const std::array<double, 3>& amplitudes,
                                  double linewidth, std::span<const double> f_grid) {
  if (!(linewidth > 0.0) || !std::isfinite(linewidth)) throw DomainError("linewidth must be > 0");
  const std::array<double, 3> centers = {levels.f1, levels.f2, levels.f3};
  std::vector<double> out(f_grid.size());
  simd::active().lorentzian_sum(f_grid, centers, amplitudes, 0.5 * linewidth, out);
  return out;
}

}  // namespace vsic
