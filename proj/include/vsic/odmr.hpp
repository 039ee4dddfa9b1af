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

// Synthetic ODMR spectra, [I(f) - I_off] / I_off.

#pragma once

#include <array>
#include <span>
#include <vector>

#include "vsic/spin_hamiltonian.hpp"

namespace vsic {

/// Sum of Lorentzians centred at f1, f2, f3 with full width \p linewidth (MHz)
/// and peak values \p amplitudes (signed relative signal).
std::vector<double> odmr_spectrum(const EnergyLevels& levels, const std::array<double, 3>& amplitudes,
                                  double linewidth, std::span<const double> f_grid);

}  // namespace vsic
