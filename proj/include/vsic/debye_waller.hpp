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

// Zero-phonon fraction of a photoluminescence spectrum.

#pragma once

#include <span>
#include <utility>
#include <vector>

namespace vsic {

struct Spectrum {
  std::vector<double> wavelength;  ///< nm, strictly increasing
  std::vector<double> intensity;   ///< >= 0

  void validate() const;
};

using WavelengthWindow = std::pair<double, double>;

/// Trapezoidal integral of the intensity over [a, b], with linear interpolation
/// at window edges that fall between samples.
double integrate_window(const Spectrum& spec, WavelengthWindow w);

/// I_ZPL / (I_ZPL + I_PSB) with I_ZPL summed over \p zpl_windows.
double debye_waller(const Spectrum& spec, std::span<const WavelengthWindow> zpl_windows,
                    WavelengthWindow psb_window);

/// Two Gaussian zero-phonon lines at 861 nm (area 0.40) and 858 nm (area 0.08)
/// on top of a raised-cosine sideband over [866, 956] nm (area 0.52), sampled
/// every \p step nm on [850, 970].
Spectrum synthetic_two_zpl_spectrum(double step = 0.01);

}  // namespace vsic
