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

// Coherence decay of a sign-switching pulse sequence under classical
// dephasing noise with spectral density S(omega).
//
// Units: omega in rad/us, S in rad^2/us, times in us.

#pragma once

#include <span>
#include <vector>

namespace vsic {

struct NoisePsd {
  enum class Kind { white, lorentzian, power_law, tabulated };

  Kind kind = Kind::white;
  double level = 0.0;     ///< white: S; lorentzian: S(0); power_law: prefactor a in a / omega^p
  double corner = 1.0;    ///< lorentzian corner frequency (rad/us)
  double exponent = 2.0;  ///< power_law exponent p
  std::vector<double> omega, value;  ///< tabulated samples, linear interpolation

  static NoisePsd white(double level);
  static NoisePsd lorentzian(double s0, double corner);
  static NoisePsd power_law(double prefactor, double exponent);
  /// Constant below the first sample, zero above the last.
  static NoisePsd tabulated(std::vector<double> omega, std::vector<double> value);

  void validate() const;
  double operator()(double w) const;
  /// Exponent a of S ~ omega^-a as omega -> 0.
  double low_frequency_exponent() const;
  bool is_zero() const;
};

/// chi = (T/pi) int_0^inf S(z/T) |F(z)|^2 / z^2 dz with
/// F(z) = 1 + (-1)^{n+1} e^{iz} + 2 sum_j (-1)^j e^{i z x_j}.
///
/// Quadrature: 8-point Gauss-Legendre panels, geometric on [1e-8, 1] (ratio 2)
/// and of width 2 on [1, Z], Z = max(200, 20 pi (n+1)), with PSD table
/// breakpoints inserted as panel edges. The tail beyond Z uses the mean
/// |F|^2 = 4n + 2 and the substitution u = Z/z.
///
/// Throws DomainError("infrared divergence") when S grows too fast at
/// omega -> 0 for the given switching pattern.
double filter_function_chi(std::span<const double> pulse_positions, double total_time,
                           const NoisePsd& psd);

/// W = exp(-chi).
double filter_function_coherence(std::span<const double> pulse_positions, double total_time,
                                 const NoisePsd& psd);

/// |F(z)|^2 on a grid of z values.
std::vector<double> filter_weight(std::span<const double> pulse_positions, std::span<const double> z);

}  // namespace vsic
