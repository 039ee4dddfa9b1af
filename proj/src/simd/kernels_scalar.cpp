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

#include <cmath>

#include "vsic/simd/kernels.hpp"

namespace vsic::simd {
namespace {

void sincos_scalar(std::span<const double> x, std::span<double> s, std::span<double> c) {
  for (std::size_t i = 0; i < x.size(); ++i) {
    s[i] = std::sin(x[i]);
    c[i] = std::cos(x[i]);
  }
}

void sinusoid_sum_scalar(std::span<const double> t, std::span<const double> w,
                         std::span<const double> a, std::span<const double> b,
                         std::span<double> out) {
  for (std::size_t i = 0; i < t.size(); ++i) {
    double acc = 0.0;
    for (std::size_t p = 0; p < w.size(); ++p) {
      const double ph = w[p] * t[i];
      acc += a[p] * std::cos(ph) + b[p] * std::sin(ph);
    }
    out[i] = acc;
  }
}

void phasor_power_scalar(std::span<const double> z, std::span<const double> x,
                         std::span<const double> c, std::span<double> out) {
  for (std::size_t i = 0; i < z.size(); ++i) {
    double re = 0.0, im = 0.0;
    for (std::size_t j = 0; j < x.size(); ++j) {
      const double ph = z[i] * x[j];
      re += c[j] * std::cos(ph);
      im += c[j] * std::sin(ph);
    }
    out[i] = re * re + im * im;
  }
}

void lorentzian_sum_scalar(std::span<const double> f, std::span<const double> center,
                           std::span<const double> amp, double hwhm, std::span<double> out) {
  const double h2 = hwhm * hwhm;
  for (std::size_t i = 0; i < f.size(); ++i) {
    double acc = 0.0;
    for (std::size_t p = 0; p < center.size(); ++p) {
      const double d = f[i] - center[p];
      acc += amp[p] * h2 / (d * d + h2);
    }
    out[i] = acc;
  }
}

}  // namespace

const KernelTable& scalar_kernels() {
  static const KernelTable table{Isa::scalar, sincos_scalar, sinusoid_sum_scalar,
                                 phasor_power_scalar, lorentzian_sum_scalar};
  return table;
}

}  // namespace vsic::simd
