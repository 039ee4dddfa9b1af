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

// Vectorizable inner loops shared by the Rabi, filter-function and ODMR code.
//
// Every kernel has a scalar reference implementation built on std::sin/std::cos
// and, on x86-64, an AVX2+FMA variant. The active table is chosen once at
// runtime from cpuid; set VSIC_SIMD=scalar or VSIC_SIMD=avx2 to force a path.

#pragma once

#include <cstddef>
#include <span>
#include <string_view>

namespace vsic::simd {

enum class Isa { scalar, avx2 };

struct KernelTable {
  Isa isa;

  /// s[i] = sin(x[i]), c[i] = cos(x[i]). Arguments are expected within |x| < 1e8.
  void (*sincos)(std::span<const double> x, std::span<double> s, std::span<double> c);

  /// out[i] = sum_p a[p] cos(w[p] t[i]) + b[p] sin(w[p] t[i]).
  void (*sinusoid_sum)(std::span<const double> t, std::span<const double> w,
                       std::span<const double> a, std::span<const double> b,
                       std::span<double> out);

  /// out[i] = |sum_j c[j] exp(i z[i] x[j])|^2.
  void (*phasor_power)(std::span<const double> z, std::span<const double> x,
                       std::span<const double> c, std::span<double> out);

  /// out[i] = sum_p amp[p] hwhm^2 / ((f[i] - center[p])^2 + hwhm^2).
  void (*lorentzian_sum)(std::span<const double> f, std::span<const double> center,
                         std::span<const double> amp, double hwhm, std::span<double> out);
};

const KernelTable& scalar_kernels();

/// AVX2 table, or nullptr when the build has no AVX2 translation unit.
const KernelTable* avx2_kernels();

/// True when the running CPU can execute \p isa and the build contains it.
bool isa_available(Isa isa);

/// Table selected at first use (cpuid plus the VSIC_SIMD override).
const KernelTable& active();

std::string_view isa_name(Isa isa);

}  // namespace vsic::simd
