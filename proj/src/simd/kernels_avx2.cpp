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

// AVX2 + FMA kernels. Compiled with -mavx2 -mfma; only reached after the
// dispatcher has confirmed CPU support.

#include <immintrin.h>

#include <cmath>

#include "vsic/simd/kernels.hpp"

namespace vsic::simd {
namespace {

// Cody-Waite split of pi/4 and minimax polynomials for sin/cos on [-pi/4, pi/4]
// (the classic Cephes double-precision coefficients).
constexpr double kFourOverPi = 1.27323954473516268615;
constexpr double kDp1 = 7.85398125648498535156e-1;
constexpr double kDp2 = 3.77489470793079817668e-8;
constexpr double kDp3 = 2.69515142907905952645e-15;
constexpr double kSinCoef[6] = {1.58962301576546568060e-10, -2.50507477628578072866e-8,
                                2.75573136213857245213e-6,  -1.98412698295895385996e-4,
                                8.33333333332211858878e-3,  -1.66666666666666307295e-1};
constexpr double kCosCoef[6] = {-1.13585365213876817300e-11, 2.08757008419747316778e-9,
                                -2.75573141792967388112e-7, 2.48015872888517045348e-5,
                                -1.38888888888730564116e-3, 4.16666666666665929218e-2};
constexpr double kMaxArg = 1e8;

inline __m256d polevl5(__m256d x, const double* c) {
  __m256d y = _mm256_set1_pd(c[0]);
  for (int k = 1; k < 6; ++k) y = _mm256_fmadd_pd(y, x, _mm256_set1_pd(c[k]));
  return y;
}

inline void sincos4(__m256d x, __m256d& s, __m256d& c) {
  const __m256d sign_bit = _mm256_set1_pd(-0.0);
  const __m256d ax = _mm256_andnot_pd(sign_bit, x);
  const __m256d sx = _mm256_and_pd(sign_bit, x);

  // Octant index rounded up to even, as a double and as integer bits.
  __m256d y = _mm256_floor_pd(_mm256_mul_pd(ax, _mm256_set1_pd(kFourOverPi)));
  y = _mm256_mul_pd(_mm256_floor_pd(_mm256_mul_pd(_mm256_add_pd(y, _mm256_set1_pd(1.0)),
                                                  _mm256_set1_pd(0.5))),
                    _mm256_set1_pd(2.0));
  const __m256i j = _mm256_castpd_si256(_mm256_add_pd(y, _mm256_set1_pd(0x1p52)));

  const __m256i two = _mm256_set1_epi64x(2);
  const __m256i four = _mm256_set1_epi64x(4);
  const __m256d swap =
      _mm256_castsi256_pd(_mm256_cmpeq_epi64(_mm256_and_si256(j, two), two));
  const __m256d flip_s = _mm256_castsi256_pd(_mm256_slli_epi64(_mm256_and_si256(j, four), 61));
  const __m256d flip_c = _mm256_castsi256_pd(
      _mm256_slli_epi64(_mm256_and_si256(_mm256_xor_si256(j, _mm256_srli_epi64(j, 1)), two), 62));

  __m256d z = _mm256_sub_pd(ax, _mm256_mul_pd(y, _mm256_set1_pd(kDp1)));
  z = _mm256_sub_pd(z, _mm256_mul_pd(y, _mm256_set1_pd(kDp2)));
  z = _mm256_sub_pd(z, _mm256_mul_pd(y, _mm256_set1_pd(kDp3)));
  const __m256d zz = _mm256_mul_pd(z, z);

  const __m256d ps = _mm256_fmadd_pd(_mm256_mul_pd(z, zz), polevl5(zz, kSinCoef), z);
  const __m256d pc = _mm256_fmadd_pd(_mm256_mul_pd(zz, zz), polevl5(zz, kCosCoef),
                                     _mm256_fnmadd_pd(_mm256_set1_pd(0.5), zz, _mm256_set1_pd(1.0)));

  s = _mm256_xor_pd(_mm256_xor_pd(_mm256_blendv_pd(ps, pc, swap), flip_s), sx);
  c = _mm256_xor_pd(_mm256_blendv_pd(pc, ps, swap), flip_c);
}

// Falls back to libm for lanes outside the reduction range.
inline void sincos4_checked(__m256d x, __m256d& s, __m256d& c) {
  const __m256d ax = _mm256_andnot_pd(_mm256_set1_pd(-0.0), x);
  const int big = _mm256_movemask_pd(_mm256_cmp_pd(ax, _mm256_set1_pd(kMaxArg), _CMP_NLT_UQ));
  if (big == 0) {
    sincos4(x, s, c);
    return;
  }
  alignas(32) double xs[4], ss[4], cs[4];
  _mm256_store_pd(xs, x);
  for (int k = 0; k < 4; ++k) {
    ss[k] = std::sin(xs[k]);
    cs[k] = std::cos(xs[k]);
  }
  s = _mm256_load_pd(ss);
  c = _mm256_load_pd(cs);
}

void sincos_avx2(std::span<const double> x, std::span<double> s, std::span<double> c) {
  const std::size_t n = x.size();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d vs, vc;
    sincos4_checked(_mm256_loadu_pd(x.data() + i), vs, vc);
    _mm256_storeu_pd(s.data() + i, vs);
    _mm256_storeu_pd(c.data() + i, vc);
  }
  for (; i < n; ++i) {
    s[i] = std::sin(x[i]);
    c[i] = std::cos(x[i]);
  }
}

void sinusoid_sum_avx2(std::span<const double> t, std::span<const double> w,
                       std::span<const double> a, std::span<const double> b,
                       std::span<double> out) {
  const std::size_t n = t.size();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d vt = _mm256_loadu_pd(t.data() + i);
    __m256d acc = _mm256_setzero_pd();
    for (std::size_t p = 0; p < w.size(); ++p) {
      __m256d vs, vc;
      sincos4_checked(_mm256_mul_pd(_mm256_set1_pd(w[p]), vt), vs, vc);
      acc = _mm256_fmadd_pd(_mm256_set1_pd(a[p]), vc, acc);
      acc = _mm256_fmadd_pd(_mm256_set1_pd(b[p]), vs, acc);
    }
    _mm256_storeu_pd(out.data() + i, acc);
  }
  if (i < n) {
    scalar_kernels().sinusoid_sum(t.subspan(i), w, a, b, out.subspan(i));
  }
}

void phasor_power_avx2(std::span<const double> z, std::span<const double> x,
                       std::span<const double> c, std::span<double> out) {
  const std::size_t n = z.size();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d vz = _mm256_loadu_pd(z.data() + i);
    __m256d re = _mm256_setzero_pd();
    __m256d im = _mm256_setzero_pd();
    for (std::size_t j = 0; j < x.size(); ++j) {
      __m256d vs, vc;
      sincos4_checked(_mm256_mul_pd(vz, _mm256_set1_pd(x[j])), vs, vc);
      const __m256d cj = _mm256_set1_pd(c[j]);
      re = _mm256_fmadd_pd(cj, vc, re);
      im = _mm256_fmadd_pd(cj, vs, im);
    }
    _mm256_storeu_pd(out.data() + i, _mm256_fmadd_pd(re, re, _mm256_mul_pd(im, im)));
  }
  if (i < n) {
    scalar_kernels().phasor_power(z.subspan(i), x, c, out.subspan(i));
  }
}

void lorentzian_sum_avx2(std::span<const double> f, std::span<const double> center,
                         std::span<const double> amp, double hwhm, std::span<double> out) {
  const std::size_t n = f.size();
  const __m256d h2 = _mm256_set1_pd(hwhm * hwhm);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d vf = _mm256_loadu_pd(f.data() + i);
    __m256d acc = _mm256_setzero_pd();
    for (std::size_t p = 0; p < center.size(); ++p) {
      const __m256d d = _mm256_sub_pd(vf, _mm256_set1_pd(center[p]));
      const __m256d den = _mm256_fmadd_pd(d, d, h2);
      acc = _mm256_add_pd(acc, _mm256_div_pd(_mm256_mul_pd(_mm256_set1_pd(amp[p]), h2), den));
    }
    _mm256_storeu_pd(out.data() + i, acc);
  }
  if (i < n) {
    scalar_kernels().lorentzian_sum(f.subspan(i), center, amp, hwhm, out.subspan(i));
  }
}

}  // namespace

const KernelTable* avx2_table() {
  static const KernelTable table{Isa::avx2, sincos_avx2, sinusoid_sum_avx2, phasor_power_avx2,
                                 lorentzian_sum_avx2};
  return &table;
}

}  // namespace vsic::simd
