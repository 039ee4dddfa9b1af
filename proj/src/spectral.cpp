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

#include "vsic/spectral.hpp"

#include <fftw3.h>

#include <cmath>
#include <complex>
#include <mutex>
#include <numeric>

#include "vsic/errors.hpp"

namespace vsic::spectral {
namespace {
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}
}  // namespace

double uniform_step(std::span<const double> t, double rel_tol) {
  if (t.size() < 2) throw DomainError("time grid needs at least two samples");
  const double dt = (t.back() - t.front()) / static_cast<double>(t.size() - 1);
  if (!(dt > 0.0)) throw DomainError("time grid must be increasing");
  for (std::size_t i = 1; i < t.size(); ++i) {
    if (std::abs((t[i] - t[i - 1]) - dt) > rel_tol * dt) {
      throw DomainError("time grid is not uniformly spaced");
    }
  }
  return dt;
}

std::size_t next_pow2(std::size_t n) {
  std::size_t p = 1;
  while (p < n) p <<= 1;
  return p;
}

std::vector<double> magnitude_spectrum(std::span<const double> x, std::size_t n_fft) {
  if (n_fft < x.size()) throw DomainError("transform length shorter than the trace");
  const double mean = std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(x.size());

  const std::size_t n_out = n_fft / 2 + 1;
  double* in = fftw_alloc_real(n_fft);
  fftw_complex* out = fftw_alloc_complex(n_out);
  fftw_plan plan;
  {
    std::lock_guard lock(planner_mutex());
    plan = fftw_plan_dft_r2c_1d(static_cast<int>(n_fft), in, out, FFTW_ESTIMATE);
  }
  for (std::size_t i = 0; i < n_fft; ++i) in[i] = i < x.size() ? x[i] - mean : 0.0;
  fftw_execute(plan);

  std::vector<double> mag(n_out);
  for (std::size_t k = 0; k < n_out; ++k) mag[k] = std::hypot(out[k][0], out[k][1]);
  mag[0] = 0.0;
  {
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(plan);
  }
  fftw_free(in);
  fftw_free(out);
  return mag;
}

}  // namespace vsic::spectral
