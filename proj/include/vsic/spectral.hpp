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

// Real-input FFT helpers for uniformly sampled traces.

#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace vsic::spectral {

/// Sample spacing of \p t; throws DomainError when the spacing varies by more
/// than \p rel_tol of the mean step or when fewer than two samples are given.
double uniform_step(std::span<const double> t, double rel_tol = 1e-6);

/// |DFT| of the mean-subtracted trace, zero-padded to \p n_fft samples.
/// Returns bins 0..n_fft/2; bin 0 is zeroed.
std::vector<double> magnitude_spectrum(std::span<const double> x, std::size_t n_fft);

/// Frequency (1/unit of dt) of bin k for an n_fft-point transform.
inline double bin_frequency(std::size_t k, std::size_t n_fft, double dt) {
  return static_cast<double>(k) / (static_cast<double>(n_fft) * dt);
}

std::size_t next_pow2(std::size_t n);

}  // namespace vsic::spectral
