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

#include "vsic/rabi.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "vsic/errors.hpp"
#include "vsic/parallel.hpp"
#include "vsic/simd/kernels.hpp"
#include "vsic/spectral.hpp"

namespace vsic {

namespace {
constexpr double kHermitianTol = 1e-9;
constexpr double kDegenerateTol = 1e-9;  // MHz
}  // namespace

void DriveParams::validate() const {
  if (!(omega >= 0.0) || !std::isfinite(omega)) throw DomainError("drive omega must be >= 0");
  if (!(f > 0.0) || !std::isfinite(f)) throw DomainError("drive frequency must be > 0");
  if (!std::isfinite(phase)) throw DomainError("drive phase must be finite");
}

void InitialPolarization::validate() const {
  double sum = 0.0;
  for (double v : p) {
    if (!(v >= 0.0 && v <= 1.0)) throw DomainError("initial populations must lie in [0, 1]");
    sum += v;
  }
  if (std::abs(sum - 1.0) > 1e-12) throw DomainError("initial populations must sum to 1");
}

void LevelBrightness::validate() const {
  for (double v : i) {
    if (!(v >= 0.0) || !std::isfinite(v)) throw DomainError("brightness must be finite and >= 0");
  }
}

void RotatingFrameModel::validate() const {
  require_hermitian(h_rot, kHermitianTol, "rotating-frame model");
  init.validate();
  brightness.validate();
  if (!(t2_star > 0.0)) throw DomainError("t2_star must be > 0");
}

Mat4c rotating_frame_hamiltonian(const SpinQuartetParams& spin, const DriveParams& drive) {
  drive.validate();
  const Mat4c h0 = static_hamiltonian(spin);
  Mat4c h = Mat4c::Zero();
  for (int i = 0; i < 4; ++i) h(i, i) = h0(i, i).real() - kSpinProjection[i] * drive.f;
  const double s = 1.5;
  const cplx phase = std::polar(1.0, drive.phase);
  for (int i = 0; i < 3; ++i) {
    // Level i+1 has the lower projection m; couple it to i (m + 1).
    const double m = kSpinProjection[i + 1];
    const double c = 0.25 * drive.omega * std::sqrt(s * (s + 1.0) - m * (m + 1.0));
    h(i + 1, i) = c * phase;
    h(i, i + 1) = c * std::conj(phase);
  }
  return h;
}

std::array<double, 4> propagate_populations(const Mat4c& h_rot, int k, double t) {
  require_hermitian(h_rot, kHermitianTol, "propagate_populations");
  if (k < 0 || k > 3) throw DomainError("level index must be in [0, 3]");
  if (!(t >= 0.0)) throw DomainError("time must be >= 0");
  const Vec4c a = HermitianPropagator(h_rot).amplitudes(k, t);
  return {std::norm(a(0)), std::norm(a(1)), std::norm(a(2)), std::norm(a(3))};
}

std::vector<double> pl_trace(const RotatingFrameModel& model, std::span<const double> t_grid) {
  model.validate();
  for (std::size_t i = 0; i < t_grid.size(); ++i) {
    if (!(t_grid[i] >= 0.0) || (i > 0 && t_grid[i] < t_grid[i - 1])) {
      throw DomainError("time grid must be sorted and nonnegative");
    }
  }

  const HermitianPropagator prop(model.h_rot);
  const auto& v = prop.eigenvectors();
  const auto& alpha = prop.eigenvalues();

  // I(t) = sum_{l,l'} W_ll' exp(-i 2 pi (alpha_l - alpha_l') t).
  Mat4c w;
  for (int l = 0; l < 4; ++l) {
    for (int lp = 0; lp < 4; ++lp) {
      cplx bright = 0.0, pop = 0.0;
      for (int m = 0; m < 4; ++m) {
        bright += model.brightness.i[m] * v(m, l) * std::conj(v(m, lp));
        pop += model.init.p[m] * std::conj(v(m, l)) * v(m, lp);
      }
      w(l, lp) = bright * pop;
    }
  }

  double average = 0.0;
  for (int l = 0; l < 4; ++l) average += w(l, l).real();
  std::vector<double> omega, a, b;
  for (int l = 0; l < 4; ++l) {
    for (int lp = l + 1; lp < 4; ++lp) {
      const double gap = alpha(l) - alpha(lp);
      if (std::abs(gap) < kDegenerateTol) {
        average += 2.0 * w(l, lp).real();
        continue;
      }
      omega.push_back(2.0 * M_PI * gap);
      a.push_back(2.0 * w(l, lp).real());
      b.push_back(2.0 * w(l, lp).imag());
    }
  }

  std::vector<double> out(t_grid.size());
  simd::active().sinusoid_sum(t_grid, omega, a, b, out);
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = average + std::exp(-t_grid[i] / model.t2_star) * out[i];
  }
  return out;
}

Grid2D rabi_map(const SpinQuartetParams& spin, double omega, std::span<const double> f_grid,
                std::span<const double> t_grid, const InitialPolarization& init,
                const LevelBrightness& brightness, double t2_star, unsigned jobs) {
  if (f_grid.empty() || t_grid.empty()) throw DomainError("rabi_map grids must be nonempty");
  if (!std::is_sorted(f_grid.begin(), f_grid.end())) throw DomainError("f_grid must be sorted");
  Grid2D map(f_grid.size(), t_grid.size());
  parallel_for(f_grid.size(), jobs, [&](std::size_t r) {
    RotatingFrameModel model{rotating_frame_hamiltonian(spin, {omega, f_grid[r], 0.0}), init,
                             brightness, t2_star};
    const auto row = pl_trace(model, t_grid);
    std::copy(row.begin(), row.end(), map.row(r).begin());
  });
  return map;
}

RabiSpectrum rabi_fft(const Grid2D& map, double t_step) {
  if (!(t_step > 0.0)) throw DomainError("t_step must be > 0");
  if (map.cols < 2) throw DomainError("rabi_fft needs at least two time samples");
  const std::size_t n = map.cols;
  RabiSpectrum out;
  out.freq.resize(n / 2 + 1);
  for (std::size_t k = 0; k < out.freq.size(); ++k) out.freq[k] = spectral::bin_frequency(k, n, t_step);
  out.magnitude = Grid2D(map.rows, out.freq.size());
  for (std::size_t r = 0; r < map.rows; ++r) {
    const auto mag = spectral::magnitude_spectrum(map.row(r), n);
    std::copy(mag.begin(), mag.end(), out.magnitude.row(r).begin());
  }
  return out;
}

RabiSpectrum rabi_fft(const Grid2D& map, std::span<const double> t_grid) {
  if (t_grid.size() != map.cols) throw DomainError("time grid does not match the map width");
  return rabi_fft(map, spectral::uniform_step(t_grid));
}

double extract_dominant_rabi_frequency(std::span<const double> trace, double t_step) {
  if (trace.size() < 16) throw DomainError("trace needs at least 16 samples");
  if (!(t_step > 0.0)) throw DomainError("t_step must be > 0");
  const double mean = std::accumulate(trace.begin(), trace.end(), 0.0) / static_cast<double>(trace.size());
  double spread = 0.0, scale = 1.0;
  for (double x : trace) {
    spread = std::max(spread, std::abs(x - mean));
    scale = std::max(scale, std::abs(x));
  }
  if (spread <= 1e-12 * scale) throw NumericalError("no oscillation detected");

  const std::size_t n_fft = 8 * spectral::next_pow2(trace.size());
  const auto mag = spectral::magnitude_spectrum(trace, n_fft);
  const auto peak = std::max_element(mag.begin() + 1, mag.end());
  const std::size_t k = static_cast<std::size_t>(peak - mag.begin());
  double shift = 0.0;
  if (k > 1 && k + 1 < mag.size()) {
    const double y0 = mag[k - 1], y1 = mag[k], y2 = mag[k + 1];
    const double den = y0 - 2.0 * y1 + y2;
    if (den != 0.0) shift = 0.5 * (y0 - y2) / den;
  }
  return (static_cast<double>(k) + shift) / (static_cast<double>(n_fft) * t_step);
}

}  // namespace vsic
