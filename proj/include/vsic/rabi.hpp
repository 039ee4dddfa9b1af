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

// Driven four-level dynamics in the rotating frame (rotating-wave approximation).

#pragma once

#include <array>
#include <span>
#include <vector>

#include "vsic/linalg.hpp"
#include "vsic/spin_hamiltonian.hpp"

namespace vsic {

struct DriveParams {
  double omega = 0.0;  ///< drive amplitude in MHz before the RWA halving
  double f = 0.0;      ///< carrier frequency in MHz
  double phase = 0.0;  ///< radians

  void validate() const;
};

/// Initial occupation probabilities in basis order.
struct InitialPolarization {
  std::array<double, 4> p{0.5, 0.0, 0.0, 0.5};

  void validate() const;
};

/// Photoluminescence weight of each level. Default: |+-3/2> bright, |+-1/2> dark.
struct LevelBrightness {
  std::array<double, 4> i{1.0, 0.0, 0.0, 1.0};

  void validate() const;
};

struct RotatingFrameModel {
  Mat4c h_rot = Mat4c::Zero();
  InitialPolarization init;
  LevelBrightness brightness;
  double t2_star = 0.2;  ///< microseconds; +inf disables damping

  void validate() const;
};

/// Row-major dense table.
struct Grid2D {
  std::size_t rows = 0, cols = 0;
  std::vector<double> data;

  Grid2D() = default;
  Grid2D(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c, 0.0) {}
  double& operator()(std::size_t r, std::size_t c) { return data[r * cols + c]; }
  double operator()(std::size_t r, std::size_t c) const { return data[r * cols + c]; }
  std::span<double> row(std::size_t r) { return {data.data() + r * cols, cols}; }
  std::span<const double> row(std::size_t r) const { return {data.data() + r * cols, cols}; }
};

/// Diagonal eps_m - m f; neighbour couplings (Omega/4) sqrt(S(S+1) - m(m-1)),
/// carrying e^{i phase} on the lower-m row.
Mat4c rotating_frame_hamiltonian(const SpinQuartetParams& spin, const DriveParams& drive);

/// |<m| exp(-i 2 pi H t) |k>|^2 for all m.
std::array<double, 4> propagate_populations(const Mat4c& h_rot, int k, double t);

/// I(t) = sum_{m,k} I_m P_k rho_mk(t), with the deviation from the incoherent
/// long-time average damped by exp(-t / t2_star).
std::vector<double> pl_trace(const RotatingFrameModel& model, std::span<const double> t_grid);

/// One pl_trace row per drive frequency. Rows are independent and may run on
/// \p jobs threads; the result does not depend on \p jobs.
Grid2D rabi_map(const SpinQuartetParams& spin, double omega, std::span<const double> f_grid,
                std::span<const double> t_grid, const InitialPolarization& init,
                const LevelBrightness& brightness, double t2_star, unsigned jobs = 1);

struct RabiSpectrum {
  std::vector<double> freq;  ///< MHz
  Grid2D magnitude;          ///< one row per map row, DC bin zeroed
};

/// Row-wise FFT magnitude of a Rabi map sampled every \p t_step microseconds.
RabiSpectrum rabi_fft(const Grid2D& map, double t_step);

/// As above, validating that \p t_grid is uniform.
RabiSpectrum rabi_fft(const Grid2D& map, std::span<const double> t_grid);

/// Dominant oscillation frequency (MHz) of a uniformly sampled trace. The trace
/// is zero-padded to 8x the next power of two and the peak is refined by a
/// parabola through the three largest neighbouring bins.
double extract_dominant_rabi_frequency(std::span<const double> trace, double t_step);

}  // namespace vsic
