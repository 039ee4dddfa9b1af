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

#include "vsic/optical_thermal.hpp"

#include <Eigen/SVD>
#include <cmath>
#include <string>

#include "vsic/errors.hpp"
#include "vsic/parallel.hpp"

namespace vsic {
namespace {

constexpr int kG1 = 0, kG2 = 1, kEp = 2, kEm = 3;

Mat16c kron(const Mat4c& a, const Mat4c& b) {
  Mat16c out;
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) out.block<4, 4>(4 * i, 4 * j) = a(i, j) * b;
  }
  return out;
}

void add_dissipator(Mat16c& l, const Mat4c& op, double rate) {
  if (rate == 0.0) return;
  const Mat4c id = Mat4c::Identity();
  const Mat4c ldl = op.adjoint() * op;
  l += rate * (kron(op.conjugate(), op) - 0.5 * kron(id, ldl) - 0.5 * kron(ldl.transpose(), id));
}

// Propagators near the identity are carried as increments X = R - I so that
// repeated squaring does not lose the small part to rounding.
Mat16c rk4_increment(const Mat16c& l, double h) {
  const Mat16c a = h * l;
  const Mat16c a2 = a * a;
  const Mat16c a3 = a2 * a;
  return a + a2 / 2.0 + a3 / 6.0 + a3 * a / 24.0;
}

// (I + x)^n - I
Mat16c increment_power(Mat16c x, long long n) {
  Mat16c out = Mat16c::Zero();
  while (n > 0) {
    if (n & 1) out = (out + x + out * x).eval();
    x = (2.0 * x + x * x).eval();
    n >>= 1;
  }
  return out;
}

std::vector<Mat4c> integrate(const Mat16c& l, const Mat4c& rho0, std::span<const double> t_grid, double h_max) {
  std::vector<Mat4c> out;
  out.reserve(t_grid.size());
  Vec16c v = vectorize(rho0);
  double t_prev = 0.0;
  for (double t : t_grid) {
    const double span = t - t_prev;
    if (span > 0.0) {
      const long long steps = static_cast<long long>(std::ceil(span / h_max));
      v += increment_power(rk4_increment(l, span / static_cast<double>(steps)), steps) * v;
    }
    t_prev = t;
    if (v.cwiseAbs().maxCoeff() > 10.0 || !v.allFinite()) {
      throw NumericalError("master-equation integration failure: unstable step");
    }
    out.push_back(unvectorize(v));
  }
  return out;
}

}  // namespace

void FourLevelOpticalModel::validate() const {
  if (!(gamma1 > 0.0) || !(gamma2 > 0.0)) throw DomainError("gamma1 and gamma2 must be > 0");
  if (!(alpha > 0.0)) throw DomainError("alpha must be > 0");
  if (!(lambda_mev > 0.0)) throw DomainError("lambda must be > 0");
  if (!(gamma_d0 >= 0.0) || !std::isfinite(gamma_d0)) throw DomainError("gamma_d0 must be finite and >= 0");
  if (!(t_ref > 0.0)) throw DomainError("t_ref must be > 0");
  if (!std::isfinite(drive_plus) || !std::isfinite(drive_minus)) throw DomainError("drive amplitudes must be finite");
}

double FourLevelOpticalModel::rate_unit_per_ns() const {
  return lambda_mev * 1e-3 / kHbarEvS * 1e-9;
}

double dephasing_rate(const FourLevelOpticalModel& model, double temperature) {
  if (!(temperature >= 0.0)) throw DomainError("temperature must be >= 0");
  if (temperature == 0.0) return 0.0;
  return model.gamma_d0 * std::pow(temperature / model.t_ref, model.alpha);
}

Mat4c optical_hamiltonian(const FourLevelOpticalModel& model) {
  Mat4c h = Mat4c::Zero();
  h(kG1, kEp) = h(kEp, kG1) = model.drive_plus;
  h(kG2, kEm) = h(kEm, kG2) = model.drive_minus;
  h(kEp, kEp) = 1.0;
  h(kEm, kEm) = -1.0;
  return h;
}

Mat16c liouvillian(const FourLevelOpticalModel& model, double temperature) {
  model.validate();
  const Mat4c h = optical_hamiltonian(model);
  const Mat4c id = Mat4c::Identity();
  Mat16c l = cplx(0.0, -1.0) * (kron(id, h) - kron(h.transpose(), id));

  Mat4c l1 = Mat4c::Zero(), l2 = Mat4c::Zero(), l3 = Mat4c::Zero();
  l1(kG1, kEp) = 1.0;
  l2(kG2, kEm) = 1.0;
  l3(kEp, kEm) = l3(kEm, kEp) = 1.0;
  add_dissipator(l, l1, model.gamma1_model());
  add_dissipator(l, l2, model.gamma2_model());
  add_dissipator(l, l3, dephasing_rate(model, temperature));
  return l;
}

Vec16c vectorize(const Mat4c& rho) {
  return Eigen::Map<const Vec16c>(rho.data());
}

Mat4c unvectorize(const Vec16c& v) {
  return Eigen::Map<const Mat4c>(v.data());
}

void validate_density_matrix(const Mat4c& rho) {
  if (!rho.allFinite()) throw DomainError("density matrix has non-finite entries");
  if (hermitian_defect(rho) > 1e-9) throw DomainError("density matrix is not Hermitian");
  if (std::abs(rho.trace() - cplx(1.0)) > 1e-9) throw DomainError("density matrix trace differs from 1");
  Eigen::SelfAdjointEigenSolver<Mat4c> es(rho);
  if (es.eigenvalues().minCoeff() < -1e-9) throw DomainError("density matrix is not positive");
}

std::vector<DensityMatrix4> evolve_master(const FourLevelOpticalModel& model, double temperature,
                                          const DensityMatrix4& rho0, std::span<const double> t_grid) {
  validate_density_matrix(rho0);
  for (std::size_t i = 0; i < t_grid.size(); ++i) {
    if (!(t_grid[i] >= 0.0) || (i > 0 && t_grid[i] < t_grid[i - 1])) {
      throw DomainError("time grid must be sorted and nonnegative");
    }
  }
  const Mat16c l = liouvillian(model, temperature);
  const double norm = l.cwiseAbs().rowwise().sum().maxCoeff();
  if (norm == 0.0) return std::vector<DensityMatrix4>(t_grid.size(), rho0);

  double h = 0.1 / norm;
  std::vector<Mat4c> coarse = integrate(l, rho0, t_grid, h);
  for (int halving = 0;; ++halving) {
    if (halving > 40) throw NumericalError("master-equation integration failure: step control did not converge");
    h *= 0.5;
    std::vector<Mat4c> fine = integrate(l, rho0, t_grid, h);
    double diff = 0.0;
    for (std::size_t i = 0; i < fine.size(); ++i) diff = std::max(diff, (fine[i] - coarse[i]).cwiseAbs().maxCoeff());
    coarse = std::move(fine);
    if (diff < 1e-11) break;
  }
  for (const auto& rho : coarse) {
    if (std::abs(rho.trace() - cplx(1.0)) > 1e-6 || hermitian_defect(rho) > 1e-6) {
      throw NumericalError("master-equation integration failure: trace or Hermiticity lost");
    }
  }
  return coarse;
}

DensityMatrix4 steady_state(const FourLevelOpticalModel& model, double temperature) {
  const Mat16c l = liouvillian(model, temperature);
  Eigen::JacobiSVD<Mat16c> svd(l);
  const auto& sv = svd.singularValues();
  if (sv(14) <= 1e-13 * sv(0)) throw NumericalError("non-unique steady state");

  Eigen::Matrix<cplx, 17, 16> a;
  a.topRows<16>() = l;
  a.row(16).setZero();
  for (int i = 0; i < 4; ++i) a(16, 5 * i) = 1.0;
  Eigen::Matrix<cplx, 17, 1> b = Eigen::Matrix<cplx, 17, 1>::Zero();
  b(16) = 1.0;
  const Vec16c v = a.colPivHouseholderQr().solve(b);
  Mat4c rho = unvectorize(v);
  rho = 0.5 * (rho + rho.adjoint()).eval();
  if ((l * vectorize(rho)).norm() > 1e-10) throw NumericalError("steady-state residual too large");
  return rho;
}

LineIntensities line_intensities(const FourLevelOpticalModel& model, double temperature) {
  const Mat4c rho = steady_state(model, temperature);
  LineIntensities out;
  out.i_v1prime = model.gamma1 * std::max(0.0, rho(kEp, kEp).real());
  out.i_v1 = model.gamma2 * std::max(0.0, rho(kEm, kEm).real());
  return out;
}

std::vector<LineIntensities> intensity_sweep(const FourLevelOpticalModel& model,
                                             std::span<const double> temperatures, unsigned jobs) {
  std::vector<LineIntensities> out(temperatures.size());
  parallel_for(temperatures.size(), jobs, [&](std::size_t i) { out[i] = line_intensities(model, temperatures[i]); });
  return out;
}

double peak_temperature(const FourLevelOpticalModel& model) {
  double best_t = 1.0, best = -1.0;
  for (int t = 1; t <= 300; ++t) {
    const double v = line_intensities(model, t).i_v1prime;
    if (v > best) {
      best = v;
      best_t = t;
    }
  }
  return best_t;
}

double calibrate_crossover(const FourLevelOpticalModel& model, double t_peak_target) {
  const double target = std::round(t_peak_target);
  if (!(target > 1.0 && target < 300.0)) throw DomainError("peak target must lie inside (1, 300) K");
  FourLevelOpticalModel m = model;
  auto peak_at = [&](double log_g) {
    m.gamma_d0 = std::exp(log_g);
    try {
      return peak_temperature(m);
    } catch (const NumericalError&) {
      throw NumericalError("calibration failure: steady state ill-conditioned at gamma_d0 = " +
                           std::to_string(m.gamma_d0));
    }
  };
  // Widen outward from a moderate bracket; extreme dephasing makes the
  // Liouvillian too stiff for a reliable null space.
  double lo = std::log(1e-3), hi = std::log(1e1);
  while (!(peak_at(lo) > target)) {
    if (lo <= std::log(1e-6)) throw NumericalError("calibration failure: no interior maximum in bracket");
    lo -= std::log(10.0);
  }
  while (!(peak_at(hi) < target)) {
    if (hi >= std::log(1e6)) throw NumericalError("calibration failure: no interior maximum in bracket");
    hi += std::log(10.0);
  }
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double p = peak_at(mid);
    if (p == target) return std::exp(mid);
    if (p > target) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  throw NumericalError("calibration failure: peak target not reached");
}

}  // namespace vsic
