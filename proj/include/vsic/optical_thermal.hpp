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

// Four-level optical model of the V1/V1' thermal intensity crossover.
//
// Basis: 0 -> |g1>, 1 -> |g2>, 2 -> |e+>, 3 -> |e->. The dressed excited states
// sit at +lambda (e+, V1') and -lambda (e-, V1). Energies and rates inside the
// model are in units of lambda (lambda = 1); model time is in units of
// hbar/lambda. Radiative rates are configured in 1/ns and converted with
// lambda/hbar.

#pragma once

#include <Eigen/Dense>
#include <span>
#include <vector>

#include "vsic/linalg.hpp"

namespace vsic {

using Mat16c = Eigen::Matrix<cplx, 16, 16>;
using Vec16c = Eigen::Matrix<cplx, 16, 1>;
using DensityMatrix4 = Mat4c;

inline constexpr double kHbarEvS = 6.582119569e-16;
inline constexpr double kBoltzmannEvK = 8.617333262e-5;

struct FourLevelOpticalModel {
  double drive_plus = 1e-3;   ///< E+ in units of lambda
  double drive_minus = 1e-3;  ///< E- in units of lambda
  double lambda_mev = 2.2;    ///< lambda in meV (2 lambda = 4.4 meV)
  double gamma1 = 1.0 / 5.6;  ///< |e+> -> |g1> decay, 1/ns
  double gamma2 = 1.0 / 5.5;  ///< |e-> -> |g2> decay, 1/ns
  double gamma_d0 = 1.0;      ///< dephasing at t_ref, units of lambda
  double alpha = 1.57;        ///< dephasing power law exponent
  double t_ref = 10.0;        ///< K

  void validate() const;
  /// lambda / hbar in 1/ns.
  double rate_unit_per_ns() const;
  double gamma1_model() const { return gamma1 / rate_unit_per_ns(); }
  double gamma2_model() const { return gamma2 / rate_unit_per_ns(); }
};

/// gamma_d0 (T / t_ref)^alpha, units of lambda.
double dephasing_rate(const FourLevelOpticalModel& model, double temperature);

/// Model Hamiltonian, units of lambda.
Mat4c optical_hamiltonian(const FourLevelOpticalModel& model);

/// Generator acting on column-major vec(rho): vec(A X B) = (B^T kron A) vec(X).
Mat16c liouvillian(const FourLevelOpticalModel& model, double temperature);

Vec16c vectorize(const Mat4c& rho);
Mat4c unvectorize(const Vec16c& v);

/// Throws DomainError unless rho is Hermitian, unit trace and positive (1e-9).
void validate_density_matrix(const Mat4c& rho);

/// Fixed-step RK4 with the step halved until halving changes no entry of the
/// trajectory by 1e-11 or more. Times in units of hbar/lambda, t_grid sorted and
/// nonnegative; returns rho at each grid time.
std::vector<DensityMatrix4> evolve_master(const FourLevelOpticalModel& model, double temperature,
                                          const DensityMatrix4& rho0, std::span<const double> t_grid);

/// Solves L(rho) = 0 with tr(rho) = 1. Throws NumericalError("non-unique
/// steady state") when the kernel of L has dimension > 1.
DensityMatrix4 steady_state(const FourLevelOpticalModel& model, double temperature);

struct LineIntensities {
  double i_v1 = 0.0;       ///< gamma2 rho_{e-e-}, 1/ns
  double i_v1prime = 0.0;  ///< gamma1 rho_{e+e+}, 1/ns
  double ratio() const { return i_v1prime / i_v1; }
};

LineIntensities line_intensities(const FourLevelOpticalModel& model, double temperature);

/// line_intensities on each temperature, evaluated on up to \p jobs threads.
std::vector<LineIntensities> intensity_sweep(const FourLevelOpticalModel& model,
                                             std::span<const double> temperatures, unsigned jobs = 1);

/// Temperature of the largest I_V1' on the integer grid 1..300 K.
double peak_temperature(const FourLevelOpticalModel& model);

/// Bisection on log(gamma_d0) until peak_temperature equals \p t_peak_target
/// (rounded to the 1 K grid). Returns the calibrated gamma_d0.
double calibrate_crossover(const FourLevelOpticalModel& model, double t_peak_target);

}  // namespace vsic
