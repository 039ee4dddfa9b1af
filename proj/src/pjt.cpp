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

#include "vsic/pjt.hpp"

#include <Eigen/Dense>
#include <cmath>

#include "vsic/errors.hpp"

namespace vsic {

void PJTParams::validate() const {
  if (!(k_elastic > 0.0) || !std::isfinite(k_elastic)) throw DomainError("k_elastic must be > 0");
  if (!(g_coupling >= 0.0) || !std::isfinite(g_coupling)) throw DomainError("g_coupling must be >= 0");
  if (!std::isfinite(delta)) throw DomainError("delta must be finite");
}

PJTEnergy pjt_energy(const PJTParams& p) {
  p.validate();
  PJTEnergy out;
  const double g = p.g_coupling, k = p.k_elastic, d = p.delta;
  out.epsilon0 = g * g / (2.0 * k);
  out.q0 = g / k;
  if (g == 0.0) {
    out.stable = d <= 0.0;
    out.q_min = 0.0;
    out.e_jt = -d / 6.0 - std::abs(d) / 2.0;
    return out;
  }
  out.stable = std::abs(d / (4.0 * out.epsilon0)) < 1.0;
  if (out.stable) {
    const double r = d / (2.0 * g);
    out.q_min = std::sqrt(std::max(0.0, out.q0 * out.q0 - r * r));
    out.e_jt = -d / 6.0 - out.epsilon0 - d * d / (16.0 * out.epsilon0);
  } else {
    out.q_min = 0.0;
    out.e_jt = -d / 6.0 - std::abs(d) / 2.0;
  }
  return out;
}

double pjt_adiabatic_energy(const PJTParams& p, double q) {
  Eigen::Matrix3d h;
  h << 0.0, q, 0.0, q, 0.0, 0.0, 0.0, 0.0, 0.0;
  h *= p.g_coupling;
  h.diagonal() += (p.delta / 3.0) * Eigen::Vector3d(-2.0, 1.0, 1.0);
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es(h, Eigen::EigenvaluesOnly);
  return es.eigenvalues()(0) + 0.5 * p.k_elastic * q * q;
}

PJTNumeric pjt_potential_minimize(const PJTParams& p) {
  p.validate();
  double lo = 0.0, hi = 2.0 * p.g_coupling / p.k_elastic + 1.0;
  const double g = 0.5 * (std::sqrt(5.0) - 1.0);
  double x1 = hi - g * (hi - lo), x2 = lo + g * (hi - lo);
  double f1 = pjt_adiabatic_energy(p, x1), f2 = pjt_adiabatic_energy(p, x2);
  for (int it = 0; it < 200 && hi - lo > 1e-13; ++it) {
    if (f1 > f2) {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + g * (hi - lo);
      f2 = pjt_adiabatic_energy(p, x2);
    } else {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - g * (hi - lo);
      f1 = pjt_adiabatic_energy(p, x1);
    }
  }
  PJTNumeric out;
  out.q = 0.5 * (lo + hi);
  out.e_jt = pjt_adiabatic_energy(p, out.q);
  // The profile can be monotone with its minimum at the origin.
  const double e0 = pjt_adiabatic_energy(p, 0.0);
  if (e0 <= out.e_jt) {
    out.q = 0.0;
    out.e_jt = e0;
  }
  return out;
}

}  // namespace vsic
