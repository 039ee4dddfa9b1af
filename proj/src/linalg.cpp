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

#include "vsic/linalg.hpp"

#include <cmath>
#include <string>

#include "vsic/errors.hpp"

namespace vsic {

double hermitian_defect(const Mat4c& a) {
  return (a - a.adjoint()).cwiseAbs().maxCoeff();
}

void require_hermitian(const Mat4c& a, double tol, const char* what) {
  const double d = hermitian_defect(a);
  if (!(d <= tol)) {
    throw PreconditionError(std::string(what) + ": matrix is not Hermitian (defect " +
                            std::to_string(d) + ")");
  }
}

HermitianPropagator::HermitianPropagator(const Mat4c& h) {
  Eigen::SelfAdjointEigenSolver<Mat4c> es(h);
  alpha_ = es.eigenvalues();
  v_ = es.eigenvectors();
}

Mat4c HermitianPropagator::unitary(double t) const {
  Vec4c phase;
  for (int l = 0; l < 4; ++l) phase(l) = std::polar(1.0, -2.0 * M_PI * alpha_(l) * t);
  return v_ * phase.asDiagonal() * v_.adjoint();
}

Vec4c HermitianPropagator::amplitudes(int k, double t) const {
  Vec4c out = Vec4c::Zero();
  for (int l = 0; l < 4; ++l) {
    const cplx w = std::polar(1.0, -2.0 * M_PI * alpha_(l) * t) * std::conj(v_(k, l));
    out += w * v_.col(l);
  }
  return out;
}

}  // namespace vsic
