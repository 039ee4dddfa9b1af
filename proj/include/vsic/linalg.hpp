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

#pragma once

#include <Eigen/Dense>
#include <array>
#include <complex>

namespace vsic {

using cplx = std::complex<double>;
using Mat4c = Eigen::Matrix<cplx, 4, 4>;
using Vec4c = Eigen::Matrix<cplx, 4, 1>;
using Vec4d = Eigen::Vector4d;

/// Largest |A - A^H| entry.
double hermitian_defect(const Mat4c& a);

/// Throws PreconditionError if |A - A^H| exceeds \p tol.
void require_hermitian(const Mat4c& a, double tol, const char* what);

/// Eigendecomposition of a Hermitian 4x4 matrix with fast propagators
/// exp(-i 2 pi H t) = V diag(exp(-i 2 pi alpha t)) V^H.
class HermitianPropagator {
 public:
  explicit HermitianPropagator(const Mat4c& h);

  const Eigen::Vector4d& eigenvalues() const { return alpha_; }
  const Mat4c& eigenvectors() const { return v_; }

  /// exp(-i 2 pi H t), H in MHz, t in microseconds.
  Mat4c unitary(double t) const;

  /// Column k of the propagator: amplitudes of all levels starting from |k>.
  Vec4c amplitudes(int k, double t) const;

 private:
  Eigen::Vector4d alpha_;
  Mat4c v_;
};

}  // namespace vsic
