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

#include "vsic/spin_hamiltonian.hpp"

#include <cmath>

#include "vsic/errors.hpp"

namespace vsic {

void SpinQuartetParams::validate() const {
  if (!(gamma > 0.0) || !std::isfinite(gamma)) throw DomainError("gamma must be positive");
  if (!(b0 >= 0.0) || !std::isfinite(b0)) throw DomainError("b0 must be nonnegative");
  if (!std::isfinite(d)) throw DomainError("d must be finite");
}

std::array<int, 2> transition_levels(Transition t) {
  switch (t) {
    case Transition::f1: return {3, 2};
    case Transition::f2: return {2, 1};
    case Transition::f3: return {1, 0};
  }
  return {3, 2};
}

double EnergyLevels::frequency(Transition t) const {
  switch (t) {
    case Transition::f1: return f1;
    case Transition::f2: return f2;
    case Transition::f3: return f3;
  }
  return f1;
}

SpinMatrices spin_matrices() {
  SpinMatrices s;
  s.sx.setZero();
  s.sy.setZero();
  s.sz.setZero();
  const double spin = 1.5;
  for (int i = 0; i < 4; ++i) s.sz(i, i) = kSpinProjection[i];
  // S+ |m> = sqrt(S(S+1) - m(m+1)) |m+1>; |m+1> sits at index i-1.
  for (int i = 1; i < 4; ++i) {
    const double m = kSpinProjection[i];
    const double c = std::sqrt(spin * (spin + 1.0) - m * (m + 1.0));
    s.sx(i - 1, i) = s.sx(i, i - 1) = 0.5 * c;
    s.sy(i - 1, i) = cplx(0.0, -0.5 * c);
    s.sy(i, i - 1) = cplx(0.0, 0.5 * c);
  }
  return s;
}

Mat4c static_hamiltonian(const SpinQuartetParams& p) {
  p.validate();
  constexpr double kShift = 1.5 * 2.5 / 3.0;  // S(S+1)/3
  Mat4c h = Mat4c::Zero();
  for (int i = 0; i < 4; ++i) {
    const double m = kSpinProjection[i];
    h(i, i) = p.gamma * p.b0 * m + p.d * (m * m - kShift);
  }
  return h;
}

EnergyLevels transition_frequencies(const SpinQuartetParams& p) {
  const Mat4c h = static_hamiltonian(p);
  EnergyLevels e;
  for (int i = 0; i < 4; ++i) e.eps[i] = h(i, i).real();
  e.f1 = std::abs(e.eps[2] - e.eps[3]);
  e.f2 = std::abs(e.eps[1] - e.eps[2]);
  e.f3 = std::abs(e.eps[0] - e.eps[1]);
  return e;
}

}  // namespace vsic
