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

#include <doctest.h>

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <random>

#include "vsic/errors.hpp"
#include "vsic/spin_hamiltonian.hpp"

using namespace vsic;

TEST_SUITE("spin") {

TEST_CASE("spin matrices obey the angular momentum algebra") {
  const SpinMatrices s = spin_matrices();
  CHECK(s.sz(0, 0).real() == 1.5);
  CHECK(s.sz(3, 3).real() == -1.5);
  const Mat4c comm = s.sx * s.sy - s.sy * s.sx - cplx(0.0, 1.0) * s.sz;
  CHECK(comm.cwiseAbs().maxCoeff() < 1e-12);
  const Mat4c s2 = s.sx * s.sx + s.sy * s.sy + s.sz * s.sz;
  CHECK((s2 - 3.75 * Mat4c::Identity()).cwiseAbs().maxCoeff() < 1e-12);
  CHECK(std::abs(s.sx(0, 1)) == doctest::Approx(std::sqrt(3.0) / 2.0).epsilon(1e-15));
  CHECK(std::abs(s.sx(1, 2)) == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("default parameters give 164, 168 and 172 MHz") {
  const EnergyLevels e = transition_frequencies({28.0, 2.0, 6.0});
  CHECK(e.f1 == doctest::Approx(164.0).epsilon(1e-14));
  CHECK(e.f2 == doctest::Approx(168.0).epsilon(1e-14));
  CHECK(e.f3 == doctest::Approx(172.0).epsilon(1e-14));
  CHECK(e.eps[0] == doctest::Approx(254.0));
  CHECK(e.eps[1] == doctest::Approx(82.0));
  CHECK(e.eps[2] == doctest::Approx(-86.0));
  CHECK(e.eps[3] == doctest::Approx(-250.0));
}

TEST_CASE("zero field leaves only the zero-field splitting") {
  const EnergyLevels e = transition_frequencies({28.0, 2.0, 0.0});
  CHECK(e.f1 == doctest::Approx(4.0));
  CHECK(e.f2 == doctest::Approx(0.0));
  CHECK(e.f3 == doctest::Approx(4.0));
  CHECK(e.eps[0] == doctest::Approx(2.0));
  CHECK(e.eps[1] == doctest::Approx(-2.0));
}

TEST_CASE("one tesla field") {
  const EnergyLevels e = transition_frequencies({28.0, 2.0, 100.0});
  CHECK(e.f1 == doctest::Approx(2796.0));
  CHECK(e.f2 == doctest::Approx(2800.0));
  CHECK(e.f3 == doctest::Approx(2804.0));
}

TEST_CASE("random draws agree with a generic eigensolver") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> gamma(1.0, 50.0), d(-20.0, 20.0), b0(0.0, 200.0);
  const SpinMatrices s = spin_matrices();
  for (int draw = 0; draw < 100; ++draw) {
    const SpinQuartetParams p{gamma(rng), d(rng), b0(rng)};
    const Mat4c h = static_hamiltonian(p);
    CHECK(hermitian_defect(h) < 1e-12);
    CHECK(std::abs(h.trace()) < 1e-9 * (1.0 + p.gamma * p.b0));

    // Operator form built from the spin matrices, independent of the diagonal formula.
    const Mat4c op = p.gamma * p.b0 * s.sz + p.d * (s.sz * s.sz - 1.25 * Mat4c::Identity());
    Eigen::SelfAdjointEigenSolver<Mat4c> es(op);
    std::array<double, 4> ref{}, got{};
    for (int i = 0; i < 4; ++i) {
      ref[i] = es.eigenvalues()(i);
      got[i] = h(i, i).real();
    }
    std::sort(got.begin(), got.end());
    for (int i = 0; i < 4; ++i) CHECK(got[i] == doctest::Approx(ref[i]).epsilon(1e-12).scale(1.0));

    const EnergyLevels e = transition_frequencies(p);
    if (p.gamma * p.b0 >= 2.0 * std::abs(p.d)) {
      CHECK(std::abs(e.f3 - e.f1) == doctest::Approx(4.0 * std::abs(p.d)).scale(1.0));
      CHECK(e.f3 + e.f1 == doctest::Approx(2.0 * p.gamma * p.b0));
      CHECK(e.f2 == doctest::Approx(p.gamma * p.b0));
    }
  }
}

TEST_CASE("invalid parameters are rejected") {
  CHECK_THROWS_AS(static_hamiltonian({-1.0, 2.0, 6.0}), DomainError);
  CHECK_THROWS_AS(static_hamiltonian({28.0, 2.0, -6.0}), DomainError);
  CHECK_THROWS_AS(static_hamiltonian({28.0, std::nan(""), 6.0}), DomainError);
}

}  // TEST_SUITE
