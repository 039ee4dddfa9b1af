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

#include <unsupported/Eigen/MatrixFunctions>

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "vsic/errors.hpp"
#include "vsic/rabi.hpp"

using namespace vsic;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// D = 50 MHz keeps neighbouring transitions 100 MHz away from any drive.
const SpinQuartetParams kIsolated{28.0, 50.0, 10.0};

std::vector<double> grid(double dt, std::size_t n) {
  std::vector<double> t(n);
  for (std::size_t i = 0; i < n; ++i) t[i] = dt * static_cast<double>(i);
  return t;
}

Mat4c random_hermitian(std::mt19937_64& rng, double scale) {
  std::normal_distribution<double> g(0.0, scale);
  Mat4c a;
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) a(i, j) = cplx(g(rng), g(rng));
  }
  return 0.5 * (a + a.adjoint());
}

Mat4c brute_force_propagator(const Mat4c& h, double t, double step) {
  const auto n = static_cast<int>(std::ceil(t / step));
  const double dt = t / n;
  const Mat4c u_step = (cplx(0.0, -2.0 * M_PI * dt) * h).exp();
  Mat4c u = Mat4c::Identity();
  for (int i = 0; i < n; ++i) u = u_step * u;
  return u;
}

std::vector<double> trace_for(const SpinQuartetParams& spin, const DriveParams& d, std::array<double, 4> init,
                              std::array<double, 4> bright, double t2, std::span<const double> t) {
  RotatingFrameModel m{rotating_frame_hamiltonian(spin, d), {init}, {bright}, t2};
  return pl_trace(m, t);
}

}  // namespace

TEST_SUITE("rabi") {

TEST_CASE("rotating frame couplings and diagonal gaps") {
  const SpinQuartetParams spin;
  const EnergyLevels lv = transition_frequencies(spin);
  for (double omega : {0.0, 2.0, 7.0, 15.0}) {
    const Mat4c h = rotating_frame_hamiltonian(spin, {omega, 166.0, 0.3});
    CHECK(std::abs(h(0, 1)) == doctest::Approx(std::sqrt(3.0) / 4.0 * omega));
    CHECK(std::abs(h(1, 2)) == doctest::Approx(omega / 2.0));
    CHECK(std::abs(h(2, 3)) == doctest::Approx(std::sqrt(3.0) / 4.0 * omega));
    CHECK(std::abs(h(0, 2)) == 0.0);
    CHECK(std::abs(h(0, 3)) == 0.0);
    CHECK(hermitian_defect(h) < 1e-12);
  }
  const Mat4c h = rotating_frame_hamiltonian(spin, {0.0, lv.f2, 0.0});
  CHECK((h(0, 0) - h(1, 1)).real() == doctest::Approx(2.0 * spin.d));
  CHECK((h(1, 1) - h(2, 2)).real() == doctest::Approx(0.0).scale(1.0));
  CHECK((h(2, 2) - h(3, 3)).real() == doctest::Approx(-2.0 * spin.d));
}

TEST_CASE("resonant drive closes the targeted gap") {
  const SpinQuartetParams spin;
  const EnergyLevels lv = transition_frequencies(spin);
  CHECK(std::abs((rotating_frame_hamiltonian(spin, {1.0, lv.f1, 0.0})(2, 2) -
                  rotating_frame_hamiltonian(spin, {1.0, lv.f1, 0.0})(3, 3)).real()) < 1e-12);
  CHECK(std::abs((rotating_frame_hamiltonian(spin, {1.0, lv.f3, 0.0})(0, 0) -
                  rotating_frame_hamiltonian(spin, {1.0, lv.f3, 0.0})(1, 1)).real()) < 1e-12);
}

TEST_CASE("unitarity over 1000 random propagations") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> time(0.0, 50.0);
  double worst = 0.0;
  for (int draw = 0; draw < 1000; ++draw) {
    const Mat4c h = random_hermitian(rng, 20.0);
    const double t = time(rng);
    for (int k = 0; k < 4; ++k) {
      const auto p = propagate_populations(h, k, t);
      worst = std::max(worst, std::abs(p[0] + p[1] + p[2] + p[3] - 1.0));
    }
  }
  CHECK(worst < 1e-9);
}

TEST_CASE("identity at t = 0") {
  std::mt19937_64 rng(3);
  const Mat4c h = random_hermitian(rng, 5.0);
  for (int k = 0; k < 4; ++k) {
    const auto p = propagate_populations(h, k, 0.0);
    for (int m = 0; m < 4; ++m) CHECK(p[m] == doctest::Approx(m == k ? 1.0 : 0.0).scale(1.0).epsilon(1e-14));
  }
}

TEST_CASE("eigendecomposition agrees with a time-ordered product of small steps") {
  std::mt19937_64 rng(5);
  for (int draw = 0; draw < 5; ++draw) {
    const Mat4c h = random_hermitian(rng, 3.0);
    const double t = 0.37 + 0.1 * draw;
    const Mat4c u = brute_force_propagator(h, t, 1e-4);
    for (int k = 0; k < 4; ++k) {
      const auto p = propagate_populations(h, k, t);
      for (int m = 0; m < 4; ++m) CHECK(std::abs(p[m] - std::norm(u(m, k))) < 1e-6);
    }
  }
}

TEST_CASE("rotating-frame populations equal lab-frame populations") {
  // Small Zeeman splitting keeps the lab-frame integration cheap.
  const SpinQuartetParams spin{28.0, 2.0, 0.5};
  const DriveParams drive{3.0, 14.3, 0.4};
  const Mat4c h_rot = rotating_frame_hamiltonian(spin, drive);
  const Mat4c h0 = static_hamiltonian(spin);
  const double dt = 1e-4;
  Vec4c psi = Vec4c::Zero();
  psi(3) = 1.0;
  double t = 0.0;
  for (int step = 1; step <= 8000; ++step) {
    // Lab-frame RWA Hamiltonian at the step midpoint: the coupling on (i+1, i)
    // rotates at the drive carrier.
    const double tm = t + 0.5 * dt;
    Mat4c h = h0;
    for (int i = 0; i < 3; ++i) {
      const cplx c = h_rot(i + 1, i) * std::polar(1.0, 2.0 * M_PI * drive.f * tm);
      h(i + 1, i) = c;
      h(i, i + 1) = std::conj(c);
    }
    psi = (cplx(0.0, -2.0 * M_PI * dt) * h).exp() * psi;
    t += dt;
    if (step % 2000 == 0) {
      const auto p = propagate_populations(h_rot, 3, t);
      for (int m = 0; m < 4; ++m) CHECK(std::abs(p[m] - std::norm(psi(m))) < 1e-5);
    }
  }
}

TEST_CASE("isolated two-level transfer peaks at 1/sqrt(3) us") {
  const EnergyLevels lv = transition_frequencies(kIsolated);
  const Mat4c h = rotating_frame_hamiltonian(kIsolated, {1.0, lv.f1, 0.0});
  // dense scan oracle for the first maximum
  double best_t = 0.0, best = -1.0;
  for (int i = 0; i <= 20000; ++i) {
    const double t = 1e-4 * i;
    const double p = propagate_populations(h, 3, t)[2];
    if (p > best + 1e-12) {
      best = p;
      best_t = t;
    } else if (p < best - 1e-3) {
      break;
    }
  }
  CHECK(best_t == doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(0.01));
  CHECK(best > 0.999);
}

TEST_CASE("pl_trace without drive is flat") {
  const std::vector<double> t = grid(0.01, 200);
  const auto y = trace_for(SpinQuartetParams{}, {0.0, 168.0, 0.0}, {0.1, 0.2, 0.3, 0.4}, {1.0, 0.5, 0.25, 2.0},
                           0.2, t);
  const double ref = 0.1 * 1.0 + 0.2 * 0.5 + 0.3 * 0.25 + 0.4 * 2.0;
  for (double v : y) CHECK(v == doctest::Approx(ref).epsilon(1e-12));
}

TEST_CASE("middle transition oscillates at omega and decays with t2_star") {
  const EnergyLevels lv = transition_frequencies(kIsolated);
  const std::vector<double> t = grid(0.005, 400);
  const double omega = 1.5;
  const auto y = trace_for(kIsolated, {omega, lv.f2, 0.0}, {0, 0, 1, 0}, {0, 0, 1, 0}, 0.2, t);
  for (std::size_t i = 0; i < t.size(); ++i) {
    const double ref = 0.5 + 0.5 * std::cos(2.0 * M_PI * omega * t[i]) * std::exp(-t[i] / 0.2);
    CHECK(std::abs(y[i] - ref) < 2e-3);
  }
}

TEST_CASE("mixed initial state is the weighted sum of pure traces") {
  const SpinQuartetParams spin;
  const std::vector<double> t = grid(0.01, 300);
  const std::array<double, 4> p{0.4, 0.1, 0.2, 0.3}, b{1.0, 0.3, 0.6, 0.9};
  const DriveParams d{7.0, 167.0, 0.2};
  const auto mixed = trace_for(spin, d, p, b, 0.2, t);
  std::vector<double> sum(t.size(), 0.0);
  for (int k = 0; k < 4; ++k) {
    std::array<double, 4> pure{};
    pure[k] = 1.0;
    const auto y = trace_for(spin, d, pure, b, 0.2, t);
    for (std::size_t i = 0; i < t.size(); ++i) sum[i] += p[k] * y[i];
  }
  for (std::size_t i = 0; i < t.size(); ++i) CHECK(std::abs(mixed[i] - sum[i]) < 1e-12);
}

TEST_CASE("detuning parabola on an isolated transition") {
  const EnergyLevels lv = transition_frequencies(kIsolated);
  const double omega = 2.0, omega_r = std::sqrt(3.0) / 2.0 * omega;
  const double dt = 0.01;
  const std::vector<double> t = grid(dt, 2000);
  for (double x = -3.0; x <= 3.0 + 1e-9; x += 0.5) {
    const double delta = x * omega_r;
    const auto y = trace_for(kIsolated, {omega, lv.f1 + delta, 0.0}, {0, 0, 0, 1}, {0, 0, 0, 1}, kInf, t);
    const double f = extract_dominant_rabi_frequency(y, dt);
    CHECK(f * f == doctest::Approx(omega_r * omega_r + delta * delta).epsilon(0.01));
  }
}

TEST_CASE("outer and middle Rabi frequencies are in ratio 2/sqrt(3)") {
  const EnergyLevels lv = transition_frequencies(kIsolated);
  const double dt = 0.01;
  const std::vector<double> t = grid(dt, 2000);
  const auto mid = trace_for(kIsolated, {2.0, lv.f2, 0.0}, {0, 0, 1, 0}, {0, 0, 1, 0}, kInf, t);
  const auto outer = trace_for(kIsolated, {2.0, lv.f1, 0.0}, {0, 0, 0, 1}, {0, 0, 0, 1}, kInf, t);
  const double ratio = extract_dominant_rabi_frequency(mid, dt) / extract_dominant_rabi_frequency(outer, dt);
  CHECK(ratio == doctest::Approx(2.0 / std::sqrt(3.0)).epsilon(0.01));
}

TEST_CASE("rabi_map rows match pl_trace and are flat without drive") {
  const SpinQuartetParams spin;
  const std::vector<double> t = grid(0.01, 100);
  const std::vector<double> f{166.0};
  const Grid2D map = rabi_map(spin, 7.0, f, t, {}, {}, 0.2);
  const auto ref = trace_for(spin, {7.0, 166.0, 0.0}, {0.5, 0, 0, 0.5}, {1, 0, 0, 1}, 0.2, t);
  for (std::size_t i = 0; i < t.size(); ++i) CHECK(map(0, i) == ref[i]);

  const std::vector<double> fs{160.0, 168.0, 190.0};
  const Grid2D flat = rabi_map(spin, 0.0, fs, t, {}, {}, 0.2);
  for (std::size_t r = 0; r < fs.size(); ++r) {
    const auto row = flat.row(r);
    const auto [lo, hi] = std::minmax_element(row.begin(), row.end());
    CHECK(*hi - *lo < 1e-12);
  }
}

TEST_CASE("modulation is strongest near the resonances") {
  const SpinQuartetParams spin;
  std::vector<double> f;
  for (int i = 0; i <= 60; ++i) f.push_back(160.0 + 0.5 * i);
  const Grid2D map = rabi_map(spin, 2.0, f, grid(0.005, 400), {}, {}, 0.2, 2);
  std::vector<double> depth(f.size());
  for (std::size_t r = 0; r < f.size(); ++r) {
    const auto row = map.row(r);
    const auto [lo, hi] = std::minmax_element(row.begin(), row.end());
    depth[r] = *hi - *lo;
  }
  const auto best = std::max_element(depth.begin(), depth.end()) - depth.begin();
  const double fb = f[static_cast<std::size_t>(best)];
  CHECK(std::min({std::abs(fb - 164.0), std::abs(fb - 168.0), std::abs(fb - 172.0)}) <= 1.0);
  CHECK(depth.front() < 0.5 * depth[static_cast<std::size_t>(best)]);
  CHECK(depth.back() < 0.5 * depth[static_cast<std::size_t>(best)]);
}

TEST_CASE("rabi_map output does not depend on the worker count") {
  const std::vector<double> f{160.0, 164.0, 166.5, 168.0, 172.0, 190.0};
  const auto t = grid(0.01, 64);
  const Grid2D a = rabi_map(SpinQuartetParams{}, 7.0, f, t, {}, {}, 0.2, 1);
  const Grid2D b = rabi_map(SpinQuartetParams{}, 7.0, f, t, {}, {}, 0.2, 4);
  CHECK(a.data == b.data);
}

TEST_CASE("rabi_fft finds a known tone and removes DC") {
  const double dt = 0.004;
  const auto t = grid(dt, 1000);
  Grid2D map(1, t.size());
  for (std::size_t i = 0; i < t.size(); ++i) map(0, i) = 3.0 + std::cos(2.0 * M_PI * 10.0 * t[i]) * std::exp(-t[i]);
  const RabiSpectrum s = rabi_fft(map, t);
  CHECK(s.magnitude(0, 0) == 0.0);
  const auto row = s.magnitude.row(0);
  const auto k = static_cast<std::size_t>(std::max_element(row.begin(), row.end()) - row.begin());
  const double bin = s.freq[1] - s.freq[0];
  CHECK(std::abs(s.freq[k] - 10.0) <= bin);

  std::vector<double> bad = t;
  bad[5] += 0.001;
  CHECK_THROWS_AS(rabi_fft(map, bad), DomainError);
}

TEST_CASE("dominant frequency extraction") {
  const double dt = 0.01;
  const auto t = grid(dt, 4096);
  std::vector<double> tone(t.size());
  for (std::size_t i = 0; i < t.size(); ++i) tone[i] = std::sin(2.0 * M_PI * 7.0 * t[i]);
  CHECK(extract_dominant_rabi_frequency(tone, dt) == doctest::Approx(7.0).epsilon(0.05 / 7.0));

  const std::vector<double> flat(64, 0.25);
  CHECK_THROWS_AS(extract_dominant_rabi_frequency(flat, dt), NumericalError);
  const std::vector<double> short_trace(15, 1.0);
  CHECK_THROWS_AS(extract_dominant_rabi_frequency(short_trace, dt), DomainError);
}

TEST_CASE("non-Hermitian input is rejected") {
  Mat4c h = Mat4c::Zero();
  h(0, 1) = 1.0;
  CHECK_THROWS(propagate_populations(h, 0, 1.0));
}

TEST_CASE("two-level isolated limit with 50 MHz detuning parabola branch") {
  const EnergyLevels lv = transition_frequencies(kIsolated);
  const double omega = 2.0, omega_r = std::sqrt(3.0) / 2.0 * omega, dt = 0.01;
  const auto t = grid(dt, 2000);
  const auto y = trace_for(kIsolated, {omega, lv.f3 - 1.5 * omega_r, 0.0}, {1, 0, 0, 0}, {1, 0, 0, 0}, kInf, t);
  CHECK(extract_dominant_rabi_frequency(y, dt) ==
        doctest::Approx(std::sqrt(omega_r * omega_r + 2.25 * omega_r * omega_r)).epsilon(0.01));
}

}  // TEST_SUITE
