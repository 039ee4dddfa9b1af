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

#include <algorithm>
#include <cmath>
#include <vector>

#include "vsic/errors.hpp"
#include "vsic/fit.hpp"
#include "vsic/pulse.hpp"

using namespace vsic;

namespace {

const SpinQuartetParams kIsolated{28.0, 50.0, 10.0};

std::vector<double> linspace(double a, double b, std::size_t n) {
  std::vector<double> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = a + (b - a) * static_cast<double>(i) / static_cast<double>(n - 1);
  return v;
}

// Pure |-3/2> start, read out on |-3/2> only, ideal pulses on f1.
SequenceOptions ideal_f1() {
  SequenceOptions opt;
  opt.omega = 5.0;
  opt.target = Transition::f1;
  opt.ideal_pulses = true;
  opt.init = {{0.0, 0.0, 0.0, 1.0}};
  opt.brightness = {{0.0, 0.0, 0.0, 1.0}};
  return opt;
}

}  // namespace

TEST_SUITE("pulse") {

TEST_CASE("sequence structure is validated") {
  PulseSequence seq;
  seq.segments = {PulseSegment::wait(0.0, 1.0), PulseSegment::laser_read()};
  CHECK_THROWS_AS(seq.validate(), StructuralError);
  seq.segments = {PulseSegment::laser_init(), PulseSegment::wait(0.0, 1.0)};
  CHECK_THROWS_AS(seq.validate(), StructuralError);

  seq.segments = {PulseSegment::laser_init(), PulseSegment::rf_pulse(0.1, {1.0, 164.0, 0.0, std::nullopt}),
                  PulseSegment::wait(0.0, 1.0), PulseSegment::rf_pulse(0.1, {1.0, 168.0, 0.0, std::nullopt}),
                  PulseSegment::laser_read()};
  CHECK_THROWS_AS(simulate_sequence(seq, SpinQuartetParams{}, NoiseModel{}, std::vector<double>{0.0, 1.0}),
                  StructuralError);

  PulseSegment bad = PulseSegment::wait(1.0);
  bad.rf = RfDrive{1.0, 1.0, 0.0, std::nullopt};
  seq.segments = {PulseSegment::laser_init(), bad, PulseSegment::laser_read()};
  CHECK_THROWS_AS(seq.validate(), StructuralError);
}

TEST_CASE("same seed gives bit-identical output, independent of jobs") {
  NoiseModel noise;
  noise.sigma_detuning = 0.3;
  noise.ensemble_size = 64;
  noise.t2_homogeneous = 50.0;
  const auto tau = linspace(0.0, 3.0, 13);
  SequenceOptions opt;
  const auto a = ramsey_trace(SpinQuartetParams{}, noise, tau, opt, 1);
  const auto b = ramsey_trace(SpinQuartetParams{}, noise, tau, opt, 1);
  const auto c = ramsey_trace(SpinQuartetParams{}, noise, tau, opt, 3);
  CHECK(a == b);
  CHECK(a == c);
  noise.seed += 1;
  CHECK(ramsey_trace(SpinQuartetParams{}, noise, tau, opt, 1) != a);
}

TEST_CASE("pi calibration on an isolated transition") {
  const PiCalibration cal = calibrate_pi_pulse(kIsolated, 1.0, Transition::f1);
  CHECK(cal.duration == doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(0.01));
  CHECK(cal.transfer == doctest::Approx(0.5).epsilon(1e-3));
  CHECK_THROWS_AS(calibrate_pi_pulse(kIsolated, 0.0, Transition::f1), NumericalError);
}

TEST_CASE("pi calibration on the default system is imperfect and matches an exhaustive grid") {
  const SpinQuartetParams spin;
  const PiCalibration cal = calibrate_pi_pulse(spin, 7.0, Transition::f1);
  CHECK(cal.transfer < 1.0);
  const EnergyLevels lv = transition_frequencies(spin);
  const Mat4c h = rotating_frame_hamiltonian(spin, {7.0, lv.f1, 0.0});
  double best = 0.0;
  for (int i = 1; i <= 4000; ++i) {
    const double t = cal.duration * 1.5 * i / 4000.0;
    const auto a = propagate_populations(h, 0, t);
    const auto b = propagate_populations(h, 3, t);
    best = std::max(best, 0.5 * (a[1] + a[2] + b[1] + b[2]));
  }
  CHECK(cal.transfer >= best - 1e-6);
}

TEST_CASE("weak pulses transfer within one Kramers pair") {
  const SpinQuartetParams spin;
  const RegimeResult r = pi_pulse_regime_states(spin, 0.05 * spin.d);
  CHECK(r.regime == PulseRegime::weak);
  CHECK(r.from_plus.populations[1] >= 0.99);
  CHECK(r.from_minus.populations[2] >= 0.99);
  CHECK(r.from_plus.overlap >= 0.99);
}

TEST_CASE("strong pulses approach a spin-3/2 rotation by pi/2") {
  // Wigner d^{3/2}(pi/2) populations from |+3/2>: (1, 3, 3, 1) / 8.
  const std::array<double, 4> wigner{0.125, 0.375, 0.375, 0.125};
  const SpinQuartetParams spin;
  for (double ratio : {50.0, 500.0}) {
    const RegimeResult r = pi_pulse_regime_states(spin, ratio * spin.d);
    CHECK(r.regime == PulseRegime::strong);
    const double tol = ratio == 50.0 ? 0.02 : 0.002;
    for (int m = 0; m < 4; ++m) {
      CHECK(std::abs(r.from_plus.populations[m] - wigner[m]) < tol);
      CHECK(std::abs(r.from_minus.populations[m] - wigner[3 - m]) < tol);
    }
  }
}

TEST_CASE("regime classification and overlap range") {
  const SpinQuartetParams spin;
  CHECK(classify_regime(spin, 2.0) == PulseRegime::comparable);
  const RegimeResult r = pi_pulse_regime_states(spin, 2.0);
  CHECK(r.from_plus.overlap >= 0.0);
  CHECK(r.from_plus.overlap <= 1.0 + 1e-12);
  double sum = 0.0;
  for (double p : r.from_plus.populations) sum += p;
  CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("Hahn echo refocuses quasi-static detuning") {
  NoiseModel noise;
  noise.sigma_detuning = 0.5;
  noise.ensemble_size = 400;
  const auto tau = linspace(0.0, 10.0, 11);
  const auto y = hahn_trace(kIsolated, noise, tau, ideal_f1());
  for (double v : y) CHECK(std::abs(v - 1.0) <= 3.0 / std::sqrt(400.0));
}

TEST_CASE("Ramsey fringe follows the applied detuning") {
  SequenceOptions opt = ideal_f1();
  opt.detuning = 2.0;
  const double dt = 0.01;
  std::vector<double> tau(1024);
  for (std::size_t i = 0; i < tau.size(); ++i) tau[i] = dt * static_cast<double>(i);
  const auto y = ramsey_trace(kIsolated, NoiseModel{}, tau, opt);
  const double bin = 1.0 / (dt * static_cast<double>(tau.size()));
  CHECK(std::abs(extract_dominant_rabi_frequency(y, dt) - 2.0) <= bin);
  const auto [lo, hi] = std::minmax_element(y.begin(), y.end());
  CHECK(*hi - *lo > 0.99);
}

TEST_CASE("Ramsey dephasing envelope is Gaussian with T2* = sqrt(2)/(2 pi s)") {
  const double s = 0.2;
  NoiseModel noise;
  noise.sigma_detuning = s;
  noise.ensemble_size = 4000;
  const auto tau = linspace(0.0, 4.0, 41);
  const auto y = ramsey_trace(kIsolated, noise, tau, ideal_f1());
  const FitResult f = fit_decay(tau, y, DecayModel::gaussian);
  REQUIRE(f.ok());
  CHECK(f.time_constant() == doctest::Approx(std::sqrt(2.0) / (2.0 * M_PI * s)).epsilon(0.05));
}

TEST_CASE("Hahn envelope follows exp(-2 tau / T2) regardless of sigma") {
  for (double s : {0.0, 0.4}) {
    NoiseModel noise;
    noise.sigma_detuning = s;
    noise.ensemble_size = s > 0.0 ? 200 : 1;
    noise.t2_homogeneous = 83.9;
    const auto tau = linspace(0.0, 150.0, 31);
    const auto y = hahn_trace(kIsolated, noise, tau, ideal_f1());
    std::vector<double> t_free(tau.size());
    for (std::size_t i = 0; i < tau.size(); ++i) t_free[i] = 2.0 * tau[i];
    const FitResult f = fit_decay(t_free, y, DecayModel::exponential);
    REQUIRE(f.ok());
    CHECK(f.time_constant() == doctest::Approx(83.9).epsilon(0.02));
  }
}

TEST_CASE("white psd reproduces the homogeneous envelope") {
  NoiseModel with_psd;
  with_psd.psd = NoisePsd::white(1.0 / 83.9);
  NoiseModel with_t2;
  with_t2.t2_homogeneous = 83.9;
  const auto tau = linspace(1.0, 100.0, 12);
  const auto a = hahn_trace(kIsolated, with_psd, tau, ideal_f1());
  const auto b = hahn_trace(kIsolated, with_t2, tau, ideal_f1());
  for (std::size_t i = 0; i < tau.size(); ++i) CHECK(a[i] == doctest::Approx(b[i]).epsilon(1e-5));
}

TEST_CASE("calibrated pulses are used unless ideal pulses are requested") {
  SequenceOptions opt;
  opt.omega = 7.0;
  const PulseSequence seq = hahn_sequence(SpinQuartetParams{}, opt);
  const PiCalibration cal = calibrate_pi_pulse(SpinQuartetParams{}, 7.0, Transition::f1);
  CHECK(seq.segments[1].duration == doctest::Approx(0.5 * cal.duration));
  CHECK(seq.segments[3].duration == doctest::Approx(cal.duration));
  CHECK_FALSE(seq.segments[3].rf->ideal.has_value());
  const PulseSequence xy = xy8_sequence(SpinQuartetParams{}, ideal_f1(), 2);
  const auto pulses = std::count_if(xy.segments.begin(), xy.segments.end(),
                                    [](const PulseSegment& s) { return s.kind == SegmentKind::rf_pulse; });
  CHECK(pulses == 2 + 16);
}

TEST_CASE("snr_ratio closed form") {
  CHECK(snr_ratio(0.0) == 1.0);
  CHECK(snr_ratio(0.5) == std::sqrt(2.0));
  CHECK(snr_ratio(0.99) == doctest::Approx(10.0).epsilon(1e-12));
  double prev = 0.0;
  for (int i = 0; i < 100; ++i) {
    const double v = snr_ratio(i / 100.0);
    CHECK(v >= 1.0);
    CHECK(v > prev);
    prev = v;
  }
  CHECK_THROWS_AS(snr_ratio(1.0), DomainError);
  CHECK_THROWS_AS(snr_ratio(-0.1), DomainError);
}

TEST_CASE("snr_ratio matches the uncertainty-propagation expression") {
  // Equal contrast on both signals: I_p = I0 / (1 - C), I_m = I0 (1 - C).
  for (double c : {0.1, 0.5, 0.99}) {
    const double i0 = 1e5, ip = i0 / (1.0 - c), im = i0 * (1.0 - c);
    const double d_cm = std::sqrt((im * i0 + im * im) / (i0 * i0 * i0));
    const double d_cp = std::sqrt((i0 * ip + i0 * i0) / (ip * ip * ip));
    CHECK(snr_ratio(c) == doctest::Approx(d_cm / d_cp).epsilon(1e-12));
  }
}

}  // TEST_SUITE
