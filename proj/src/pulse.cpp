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

#include "vsic/pulse.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "vsic/errors.hpp"
#include "vsic/parallel.hpp"

namespace vsic {
namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

double two_level_rabi(Transition t, double omega) {
  return t == Transition::f2 ? omega : 0.5 * std::sqrt(3.0) * omega;
}

Mat4c ideal_rotation(const RfDrive& rf, double duration) {
  const auto [lo, up] = transition_levels(*rf.ideal);
  const double half_angle = M_PI * two_level_rabi(*rf.ideal, rf.omega) * duration;
  const cplx phase = std::polar(1.0, rf.phase);
  Mat4c u = Mat4c::Identity();
  u(lo, lo) = u(up, up) = std::cos(half_angle);
  u(lo, up) = cplx(0.0, -std::sin(half_angle)) * phase;
  u(up, lo) = cplx(0.0, -std::sin(half_angle)) * std::conj(phase);
  return u;
}

void scale_coherences(Mat4c& rho, double factor) {
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      if (i != j) rho(i, j) *= factor;
    }
  }
}

// Free-evolution timeline between the first and last rf pulse.
struct FilterTimeline {
  double total = 0.0;
  std::vector<double> positions;
};

FilterTimeline filter_timeline(const PulseSequence& seq, double sweep, std::size_t first_rf,
                               std::size_t last_rf) {
  FilterTimeline tl;
  std::vector<double> switch_times;
  for (std::size_t s = first_rf + 1; s < last_rf; ++s) {
    const auto& seg = seq.segments[s];
    if (seg.kind == SegmentKind::wait) tl.total += seg.duration_at(sweep);
    if (seg.kind == SegmentKind::rf_pulse) switch_times.push_back(tl.total);
  }
  if (tl.total > 0.0) {
    for (double t : switch_times) tl.positions.push_back(t / tl.total);
  }
  return tl;
}

}  // namespace

PulseSegment PulseSegment::laser_init(double duration) {
  return {SegmentKind::laser_init, duration, 0.0, std::nullopt};
}

PulseSegment PulseSegment::laser_read(double duration) {
  return {SegmentKind::laser_read, duration, 0.0, std::nullopt};
}

PulseSegment PulseSegment::wait(double duration, double sweep_scale) {
  return {SegmentKind::wait, duration, sweep_scale, std::nullopt};
}

PulseSegment PulseSegment::rf_pulse(double duration, const RfDrive& rf, double sweep_scale) {
  return {SegmentKind::rf_pulse, duration, sweep_scale, rf};
}

void PulseSequence::validate() const {
  if (segments.empty() || segments.front().kind != SegmentKind::laser_init) {
    throw StructuralError("pulse sequence must begin with laser_init");
  }
  if (segments.back().kind != SegmentKind::laser_read) {
    throw StructuralError("pulse sequence must end with laser_read");
  }
  std::optional<double> carrier;
  for (std::size_t i = 0; i < segments.size(); ++i) {
    const auto& s = segments[i];
    if (!(s.duration >= 0.0) || !std::isfinite(s.duration) || !std::isfinite(s.sweep_scale)) {
      throw StructuralError("segment durations must be finite and >= 0");
    }
    if (s.kind == SegmentKind::laser_read && i + 1 != segments.size()) {
      throw StructuralError("laser_read is only allowed as the final segment");
    }
    if ((s.kind == SegmentKind::rf_pulse) != s.rf.has_value()) {
      throw StructuralError("rf parameters must be present exactly on rf_pulse segments");
    }
    if (s.rf) {
      if (!(s.rf->omega >= 0.0) || !(s.rf->f > 0.0) || !std::isfinite(s.rf->phase)) {
        throw StructuralError("rf_pulse needs omega >= 0, f > 0 and a finite phase");
      }
      if (carrier && std::abs(*carrier - s.rf->f) > 1e-9) {
        throw StructuralError("all rf pulses in a sequence must share one carrier frequency");
      }
      carrier = s.rf->f;
    }
  }
  init.validate();
  brightness.validate();
}

bool PulseSequence::has_sweep() const {
  return std::any_of(segments.begin(), segments.end(), [](const PulseSegment& s) { return s.sweep_scale != 0.0; });
}

void NoiseModel::validate() const {
  if (!(sigma_detuning >= 0.0) || !std::isfinite(sigma_detuning)) {
    throw DomainError("sigma_detuning must be finite and >= 0");
  }
  if (!(t2_homogeneous > 0.0)) throw DomainError("t2_homogeneous must be > 0");
  if (ensemble_size < 1) throw DomainError("ensemble_size must be >= 1");
  if (psd) psd->validate();
}

std::vector<double> simulate_sequence(const PulseSequence& seq, const SpinQuartetParams& spin,
                                      const NoiseModel& noise, std::span<const double> sweep_grid,
                                      unsigned jobs) {
  seq.validate();
  noise.validate();
  spin.validate();
  if (!seq.has_sweep()) throw StructuralError("pulse sequence has no swept duration");
  if (!std::is_sorted(sweep_grid.begin(), sweep_grid.end())) throw DomainError("sweep grid must be sorted");

  std::optional<std::size_t> first_rf, last_rf;
  double carrier = 0.0;
  for (std::size_t s = 0; s < seq.segments.size(); ++s) {
    if (seq.segments[s].kind != SegmentKind::rf_pulse) continue;
    if (!first_rf) first_rf = s;
    last_rf = s;
    carrier = seq.segments[s].rf->f;
  }

  const Mat4c h0 = static_hamiltonian(spin);
  std::array<double, 4> free_diag;
  for (int m = 0; m < 4; ++m) free_diag[m] = h0(m, m).real() - kSpinProjection[m] * carrier;

  std::vector<double> detuning(static_cast<std::size_t>(noise.ensemble_size), 0.0);
  if (noise.sigma_detuning > 0.0) {
    for (std::size_t i = 0; i < detuning.size(); ++i) {
      std::mt19937_64 rng(splitmix64(noise.seed ^ splitmix64(i)));
      std::normal_distribution<double> normal(0.0, noise.sigma_detuning);
      detuning[i] = normal(rng);
    }
  }

  // Propagators for each distinct (omega, phase) drive, per ensemble member.
  struct DriveKey {
    double omega, phase;
  };
  std::vector<DriveKey> drives;
  for (const auto& s : seq.segments) {
    if (!s.rf || s.rf->ideal) continue;
    const bool seen = std::any_of(drives.begin(), drives.end(), [&](const DriveKey& k) {
      return k.omega == s.rf->omega && k.phase == s.rf->phase;
    });
    if (!seen) drives.push_back({s.rf->omega, s.rf->phase});
  }
  std::vector<std::vector<HermitianPropagator>> props(detuning.size());
  parallel_for(detuning.size(), jobs, [&](std::size_t i) {
    for (const auto& k : drives) {
      Mat4c h = rotating_frame_hamiltonian(spin, {k.omega, carrier, k.phase});
      for (int m = 0; m < 4; ++m) h(m, m) += kSpinProjection[m] * detuning[i];
      props[i].emplace_back(h);
    }
  });
  auto drive_index = [&](const RfDrive& rf) {
    for (std::size_t d = 0; d < drives.size(); ++d) {
      if (drives[d].omega == rf.omega && drives[d].phase == rf.phase) return d;
    }
    return std::size_t{0};
  };

  const double inv_t2 = std::isfinite(noise.t2_homogeneous) ? 1.0 / noise.t2_homogeneous : 0.0;
  std::vector<double> out(sweep_grid.size());
  parallel_for(sweep_grid.size(), jobs, [&](std::size_t g) {
    const double x = sweep_grid[g];
    double psd_factor = 1.0;
    if (noise.psd && first_rf && *first_rf != *last_rf) {
      const FilterTimeline tl = filter_timeline(seq, x, *first_rf, *last_rf);
      if (tl.total > 0.0) psd_factor = filter_function_coherence(tl.positions, tl.total, *noise.psd);
    }

    double acc = 0.0;
    for (std::size_t i = 0; i < detuning.size(); ++i) {
      Mat4c rho = Mat4c::Zero();
      double signal = 0.0;
      for (std::size_t s = 0; s < seq.segments.size(); ++s) {
        const PulseSegment& seg = seq.segments[s];
        const double dur = seg.duration_at(x);
        if (dur < 0.0) throw DomainError("segment duration became negative for a sweep value");
        switch (seg.kind) {
          case SegmentKind::laser_init:
            rho.setZero();
            for (int m = 0; m < 4; ++m) rho(m, m) = seq.init.p[m];
            break;
          case SegmentKind::laser_read:
            for (int m = 0; m < 4; ++m) signal += seq.brightness.i[m] * rho(m, m).real();
            break;
          case SegmentKind::wait: {
            const double decay = std::exp(-dur * inv_t2);
            for (int a = 0; a < 4; ++a) {
              for (int b = 0; b < 4; ++b) {
                if (a == b) continue;
                const double gap = (free_diag[a] + kSpinProjection[a] * detuning[i]) -
                                   (free_diag[b] + kSpinProjection[b] * detuning[i]);
                rho(a, b) *= decay * std::polar(1.0, -2.0 * M_PI * gap * dur);
              }
            }
            break;
          }
          case SegmentKind::rf_pulse: {
            if (s == *last_rf && psd_factor != 1.0) scale_coherences(rho, psd_factor);
            const Mat4c u = seg.rf->ideal ? ideal_rotation(*seg.rf, dur)
                                          : props[i][drive_index(*seg.rf)].unitary(dur);
            rho = u * rho * u.adjoint();
            break;
          }
        }
      }
      acc += signal;
    }
    out[g] = acc / static_cast<double>(detuning.size());
  });
  return out;
}

PiCalibration calibrate_pi_pulse(const SpinQuartetParams& spin, double omega, Transition target) {
  spin.validate();
  if (!(omega >= 0.0) || !std::isfinite(omega)) throw DomainError("drive amplitude must be >= 0");
  if (omega == 0.0) throw NumericalError("no transfer: drive amplitude is zero");
  const EnergyLevels lv = transition_frequencies(spin);
  const HermitianPropagator prop(rotating_frame_hamiltonian(spin, {omega, lv.frequency(target), 0.0}));

  auto transfer = [&](double t) {
    const Vec4c a = prop.amplitudes(0, t);
    const Vec4c b = prop.amplitudes(3, t);
    return 0.5 * (std::norm(a(1)) + std::norm(a(2)) + std::norm(b(1)) + std::norm(b(2)));
  };

  constexpr int kScan = 2000;
  const double t_max = 4.0 / omega;
  std::vector<double> ts(kScan + 1), vs(kScan + 1);
  for (int i = 0; i <= kScan; ++i) {
    ts[i] = t_max * i / kScan;
    vs[i] = transfer(ts[i]);
  }
  const double best = *std::max_element(vs.begin(), vs.end());
  if (best < 1e-9) throw NumericalError("no transfer: flat transfer curve");

  int pick = static_cast<int>(std::max_element(vs.begin(), vs.end()) - vs.begin());
  for (int i = 1; i < kScan; ++i) {
    if (vs[i] >= vs[i - 1] && vs[i] >= vs[i + 1] && vs[i] >= 0.99 * best) {
      pick = i;
      break;
    }
  }

  double lo = ts[std::max(pick - 1, 0)], hi = ts[std::min(pick + 1, kScan)];
  const double g = 0.5 * (std::sqrt(5.0) - 1.0);
  double x1 = hi - g * (hi - lo), x2 = lo + g * (hi - lo);
  double f1 = transfer(x1), f2 = transfer(x2);
  while (hi - lo > 1e-12 * std::max(1.0, hi)) {
    if (f1 < f2) {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + g * (hi - lo);
      f2 = transfer(x2);
    } else {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - g * (hi - lo);
      f1 = transfer(x1);
    }
  }
  const double t = 0.5 * (lo + hi);
  return {t, transfer(t)};
}

PulseRegime classify_regime(const SpinQuartetParams& spin, double omega) {
  if (spin.d == 0.0) return PulseRegime::strong;
  const double r = omega / std::abs(spin.d);
  if (r >= 10.0) return PulseRegime::strong;
  if (r <= 0.1) return PulseRegime::weak;
  return PulseRegime::comparable;
}

RegimeResult pi_pulse_regime_states(const SpinQuartetParams& spin, double omega) {
  RegimeResult res;
  res.regime = classify_regime(spin, omega);
  const EnergyLevels lv = transition_frequencies(spin);

  std::array<double, 4> target_plus, target_minus;
  switch (res.regime) {
    case PulseRegime::strong:
      target_plus = {0.5, 0.0, 0.5, 0.0};
      target_minus = {0.0, 0.5, 0.0, 0.5};
      break;
    case PulseRegime::comparable:
      target_plus = {2.0 / 9.0, 3.0 / 9.0, 3.0 / 9.0, 1.0 / 9.0};
      target_minus = {1.0 / 9.0, 3.0 / 9.0, 3.0 / 9.0, 2.0 / 9.0};
      break;
    case PulseRegime::weak:
      target_plus = {0.0, 1.0, 0.0, 0.0};
      target_minus = {0.0, 0.0, 1.0, 0.0};
      break;
  }

  auto run = [&](Transition tr, int start, const std::array<double, 4>& target, PiCalibration& cal) {
    cal = calibrate_pi_pulse(spin, omega, tr);
    const HermitianPropagator prop(rotating_frame_hamiltonian(spin, {omega, lv.frequency(tr), 0.0}));
    RegimeState st;
    st.amplitudes = prop.amplitudes(start, cal.duration);
    double bc = 0.0;
    for (int m = 0; m < 4; ++m) {
      st.populations[m] = std::norm(st.amplitudes(m));
      bc += std::sqrt(st.populations[m] * target[m]);
    }
    st.target = target;
    st.overlap = bc * bc;
    return st;
  };
  res.from_plus = run(Transition::f3, 0, target_plus, res.pulse_plus);
  res.from_minus = run(Transition::f1, 3, target_minus, res.pulse_minus);
  return res;
}

namespace {

struct PulseTimes {
  double pi;
  double carrier;
};

PulseTimes pulse_times(const SpinQuartetParams& spin, const SequenceOptions& opt) {
  if (!(opt.omega > 0.0)) throw DomainError("sequence drive amplitude must be > 0");
  const EnergyLevels lv = transition_frequencies(spin);
  const double pi = opt.ideal_pulses ? 0.5 / two_level_rabi(opt.target, opt.omega)
                                     : calibrate_pi_pulse(spin, opt.omega, opt.target).duration;
  return {pi, lv.frequency(opt.target) + opt.detuning};
}

PulseSegment pulse(const SequenceOptions& opt, double carrier, double duration, double phase) {
  RfDrive rf{opt.omega, carrier, phase, std::nullopt};
  if (opt.ideal_pulses) rf.ideal = opt.target;
  return PulseSegment::rf_pulse(duration, rf);
}

PulseSequence frame(const SequenceOptions& opt) {
  PulseSequence seq;
  seq.init = opt.init;
  seq.brightness = opt.brightness;
  seq.segments.push_back(PulseSegment::laser_init());
  return seq;
}

constexpr double kPhaseX = 0.0;
constexpr double kPhaseY = 0.5 * M_PI;

}  // namespace

PulseSequence ramsey_sequence(const SpinQuartetParams& spin, const SequenceOptions& opt) {
  const auto pt = pulse_times(spin, opt);
  PulseSequence seq = frame(opt);
  seq.segments.push_back(pulse(opt, pt.carrier, 0.5 * pt.pi, kPhaseX));
  seq.segments.push_back(PulseSegment::wait(0.0, 1.0));
  seq.segments.push_back(pulse(opt, pt.carrier, 0.5 * pt.pi, kPhaseX));
  seq.segments.push_back(PulseSegment::laser_read());
  return seq;
}

PulseSequence hahn_sequence(const SpinQuartetParams& spin, const SequenceOptions& opt) {
  const auto pt = pulse_times(spin, opt);
  PulseSequence seq = frame(opt);
  seq.segments.push_back(pulse(opt, pt.carrier, 0.5 * pt.pi, kPhaseX));
  seq.segments.push_back(PulseSegment::wait(0.0, 1.0));
  seq.segments.push_back(pulse(opt, pt.carrier, pt.pi, kPhaseX));
  seq.segments.push_back(PulseSegment::wait(0.0, 1.0));
  seq.segments.push_back(pulse(opt, pt.carrier, 0.5 * pt.pi, kPhaseX));
  seq.segments.push_back(PulseSegment::laser_read());
  return seq;
}

PulseSequence xy8_sequence(const SpinQuartetParams& spin, const SequenceOptions& opt, int repetitions) {
  if (repetitions < 1) throw DomainError("XY-8 needs at least one repetition");
  const auto pt = pulse_times(spin, opt);
  constexpr std::array<double, 8> kPattern = {kPhaseX, kPhaseY, kPhaseX, kPhaseY,
                                              kPhaseY, kPhaseX, kPhaseY, kPhaseX};
  PulseSequence seq = frame(opt);
  seq.segments.push_back(pulse(opt, pt.carrier, 0.5 * pt.pi, kPhaseX));
  for (int r = 0; r < repetitions; ++r) {
    seq.segments.push_back(PulseSegment::wait(0.0, 0.5));
    for (std::size_t j = 0; j < kPattern.size(); ++j) {
      seq.segments.push_back(pulse(opt, pt.carrier, pt.pi, kPattern[j]));
      if (j + 1 < kPattern.size()) seq.segments.push_back(PulseSegment::wait(0.0, 1.0));
    }
    seq.segments.push_back(PulseSegment::wait(0.0, 0.5));
  }
  seq.segments.push_back(pulse(opt, pt.carrier, 0.5 * pt.pi, kPhaseX));
  seq.segments.push_back(PulseSegment::laser_read());
  return seq;
}

std::vector<double> ramsey_trace(const SpinQuartetParams& spin, const NoiseModel& noise,
                                 std::span<const double> tau_grid, const SequenceOptions& opt,
                                 unsigned jobs) {
  return simulate_sequence(ramsey_sequence(spin, opt), spin, noise, tau_grid, jobs);
}

std::vector<double> hahn_trace(const SpinQuartetParams& spin, const NoiseModel& noise,
                               std::span<const double> tau_grid, const SequenceOptions& opt,
                               unsigned jobs) {
  return simulate_sequence(hahn_sequence(spin, opt), spin, noise, tau_grid, jobs);
}

std::vector<double> xy8_trace(const SpinQuartetParams& spin, const NoiseModel& noise,
                              std::span<const double> tau_grid, int repetitions,
                              const SequenceOptions& opt, unsigned jobs) {
  return simulate_sequence(xy8_sequence(spin, opt, repetitions), spin, noise, tau_grid, jobs);
}

double snr_ratio(double contrast) {
  if (!(contrast >= 0.0 && contrast < 1.0)) throw DomainError("contrast must lie in [0, 1)");
  return std::sqrt(1.0 / (1.0 - contrast));
}

}  // namespace vsic
