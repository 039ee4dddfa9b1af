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

// Pulse sequences, pi-pulse calibration and decoherence experiments.

#pragma once

#include <array>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <vector>

#include "vsic/filter_function.hpp"
#include "vsic/linalg.hpp"
#include "vsic/rabi.hpp"
#include "vsic/spin_hamiltonian.hpp"

namespace vsic {

inline constexpr std::uint64_t kDefaultSeed = 20180706;

enum class SegmentKind { laser_init, laser_read, rf_pulse, wait };

struct RfDrive {
  double omega = 0.0;  ///< MHz
  double f = 0.0;      ///< MHz
  double phase = 0.0;  ///< radians
  /// When set, the pulse is applied as an instantaneous rotation on this
  /// transition with angle 2 pi Omega_R duration (Omega_R the two-level Rabi
  /// frequency), ignoring detuning and the other levels.
  std::optional<Transition> ideal;
};

struct PulseSegment {
  SegmentKind kind = SegmentKind::wait;
  double duration = 0.0;     ///< us
  double sweep_scale = 0.0;  ///< effective duration = duration + sweep_scale * sweep value
  std::optional<RfDrive> rf;

  double duration_at(double sweep) const { return duration + sweep_scale * sweep; }

  static PulseSegment laser_init(double duration = 2.0);
  static PulseSegment laser_read(double duration = 2.0);
  static PulseSegment wait(double duration, double sweep_scale = 0.0);
  static PulseSegment rf_pulse(double duration, const RfDrive& rf, double sweep_scale = 0.0);
};

struct PulseSequence {
  std::vector<PulseSegment> segments;
  InitialPolarization init;
  LevelBrightness brightness;

  /// Throws StructuralError when the sequence does not start with laser_init,
  /// end with laser_read, or mixes rf carrier frequencies.
  void validate() const;
  bool has_sweep() const;
};

struct NoiseModel {
  double sigma_detuning = 0.0;  ///< MHz, quasi-static Gaussian detuning
  double t2_homogeneous = std::numeric_limits<double>::infinity();  ///< us
  std::optional<NoisePsd> psd;
  int ensemble_size = 1;
  std::uint64_t seed = kDefaultSeed;

  void validate() const;
};

/// Signal after each sweep value, averaged over the detuning ensemble. Member i
/// draws its detuning from a generator seeded by mixing (seed, i), so the result
/// is bit-identical for any \p jobs.
///
/// rf pulses propagate with the rotating-frame Hamiltonian at the sequence
/// carrier plus m * delta on the diagonal; waits apply free phases and decay
/// all coherences by exp(-t / t2_homogeneous). With a PSD, the filter-function
/// coherence of the free-evolution timeline (inner rf pulses as switches) is
/// applied to all coherences before the final rf pulse.
std::vector<double> simulate_sequence(const PulseSequence& seq, const SpinQuartetParams& spin,
                                      const NoiseModel& noise, std::span<const double> sweep_grid,
                                      unsigned jobs = 1);

struct PiCalibration {
  double duration = 0.0;  ///< us
  double transfer = 0.0;  ///< population moved out of |+-3/2>
};

/// Earliest duration maximizing the population moved out of {|+-3/2>} with
/// P(+-3/2) = 1/2, driving on resonance with \p target. Scans 2000 points on
/// (0, 4/Omega], takes the first local maximum within 1% of the global one and
/// refines it by golden-section search.
PiCalibration calibrate_pi_pulse(const SpinQuartetParams& spin, double omega, Transition target);

enum class PulseRegime { strong, comparable, weak };

struct RegimeState {
  Vec4c amplitudes;
  std::array<double, 4> populations{};
  std::array<double, 4> target{};  ///< closed-form populations for the regime
  double overlap = 0.0;            ///< (sum_m sqrt(p_m q_m))^2
};

struct RegimeResult {
  PulseRegime regime = PulseRegime::comparable;
  PiCalibration pulse_plus;   ///< f3 drive, start in |+3/2>
  PiCalibration pulse_minus;  ///< f1 drive, start in |-3/2>
  RegimeState from_plus, from_minus;
};

/// Omega/|D| >= 10: strong, <= 0.1: weak, otherwise comparable.
PulseRegime classify_regime(const SpinQuartetParams& spin, double omega);

RegimeResult pi_pulse_regime_states(const SpinQuartetParams& spin, double omega);

struct SequenceOptions {
  double omega = 7.0;  ///< MHz
  Transition target = Transition::f1;
  double detuning = 0.0;  ///< carrier offset from the transition, MHz
  bool ideal_pulses = false;
  InitialPolarization init;
  LevelBrightness brightness;
};

/// pi/2 - tau - pi/2. Sweep variable: tau.
PulseSequence ramsey_sequence(const SpinQuartetParams& spin, const SequenceOptions& opt);
/// pi/2 - tau - pi - tau - pi/2. Sweep variable: tau (total free time 2 tau).
PulseSequence hahn_sequence(const SpinQuartetParams& spin, const SequenceOptions& opt);
/// pi/2 - [tau/2 X tau Y tau X tau Y tau Y tau X tau Y tau X tau/2]^N - pi/2.
/// Sweep variable: tau (total free time 8 N tau).
PulseSequence xy8_sequence(const SpinQuartetParams& spin, const SequenceOptions& opt, int repetitions);

std::vector<double> ramsey_trace(const SpinQuartetParams& spin, const NoiseModel& noise,
                                 std::span<const double> tau_grid, const SequenceOptions& opt,
                                 unsigned jobs = 1);
std::vector<double> hahn_trace(const SpinQuartetParams& spin, const NoiseModel& noise,
                               std::span<const double> tau_grid, const SequenceOptions& opt,
                               unsigned jobs = 1);
std::vector<double> xy8_trace(const SpinQuartetParams& spin, const NoiseModel& noise,
                              std::span<const double> tau_grid, int repetitions,
                              const SequenceOptions& opt, unsigned jobs = 1);

/// 1 / sqrt(1 - C) for contrast C in [0, 1).
double snr_ratio(double contrast);

}  // namespace vsic
