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

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <ostream>

#include "vsic/cli.hpp"
#include "vsic/debye_waller.hpp"
#include "vsic/fit.hpp"
#include "vsic/odmr.hpp"
#include "vsic/optical_thermal.hpp"
#include "vsic/phonon.hpp"
#include "vsic/pjt.hpp"
#include "vsic/pulse.hpp"
#include "vsic/rabi.hpp"
#include "vsic/symmetry.hpp"

namespace vsic::cli {

using nlohmann::json;

namespace {

struct Result {
  TableOutput table;
  json derived = json::object();
  /// Replaces the CSV on stdout when no output path is given.
  std::optional<std::string> console;
};

GridSpec grid(const json& j) {
  return {j.at("start").get<double>(), j.at("stop").get<double>(), j.at("count").get<std::size_t>()};
}

template <std::size_t N>
std::array<double, N> array_of(const json& j) {
  std::array<double, N> a{};
  for (std::size_t i = 0; i < N; ++i) a[i] = j.at(i).get<double>();
  return a;
}

SpinQuartetParams spin_of(const json& p) {
  const json& s = p.at("spin");
  return {s.at("gamma").get<double>(), s.at("d").get<double>(), s.at("b0").get<double>()};
}

Transition transition_of(const std::string& s, const std::string& key) {
  if (s == "f1") return Transition::f1;
  if (s == "f2") return Transition::f2;
  if (s == "f3") return Transition::f3;
  throw UsageError("validation error: '" + key + "' has unsupported value '" + s + "'");
}

std::string number_label(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::filesystem::path data_dir() {
  if (const char* env = std::getenv("VSIC_DATA_DIR"); env && *env) return env;
  return VSIC_DATA_DIR;
}

Result rabi(const RunConfig& cfg, bool spectrum) {
  const json& p = cfg.params;
  const auto f = grid(p.at("f_grid")).values();
  const auto t = grid(p.at("t_grid")).values();
  InitialPolarization init{array_of<4>(p.at("init"))};
  LevelBrightness bright{array_of<4>(p.at("brightness"))};
  const Grid2D map = rabi_map(spin_of(p), p.at("omega").get<double>(), f, t, init, bright,
                              p.at("t2_star").get<double>(), cfg.jobs);
  Result r;
  if (!spectrum) {
    r.table.header.push_back("t (us)");
    for (double fi : f) r.table.header.push_back(number_label(fi) + " (MHz)");
    for (std::size_t j = 0; j < t.size(); ++j) {
      std::vector<double> row{t[j]};
      for (std::size_t i = 0; i < f.size(); ++i) row.push_back(map(i, j));
      r.table.rows.push_back(std::move(row));
    }
    return r;
  }
  const RabiSpectrum s = rabi_fft(map, t);
  r.table.header.push_back("rabi frequency (MHz)");
  for (double fi : f) r.table.header.push_back(number_label(fi) + " (MHz)");
  for (std::size_t j = 0; j < s.freq.size(); ++j) {
    std::vector<double> row{s.freq[j]};
    for (std::size_t i = 0; i < f.size(); ++i) row.push_back(s.magnitude(i, j));
    r.table.rows.push_back(std::move(row));
  }
  return r;
}

Result odmr(const RunConfig& cfg) {
  const json& p = cfg.params;
  const auto f = grid(p.at("f_grid")).values();
  const EnergyLevels levels = transition_frequencies(spin_of(p));
  const auto y = odmr_spectrum(levels, array_of<3>(p.at("amplitudes")), p.at("linewidth").get<double>(), f);
  Result r;
  r.table.header = {"f (MHz)", "signal (rel)"};
  for (std::size_t i = 0; i < f.size(); ++i) r.table.rows.push_back({f[i], y[i]});
  r.derived = {{"f1", levels.f1}, {"f2", levels.f2}, {"f3", levels.f3}};
  return r;
}

std::optional<NoisePsd> psd_of(const json& j) {
  if (j.is_null()) return std::nullopt;
  const std::string kind = j.value("kind", "lorentzian");
  const double level = j.value("level", 0.0);
  if (kind == "white") return NoisePsd::white(level);
  if (kind == "lorentzian") return NoisePsd::lorentzian(level, j.value("corner", 1.0));
  if (kind == "power_law") return NoisePsd::power_law(level, j.value("exponent", 2.0));
  return NoisePsd::tabulated(j.value("omega", std::vector<double>{}), j.value("value", std::vector<double>{}));
}

PulseSequence custom_sequence(const json& p) {
  PulseSequence seq;
  seq.init = {array_of<4>(p.at("init"))};
  seq.brightness = {array_of<4>(p.at("brightness"))};
  const json& segs = p.at("segments");
  for (std::size_t i = 0; i < segs.size(); ++i) {
    const json& s = segs[i];
    const std::string kind = s.value("kind", "wait");
    const double duration = s.value("duration", 0.0), scale = s.value("sweep_scale", 0.0);
    if (kind == "laser_init") {
      seq.segments.push_back(PulseSegment::laser_init(duration));
    } else if (kind == "laser_read") {
      seq.segments.push_back(PulseSegment::laser_read(duration));
    } else if (kind == "wait") {
      seq.segments.push_back(PulseSegment::wait(duration, scale));
    } else {
      RfDrive rf{s.value("omega", 0.0), s.value("f", 0.0), s.value("phase", 0.0), std::nullopt};
      const std::string ideal = s.value("ideal", "");
      if (!ideal.empty()) rf.ideal = transition_of(ideal, "segments[" + std::to_string(i) + "].ideal");
      seq.segments.push_back(PulseSegment::rf_pulse(duration, rf, scale));
    }
  }
  return seq;
}

Result pulse_sim(const RunConfig& cfg) {
  const json& p = cfg.params;
  const SpinQuartetParams spin = spin_of(p);
  const json& n = p.at("noise");
  NoiseModel noise;
  noise.sigma_detuning = n.at("sigma_detuning").get<double>();
  if (!n.at("t2_homogeneous").is_null()) noise.t2_homogeneous = n.at("t2_homogeneous").get<double>();
  noise.ensemble_size = n.at("ensemble_size").get<int>();
  noise.psd = psd_of(n.at("psd"));
  noise.seed = cfg.seed;

  SequenceOptions opt;
  opt.omega = p.at("omega").get<double>();
  opt.target = transition_of(p.at("transition").get<std::string>(), "transition");
  opt.detuning = p.at("detuning").get<double>();
  opt.ideal_pulses = p.at("ideal_pulses").get<bool>();
  opt.init = {array_of<4>(p.at("init"))};
  opt.brightness = {array_of<4>(p.at("brightness"))};

  const auto tau = grid(p.at("tau_grid")).values();
  const std::string kind = p.at("sequence").get<std::string>();
  PulseSequence seq;
  if (kind == "ramsey") {
    seq = ramsey_sequence(spin, opt);
  } else if (kind == "hahn") {
    seq = hahn_sequence(spin, opt);
  } else if (kind == "xy8") {
    seq = xy8_sequence(spin, opt, p.at("repetitions").get<int>());
  } else {
    seq = custom_sequence(p);
  }
  const auto y = simulate_sequence(seq, spin, noise, tau, cfg.jobs);
  Result r;
  r.table.header = {"tau (us)", "signal (rel)"};
  for (std::size_t i = 0; i < tau.size(); ++i) r.table.rows.push_back({tau[i], y[i]});
  return r;
}

Result temp_model(const RunConfig& cfg) {
  const json& o = cfg.params.at("optical");
  FourLevelOpticalModel m;
  m.drive_plus = o.at("drive_plus").get<double>();
  m.drive_minus = o.at("drive_minus").get<double>();
  m.lambda_mev = o.at("lambda_mev").get<double>();
  m.gamma1 = 1.0 / o.at("lifetime_v1prime_ns").get<double>();
  m.gamma2 = 1.0 / o.at("lifetime_v1_ns").get<double>();
  m.alpha = o.at("alpha").get<double>();
  m.t_ref = o.at("t_ref").get<double>();
  Result r;
  if (o.at("gamma_d0").is_null()) {
    m.gamma_d0 = calibrate_crossover(m, o.at("peak_target").get<double>());
    r.derived["gamma_d0"] = m.gamma_d0;
  } else {
    m.gamma_d0 = o.at("gamma_d0").get<double>();
  }
  const auto temps = grid(cfg.params.at("t_grid")).values();
  const auto lines = intensity_sweep(m, temps, cfg.jobs);
  r.table.header = {"T (K)", "I_V1 (1/ns)", "I_V1prime (1/ns)", "ratio (V1prime/V1)"};
  for (std::size_t i = 0; i < temps.size(); ++i) {
    r.table.rows.push_back({temps[i], lines[i].i_v1, lines[i].i_v1prime, lines[i].ratio()});
  }
  return r;
}

Result pjt(const RunConfig& cfg) {
  const json& p = cfg.params;
  const PJTParams params{p.at("g_coupling").get<double>(), p.at("k_elastic").get<double>(), p.at("delta").get<double>()};
  const PJTEnergy e = pjt_energy(params);
  const PJTNumeric num = pjt_potential_minimize(params);
  Result r;
  r.table.header = {"E_JT", "Q_min", "epsilon0", "Q0", "stable (0/1)", "E_JT numeric", "Q numeric"};
  r.table.rows.push_back({e.e_jt, e.q_min, e.epsilon0, e.q0, e.stable ? 1.0 : 0.0, num.e_jt, num.q});
  return r;
}

Result phonon_curve(const RunConfig& cfg) {
  const json& p = cfg.params;
  PhononParams ph;
  ph.v_sound = p.at("v_sound").get<double>();
  ph.r_bohr = p.at("r_bohr_nm").get<double>() * 1e-9;
  const auto t = grid(p.at("t_grid")).values();
  const auto y = phonon_coupling_curve(ph, t);
  Result r;
  r.table.header = {"T (K)", "coupling (norm)"};
  for (std::size_t i = 0; i < t.size(); ++i) r.table.rows.push_back({t[i], y[i]});
  r.derived["peak_temperature_k"] = phonon_peak_temperature(ph);
  return r;
}

Result polarization(const RunConfig& cfg) {
  const json& p = cfg.params;
  Result r;
  double ratio = 0.0;
  if (p.at("ratio").is_null()) {
    const std::string name = p.at("preset").get<std::string>();
    const std::filesystem::path path =
        (name == "v1" || name == "v1prime") ? data_dir() / "presets" / (name + ".json") : std::filesystem::path(name);
    const SelectionPreset preset = load_selection_preset(path);
    const PolarizationTotals tot = polarization_ratio(preset.ground, preset.excited, preset.pairing);
    if (tot.perpendicular == Rational(0)) throw DomainError("preset has no perpendicular intensity");
    ratio = (tot.parallel / tot.perpendicular).to_double();
    r.derived = {{"preset", preset.name}, {"parallel", tot.parallel.str()}, {"perpendicular", tot.perpendicular.str()}};
  } else {
    ratio = p.at("ratio").get<double>();
  }
  r.derived["ratio"] = ratio;
  const auto theta = grid(p.at("theta_grid")).values();
  const auto y = polar_intensity_curve(ratio, theta);
  const bool hwp = p.at("half_wave_plate_axis").get<bool>();
  r.table.header = {hwp ? "half-wave plate angle (deg)" : "analyzer angle (deg)", "intensity (norm)"};
  for (std::size_t i = 0; i < theta.size(); ++i) r.table.rows.push_back({hwp ? theta[i] / 2.0 : theta[i], y[i]});
  return r;
}

WavelengthWindow window_of(const json& j) { return {j.at(0).get<double>(), j.at(1).get<double>()}; }

Result dwf(const RunConfig& cfg) {
  const json& p = cfg.params;
  Spectrum spec;
  const std::string src = p.at("spectrum").get<std::string>();
  if (src == "synthetic") {
    spec = synthetic_two_zpl_spectrum();
  } else {
    for (const auto& row : read_numeric_csv(src)) {
      spec.wavelength.push_back(row[0]);
      spec.intensity.push_back(row[1]);
    }
  }
  std::vector<WavelengthWindow> zpl;
  for (const auto& w : p.at("zpl_windows")) zpl.push_back(window_of(w));
  const WavelengthWindow psb = window_of(p.at("psb_window"));
  double zpl_area = 0.0;
  for (const auto& w : zpl) zpl_area += integrate_window(spec, w);
  Result r;
  r.table.header = {"DWF", "ZPL area (arb)", "PSB area (arb)"};
  r.table.rows.push_back({debye_waller(spec, zpl, psb), zpl_area, integrate_window(spec, psb)});
  return r;
}

Result fit(const RunConfig& cfg) {
  const json& p = cfg.params;
  const std::string m = p.at("model").get<std::string>();
  const DecayModel model = m == "gaussian" ? DecayModel::gaussian
                           : m == "damped_cosine" ? DecayModel::damped_cosine
                                                  : DecayModel::exponential;
  std::vector<double> t, y;
  for (const auto& row : read_numeric_csv(p.at("data").get<std::string>())) {
    t.push_back(row[0]);
    y.push_back(row[1]);
  }
  const FitResult f = fit_decay(t, y, model);
  Result r;
  static const char* names[] = {"A", "T (us)", "c", "f (MHz)", "phi (rad)"};
  std::vector<double> row;
  for (std::size_t i = 0; i < f.params.size(); ++i) {
    r.table.header.push_back(names[i]);
    row.push_back(f.params[i]);
  }
  for (std::size_t i = 0; i < f.params.size() && i < f.std_errors.size(); ++i) {
    r.table.header.push_back(std::string("stderr ") + names[i]);
    row.push_back(std::isfinite(f.std_errors[i]) ? f.std_errors[i] : 0.0);
  }
  r.table.header.push_back("residual_ss");
  row.push_back(f.residual_ss);
  r.table.rows.push_back(std::move(row));
  r.derived = {{"status", std::string(to_string(f.status))}, {"iterations", f.iterations}};
  return r;
}

Result snr(const RunConfig& cfg) {
  const double c = cfg.params.at("contrast").get<double>();
  const double s = snr_ratio(c);
  Result r;
  r.table.header = {"contrast", "snr_ratio"};
  r.table.rows.push_back({c, s});
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f\n", s);
  r.console = buf;
  return r;
}

Result dispatch(const RunConfig& cfg) {
  const std::string& s = cfg.subcommand;
  if (s == "rabi-map") return rabi(cfg, false);
  if (s == "rabi-fft") return rabi(cfg, true);
  if (s == "odmr") return odmr(cfg);
  if (s == "pulse-sim") return pulse_sim(cfg);
  if (s == "temp-model") return temp_model(cfg);
  if (s == "pjt") return pjt(cfg);
  if (s == "phonon-curve") return phonon_curve(cfg);
  if (s == "polarization") return polarization(cfg);
  if (s == "dwf") return dwf(cfg);
  if (s == "fit-decay") return fit(cfg);
  if (s == "snr") return snr(cfg);
  throw UsageError("unknown subcommand '" + s + "'");
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f || !(f << text) || !f.flush()) throw DomainError("cannot write " + path.string());
}

std::string summary(const std::string& sub) {
  static const std::map<std::string, std::string> text = {
      {"rabi-map", "PL versus drive frequency and pulse length"},
      {"rabi-fft", "Rabi spectrum of each map row"},
      {"odmr", "Lorentzian ODMR spectrum of the three transitions"},
      {"pulse-sim", "Ramsey, Hahn, XY-8 or custom pulse sequence"},
      {"temp-model", "V1 and V1' line intensities versus temperature"},
      {"pjt", "pseudo-Jahn-Teller stabilization energy"},
      {"phonon-curve", "normalized phonon coupling versus temperature"},
      {"polarization", "polar emission curve from selection rules"},
      {"dwf", "Debye-Waller factor from a spectrum"},
      {"fit-decay", "fit a decay model to a two-column CSV"},
      {"snr", "readout SNR gain for a given contrast"}};
  return text.at(sub);
}

}  // namespace

void execute(const RunConfig& config, std::ostream& out) {
  const Result r = dispatch(config);
  const std::string csv = r.table.to_csv();
  if (!config.output) {
    out << (r.console ? *r.console : csv);
    return;
  }
  write_file(*config.output, csv);
  json sidecar = {{"subcommand", config.subcommand}, {"seed", config.seed}, {"parameters", config.params}};
  if (!r.derived.empty()) sidecar["derived"] = r.derived;
  write_file(config.output->string() + ".json", sidecar.dump(2) + "\n");
}


int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Spin-quartet color center simulator", "vsic"};
  app.require_subcommand(1);
  std::string config_path, out_path;
  std::optional<std::uint64_t> seed;
  std::optional<unsigned> jobs;
  std::optional<double> contrast;
  app.option_defaults()->always_capture_default();
  for (const auto& name : subcommands()) {
    CLI::App* sub = app.add_subcommand(name, summary(name));
    sub->add_option("--config", config_path, "JSON configuration file")->check(CLI::ExistingFile);
    sub->add_option("--out", out_path, "CSV output path; a .json sidecar is written next to it");
    sub->add_option("--seed", seed, "noise seed (default 20180706)");
    sub->add_option("--jobs", jobs, "worker threads")->check(CLI::PositiveNumber);
    if (name == "snr") sub->add_option("--contrast", contrast, "ODMR contrast in [0, 1)");
  }

  std::vector<char*> argv;
  std::vector<std::string> storage = args;
  storage.insert(storage.begin(), "vsic");
  for (auto& a : storage) argv.push_back(a.data());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n" << app.help();
    return 2;
  }

  const std::string name = app.get_subcommands().front()->get_name();
  try {
    RunConfig cfg = config_path.empty() ? resolve_config(name, json::object()) : load_config(name, config_path);
    if (contrast) {
      json params = cfg.params;
      params["contrast"] = *contrast;
      const RunConfig checked = resolve_config(name, params);
      cfg.params = checked.params;
    }
    if (seed) cfg.seed = *seed;
    if (jobs) cfg.jobs = *jobs;
    if (!out_path.empty()) cfg.output = out_path;
    execute(cfg, out);
  } catch (const UsageError& e) {
    err << "vsic " << name << ": " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "vsic " << name << ": " << e.what() << "\n";
    return 1;
  }
  return 0;
}

}  // namespace vsic::cli
