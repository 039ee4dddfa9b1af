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

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "vsic/cli.hpp"

namespace vsic::cli {

using nlohmann::json;

const std::vector<std::string>& subcommands() {
  static const std::vector<std::string> names = {"rabi-map", "rabi-fft",     "odmr",         "pulse-sim",
                                                 "temp-model", "pjt",        "phonon-curve", "polarization",
                                                 "dwf",      "fit-decay",    "snr"};
  return names;
}

std::vector<double> GridSpec::values() const {
  std::vector<double> v(count);
  if (count == 1) {
    v[0] = start;
    return v;
  }
  for (std::size_t i = 0; i < count; ++i) {
    v[i] = start + (stop - start) * static_cast<double>(i) / static_cast<double>(count - 1);
  }
  return v;
}

namespace {

json grid(double start, double stop, std::size_t count) {
  return {{"start", start}, {"stop", stop}, {"count", count}};
}

json spin_defaults() { return {{"gamma", 28.0}, {"d", 2.0}, {"b0", 6.0}}; }

json rabi_defaults() {
  return {{"spin", spin_defaults()},
          {"omega", 7.0},
          {"f_grid", grid(160.0, 190.0, 61)},
          {"t_grid", grid(0.0, 4.0, 801)},
          {"init", {0.5, 0.0, 0.0, 0.5}},
          {"brightness", {1.0, 0.0, 0.0, 1.0}},
          {"t2_star", 0.2}};
}

std::string describe(const json& j) {
  switch (j.type()) {
    case json::value_t::null: return "null";
    case json::value_t::boolean: return "boolean";
    case json::value_t::string: return "string";
    case json::value_t::array: return "array";
    case json::value_t::object: return "object";
    default: return "number";
  }
}

std::string join(const std::string& prefix, const std::string& key) {
  return prefix.empty() ? key : prefix + "." + key;
}

// Overlays user values on defaults; keys absent from the defaults are rejected.
// A null default accepts any value; arrays are replaced wholesale. Keys with
// a non-null default listed in kNullable may also be set to null.
const std::vector<std::string> kNullable = {"noise.t2_homogeneous"};

void merge(json& base, const json& user, const std::string& path) {
  if (!user.is_object()) throw UsageError("validation error: '" + (path.empty() ? "config" : path) + "' must be an object");
  for (const auto& [key, value] : user.items()) {
    const std::string kp = join(path, key);
    if (!base.contains(key)) throw UsageError("validation error: unknown key '" + kp + "'");
    json& slot = base[key];
    if (slot.is_null() || (value.is_null() && std::find(kNullable.begin(), kNullable.end(), kp) != kNullable.end())) {
      slot = value;
    } else if (slot.is_object()) {
      merge(slot, value, kp);
    } else if (describe(slot) != describe(value)) {
      throw UsageError("validation error: '" + kp + "' must be a " + describe(slot) + ", got " + describe(value));
    } else {
      slot = value;
    }
  }
}

[[noreturn]] void invalid(const std::string& key, const std::string& why) {
  throw UsageError("validation error: '" + key + "' " + why);
}

double number(const json& p, const std::string& key) {
  const json* node = &p;
  std::stringstream ss(key);
  for (std::string part; std::getline(ss, part, '.');) node = &node->at(part);
  if (!node->is_number()) invalid(key, "must be a number");
  const double v = node->get<double>();
  if (!std::isfinite(v)) invalid(key, "must be finite");
  return v;
}

void positive(const json& p, const std::string& key) {
  if (!(number(p, key) > 0.0)) invalid(key, "must be > 0");
}

void nonnegative(const json& p, const std::string& key) {
  if (!(number(p, key) >= 0.0)) invalid(key, "must be >= 0");
}

void check_grid(const json& g, const std::string& key, bool nonneg) {
  const double start = number(g, "start"), stop = number(g, "stop");
  const json& c = g.at("count");
  if (!c.is_number_integer() || c.get<long long>() < 1) invalid(key + ".count", "must be an integer >= 1");
  if (!(start <= stop)) invalid(key, "must satisfy start <= stop");
  if (nonneg && start < 0.0) invalid(key + ".start", "must be >= 0");
}

void check_vector(const json& p, const std::string& key, std::size_t n, bool probabilities) {
  const json& a = p.at(key);
  if (!a.is_array() || a.size() != n) invalid(key, "must be an array of " + std::to_string(n) + " numbers");
  double sum = 0.0;
  for (const auto& v : a) {
    if (!v.is_number() || !std::isfinite(v.get<double>())) invalid(key, "must contain finite numbers");
    if (probabilities && v.get<double>() < 0.0) invalid(key, "entries must be >= 0");
    sum += v.get<double>();
  }
  if (probabilities && std::abs(sum - 1.0) > 1e-12) invalid(key, "must sum to 1");
}

void check_spin(const json& p) {
  positive(p, "spin.gamma");
  nonnegative(p, "spin.b0");
  number(p, "spin.d");
}

void check_choice(const json& p, const std::string& key, std::initializer_list<const char*> options) {
  const std::string v = p.at(key).get<std::string>();
  for (const char* o : options) {
    if (v == o) return;
  }
  invalid(key, "has unsupported value '" + v + "'");
}

void check_psd(const json& psd) {
  if (psd.is_null()) return;
  if (!psd.is_object()) invalid("noise.psd", "must be an object or null");
  json base = {{"kind", "lorentzian"}, {"level", 0.0}, {"corner", 1.0}, {"exponent", 2.0},
               {"omega", json::array()}, {"value", json::array()}};
  merge(base, psd, "noise.psd");
  check_choice(base, "kind", {"white", "lorentzian", "power_law", "tabulated"});
  nonnegative(base, "level");
}

void check_segments(const json& segs) {
  if (segs.is_null()) return;
  if (!segs.is_array() || segs.empty()) invalid("segments", "must be a nonempty array");
  for (std::size_t i = 0; i < segs.size(); ++i) {
    const std::string key = "segments[" + std::to_string(i) + "]";
    json base = {{"kind", "wait"}, {"duration", 0.0}, {"sweep_scale", 0.0}, {"omega", 0.0},
                 {"f", 0.0},      {"phase", 0.0},    {"ideal", ""}};
    merge(base, segs[i], key);
    check_choice(base, "kind", {"laser_init", "laser_read", "rf_pulse", "wait"});
    if (!(base["duration"].get<double>() >= 0.0)) invalid(key + ".duration", "must be >= 0");
  }
}

void validate(const std::string& sub, const json& p) {
  if (sub == "rabi-map" || sub == "rabi-fft") {
    check_spin(p);
    nonnegative(p, "omega");
    check_grid(p.at("f_grid"), "f_grid", false);
    positive(p, "f_grid.start");
    check_grid(p.at("t_grid"), "t_grid", true);
    check_vector(p, "init", 4, true);
    check_vector(p, "brightness", 4, false);
    for (const auto& v : p.at("brightness")) {
      if (v.get<double>() < 0.0) invalid("brightness", "entries must be >= 0");
    }
    positive(p, "t2_star");
    if (sub == "rabi-fft" && p.at("t_grid").at("count").get<long long>() < 2) {
      invalid("t_grid.count", "must be >= 2 for a spectrum");
    }
  } else if (sub == "odmr") {
    check_spin(p);
    check_vector(p, "amplitudes", 3, false);
    positive(p, "linewidth");
    check_grid(p.at("f_grid"), "f_grid", false);
  } else if (sub == "pulse-sim") {
    check_spin(p);
    check_choice(p, "sequence", {"ramsey", "hahn", "xy8", "custom"});
    if (!p.at("repetitions").is_number_integer() || p.at("repetitions").get<long long>() < 1) {
      invalid("repetitions", "must be an integer >= 1");
    }
    positive(p, "omega");
    check_choice(p, "transition", {"f1", "f2", "f3"});
    number(p, "detuning");
    check_grid(p.at("tau_grid"), "tau_grid", true);
    check_vector(p, "init", 4, true);
    check_vector(p, "brightness", 4, false);
    nonnegative(p, "noise.sigma_detuning");
    const json& t2 = p.at("noise").at("t2_homogeneous");
    if (!t2.is_null() && !(t2.is_number() && t2.get<double>() > 0.0)) invalid("noise.t2_homogeneous", "must be > 0 or null");
    if (!p.at("noise").at("ensemble_size").is_number_integer() || p.at("noise").at("ensemble_size").get<long long>() < 1) {
      invalid("noise.ensemble_size", "must be an integer >= 1");
    }
    check_psd(p.at("noise").at("psd"));
    check_segments(p.at("segments"));
    if (p.at("sequence") == "custom" && p.at("segments").is_null()) invalid("segments", "is required for a custom sequence");
  } else if (sub == "temp-model") {
    const std::string o = "optical.";
    for (const char* k : {"lambda_mev", "lifetime_v1prime_ns", "lifetime_v1_ns", "alpha", "t_ref"}) positive(p, o + k);
    number(p, o + "drive_plus");
    number(p, o + "drive_minus");
    const json& g = p.at("optical").at("gamma_d0");
    if (!g.is_null() && !(g.is_number() && g.get<double>() >= 0.0)) invalid("optical.gamma_d0", "must be >= 0 or null");
    positive(p, o + "peak_target");
    check_grid(p.at("t_grid"), "t_grid", true);
  } else if (sub == "pjt") {
    positive(p, "k_elastic");
    nonnegative(p, "g_coupling");
    number(p, "delta");
  } else if (sub == "phonon-curve") {
    positive(p, "v_sound");
    positive(p, "r_bohr_nm");
    check_grid(p.at("t_grid"), "t_grid", true);
  } else if (sub == "polarization") {
    check_grid(p.at("theta_grid"), "theta_grid", false);
    const json& r = p.at("ratio");
    if (!r.is_null() && !(r.is_number() && r.get<double>() > 0.0)) invalid("ratio", "must be > 0 or null");
  } else if (sub == "dwf") {
    const auto check_window = [](const json& w, const std::string& key) {
      if (!w.is_array() || w.size() != 2 || !w[0].is_number() || !w[1].is_number() ||
          !(w[0].get<double>() < w[1].get<double>())) {
        invalid(key, "must be a [low, high] wavelength pair with low < high");
      }
    };
    const json& z = p.at("zpl_windows");
    if (!z.is_array() || z.empty()) invalid("zpl_windows", "must be a nonempty array of windows");
    for (std::size_t i = 0; i < z.size(); ++i) check_window(z[i], "zpl_windows[" + std::to_string(i) + "]");
    check_window(p.at("psb_window"), "psb_window");
  } else if (sub == "fit-decay") {
    if (p.at("data").get<std::string>().empty()) invalid("data", "must name a CSV file");
    check_choice(p, "model", {"exponential", "gaussian", "damped_cosine"});
  } else if (sub == "snr") {
    const double c = number(p, "contrast");
    if (!(c >= 0.0 && c < 1.0)) invalid("contrast", "must lie in [0, 1)");
  }
}

}  // namespace

json default_parameters(std::string_view sub) {
  if (sub == "rabi-map" || sub == "rabi-fft") return rabi_defaults();
  if (sub == "odmr") {
    return {{"spin", spin_defaults()},
            {"amplitudes", {-0.0005, -0.0005, -0.0005}},
            {"linewidth", 10.0},
            {"f_grid", grid(140.0, 200.0, 601)}};
  }
  if (sub == "pulse-sim") {
    return {{"spin", spin_defaults()},
            {"sequence", "hahn"},
            {"repetitions", 10},
            {"omega", 7.0},
            {"transition", "f1"},
            {"detuning", 0.0},
            {"ideal_pulses", false},
            {"tau_grid", grid(0.0, 100.0, 51)},
            {"init", {0.5, 0.0, 0.0, 0.5}},
            {"brightness", {1.0, 0.0, 0.0, 1.0}},
            {"noise",
             {{"sigma_detuning", 0.0}, {"t2_homogeneous", 83.9}, {"ensemble_size", 1}, {"psd", nullptr}}},
            {"segments", nullptr}};
  }
  if (sub == "temp-model") {
    return {{"optical",
             {{"drive_plus", 1e-3},
              {"drive_minus", 1e-3},
              {"lambda_mev", 2.2},
              {"lifetime_v1prime_ns", 5.6},
              {"lifetime_v1_ns", 5.5},
              {"alpha", 1.57},
              {"t_ref", 10.0},
              {"gamma_d0", nullptr},
              {"peak_target", 70.0}}},
            {"t_grid", grid(1.0, 300.0, 300)}};
  }
  if (sub == "pjt") return {{"g_coupling", 1.0}, {"k_elastic", 1.0}, {"delta", 0.5}};
  if (sub == "phonon-curve") return {{"v_sound", 7.1e3}, {"r_bohr_nm", 2.7}, {"t_grid", grid(0.0, 200.0, 201)}};
  if (sub == "polarization") {
    return {{"preset", "v1"}, {"theta_grid", grid(0.0, 360.0, 361)}, {"ratio", nullptr}, {"half_wave_plate_axis", false}};
  }
  if (sub == "dwf") {
    return {{"spectrum", "synthetic"}, {"zpl_windows", {{859.5, 862.5}}}, {"psb_window", {863.0, 960.0}}};
  }
  if (sub == "fit-decay") return {{"data", ""}, {"model", "exponential"}};
  if (sub == "snr") return {{"contrast", 0.5}};
  throw UsageError("unknown subcommand '" + std::string(sub) + "'");
}

RunConfig resolve_config(std::string_view sub, const json& user) {
  RunConfig cfg;
  cfg.subcommand = std::string(sub);
  json params = default_parameters(sub);
  if (!user.is_null()) {
    if (!user.is_object()) throw UsageError("validation error: config must be a JSON object");
    json rest = user;
    if (rest.contains("seed")) {
      if (!rest["seed"].is_number_unsigned()) throw UsageError("validation error: 'seed' must be an unsigned integer");
      cfg.seed = rest["seed"].get<std::uint64_t>();
      rest.erase("seed");
    }
    if (rest.contains("jobs")) {
      if (!rest["jobs"].is_number_unsigned() || rest["jobs"].get<unsigned>() < 1) {
        throw UsageError("validation error: 'jobs' must be an integer >= 1");
      }
      cfg.jobs = rest["jobs"].get<unsigned>();
      rest.erase("jobs");
    }
    merge(params, rest, "");
  }
  validate(cfg.subcommand, params);
  cfg.params = std::move(params);
  return cfg;
}

RunConfig load_config(std::string_view sub, const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read config file " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  const std::string text = buf.str();
  json user;
  try {
    user = text.find_first_not_of(" \t\r\n") == std::string::npos ? json::object() : json::parse(text);
  } catch (const json::parse_error& e) {
    std::size_t line = 1, col = 1;
    const std::size_t upto = std::min<std::size_t>(e.byte > 0 ? e.byte - 1 : 0, text.size());
    for (std::size_t i = 0; i < upto; ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw UsageError("parse error in " + path.string() + " at line " + std::to_string(line) + ", column " +
                     std::to_string(col));
  }
  return resolve_config(sub, user);
}

}  // namespace vsic::cli
