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

#include "vsic/symmetry.hpp"

#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>

#include "vsic/errors.hpp"

namespace vsic {

Rational Rational::parse(std::string_view text) {
  auto parse_int = [&](std::string_view s) {
    std::int64_t v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) {
      throw DomainError("malformed rational '" + std::string(text) + "'");
    }
    return v;
  };
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parse_int(text));
  return Rational(parse_int(text.substr(0, slash)), parse_int(text.substr(slash + 1)));
}

std::string Rational::str() const {
  return den_ == 1 ? std::to_string(num_) : std::to_string(num_) + "/" + std::to_string(den_);
}

std::string_view to_string(SymmetryLabel l) {
  switch (l) {
    case SymmetryLabel::E_half_plus: return "E_half_plus";
    case SymmetryLabel::E_half_minus: return "E_half_minus";
    case SymmetryLabel::E_three_half_1: return "E_three_half_1";
    case SymmetryLabel::E_three_half_2: return "E_three_half_2";
  }
  return "E_half_plus";
}

SymmetryLabel parse_symmetry_label(std::string_view s) {
  for (auto l : {SymmetryLabel::E_half_plus, SymmetryLabel::E_half_minus, SymmetryLabel::E_three_half_1,
                 SymmetryLabel::E_three_half_2}) {
    if (to_string(l) == s) return l;
  }
  throw DomainError("unknown symmetry label '" + std::string(s) + "'");
}

PolarizationSet allowed_polarizations(SymmetryLabel a, SymmetryLabel b) {
  auto is_half = [](SymmetryLabel l) { return l == SymmetryLabel::E_half_plus || l == SymmetryLabel::E_half_minus; };
  if (is_half(a) && is_half(b)) return {true, true};
  if (is_half(a) || is_half(b)) return {false, true};
  if (a == b) return {false, false};
  return {true, false};
}

PolarizationTotals polarization_ratio(const Manifold& ground, const Manifold& excited,
                                      std::span<const PairedTransition> pairing) {
  PolarizationTotals out;
  for (const auto& p : pairing) {
    if (p.ground >= ground.levels.size() || p.excited >= excited.levels.size()) {
      throw DomainError("pairing index out of range");
    }
    if (p.split < Rational(0) || Rational(1) < p.split) throw DomainError("split must lie in [0, 1]");
    const auto& g = ground.levels[p.ground];
    const auto& e = excited.levels[p.excited];
    const Rational w = g.weight * e.weight;
    const PolarizationSet allowed = allowed_polarizations(g.label, e.label);
    if (allowed.z && allowed.xy) {
      out.parallel += w * p.split;
      out.perpendicular += w * (Rational(1) - p.split);
    } else if (allowed.z) {
      out.parallel += w;
    } else if (allowed.xy) {
      out.perpendicular += w;
    }
  }
  return out;
}

namespace {

Rational json_rational(const nlohmann::json& j, const char* what) {
  if (j.is_number_integer()) return Rational(j.get<std::int64_t>());
  if (j.is_string()) return Rational::parse(j.get<std::string>());
  throw DomainError(std::string(what) + " must be an integer or a \"p/q\" string");
}

Manifold json_manifold(const nlohmann::json& arr, const char* what) {
  if (!arr.is_array() || arr.empty()) throw DomainError(std::string(what) + " must be a nonempty array");
  Manifold m;
  for (const auto& s : arr) {
    Sublevel lv{parse_symmetry_label(s.at("label").get<std::string>()), Rational(1), ""};
    if (s.contains("weight")) lv.weight = json_rational(s["weight"], "weight");
    if (lv.weight < Rational(0)) throw DomainError("weights must be >= 0");
    if (s.contains("spin")) lv.spin = s["spin"].get<std::string>();
    m.levels.push_back(std::move(lv));
  }
  return m;
}

}  // namespace

SelectionPreset load_selection_preset(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open preset " + path.string());
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
    SelectionPreset p;
    p.name = j.at("name").get<std::string>();
    p.description = j.value("description", "");
    p.ground = json_manifold(j.at("ground"), "ground");
    p.excited = json_manifold(j.at("excited"), "excited");
    for (const auto& e : j.at("pairing")) {
      PairedTransition t;
      t.ground = e.at("ground").get<std::size_t>();
      t.excited = e.at("excited").get<std::size_t>();
      if (e.contains("split")) t.split = json_rational(e["split"], "split");
      p.pairing.push_back(t);
    }
    return p;
  } catch (const nlohmann::json::exception& ex) {
    throw DomainError("malformed preset " + path.string() + ": " + ex.what());
  }
}

std::vector<double> polar_intensity_curve(double r, std::span<const double> theta_deg) {
  if (!(r > 0.0) || !std::isfinite(r)) throw DomainError("polarization ratio must be > 0");
  std::vector<double> out(theta_deg.size());
  const double norm = std::max(r, 1.0);
  for (std::size_t i = 0; i < theta_deg.size(); ++i) {
    const double th = theta_deg[i] * M_PI / 180.0;
    const double c = std::cos(th), s = std::sin(th);
    out[i] = (r * c * c + s * s) / norm;
  }
  return out;
}

}  // namespace vsic
