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

#include <cmath>
#include <filesystem>
#include <fstream>

#include "vsic/errors.hpp"
#include "vsic/rational.hpp"
#include "vsic/symmetry.hpp"

using namespace vsic;

namespace {

std::filesystem::path preset(const char* name) {
  return std::filesystem::path(VSIC_DATA_DIR) / "presets" / name;
}

}  // namespace

TEST_SUITE("symmetry") {

TEST_CASE("selection-rule table") {
  using L = SymmetryLabel;
  const PolarizationSet both{true, true}, xy{false, true}, z{true, false}, none{false, false};
  // rows and columns: E_1/2, 1E_3/2, 2E_3/2
  CHECK(allowed_polarizations(L::E_half_plus, L::E_half_minus) == both);
  CHECK(allowed_polarizations(L::E_half_plus, L::E_three_half_1) == xy);
  CHECK(allowed_polarizations(L::E_half_minus, L::E_three_half_2) == xy);
  CHECK(allowed_polarizations(L::E_three_half_1, L::E_half_plus) == xy);
  CHECK(allowed_polarizations(L::E_three_half_1, L::E_three_half_1) == none);
  CHECK(allowed_polarizations(L::E_three_half_1, L::E_three_half_2) == z);
  CHECK(allowed_polarizations(L::E_three_half_2, L::E_half_minus) == xy);
  CHECK(allowed_polarizations(L::E_three_half_2, L::E_three_half_1) == z);
  CHECK(allowed_polarizations(L::E_three_half_2, L::E_three_half_2) == none);
  CHECK(none.empty());
}

TEST_CASE("labels round-trip through strings") {
  for (auto l : {SymmetryLabel::E_half_plus, SymmetryLabel::E_half_minus, SymmetryLabel::E_three_half_1,
                 SymmetryLabel::E_three_half_2}) {
    CHECK(parse_symmetry_label(to_string(l)) == l);
  }
  CHECK_THROWS_AS(parse_symmetry_label("A1"), DomainError);
}

TEST_CASE("rational arithmetic") {
  CHECK(Rational(2, 4) == Rational(1, 2));
  CHECK(Rational(1, -3) == Rational(-1, 3));
  CHECK(Rational(1, 2) + Rational(1, 3) == Rational(5, 6));
  CHECK(Rational(3, 4) / Rational(1, 4) == Rational(3));
  CHECK(Rational::parse("-6/8") == Rational(-3, 4));
  CHECK(Rational::parse("7").str() == "7");
  CHECK(Rational(11, 2).str() == "11/2");
  CHECK_THROWS_AS(Rational(1, 0), DomainError);
  CHECK_THROWS_AS(Rational::parse("1/x"), DomainError);
}

TEST_CASE("bundled presets give exact ratios") {
  const SelectionPreset v1 = load_selection_preset(preset("v1.json"));
  const PolarizationTotals a = polarization_ratio(v1.ground, v1.excited, v1.pairing);
  CHECK(a.parallel / a.perpendicular == Rational(3, 1));

  const SelectionPreset v1p = load_selection_preset(preset("v1prime.json"));
  CHECK(v1p.pairing.size() == 12);
  const PolarizationTotals b = polarization_ratio(v1p.ground, v1p.excited, v1p.pairing);
  CHECK(b.parallel / b.perpendicular == Rational(1, 11));
}

TEST_CASE("pairings conserve the spin state in the V1' preset") {
  const SelectionPreset v1p = load_selection_preset(preset("v1prime.json"));
  auto projections = [](const std::string& s) {
    std::string out;
    if (s.find("|3/2>") != std::string::npos) out += "+3";
    if (s.find("|-3/2>") != std::string::npos) out += "-3";
    if (s.find("|1/2>") != std::string::npos) out += "+1";
    if (s.find("|-1/2>") != std::string::npos) out += "-1";
    return out;
  };
  for (const auto& p : v1p.pairing) {
    const std::string g = projections(v1p.ground.levels[p.ground].spin);
    const std::string e = projections(v1p.excited.levels[p.excited].spin);
    CHECK(g.find(e) != std::string::npos);
  }
}

TEST_CASE("malformed presets are rejected") {
  const auto path = std::filesystem::temp_directory_path() / "vsic_bad_preset.json";
  {
    std::ofstream f(path);
    f << R"({"name": "x", "ground": [{"label": "E_half_plus"}], "excited": [{"label": "Q"}], "pairing": []})";
  }
  CHECK_THROWS_AS(load_selection_preset(path), DomainError);
  {
    std::ofstream f(path);
    f << "{ not json";
  }
  CHECK_THROWS_AS(load_selection_preset(path), DomainError);
  std::filesystem::remove(path);
  CHECK_THROWS_AS(load_selection_preset(path), DomainError);
}

TEST_CASE("pairing weights are products and splits are honored") {
  Manifold g{{{SymmetryLabel::E_half_plus, Rational(2), ""}}};
  Manifold e{{{SymmetryLabel::E_half_minus, Rational(3), ""}, {SymmetryLabel::E_three_half_1, Rational(1), ""}}};
  const std::vector<PairedTransition> pairs{{0, 0, Rational(1, 3)}, {0, 1, Rational(1, 2)}};
  const PolarizationTotals t = polarization_ratio(g, e, pairs);
  CHECK(t.parallel == Rational(2));
  CHECK(t.perpendicular == Rational(4) + Rational(2));
  const std::vector<PairedTransition> bad{{0, 5, Rational(1, 2)}};
  CHECK_THROWS_AS(polarization_ratio(g, e, bad), DomainError);
}

TEST_CASE("polar curves") {
  const std::vector<double> theta{0.0, 45.0, 90.0, 180.0, 270.0};
  const auto v1 = polar_intensity_curve(3.0, theta);
  CHECK(v1[0] == doctest::Approx(1.0));
  CHECK(v1[1] == doctest::Approx(2.0 / 3.0));
  CHECK(v1[2] == doctest::Approx(1.0 / 3.0));
  CHECK(v1[3] == doctest::Approx(1.0));
  const auto flat = polar_intensity_curve(1.0, theta);
  for (double v : flat) CHECK(v == doctest::Approx(1.0));
  const auto v1p = polar_intensity_curve(1.0 / 11.0, theta);
  CHECK(v1p[2] == doctest::Approx(1.0));
  CHECK(v1p[0] == doctest::Approx(1.0 / 11.0));
  CHECK_THROWS_AS(polar_intensity_curve(0.0, theta), DomainError);
}

}  // TEST_SUITE
