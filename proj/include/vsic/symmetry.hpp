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

// Optical selection rules of the C3v double group and polarization bookkeeping.

#pragma once

#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "vsic/rational.hpp"

namespace vsic {

enum class SymmetryLabel { E_half_plus, E_half_minus, E_three_half_1, E_three_half_2 };

/// Dipole channels: Z (E parallel c, A1) and XY (E perpendicular c, E).
struct PolarizationSet {
  bool z = false;
  bool xy = false;

  bool empty() const { return !z && !xy; }
  friend bool operator==(PolarizationSet, PolarizationSet) = default;
};

std::string_view to_string(SymmetryLabel l);
/// Accepts the enumerator names; throws DomainError otherwise.
SymmetryLabel parse_symmetry_label(std::string_view s);

/// E1/2-E1/2: {Z, XY}; E1/2-E3/2: {XY}; 1E3/2-2E3/2: {Z}; equal E3/2 labels: {}.
PolarizationSet allowed_polarizations(SymmetryLabel a, SymmetryLabel b);

struct Sublevel {
  SymmetryLabel label;
  Rational weight{1};
  std::string spin;  ///< informational spin-basis label
};

struct Manifold {
  std::vector<Sublevel> levels;
};

struct PairedTransition {
  std::size_t ground = 0;
  std::size_t excited = 0;
  Rational split{1, 2};  ///< share of the weight sent to Z when both channels are allowed
};

struct PolarizationTotals {
  Rational parallel;       ///< Z
  Rational perpendicular;  ///< XY
};

/// Each pair contributes ground.weight * excited.weight to the allowed channels,
/// divided by the pair's split when both are allowed.
PolarizationTotals polarization_ratio(const Manifold& ground, const Manifold& excited,
                                      std::span<const PairedTransition> pairing);

struct SelectionPreset {
  std::string name;
  std::string description;
  Manifold ground, excited;
  std::vector<PairedTransition> pairing;
};

/// Loads a preset data file (JSON).
SelectionPreset load_selection_preset(const std::filesystem::path& path);

/// I(theta) = (r cos^2 theta + sin^2 theta) / max(r, 1), theta in degrees from the c axis.
std::vector<double> polar_intensity_curve(double ratio_par_perp, std::span<const double> theta_deg);

}  // namespace vsic
