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

#include "vsic/debye_waller.hpp"

#include <algorithm>
#include <cmath>

#include "vsic/errors.hpp"

namespace vsic {

void Spectrum::validate() const {
  if (wavelength.size() < 2 || wavelength.size() != intensity.size()) {
    throw DomainError("spectrum needs >= 2 matching samples");
  }
  for (std::size_t i = 0; i < wavelength.size(); ++i) {
    if (i > 0 && !(wavelength[i] > wavelength[i - 1])) throw DomainError("wavelengths must be strictly increasing");
    if (!(intensity[i] >= 0.0) || !std::isfinite(intensity[i])) throw DomainError("intensities must be >= 0");
  }
}

namespace {

double interpolate(const Spectrum& s, double x) {
  const auto it = std::upper_bound(s.wavelength.begin(), s.wavelength.end(), x);
  if (it == s.wavelength.begin()) return s.intensity.front();
  if (it == s.wavelength.end()) return s.intensity.back();
  const std::size_t i = static_cast<std::size_t>(it - s.wavelength.begin());
  const double u = (x - s.wavelength[i - 1]) / (s.wavelength[i] - s.wavelength[i - 1]);
  return s.intensity[i - 1] + u * (s.intensity[i] - s.intensity[i - 1]);
}

void check_window(const Spectrum& s, WavelengthWindow w) {
  if (!(w.first < w.second)) throw DomainError("window bounds must satisfy a < b");
  if (w.first < s.wavelength.front() || w.second > s.wavelength.back()) {
    throw DomainError("window lies outside the spectrum");
  }
}

}  // namespace

double integrate_window(const Spectrum& spec, WavelengthWindow w) {
  spec.validate();
  check_window(spec, w);
  double acc = 0.0;
  double x_prev = w.first, y_prev = interpolate(spec, w.first);
  for (std::size_t i = 0; i < spec.wavelength.size(); ++i) {
    const double x = spec.wavelength[i];
    if (x <= w.first) continue;
    if (x >= w.second) break;
    acc += 0.5 * (x - x_prev) * (spec.intensity[i] + y_prev);
    x_prev = x;
    y_prev = spec.intensity[i];
  }
  acc += 0.5 * (w.second - x_prev) * (interpolate(spec, w.second) + y_prev);
  return acc;
}

double debye_waller(const Spectrum& spec, std::span<const WavelengthWindow> zpl_windows,
                    WavelengthWindow psb_window) {
  spec.validate();
  check_window(spec, psb_window);
  for (std::size_t i = 0; i < zpl_windows.size(); ++i) {
    check_window(spec, zpl_windows[i]);
    const auto& z = zpl_windows[i];
    if (z.first < psb_window.second && psb_window.first < z.second) {
      throw DomainError("ZPL windows must not overlap the PSB window");
    }
  }
  double zpl = 0.0;
  for (const auto& w : zpl_windows) zpl += integrate_window(spec, w);
  const double psb = integrate_window(spec, psb_window);
  if (!(zpl + psb > 0.0)) throw DomainError("undefined Debye-Waller factor: zero total intensity");
  return zpl / (zpl + psb);
}

Spectrum synthetic_two_zpl_spectrum(double step) {
  if (!(step > 0.0 && step <= 0.1)) throw DomainError("synthetic spectrum step must lie in (0, 0.1] nm");
  constexpr double kSigma = 0.3, kPsbLo = 866.0, kPsbHi = 956.0;
  const double pi = std::acos(-1.0);
  const auto gauss = [&](double x, double mu, double area) {
    const double u = (x - mu) / kSigma;
    return area * std::exp(-0.5 * u * u) / (kSigma * std::sqrt(2.0 * pi));
  };
  Spectrum s;
  const auto n = static_cast<std::size_t>(std::llround(120.0 / step)) + 1;
  s.wavelength.resize(n);
  s.intensity.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double x = 850.0 + 120.0 * static_cast<double>(i) / static_cast<double>(n - 1);
    double y = gauss(x, 861.0, 0.40) + gauss(x, 858.0, 0.08);
    if (x > kPsbLo && x < kPsbHi) {
      // raised cosine of unit area times 0.52
      const double w = kPsbHi - kPsbLo;
      y += 0.52 * (1.0 - std::cos(2.0 * pi * (x - kPsbLo) / w)) / w;
    }
    s.wavelength[i] = x;
    s.intensity[i] = y;
  }
  return s;
}

}  // namespace vsic
