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

#include "vsic/filter_function.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "vsic/errors.hpp"
#include "vsic/simd/kernels.hpp"

namespace vsic {
namespace {

constexpr std::array<double, 8> kGl8Nodes = {
    -0.9602898564975363, -0.7966664774136267, -0.5255324099163290, -0.1834346424956498,
    0.1834346424956498,  0.5255324099163290,  0.7966664774136267,  0.9602898564975363};
constexpr std::array<double, 8> kGl8Weights = {
    0.1012285362903763, 0.2223810344533745, 0.3137066458778873, 0.3626837833783620,
    0.3626837833783620, 0.3137066458778873, 0.2223810344533745, 0.1012285362903763};

struct Phasors {
  std::vector<double> x, c;
};

Phasors switching_phasors(std::span<const double> pos) {
  const std::size_t n = pos.size();
  Phasors p;
  p.x.reserve(n + 2);
  p.c.reserve(n + 2);
  p.x.push_back(0.0);
  p.c.push_back(1.0);
  for (std::size_t j = 0; j < n; ++j) {
    p.x.push_back(pos[j]);
    p.c.push_back((j % 2 == 0) ? -2.0 : 2.0);
  }
  p.x.push_back(1.0);
  p.c.push_back((n % 2 == 0) ? -1.0 : 1.0);
  return p;
}

void validate_positions(std::span<const double> pos) {
  for (std::size_t j = 0; j < pos.size(); ++j) {
    if (!(pos[j] > 0.0 && pos[j] < 1.0)) throw DomainError("pulse positions must lie in (0, 1)");
    if (j > 0 && !(pos[j] > pos[j - 1])) throw DomainError("pulse positions must be strictly increasing");
  }
}

// int_0^1 y(s) ds for the +-1 switching function.
double switching_integral(std::span<const double> pos) {
  double acc = 0.0, prev = 0.0, sign = 1.0;
  for (double x : pos) {
    acc += sign * (x - prev);
    prev = x;
    sign = -sign;
  }
  return acc + sign * (1.0 - prev);
}

// 32-point Gauss-Legendre on (0, 1) for the tail integral, built once.
const std::pair<std::vector<double>, std::vector<double>>& unit_gauss32() {
  static const auto rule = [] {
    const int n = 32;
    std::vector<double> x(n), w(n);
    for (int i = 0; i < n; ++i) {
      double z = std::cos(M_PI * (i + 0.75) / (n + 0.5));
      double dp = 0.0;
      for (int it = 0; it < 100; ++it) {
        double p0 = 1.0, p1 = 0.0;
        for (int k = 1; k <= n; ++k) {
          const double p2 = p1;
          p1 = p0;
          p0 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p2) / k;
        }
        dp = n * (z * p0 - p1) / (z * z - 1.0);
        const double dz = p0 / dp;
        z -= dz;
        if (std::abs(dz) < 1e-16) break;
      }
      x[i] = 0.5 * (1.0 - z);
      w[i] = 1.0 / ((1.0 - z * z) * dp * dp);
    }
    return std::make_pair(x, w);
  }();
  return rule;
}

// int_X^inf cos(u) / u^2 du. The asymptotic auxiliary functions f, g give
// int_X^inf sin(u) / u du = f cos X + g sin X; below X = 40 the gap is
// integrated directly.
double cos_over_square_tail(double x) {
  constexpr double kSwitch = 40.0;
  double head = 0.0;
  if (x < kSwitch) {
    for (double a = x; a < kSwitch; a += 1.0) {
      const double b = std::min(a + 1.0, kSwitch), mid = 0.5 * (a + b), half = 0.5 * (b - a);
      for (int q = 0; q < 8; ++q) {
        const double u = mid + half * kGl8Nodes[q];
        head += half * kGl8Weights[q] * std::cos(u) / (u * u);
      }
    }
    x = kSwitch;
  }
  double f = 0.0, g = 0.0, tf = 1.0 / x, tg = 1.0 / (x * x);
  for (int m = 0; m < 30; ++m) {
    f += tf;
    g += tg;
    const double nf = -tf * (2.0 * m + 1.0) * (2.0 * m + 2.0) / (x * x);
    const double ng = -tg * (2.0 * m + 2.0) * (2.0 * m + 3.0) / (x * x);
    if (std::abs(nf) >= std::abs(tf) || std::abs(nf) < 1e-18 * std::abs(f)) break;
    tf = nf;
    tg = ng;
  }
  return head + std::cos(x) / x - (f * std::cos(x) + g * std::sin(x));
}

// Oscillating part of int_Z^inf |F(z)|^2 / z^2 dz, i.e. the cross terms
// 2 c_j c_k cos(z |x_j - x_k|) that average to zero.
double oscillating_tail(std::span<const double> pos, double z_max) {
  const Phasors ph = switching_phasors(pos);
  double acc = 0.0;
  for (std::size_t j = 0; j < ph.x.size(); ++j) {
    for (std::size_t k = j + 1; k < ph.x.size(); ++k) {
      const double a = ph.x[k] - ph.x[j];
      acc += 2.0 * ph.c[j] * ph.c[k] * a * cos_over_square_tail(a * z_max);
    }
  }
  return acc;
}

}  // namespace

NoisePsd NoisePsd::white(double level) {
  NoisePsd p;
  p.kind = Kind::white;
  p.level = level;
  return p;
}

NoisePsd NoisePsd::lorentzian(double s0, double corner) {
  NoisePsd p;
  p.kind = Kind::lorentzian;
  p.level = s0;
  p.corner = corner;
  return p;
}

NoisePsd NoisePsd::power_law(double prefactor, double exponent) {
  NoisePsd p;
  p.kind = Kind::power_law;
  p.level = prefactor;
  p.exponent = exponent;
  return p;
}

NoisePsd NoisePsd::tabulated(std::vector<double> omega, std::vector<double> value) {
  NoisePsd p;
  p.kind = Kind::tabulated;
  p.omega = std::move(omega);
  p.value = std::move(value);
  return p;
}

void NoisePsd::validate() const {
  if (!(level >= 0.0) || !std::isfinite(level)) throw DomainError("psd level must be finite and >= 0");
  switch (kind) {
    case Kind::white:
      break;
    case Kind::lorentzian:
      if (!(corner > 0.0)) throw DomainError("psd corner frequency must be > 0");
      break;
    case Kind::power_law:
      if (!(exponent >= 0.0)) throw DomainError("psd exponent must be >= 0");
      break;
    case Kind::tabulated:
      if (omega.size() < 2 || omega.size() != value.size()) {
        throw DomainError("tabulated psd needs >= 2 matching samples");
      }
      for (std::size_t i = 0; i < omega.size(); ++i) {
        if (!(omega[i] >= 0.0) || (i > 0 && !(omega[i] > omega[i - 1]))) {
          throw DomainError("tabulated psd frequencies must be increasing and >= 0");
        }
        if (!(value[i] >= 0.0) || !std::isfinite(value[i])) throw DomainError("psd values must be >= 0");
      }
      break;
  }
}

double NoisePsd::operator()(double w) const {
  switch (kind) {
    case Kind::white:
      return level;
    case Kind::lorentzian:
      return level / (1.0 + (w / corner) * (w / corner));
    case Kind::power_law:
      return level * std::pow(w, -exponent);
    case Kind::tabulated: {
      if (w <= omega.front()) return value.front();
      if (w >= omega.back()) return w == omega.back() ? value.back() : 0.0;
      const auto it = std::upper_bound(omega.begin(), omega.end(), w);
      const std::size_t i = static_cast<std::size_t>(it - omega.begin());
      const double s = (w - omega[i - 1]) / (omega[i] - omega[i - 1]);
      return value[i - 1] + s * (value[i] - value[i - 1]);
    }
  }
  return 0.0;
}

double NoisePsd::low_frequency_exponent() const {
  return kind == Kind::power_law ? exponent : 0.0;
}

bool NoisePsd::is_zero() const {
  if (kind == Kind::tabulated) {
    return std::all_of(value.begin(), value.end(), [](double v) { return v == 0.0; });
  }
  return level == 0.0;
}

std::vector<double> filter_weight(std::span<const double> pulse_positions, std::span<const double> z) {
  validate_positions(pulse_positions);
  const Phasors ph = switching_phasors(pulse_positions);
  std::vector<double> out(z.size());
  simd::active().phasor_power(z, ph.x, ph.c, out);
  return out;
}

double filter_function_chi(std::span<const double> pulse_positions, double total_time,
                           const NoisePsd& psd) {
  validate_positions(pulse_positions);
  psd.validate();
  if (!(total_time > 0.0) || !std::isfinite(total_time)) throw DomainError("total_time must be > 0");
  if (psd.is_zero()) return 0.0;

  const double p = std::abs(switching_integral(pulse_positions)) > 1e-12 ? 1.0 : 2.0;
  if (psd.low_frequency_exponent() >= 2.0 * p - 1.0) throw DomainError("infrared divergence");

  const double n = static_cast<double>(pulse_positions.size());
  const double z_max = std::max(200.0, 20.0 * M_PI * (n + 1.0));
  const double t = total_time;

  std::vector<double> edges{0.0};
  for (double z = 1e-8; z < 1.0; z *= 2.0) edges.push_back(z);
  for (double z = 1.0; z < z_max; z += 2.0) edges.push_back(z);
  edges.push_back(z_max);
  if (psd.kind == NoisePsd::Kind::tabulated) {
    for (double w : psd.omega) {
      if (w * t > 0.0 && w * t < z_max) edges.push_back(w * t);
    }
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  }

  const std::size_t panels = edges.size() - 1;
  std::vector<double> nodes(panels * 8), weights(panels * 8);
  for (std::size_t k = 0; k < panels; ++k) {
    const double mid = 0.5 * (edges[k] + edges[k + 1]);
    const double half = 0.5 * (edges[k + 1] - edges[k]);
    for (int q = 0; q < 8; ++q) {
      nodes[k * 8 + q] = mid + half * kGl8Nodes[q];
      weights[k * 8 + q] = half * kGl8Weights[q];
    }
  }
  const std::vector<double> f2 = filter_weight(pulse_positions, nodes);
  double body = 0.0;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const double z = nodes[i];
    body += weights[i] * psd(z / t) * f2[i] / (z * z);
  }

  const auto& [ux, uw] = unit_gauss32();
  double tail = 0.0;
  for (std::size_t i = 0; i < ux.size(); ++i) tail += uw[i] * psd(z_max / (ux[i] * t));
  tail *= (4.0 * n + 2.0) / z_max;
  // the PSD is taken as locally flat beyond z_max for the oscillating terms
  tail += psd(z_max / t) * oscillating_tail(pulse_positions, z_max);

  return t / M_PI * (body + tail);
}

double filter_function_coherence(std::span<const double> pulse_positions, double total_time,
                                 const NoisePsd& psd) {
  return std::exp(-filter_function_chi(pulse_positions, total_time, psd));
}

}  // namespace vsic
