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

#include "vsic/fit.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "vsic/errors.hpp"
#include "vsic/rabi.hpp"

namespace vsic {
namespace {

constexpr int kMaxIterations = 200;
constexpr double kStepTol = 1e-10;

int param_count(DecayModel m) { return m == DecayModel::damped_cosine ? 5 : 3; }

double envelope(DecayModel m, double t, double tc) {
  return m == DecayModel::gaussian ? std::exp(-(t / tc) * (t / tc)) : std::exp(-t / tc);
}

void jacobian_row(DecayModel m, const Eigen::VectorXd& p, double t, Eigen::Ref<Eigen::RowVectorXd, 0, Eigen::InnerStride<>> row) {
  const double a = p(0), tc = p(1);
  const double e = envelope(m, t, tc);
  switch (m) {
    case DecayModel::exponential:
      row << e, a * e * t / (tc * tc), 1.0;
      break;
    case DecayModel::gaussian:
      row << e, a * e * 2.0 * t * t / (tc * tc * tc), 1.0;
      break;
    case DecayModel::damped_cosine: {
      const double arg = 2.0 * M_PI * p(3) * t + p(4);
      const double c = std::cos(arg), s = std::sin(arg);
      row << e * c, a * e * c * t / (tc * tc), 1.0, -a * e * s * 2.0 * M_PI * t, -a * e * s;
      break;
    }
  }
}

double rss(DecayModel m, const Eigen::VectorXd& p, std::span<const double> t, std::span<const double> y) {
  double s = 0.0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    const double r = y[i] - evaluate_decay(m, {p.data(), static_cast<std::size_t>(p.size())}, t[i]);
    s += r * r;
  }
  return s;
}

// Slope of a least-squares line through (x, v).
double regression_slope(const std::vector<double>& x, const std::vector<double>& v) {
  const double n = static_cast<double>(x.size());
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
  const double mv = std::accumulate(v.begin(), v.end(), 0.0) / n;
  double sxx = 0.0, sxv = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxv += (x[i] - mx) * (v[i] - mv);
  }
  return sxx > 0.0 ? sxv / sxx : 0.0;
}

Eigen::VectorXd initial_guess(DecayModel m, std::span<const double> t, std::span<const double> y) {
  const std::size_t n = t.size();
  const double span = t.back() - t.front();
  Eigen::VectorXd p(param_count(m));

  if (m == DecayModel::damped_cosine) {
    const double c0 = std::accumulate(y.begin(), y.end(), 0.0) / static_cast<double>(n);
    const double dt = span / static_cast<double>(n - 1);
    double f0 = 1.0 / span;
    if (n >= 16) {
      try {
        f0 = extract_dominant_rabi_frequency(y, dt);
      } catch (const NumericalError&) {
      }
    }
    const double tc0 = 0.5 * span;
    // Linear projection onto the envelope-weighted quadratures.
    Eigen::MatrixXd basis(n, 2);
    Eigen::VectorXd rhs(n);
    for (std::size_t i = 0; i < n; ++i) {
      const double e = std::exp(-(t[i] - t.front()) / tc0);
      basis(i, 0) = e * std::cos(2.0 * M_PI * f0 * t[i]);
      basis(i, 1) = e * std::sin(2.0 * M_PI * f0 * t[i]);
      rhs(i) = y[i] - c0;
    }
    const Eigen::Vector2d pq = basis.colPivHouseholderQr().solve(rhs);
    p << std::hypot(pq(0), pq(1)), tc0, c0, f0, std::atan2(-pq(1), pq(0));
    return p;
  }

  const std::size_t tail = std::max<std::size_t>(1, n / 10);
  const double c0 = std::accumulate(y.end() - tail, y.end(), 0.0) / static_cast<double>(tail);
  const double a0 = y.front() - c0;
  std::vector<double> xs, ls;
  for (std::size_t i = 0; i < n; ++i) {
    const double d = (y[i] - c0) / a0;
    if (d > 0.1) {
      const double x = t[i] - t.front();
      xs.push_back(m == DecayModel::gaussian ? x * x : x);
      ls.push_back(std::log(d));
    }
  }
  double tc0 = span / 3.0;
  if (xs.size() >= 2) {
    const double slope = regression_slope(xs, ls);
    if (slope < 0.0) tc0 = m == DecayModel::gaussian ? 1.0 / std::sqrt(-slope) : -1.0 / slope;
  }
  p << a0, tc0, c0;
  return p;
}

}  // namespace

double evaluate_decay(DecayModel model, std::span<const double> p, double t) {
  const double e = envelope(model, t, p[1]);
  if (model == DecayModel::damped_cosine) {
    return p[0] * e * std::cos(2.0 * M_PI * p[3] * t + p[4]) + p[2];
  }
  return p[0] * e + p[2];
}

FitResult fit_decay(std::span<const double> t, std::span<const double> y, DecayModel model) {
  if (t.size() != y.size()) throw DomainError("fit_decay: t and y differ in length");
  if (t.size() < 5) throw DomainError("fit_decay needs at least 5 points");
  if (!std::is_sorted(t.begin(), t.end()) || !(t.back() > t.front())) {
    throw DomainError("fit_decay: t must be sorted and span a nonzero range");
  }
  const std::size_t n = t.size();
  const int k = param_count(model);

  FitResult res;
  res.model = model;

  const double mean = std::accumulate(y.begin(), y.end(), 0.0) / static_cast<double>(n);
  double spread = 0.0, scale = 1.0;
  for (double v : y) {
    spread = std::max(spread, std::abs(v - mean));
    scale = std::max(scale, std::abs(v));
  }
  if (spread <= 1e-12 * scale) {
    res.status = FitStatus::degenerate;
    res.params.assign(k, 0.0);
    res.params[1] = std::numeric_limits<double>::quiet_NaN();
    res.params[2] = mean;
    res.std_errors.assign(k, std::numeric_limits<double>::quiet_NaN());
    res.residual_ss = rss(model, Eigen::Map<const Eigen::VectorXd>(res.params.data(), k), t, y);
    return res;
  }

  Eigen::VectorXd p = initial_guess(model, t, y);
  double s = rss(model, p, t, y);
  Eigen::MatrixXd jac(n, k);
  Eigen::VectorXd r(n);
  double lambda = 1e-3;
  bool converged = false;
  int it = 0;

  for (; it < kMaxIterations && !converged; ++it) {
    for (std::size_t i = 0; i < n; ++i) {
      jacobian_row(model, p, t[i], jac.row(static_cast<Eigen::Index>(i)));
      r(i) = y[i] - evaluate_decay(model, {p.data(), static_cast<std::size_t>(k)}, t[i]);
    }
    const Eigen::MatrixXd jtj = jac.transpose() * jac;
    const Eigen::VectorXd jtr = jac.transpose() * r;
    Eigen::VectorXd scaling = jtj.diagonal().cwiseMax(1e-12 * jtj.diagonal().maxCoeff());

    // Raise damping until a step lowers the residual or becomes negligible.
    while (true) {
      Eigen::MatrixXd a = jtj;
      a.diagonal() += lambda * scaling;
      const Eigen::VectorXd step = a.ldlt().solve(jtr);
      const bool tiny = step.norm() <= kStepTol * (p.norm() + kStepTol);
      Eigen::VectorXd trial = p + step;
      const double st = trial(1) > 0.0 ? rss(model, trial, t, y) : std::numeric_limits<double>::infinity();
      if (std::isfinite(st) && st <= s) {
        p = trial;
        s = st;
        lambda = std::max(lambda * 0.1, 1e-15);
        converged = tiny;
        break;
      }
      if (tiny || lambda > 1e16) {
        converged = true;
        break;
      }
      lambda *= 10.0;
    }
  }

  res.iterations = it;
  res.params.assign(p.data(), p.data() + k);
  res.residual_ss = s;
  for (std::size_t i = 0; i < n; ++i) jacobian_row(model, p, t[i], jac.row(static_cast<Eigen::Index>(i)));
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(jac);
  const auto& sv = svd.singularValues();
  if (sv(k - 1) <= 1e-12 * sv(0)) {
    res.status = FitStatus::rank_deficient;
    res.std_errors.assign(k, std::numeric_limits<double>::quiet_NaN());
    return res;
  }
  res.status = converged ? FitStatus::converged : FitStatus::not_converged;
  const double sigma2 = n > static_cast<std::size_t>(k) ? s / static_cast<double>(n - k) : 0.0;
  const Eigen::MatrixXd cov = (jac.transpose() * jac).inverse() * sigma2;
  res.std_errors.resize(k);
  for (int i = 0; i < k; ++i) res.std_errors[i] = std::sqrt(std::max(0.0, cov(i, i)));
  return res;
}

std::string_view to_string(DecayModel m) {
  switch (m) {
    case DecayModel::exponential: return "exponential";
    case DecayModel::gaussian: return "gaussian";
    case DecayModel::damped_cosine: return "damped_cosine";
  }
  return "exponential";
}

std::string_view to_string(FitStatus s) {
  switch (s) {
    case FitStatus::converged: return "converged";
    case FitStatus::degenerate: return "degenerate";
    case FitStatus::rank_deficient: return "rank_deficient";
    case FitStatus::not_converged: return "not_converged";
  }
  return "not_converged";
}

}  // namespace vsic
