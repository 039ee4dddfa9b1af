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

// Nonlinear least-squares fits of decay envelopes.

#pragma once

#include <span>
#include <string_view>
#include <vector>

namespace vsic {

enum class DecayModel {
  exponential,    ///< A exp(-t/T) + c
  gaussian,       ///< A exp(-(t/T)^2) + c
  damped_cosine,  ///< A exp(-t/T) cos(2 pi f t + phi) + c
};

enum class FitStatus {
  converged,
  degenerate,      ///< flat data: amplitude 0, time constant undefined
  rank_deficient,  ///< Jacobian lost rank; parameters hold the last iterate
  not_converged,   ///< iteration limit reached; parameters hold the last iterate
};

struct FitResult {
  DecayModel model = DecayModel::exponential;
  FitStatus status = FitStatus::not_converged;
  /// A, T, c and, for damped_cosine, f and phi.
  std::vector<double> params;
  std::vector<double> std_errors;
  double residual_ss = 0.0;
  int iterations = 0;

  bool ok() const { return status == FitStatus::converged; }
  double amplitude() const { return params[0]; }
  double time_constant() const { return params[1]; }
  double offset() const { return params[2]; }
  double frequency() const { return params.size() > 3 ? params[3] : 0.0; }
  double phase() const { return params.size() > 4 ? params[4] : 0.0; }
};

/// Model value at time \p t for the parameter layout of FitResult::params.
double evaluate_decay(DecayModel model, std::span<const double> params, double t);

/// Levenberg-Marquardt fit with analytic Jacobians. Steps are accepted only when
/// the residual decreases; iteration stops when the relative step falls below
/// 1e-10 or after 200 trial steps. Standard errors are sqrt(diag((J^T J)^-1) s^2)
/// with s^2 = RSS / (n - p).
FitResult fit_decay(std::span<const double> t, std::span<const double> y, DecayModel model);

std::string_view to_string(DecayModel m);
std::string_view to_string(FitStatus s);

}  // namespace vsic
