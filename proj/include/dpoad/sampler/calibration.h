// Copyright 2026 The DPOAD Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef DPOAD_SAMPLER_CALIBRATION_H_
#define DPOAD_SAMPLER_CALIBRATION_H_

#include <cstdint>

#include "absl/status/statusor.h"
#include "dpoad/core/types.h"

// Closed-form calibration of the (k, m)-approximate sensitivity. Logs are
// natural logs throughout.

namespace dpoad {

// Largest sample size any evaluator will return. Closed forms that exceed it
// (rho -> gamma, T -> 2) fail with OutOfRange instead of overflowing.
inline constexpr int64_t kMaxSampleSize = int64_t{1} << 50;

// Constants of the fitted prediction-phase optimum rho* = p / (m + q)^r.
inline constexpr double kRhoFitP = 1.426;
inline constexpr double kRhoFitQ = 0.8389;
inline constexpr double kRhoFitR = 0.4589;

// exp(W_{-1}(-gamma / (2 sqrt(e))) + 1/2). Requires 0 < gamma < 1.
absl::StatusOr<double> RhoStarLearning(double gamma);

// p / (m + q)^r. Requires m >= 1.
absl::StatusOr<double> RhoStarPrediction(int64_t m);

// ceil(ln(1/rho) / (2 (gamma - rho)^2)). Requires 0 < rho < gamma < 1.
absl::StatusOr<int64_t> MLearning(double gamma, double rho);

// Order-statistic index after clamping. `raw_k` is the unclamped ceiling;
// full_protection is set when k == m, which makes the chosen sensitivity
// the largest candidate.
struct OrderIndex {
  int64_t k = 0;
  int64_t raw_k = 0;
  bool clamped = false;
  bool full_protection = false;
};

// ceil(m (1 - gamma + rho + sqrt(ln(1/rho) / (2m)))) clamped to m.
absl::StatusOr<OrderIndex> KLearning(int64_t m, double gamma, double rho);

// 2 + n eps / (2 N c).
absl::StatusOr<double> ComputeT(int64_t n, double epsilon, int64_t domain_size,
                                double c_const);

// ceil(-2 ln(1 - sqrt(1 - rho)) / (T - sqrt(T^2 - 4))^2). T <= 2 fails with
// FailedPrecondition: the analyst has not seen enough samples yet.
absl::StatusOr<int64_t> MPrediction(double rho, double t);

// ceil(m (1 - gamma + rho + sqrt(-ln(1 - sqrt(1 - rho)) / (2m)))) clamped to m.
absl::StatusOr<OrderIndex> KPrediction(int64_t m, double gamma, double rho);

// DKW deviation rho' that enters the k formula of each phase.
double DkwDeviationLearning(int64_t m, double rho);
double DkwDeviationPrediction(int64_t m, double rho);

// [1 - exp(-m (T - sqrt(T^2 - 4))^2 / 2)]^2. Audit-only lower bound on the
// probability that the sampled empirical CDF is rho'-close. m = 0 gives 0.
absl::StatusOr<double> RdpDiagnosticBound(int64_t m, double t);

// Calibration for one round.
struct SamplerParams {
  Phase phase = Phase::kLearning;
  int64_t m = 0;
  int64_t k = 0;
  double rho = 0.0;
  double rho_prime = 0.0;
  bool full_protection = false;

  // Prediction phase only.
  double t_expr = 0.0;
  double c_const = 1.0;
  int64_t domain_size = 0;  // N = C_max + 1
  int64_t n = 0;            // cumulative released values
  double initial_rho = 0.0;
  int64_t initial_m = 0;
  int fixed_point_rounds = 0;
  bool converged = false;
  double diagnostic_bound = 0.0;
};

// rho = rho*(gamma), then m and k of the learning phase.
absl::StatusOr<SamplerParams> LearningParams(double gamma);

struct PredictionOptions {
  int max_rounds = 20;
  double tolerance = 1e-6;
};

// m depends on rho and the fitted rho* depends on m. Starting from the
// learning-phase rho*(gamma), iterates rho -> m -> rho* until the change is
// at most `tolerance` or `max_rounds` is reached. rho is capped just below
// min(gamma, 1/2) so that the round stays a valid PrivacyParams.
absl::StatusOr<SamplerParams> PredictionParams(double gamma, int64_t n,
                                               double epsilon,
                                               int64_t domain_size,
                                               double c_const,
                                               PredictionOptions options = {});

}  // namespace dpoad

#endif  // DPOAD_SAMPLER_CALIBRATION_H_
