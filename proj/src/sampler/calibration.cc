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

#include "dpoad/sampler/calibration.h"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "absl/strings/str_cat.h"
#include "dpoad/sampler/lambert_w.h"

namespace dpoad {
namespace {

absl::StatusOr<int64_t> CheckedCeil(double value, absl::string_view what) {
  if (!std::isfinite(value) || value > static_cast<double>(kMaxSampleSize)) {
    return absl::OutOfRangeError(
        absl::StrCat(what, " is too large to sample (", value, ")"));
  }
  return std::max<int64_t>(1, static_cast<int64_t>(std::ceil(value)));
}

absl::Status CheckGamma(double gamma) {
  if (!(gamma > 0.0 && gamma < 1.0)) {
    return absl::InvalidArgumentError(
        absl::StrCat("gamma must lie in (0, 1); got ", gamma));
  }
  return absl::OkStatus();
}

// -ln(1 - sqrt(1 - rho)), the prediction-phase analogue of ln(1/rho).
double PredictionLogTerm(double rho) {
  return -std::log1p(-std::sqrt(1.0 - rho));
}

OrderIndex ClampIndex(double raw, int64_t m) {
  OrderIndex out;
  out.raw_k = static_cast<int64_t>(std::ceil(raw));
  out.clamped = out.raw_k > m;
  out.k = std::clamp<int64_t>(out.raw_k, 1, m);
  out.full_protection = out.k == m;
  return out;
}

// T - sqrt(T^2 - 4) written as 4 / (T + sqrt(T^2 - 4)) to avoid cancellation
// for large T.
double TGap(double t) { return 4.0 / (t + std::sqrt(t * t - 4.0)); }

}  // namespace

absl::StatusOr<double> RhoStarLearning(double gamma) {
  if (auto s = CheckGamma(gamma); !s.ok()) return s;
  const double arg = -gamma / (2.0 * std::sqrt(std::numbers::e));
  auto w = LambertWMinus1(arg);
  if (!w.ok()) return w.status();
  return std::exp(*w + 0.5);
}

absl::StatusOr<double> RhoStarPrediction(int64_t m) {
  if (m < 1) return absl::InvalidArgumentError("m must be >= 1");
  return kRhoFitP / std::pow(static_cast<double>(m) + kRhoFitQ, kRhoFitR);
}

absl::StatusOr<int64_t> MLearning(double gamma, double rho) {
  if (auto s = CheckGamma(gamma); !s.ok()) return s;
  if (!(rho > 0.0 && rho < gamma)) {
    return absl::InvalidArgumentError(
        absl::StrCat("rho must lie in (0, gamma); got rho=", rho,
                     " gamma=", gamma));
  }
  const double d = gamma - rho;
  return CheckedCeil(std::log(1.0 / rho) / (2.0 * d * d), "m");
}

double DkwDeviationLearning(int64_t m, double rho) {
  return std::sqrt(std::log(1.0 / rho) / (2.0 * static_cast<double>(m)));
}

double DkwDeviationPrediction(int64_t m, double rho) {
  return std::sqrt(PredictionLogTerm(rho) / (2.0 * static_cast<double>(m)));
}

absl::StatusOr<OrderIndex> KLearning(int64_t m, double gamma, double rho) {
  if (m < 1) return absl::InvalidArgumentError("m must be >= 1");
  if (auto s = CheckGamma(gamma); !s.ok()) return s;
  if (!(rho > 0.0 && rho < 1.0)) {
    return absl::InvalidArgumentError("rho must lie in (0, 1)");
  }
  const double md = static_cast<double>(m);
  return ClampIndex(md * (1.0 - gamma + rho + DkwDeviationLearning(m, rho)),
                    m);
}

absl::StatusOr<double> ComputeT(int64_t n, double epsilon, int64_t domain_size,
                                double c_const) {
  if (n < 0) return absl::InvalidArgumentError("n must be >= 0");
  if (!(epsilon > 0.0)) return absl::InvalidArgumentError("epsilon must be > 0");
  if (domain_size < 1) return absl::InvalidArgumentError("N must be >= 1");
  if (!(c_const > 0.0)) return absl::InvalidArgumentError("c must be > 0");
  return 2.0 + static_cast<double>(n) * epsilon /
                   (2.0 * static_cast<double>(domain_size) * c_const);
}

absl::StatusOr<int64_t> MPrediction(double rho, double t) {
  if (!(rho > 0.0 && rho < 1.0)) {
    return absl::InvalidArgumentError("rho must lie in (0, 1)");
  }
  if (!(t > 2.0)) {
    return absl::FailedPreconditionError(
        absl::StrCat("T = ", t, " <= 2: insufficient learning samples"));
  }
  const double gap = TGap(t);
  return CheckedCeil(2.0 * PredictionLogTerm(rho) / (gap * gap), "m");
}

absl::StatusOr<OrderIndex> KPrediction(int64_t m, double gamma, double rho) {
  if (m < 1) return absl::InvalidArgumentError("m must be >= 1");
  if (!(rho > 0.0 && rho < 1.0)) {
    return absl::InvalidArgumentError("rho must lie in (0, 1)");
  }
  const double md = static_cast<double>(m);
  return ClampIndex(md * (1.0 - gamma + rho + DkwDeviationPrediction(m, rho)),
                    m);
}

absl::StatusOr<double> RdpDiagnosticBound(int64_t m, double t) {
  if (m < 0) return absl::InvalidArgumentError("m must be >= 0");
  if (!(t > 2.0)) return absl::InvalidArgumentError("T must be > 2");
  if (m == 0) return 0.0;
  const double gap = TGap(t);
  const double inner =
      -std::expm1(-static_cast<double>(m) * gap * gap / 2.0);
  return inner * inner;
}

absl::StatusOr<SamplerParams> LearningParams(double gamma) {
  auto rho = RhoStarLearning(gamma);
  if (!rho.ok()) return rho.status();
  auto m = MLearning(gamma, *rho);
  if (!m.ok()) return m.status();
  auto k = KLearning(*m, gamma, *rho);
  if (!k.ok()) return k.status();
  SamplerParams p;
  p.phase = Phase::kLearning;
  p.m = *m;
  p.k = k->k;
  p.rho = *rho;
  p.rho_prime = DkwDeviationLearning(*m, *rho);
  p.full_protection = k->full_protection;
  p.initial_rho = *rho;
  p.initial_m = *m;
  p.converged = true;
  return p;
}

absl::StatusOr<SamplerParams> PredictionParams(double gamma, int64_t n,
                                               double epsilon,
                                               int64_t domain_size,
                                               double c_const,
                                               PredictionOptions options) {
  auto t = ComputeT(n, epsilon, domain_size, c_const);
  if (!t.ok()) return t.status();
  auto rho0 = RhoStarLearning(gamma);
  if (!rho0.ok()) return rho0.status();
  const double cap = (1.0 - 1e-9) * std::min(gamma, 0.5);

  SamplerParams p;
  p.phase = Phase::kPrediction;
  p.t_expr = *t;
  p.c_const = c_const;
  p.domain_size = domain_size;
  p.n = n;
  p.initial_rho = std::min(*rho0, cap);

  double rho = p.initial_rho;
  auto m = MPrediction(rho, *t);
  if (!m.ok()) return m.status();
  p.initial_m = *m;
  for (int round = 1; round <= options.max_rounds; ++round) {
    auto fitted = RhoStarPrediction(*m);
    if (!fitted.ok()) return fitted.status();
    const double next = std::min(*fitted, cap);
    p.fixed_point_rounds = round;
    const bool done = std::abs(next - rho) <= options.tolerance;
    rho = next;
    m = MPrediction(rho, *t);
    if (!m.ok()) return m.status();
    if (done) {
      p.converged = true;
      break;
    }
  }
  auto k = KPrediction(*m, gamma, rho);
  if (!k.ok()) return k.status();
  p.m = *m;
  p.k = k->k;
  p.rho = rho;
  p.rho_prime = DkwDeviationPrediction(*m, rho);
  p.full_protection = k->full_protection;
  auto bound = RdpDiagnosticBound(*m, *t);
  if (!bound.ok()) return bound.status();
  p.diagnostic_bound = *bound;
  return p;
}

}  // namespace dpoad
