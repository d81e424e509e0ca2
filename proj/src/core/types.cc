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

#include "dpoad/core/types.h"

#include <cmath>
#include <numeric>

#include "absl/strings/str_cat.h"

namespace dpoad {

absl::string_view PhaseName(Phase phase) {
  return phase == Phase::kLearning ? "learning" : "prediction";
}

absl::StatusOr<Phase> ParsePhase(absl::string_view name) {
  if (name == "learning") return Phase::kLearning;
  if (name == "prediction") return Phase::kPrediction;
  return absl::InvalidArgumentError(
      absl::StrCat("unknown phase '", std::string(name), "'"));
}

absl::StatusOr<CountMatrix> CountMatrix::Create(int64_t bins, int64_t windows,
                                                std::vector<int64_t> counts) {
  if (bins < 0 || windows < 0) {
    return absl::InvalidArgumentError("negative matrix dimensions");
  }
  if (static_cast<int64_t>(counts.size()) != bins * windows) {
    return absl::InvalidArgumentError(
        absl::StrCat("count matrix is not rectangular: expected ",
                     bins * windows, " entries, got ", counts.size()));
  }
  CountMatrix m = Zeros(bins, windows);
  for (int64_t i = 0; i < bins * windows; ++i) {
    if (counts[i] < 0) {
      return absl::InvalidArgumentError("counts must be non-negative");
    }
    m.counts_.data()[i] = counts[i];
  }
  return m;
}

CountMatrix CountMatrix::Zeros(int64_t bins, int64_t windows) {
  CountMatrix m;
  m.counts_ = DenseMatrix<int64_t>(bins, windows, 0);
  return m;
}

absl::Status CountMatrix::Set(int64_t bin, int64_t window, int64_t count) {
  if (bin < 0 || bin >= bins() || window < 0 || window >= windows()) {
    return absl::OutOfRangeError("count matrix index out of range");
  }
  if (count < 0) return absl::InvalidArgumentError("negative count");
  counts_.at(bin, window) = count;
  return absl::OkStatus();
}

ObservationMatrix CountMatrix::ToObservations() const {
  ObservationMatrix out(bins(), windows());
  for (int64_t i = 0; i < counts_.size(); ++i) {
    out.data()[i] = static_cast<double>(counts_.data()[i]);
  }
  return out;
}

absl::StatusOr<DiscretePdf> DiscretePdf::Create(std::vector<double> mass) {
  if (mass.empty()) return absl::InvalidArgumentError("empty pmf");
  double total = 0.0;
  for (double m : mass) {
    if (!(m >= 0.0) || !std::isfinite(m)) {
      return absl::InvalidArgumentError("pmf mass must be finite and >= 0");
    }
    total += m;
  }
  if (std::abs(total - 1.0) > kSumTolerance) {
    return absl::InvalidArgumentError(
        absl::StrCat("pmf mass sums to ", total, ", expected 1"));
  }
  return DiscretePdf(std::move(mass));
}

absl::StatusOr<DiscretePdf> DiscretePdf::FromWeights(
    std::vector<double> weights) {
  if (weights.empty()) return absl::InvalidArgumentError("empty weights");
  double total = 0.0;
  for (double w : weights) {
    if (!(w >= 0.0) || !std::isfinite(w)) {
      return absl::InvalidArgumentError("weights must be finite and >= 0");
    }
    total += w;
  }
  if (total <= 0.0) {
    return Uniform(static_cast<int64_t>(weights.size()) - 1);
  }
  for (double& w : weights) w /= total;
  return DiscretePdf(std::move(weights));
}

DiscretePdf DiscretePdf::Uniform(int64_t domain_max) {
  const double p = 1.0 / static_cast<double>(domain_max + 1);
  return DiscretePdf(std::vector<double>(domain_max + 1, p));
}

DiscretePdf DiscretePdf::PointMass(int64_t domain_max, int64_t at) {
  std::vector<double> mass(domain_max + 1, 0.0);
  mass[at] = 1.0;
  return DiscretePdf(std::move(mass));
}

double DiscretePdf::Mean() const {
  double mean = 0.0;
  for (size_t c = 0; c < mass_.size(); ++c) mean += c * mass_[c];
  return mean;
}

double DiscretePdf::Variance() const {
  const double mean = Mean();
  double var = 0.0;
  for (size_t c = 0; c < mass_.size(); ++c) {
    const double d = static_cast<double>(c) - mean;
    var += d * d * mass_[c];
  }
  return var;
}

absl::StatusOr<PrivacyParams> PrivacyParams::Create(double epsilon,
                                                    double gamma, double rho,
                                                    Phase phase) {
  if (!(epsilon > 0.0)) {
    return absl::InvalidArgumentError("epsilon must be positive");
  }
  if (!(gamma > 0.0 && gamma < 1.0)) {
    return absl::InvalidArgumentError("gamma must lie in (0, 1)");
  }
  if (!(rho > 0.0 && rho < gamma && rho < 0.5)) {
    return absl::InvalidArgumentError(
        "rho must lie in (0, min(gamma, 1/2))");
  }
  return PrivacyParams{epsilon, gamma, rho, phase};
}

}  // namespace dpoad
