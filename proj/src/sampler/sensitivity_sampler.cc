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

#include "dpoad/sampler/sensitivity_sampler.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "absl/strings/str_cat.h"

namespace dpoad {

std::vector<double> SensitivitySample::Candidates() const {
  std::vector<double> out;
  out.reserve(static_cast<size_t>(m));
  for (size_t i = 0; i < values.size(); ++i) {
    out.insert(out.end(), static_cast<size_t>(multiplicities[i]), values[i]);
  }
  return out;
}

int64_t SensitivitySample::CountBelow(double x) const {
  int64_t n = 0;
  for (size_t i = 0; i < values.size() && values[i] < x; ++i) {
    n += multiplicities[i];
  }
  return n;
}

int64_t SensitivitySample::CountAtMost(double x) const {
  int64_t n = 0;
  for (size_t i = 0; i < values.size() && values[i] <= x; ++i) {
    n += multiplicities[i];
  }
  return n;
}

double SensitivitySample::OrderStatistic(int64_t k_prime) const {
  int64_t seen = 0;
  for (size_t i = 0; i < values.size(); ++i) {
    seen += multiplicities[i];
    if (seen >= k_prime) return values[i];
  }
  return values.empty() ? 0.0 : values.back();
}

CandidateDistribution NeighborDifferenceDistribution(const DiscretePdf& pdf) {
  const int64_t n = pdf.domain_size();
  CandidateDistribution out;
  out.values.resize(n);
  out.probs.assign(n, 0.0);
  for (int64_t d = 0; d < n; ++d) out.values[d] = static_cast<double>(d);
  for (int64_t c = 0; c < n; ++c) {
    if (pdf[c] == 0.0) continue;
    out.probs[0] += pdf[c] * pdf[c];
    for (int64_t d = 1; c + d < n; ++d) {
      out.probs[d] += 2.0 * pdf[c] * pdf[c + d];
    }
  }
  return out;
}

absl::StatusOr<SensitivitySample> SampleFromCandidateDistribution(
    const CandidateDistribution& dist, int64_t m, int64_t k, Rng& rng) {
  if (m < 1 || k < 1 || k > m) {
    return absl::InvalidArgumentError(
        absl::StrCat("need 1 <= k <= m; got k=", k, " m=", m));
  }
  if (dist.values.size() != dist.probs.size() || dist.values.empty()) {
    return absl::InvalidArgumentError("malformed candidate distribution");
  }
  // Merge duplicates and sort ascending.
  std::vector<size_t> order(dist.values.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](size_t a, size_t b) {
    return dist.values[a] < dist.values[b];
  });
  std::vector<double> values;
  std::vector<double> probs;
  for (size_t idx : order) {
    const double v = dist.values[idx];
    const double p = dist.probs[idx];
    if (!std::isfinite(v) || !(p >= 0.0) || !std::isfinite(p)) {
      return absl::InvalidArgumentError("candidate values and probabilities "
                                        "must be finite, probabilities >= 0");
    }
    if (p == 0.0) continue;
    if (!values.empty() && values.back() == v) {
      probs.back() += p;
    } else {
      values.push_back(v);
      probs.push_back(p);
    }
  }
  const double total = std::accumulate(probs.begin(), probs.end(), 0.0);
  if (!(total > 0.0)) {
    return absl::InvalidArgumentError("candidate distribution has no mass");
  }

  // Multinomial(m, probs) by sequential conditional binomials.
  SensitivitySample out;
  out.m = m;
  out.k = k;
  int64_t remaining = m;
  double remaining_mass = total;
  for (size_t i = 0; i < values.size() && remaining > 0; ++i) {
    int64_t count = remaining;
    if (i + 1 < values.size()) {
      const double p = std::clamp(probs[i] / remaining_mass, 0.0, 1.0);
      std::binomial_distribution<int64_t> binom(remaining, p);
      count = binom(rng.engine());
    }
    remaining -= count;
    remaining_mass -= probs[i];
    if (count > 0) {
      out.values.push_back(values[i]);
      out.multiplicities.push_back(count);
    }
  }
  out.chosen = out.OrderStatistic(k);
  return out;
}

absl::StatusOr<SensitivitySample> SampleSensitivity(const DiscretePdf& pdf,
                                                    int64_t m, int64_t k,
                                                    Rng& rng,
                                                    CandidateKind kind) {
  if (kind == CandidateKind::kDirectValue) {
    CandidateDistribution direct;
    direct.probs.assign(pdf.mass().begin(), pdf.mass().end());
    direct.values.resize(direct.probs.size());
    std::iota(direct.values.begin(), direct.values.end(), 0.0);
    return SampleFromCandidateDistribution(direct, m, k, rng);
  }
  return SampleFromCandidateDistribution(NeighborDifferenceDistribution(pdf),
                                         m, k, rng);
}

absl::StatusOr<SensitivitySample> SampleSensitivityUniform(
    int64_t c_max, int64_t m, int64_t k, Rng& rng, CandidateKind kind) {
  if (c_max < 0) return absl::InvalidArgumentError("c_max must be >= 0");
  return SampleSensitivity(DiscretePdf::Uniform(c_max), m, k, rng, kind);
}

}  // namespace dpoad
