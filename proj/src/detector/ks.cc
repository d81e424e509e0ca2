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

#include <algorithm>
#include <cmath>
#include <vector>

#include "absl/strings/str_cat.h"
#include "dpoad/detector/detector.h"

namespace dpoad {
namespace {

double Gap(int64_t i, int64_t n, int64_t j, int64_t m) {
  return std::abs(static_cast<double>(i) / static_cast<double>(n) -
                  static_cast<double>(j) / static_cast<double>(m));
}

}  // namespace

absl::StatusOr<double> KsStatistic(std::span<const double> sample_a,
                                   std::span<const double> sample_b) {
  if (sample_a.empty() || sample_b.empty()) {
    return absl::InvalidArgumentError("KS statistic needs non-empty samples");
  }
  std::vector<double> a(sample_a.begin(), sample_a.end());
  std::vector<double> b(sample_b.begin(), sample_b.end());
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  const int64_t n = static_cast<int64_t>(a.size());
  const int64_t m = static_cast<int64_t>(b.size());
  int64_t i = 0;
  int64_t j = 0;
  double d = 0.0;
  // Walk the merged breakpoints; both ECDFs are evaluated after every copy
  // of the current value has been consumed.
  while (i < n || j < m) {
    const double v = (j >= m || (i < n && a[i] <= b[j])) ? a[i] : b[j];
    while (i < n && a[i] == v) ++i;
    while (j < m && b[j] == v) ++j;
    d = std::max(d, Gap(i, n, j, m));
  }
  return d;
}

double KsAgainstSorted(std::span<const double> sorted_reference,
                       std::span<const double> test) {
  const int64_t n = static_cast<int64_t>(sorted_reference.size());
  const int64_t l = static_cast<int64_t>(test.size());
  if (l == 1) {
    // Single test value x: sup is max(#ref < x, #ref > x) / n.
    const double x = test[0];
    const int64_t below = std::lower_bound(sorted_reference.begin(),
                                           sorted_reference.end(), x) -
                          sorted_reference.begin();
    const int64_t at_most = std::upper_bound(sorted_reference.begin(),
                                             sorted_reference.end(), x) -
                            sorted_reference.begin();
    return std::max(Gap(0, 1, below, n), Gap(1, 1, at_most, n));
  }
  std::vector<double> t(test.begin(), test.end());
  std::sort(t.begin(), t.end());
  // F_test is constant between test values and F_ref is monotone, so the
  // supremum is attained just below or at a test value.
  double d = 0.0;
  int64_t i = 0;
  while (i < l) {
    const double v = t[i];
    const int64_t before = i;
    while (i < l && t[i] == v) ++i;
    const int64_t below = std::lower_bound(sorted_reference.begin(),
                                           sorted_reference.end(), v) -
                          sorted_reference.begin();
    const int64_t at_most = std::upper_bound(sorted_reference.begin(),
                                             sorted_reference.end(), v) -
                            sorted_reference.begin();
    d = std::max({d, Gap(before, l, below, n), Gap(i, l, at_most, n)});
  }
  return d;
}

double KsPValue(double d, int64_t n, int64_t m) {
  if (d <= 0.0) return 1.0;
  const double en = std::sqrt(static_cast<double>(n) * static_cast<double>(m) /
                              static_cast<double>(n + m));
  // Stephens' small-sample correction of the Kolmogorov limit law.
  const double lambda = (en + 0.12 + 0.11 / en) * d;
  if (lambda < 0.2) return 1.0;
  double sum = 0.0;
  double sign = 1.0;
  for (int j = 1; j <= 100; ++j) {
    const double term = sign * std::exp(-2.0 * j * j * lambda * lambda);
    sum += term;
    if (std::abs(term) < 1e-12) break;
    sign = -sign;
  }
  return std::clamp(2.0 * sum, 0.0, 1.0);
}

int64_t UnitsPerBin(int64_t windows, int64_t window_length) {
  if (window_length < 1) return 0;
  return (windows + window_length - 1) / window_length;
}

absl::StatusOr<std::vector<double>> ScoreWindows(
    const ObservationMatrix& reference, const ObservationMatrix& test,
    ScoreOptions options) {
  if (reference.rows() != test.rows()) {
    return absl::InvalidArgumentError(
        absl::StrCat("reference has ", reference.rows(), " bins, test has ",
                     test.rows()));
  }
  if (options.window_length < 1) {
    return absl::InvalidArgumentError("window_length must be >= 1");
  }
  if (reference.cols() == 0 && test.rows() > 0) {
    return absl::InvalidArgumentError("empty reference");
  }
  const int64_t units = UnitsPerBin(test.cols(), options.window_length);
  std::vector<double> scores;
  scores.reserve(test.rows() * units);
  std::vector<double> ref;
  for (int64_t b = 0; b < test.rows(); ++b) {
    const auto row = reference.row(b);
    ref.assign(row.begin(), row.end());
    std::sort(ref.begin(), ref.end());
    const auto t = test.row(b);
    for (int64_t u = 0; u < units; ++u) {
      const int64_t start = u * options.window_length;
      const int64_t len =
          std::min(options.window_length, test.cols() - start);
      const double d = KsAgainstSorted(ref, t.subspan(start, len));
      scores.push_back(options.transform == ScoreTransform::kStatistic
                           ? d
                           : 1.0 - KsPValue(d, len,
                                            static_cast<int64_t>(ref.size())));
    }
  }
  return scores;
}

absl::StatusOr<std::vector<double>> ScoreWindows(const CountMatrix& reference,
                                                 const CountMatrix& test,
                                                 ScoreOptions options) {
  return ScoreWindows(reference.ToObservations(), test.ToObservations(),
                      options);
}

}  // namespace dpoad
