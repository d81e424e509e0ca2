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

#include "dpoad/sampler/lambert_w.h"

#include <cmath>
#include <numbers>

#include "absl/strings/str_cat.h"

namespace dpoad {
namespace {

constexpr double kInvE = 1.0 / std::numbers::e;
constexpr double kResidualTolerance = 1e-12;
constexpr int kMaxHalleyIterations = 64;

double Residual(double w, double x) { return w * std::exp(w) - x; }

double InitialGuess(double x) {
  if (x < -0.25) {
    // Series in p = -sqrt(2(1 + e x)) around the branch point.
    const double p = -std::sqrt(std::max(0.0, 2.0 * (1.0 + std::numbers::e * x)));
    return -1.0 + p * (1.0 + p * (-1.0 / 3.0 + p * (11.0 / 72.0)));
  }
  const double l1 = std::log(-x);
  const double l2 = std::log(-l1);
  return l1 - l2 + l2 / l1;
}

double Bisect(double x) {
  // f(w) = w e^w - x decreases on (-inf, -1]; f(-1) < 0 < f(-inf).
  double hi = -1.0;
  double lo = -2.0;
  while (Residual(lo, x) <= 0.0) lo *= 2.0;
  for (int i = 0; i < 200 && hi - lo > 0.0; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;
    if (Residual(mid, x) > 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return std::abs(Residual(lo, x)) < std::abs(Residual(hi, x)) ? lo : hi;
}

}  // namespace

absl::StatusOr<double> LambertWMinus1(double x) {
  if (!(x < 0.0) || !(x >= -kInvE - 1e-16)) {
    return absl::OutOfRangeError(
        absl::StrCat("W_{-1} is real only on [-1/e, 0); got ", x));
  }
  if (1.0 + std::numbers::e * x <= 1e-16) return -1.0;

  double w = InitialGuess(x);
  for (int i = 0; i < kMaxHalleyIterations; ++i) {
    const double ew = std::exp(w);
    const double f = w * ew - x;
    const double wp1 = w + 1.0;
    if (wp1 == 0.0) break;
    const double step = f / (ew * wp1 - (w + 2.0) * f / (2.0 * wp1));
    const double next = w - step;
    if (!std::isfinite(next) || next > -1.0) break;
    w = next;
    if (std::abs(step) <= 1e-16 * std::abs(w)) break;
  }
  if (w > -1.0 || !std::isfinite(w) ||
      !(std::abs(Residual(w, x)) < kResidualTolerance)) {
    w = Bisect(x);
  }
  return w;
}

}  // namespace dpoad
