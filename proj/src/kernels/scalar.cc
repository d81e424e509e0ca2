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

#include "dpoad/kernels/kernels.h"

namespace dpoad::kernels::scalar {

double SumAbsDiff(std::span<const double> a, std::span<const double> b) {
  double total = 0.0;
  for (size_t i = 0; i < a.size(); ++i) total += std::abs(a[i] - b[i]);
  return total;
}

double MaxAbsPrefixDiff(std::span<const double> a, std::span<const double> b) {
  double prefix = 0.0;
  double best = 0.0;
  for (size_t i = 0; i < a.size(); ++i) {
    prefix += a[i] - b[i];
    best = std::max(best, std::abs(prefix));
  }
  return best;
}

void AddScaled(std::span<const double> values, double scale,
               std::span<const double> unit_noise, std::span<double> out) {
  for (size_t i = 0; i < values.size(); ++i) {
    out[i] = values[i] + scale * unit_noise[i];
  }
}

}  // namespace dpoad::kernels::scalar
