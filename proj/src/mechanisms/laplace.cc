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

#include "dpoad/mechanisms/laplace.h"

#include <cmath>

#include "dpoad/kernels/kernels.h"

namespace dpoad {

double SampleUnitLaplace(Rng& rng) {
  double u;
  do {
    u = rng.Uniform01() - 0.5;
  } while (u == -0.5);
  const double magnitude = -std::log1p(-2.0 * std::abs(u));
  return u < 0.0 ? -magnitude : magnitude;
}

absl::StatusOr<double> SampleLaplace(double scale_b, Rng& rng) {
  if (!(scale_b >= 0.0) || !std::isfinite(scale_b)) {
    return absl::InvalidArgumentError("Laplace scale must be finite and >= 0");
  }
  if (scale_b == 0.0) return 0.0;
  return scale_b * SampleUnitLaplace(rng);
}

absl::StatusOr<std::vector<double>> LaplaceMechanism(
    std::span<const double> values, double sensitivity, double epsilon,
    Rng& rng) {
  if (!(epsilon > 0.0)) {
    return absl::InvalidArgumentError("epsilon must be positive");
  }
  if (!(sensitivity >= 0.0) || !std::isfinite(sensitivity)) {
    return absl::InvalidArgumentError("sensitivity must be finite and >= 0");
  }
  std::vector<double> out(values.begin(), values.end());
  if (sensitivity == 0.0) return out;
  std::vector<double> noise(values.size());
  for (double& n : noise) n = SampleUnitLaplace(rng);
  kernels::AddScaled(values, sensitivity / epsilon, noise, out);
  return out;
}

double GlobalSensitivityCountQuery(int64_t max_records_per_individual) {
  return static_cast<double>(max_records_per_individual);
}

absl::StatusOr<Privatized> Privatize(std::span<const double> values,
                                     double sensitivity, double epsilon,
                                     Rng& rng) {
  auto noisy = LaplaceMechanism(values, sensitivity, epsilon, rng);
  if (!noisy.ok()) return noisy.status();
  return Privatized(*std::move(noisy), sensitivity / epsilon);
}

}  // namespace dpoad
