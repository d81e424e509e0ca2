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

#ifndef DPOAD_MECHANISMS_LAPLACE_H_
#define DPOAD_MECHANISMS_LAPLACE_H_

#include <cstdint>
#include <span>
#include <vector>

#include "absl/status/statusor.h"
#include "absl/strings/string_view.h"
#include "dpoad/core/rng.h"

namespace dpoad {

class OwnerRelease;

// Lap(b) noise source. scale_b = sensitivity / epsilon.
struct LaplaceNoise {
  double scale_b = 0.0;
  uint64_t rng_seed = 0;
};

// Standard Laplace draw (b = 1) by inverting the CDF:
// u ~ U(-1/2, 1/2), x = -sign(u) * ln(1 - 2|u|).
double SampleUnitLaplace(Rng& rng);

// One draw from density exp(-|x| / b) / (2b). scale_b == 0 returns exactly 0
// without consuming randomness.
absl::StatusOr<double> SampleLaplace(double scale_b, Rng& rng);

// Adds independent Lap(sensitivity / epsilon) noise to every value. Output is
// neither rounded nor clipped.
absl::StatusOr<std::vector<double>> LaplaceMechanism(
    std::span<const double> values, double sensitivity, double epsilon,
    Rng& rng);

// Sensitivity of a single bin count when one individual contributes at most
// `max_records_per_individual` records.
double GlobalSensitivityCountQuery(int64_t max_records_per_individual);

// Output of the Laplace mechanism, and the only type a data release can carry.
// It cannot be built from raw values outside this module.
class Privatized {
 public:
  std::span<const double> values() const { return values_; }
  double noise_scale() const { return noise_scale_; }
  size_t size() const { return values_.size(); }

 private:
  friend absl::StatusOr<Privatized> Privatize(std::span<const double>, double,
                                              double, Rng&);
  // The wire decoder re-seals payloads that were privatized by the sender.
  friend absl::StatusOr<OwnerRelease> DecodeOwnerRelease(absl::string_view);
  Privatized(std::vector<double> values, double noise_scale)
      : values_(std::move(values)), noise_scale_(noise_scale) {}

  std::vector<double> values_;
  double noise_scale_ = 0.0;
};

// LaplaceMechanism whose result is sealed for release.
absl::StatusOr<Privatized> Privatize(std::span<const double> values,
                                     double sensitivity, double epsilon,
                                     Rng& rng);

}  // namespace dpoad

#endif  // DPOAD_MECHANISMS_LAPLACE_H_
