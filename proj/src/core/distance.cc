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

#include "dpoad/core/distance.h"

#include <algorithm>

#include "absl/strings/str_cat.h"
#include "dpoad/kernels/kernels.h"

namespace dpoad {
namespace {

absl::Status CheckSameDomain(const DiscretePdf& p, const DiscretePdf& q) {
  if (p.domain_max() != q.domain_max()) {
    return absl::InvalidArgumentError(
        absl::StrCat("domain mismatch: C_max ", p.domain_max(), " vs ",
                     q.domain_max()));
  }
  return absl::OkStatus();
}

}  // namespace

absl::StatusOr<double> KolmogorovDistance(const DiscretePdf& p,
                                          const DiscretePdf& q) {
  if (auto status = CheckSameDomain(p, q); !status.ok()) return status;
  // Rounding in the running sum can push a hair past 1.
  return std::min(1.0, kernels::MaxAbsPrefixDiff(p.mass(), q.mass()));
}

absl::StatusOr<double> TotalVariationDistance(const DiscretePdf& p,
                                              const DiscretePdf& q) {
  if (auto status = CheckSameDomain(p, q); !status.ok()) return status;
  return std::min(1.0, 0.5 * kernels::SumAbsDiff(p.mass(), q.mass()));
}

}  // namespace dpoad
