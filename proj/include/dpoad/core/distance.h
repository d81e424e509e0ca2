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

#ifndef DPOAD_CORE_DISTANCE_H_
#define DPOAD_CORE_DISTANCE_H_

#include "absl/status/statusor.h"
#include "dpoad/core/types.h"

namespace dpoad {

// max_j |P(X <= j) - Q(X <= j)|. Fails if the domains differ.
absl::StatusOr<double> KolmogorovDistance(const DiscretePdf& p,
                                          const DiscretePdf& q);

// 0.5 * sum_i |p(i) - q(i)|. Always >= KolmogorovDistance(p, q).
absl::StatusOr<double> TotalVariationDistance(const DiscretePdf& p,
                                              const DiscretePdf& q);

}  // namespace dpoad

#endif  // DPOAD_CORE_DISTANCE_H_
