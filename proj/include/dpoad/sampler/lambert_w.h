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

#ifndef DPOAD_SAMPLER_LAMBERT_W_H_
#define DPOAD_SAMPLER_LAMBERT_W_H_

#include "absl/status/statusor.h"

namespace dpoad {

// Lower real branch W_{-1}: the w <= -1 with w * exp(w) = x, for x in
// [-1/e, 0). Halley iteration from a branch-point series (near -1/e) or the
// asymptotic log expansion (near 0), with a bisection fallback. The residual
// |w * exp(w) - x| is below 1e-12.
absl::StatusOr<double> LambertWMinus1(double x);

}  // namespace dpoad

#endif  // DPOAD_SAMPLER_LAMBERT_W_H_
