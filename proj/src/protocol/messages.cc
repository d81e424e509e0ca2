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

#include "dpoad/protocol/messages.h"

#include <bit>

#include "absl/strings/str_cat.h"

namespace dpoad {

absl::string_view MechanismName(Mechanism mechanism) {
  switch (mechanism) {
    case Mechanism::kLaplace:
      return "laplace";
    case Mechanism::kPainFree:
      return "painfree";
    case Mechanism::kDpoad:
      return "dpoad";
  }
  return "unknown";
}

absl::StatusOr<Mechanism> ParseMechanism(absl::string_view name) {
  if (name == "laplace") return Mechanism::kLaplace;
  if (name == "painfree" || name == "pain-free") return Mechanism::kPainFree;
  if (name == "dpoad") return Mechanism::kDpoad;
  return absl::InvalidArgumentError(absl::StrCat("unknown mechanism '", name,
                                                 "'"));
}

uint64_t BinEdgesId(std::span<const double> edges) {
  uint64_t h = 0xcbf29ce484222325ULL;
  for (double e : edges) {
    uint64_t bits = std::bit_cast<uint64_t>(e);
    for (int i = 0; i < 8; ++i) {
      h ^= bits & 0xff;
      h *= 0x100000001b3ULL;
      bits >>= 8;
    }
  }
  return h;
}

absl::StatusOr<OwnerRelease> OwnerRelease::Create(
    ReleaseHeader header, std::vector<Privatized> payload,
    std::vector<Privatized> value_histograms) {
  if (header.bins < 1 || header.windows < 0) {
    return absl::InvalidArgumentError("release needs >= 1 bin");
  }
  if (static_cast<int64_t>(payload.size()) != header.bins) {
    return absl::InvalidArgumentError(
        absl::StrCat("payload has ", payload.size(), " rows for ",
                     header.bins, " bins"));
  }
  for (const auto& row : payload) {
    if (static_cast<int64_t>(row.size()) != header.windows) {
      return absl::InvalidArgumentError("payload row length != windows");
    }
  }
  if (!value_histograms.empty() &&
      static_cast<int64_t>(value_histograms.size()) != header.bins) {
    return absl::InvalidArgumentError("need one value histogram per bin");
  }
  return OwnerRelease(header, std::move(payload), std::move(value_histograms));
}

}  // namespace dpoad
