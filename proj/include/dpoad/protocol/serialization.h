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

#ifndef DPOAD_PROTOCOL_SERIALIZATION_H_
#define DPOAD_PROTOCOL_SERIALIZATION_H_

#include <string>

#include "absl/status/statusor.h"
#include "absl/strings/string_view.h"
#include "dpoad/protocol/messages.h"
#include "dpoad/protocol/session.h"

// Line-oriented "key value..." text for protocol messages. The first line
// carries the schema tag and message kind; doubles are written in shortest
// round-trip form, so decode(encode(x)) reproduces x bit for bit.

namespace dpoad {

inline constexpr absl::string_view kWireSchema = "dpoad/1";

std::string FormatDouble(double value);

std::string EncodeOwnerRelease(const OwnerRelease& release);
// The decoder trusts that the sender privatized the payload; it re-seals the
// values without adding noise.
absl::StatusOr<OwnerRelease> DecodeOwnerRelease(absl::string_view text);

std::string EncodeMsspReport(const MsspReport& report);
absl::StatusOr<MsspReport> DecodeMsspReport(absl::string_view text);

// All releases and reports of a session, in order.
std::string EncodeTrace(const SessionTrace& trace);

}  // namespace dpoad

#endif  // DPOAD_PROTOCOL_SERIALIZATION_H_
