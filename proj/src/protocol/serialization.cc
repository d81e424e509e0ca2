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

#include "dpoad/protocol/serialization.h"

#include <charconv>
#include <map>
#include <vector>

#include "absl/strings/str_cat.h"
#include "absl/strings/str_split.h"

namespace dpoad {
namespace {

void AppendValues(std::string& out, std::span<const double> values) {
  for (double v : values) {
    out += ' ';
    out += FormatDouble(v);
  }
}

// Parsed message: the header tag plus ordered (key, fields) lines.
struct Lines {
  std::string kind;
  std::vector<std::pair<std::string, std::vector<absl::string_view>>> entries;
};

absl::StatusOr<Lines> Split(absl::string_view text) {
  Lines out;
  bool header = true;
  bool ended = false;
  for (absl::string_view line : absl::StrSplit(text, '\n')) {
    if (line.empty()) continue;
    std::vector<absl::string_view> fields =
        absl::StrSplit(line, ' ', absl::SkipEmpty());
    if (fields.empty()) continue;
    if (header) {
      if (fields.size() != 2 || fields[0] != kWireSchema) {
        return absl::InvalidArgumentError(
            absl::StrCat("expected '", kWireSchema, " <kind>' header"));
      }
      out.kind = std::string(fields[1]);
      header = false;
      continue;
    }
    if (fields[0] == "end") {
      ended = true;
      break;
    }
    std::string key(fields[0]);
    fields.erase(fields.begin());
    out.entries.emplace_back(std::move(key), std::move(fields));
  }
  if (header) return absl::InvalidArgumentError("empty message");
  if (!ended) return absl::InvalidArgumentError("message has no 'end' line");
  return out;
}

absl::StatusOr<double> ParseDouble(absl::string_view s) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    return absl::InvalidArgumentError(absl::StrCat("bad number '", s, "'"));
  }
  return v;
}

absl::StatusOr<int64_t> ParseInt(absl::string_view s) {
  int64_t v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    return absl::InvalidArgumentError(absl::StrCat("bad integer '", s, "'"));
  }
  return v;
}

absl::StatusOr<uint64_t> ParseHex(absl::string_view s) {
  uint64_t v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v, 16);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    return absl::InvalidArgumentError(absl::StrCat("bad id '", s, "'"));
  }
  return v;
}

absl::StatusOr<std::vector<double>> ParseDoubles(
    std::span<const absl::string_view> fields) {
  std::vector<double> out;
  out.reserve(fields.size());
  for (auto f : fields) {
    auto v = ParseDouble(f);
    if (!v.ok()) return v.status();
    out.push_back(*v);
  }
  return out;
}

// Single-valued scalar lookup.
class Fields {
 public:
  explicit Fields(const Lines& lines) {
    for (const auto& [key, values] : lines.entries) {
      if (values.size() == 1) scalars_.emplace(key, values[0]);
    }
  }
  absl::StatusOr<absl::string_view> Get(absl::string_view key) const {
    auto it = scalars_.find(std::string(key));
    if (it == scalars_.end()) {
      return absl::InvalidArgumentError(absl::StrCat("missing '", key, "'"));
    }
    return it->second;
  }
  absl::StatusOr<int64_t> Int(absl::string_view key) const {
    auto s = Get(key);
    if (!s.ok()) return s.status();
    return ParseInt(*s);
  }
  absl::StatusOr<double> Double(absl::string_view key) const {
    auto s = Get(key);
    if (!s.ok()) return s.status();
    return ParseDouble(*s);
  }

 private:
  std::map<std::string, absl::string_view, std::less<>> scalars_;
};

#define DPOAD_ASSIGN(lhs, expr)            \
  do {                                     \
    auto _v = (expr);                      \
    if (!_v.ok()) return _v.status();      \
    lhs = *std::move(_v);                  \
  } while (0)

}  // namespace

std::string FormatDouble(double value) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, ptr);
}

std::string EncodeOwnerRelease(const OwnerRelease& release) {
  const ReleaseHeader& h = release.header();
  std::string out = absl::StrCat(kWireSchema, " release\n");
  absl::StrAppend(&out, "iteration ", h.iteration, "\n");
  absl::StrAppend(&out, "phase ", PhaseName(h.phase), "\n");
  absl::StrAppend(&out, "mechanism ", MechanismName(h.mechanism), "\n");
  absl::StrAppend(&out, "epsilon_used ", FormatDouble(h.epsilon_used), "\n");
  absl::StrAppend(&out, "bin_edges_id ", absl::Hex(h.bin_edges_id), "\n");
  absl::StrAppend(&out, "bins ", h.bins, "\n");
  absl::StrAppend(&out, "windows ", h.windows, "\n");
  absl::StrAppend(&out, "sensitivity_used ", FormatDouble(h.sensitivity_used),
                  "\n");
  absl::StrAppend(&out, "m ", h.m, "\n");
  absl::StrAppend(&out, "k ", h.k, "\n");
  for (int64_t b = 0; b < h.bins; ++b) {
    absl::StrAppend(&out, "payload ", b, " ",
                    FormatDouble(release.payload_scale(b)));
    AppendValues(out, release.payload(b));
    out += '\n';
  }
  for (int64_t b = 0; b < release.histogram_count(); ++b) {
    absl::StrAppend(&out, "histogram ", b, " ",
                    FormatDouble(release.histogram_scale(b)));
    AppendValues(out, release.value_histogram(b));
    out += '\n';
  }
  out += "end\n";
  return out;
}

absl::StatusOr<OwnerRelease> DecodeOwnerRelease(absl::string_view text) {
  auto lines = Split(text);
  if (!lines.ok()) return lines.status();
  if (lines->kind != "release") {
    return absl::InvalidArgumentError("not a release message");
  }
  const Fields f(*lines);
  ReleaseHeader h;
  DPOAD_ASSIGN(h.iteration, f.Int("iteration"));
  absl::string_view s;
  DPOAD_ASSIGN(s, f.Get("phase"));
  DPOAD_ASSIGN(h.phase, ParsePhase(s));
  DPOAD_ASSIGN(s, f.Get("mechanism"));
  DPOAD_ASSIGN(h.mechanism, ParseMechanism(s));
  DPOAD_ASSIGN(h.epsilon_used, f.Double("epsilon_used"));
  DPOAD_ASSIGN(s, f.Get("bin_edges_id"));
  DPOAD_ASSIGN(h.bin_edges_id, ParseHex(s));
  DPOAD_ASSIGN(h.bins, f.Int("bins"));
  DPOAD_ASSIGN(h.windows, f.Int("windows"));
  DPOAD_ASSIGN(h.sensitivity_used, f.Double("sensitivity_used"));
  DPOAD_ASSIGN(h.m, f.Int("m"));
  DPOAD_ASSIGN(h.k, f.Int("k"));

  std::vector<Privatized> payload;
  std::vector<Privatized> hists;
  for (const auto& [key, values] : lines->entries) {
    if (key != "payload" && key != "histogram") continue;
    if (values.size() < 2) {
      return absl::InvalidArgumentError(absl::StrCat("short ", key, " line"));
    }
    int64_t bin = 0;
    DPOAD_ASSIGN(bin, ParseInt(values[0]));
    auto& dest = key == "payload" ? payload : hists;
    if (bin != static_cast<int64_t>(dest.size())) {
      return absl::InvalidArgumentError(
          absl::StrCat(key, " rows out of order at bin ", bin));
    }
    double scale = 0.0;
    DPOAD_ASSIGN(scale, ParseDouble(values[1]));
    std::vector<double> row;
    DPOAD_ASSIGN(row, ParseDoubles(std::span(values).subspan(2)));
    dest.push_back(Privatized(std::move(row), scale));
  }
  return OwnerRelease::Create(h, std::move(payload), std::move(hists));
}

std::string EncodeMsspReport(const MsspReport& r) {
  std::string out = absl::StrCat(kWireSchema, " report\n");
  absl::StrAppend(&out, "iteration ", r.iteration, "\n");
  absl::StrAppend(&out, "release_phase ", PhaseName(r.release_phase), "\n");
  absl::StrAppend(&out, "threshold ", FormatDouble(r.anomalies.threshold),
                  "\n");
  out += "scores";
  AppendValues(out, r.anomalies.scores);
  out += "\nlabels ";
  for (bool l : r.anomalies.labels) out += l ? '1' : '0';
  out += '\n';
  for (size_t b = 0; b < r.updated_pdfs.size(); ++b) {
    absl::StrAppend(&out, "pdf ", b);
    AppendValues(out, r.updated_pdfs[b].mass());
    out += '\n';
  }
  absl::StrAppend(&out, "sampled_sensitivity ",
                  FormatDouble(r.sampled_sensitivity), "\n");
  out += "bin_sensitivities";
  AppendValues(out, r.bin_sensitivities);
  out += '\n';
  absl::StrAppend(&out, "m ", r.m, "\n");
  absl::StrAppend(&out, "k ", r.k, "\n");
  absl::StrAppend(&out, "rho ", FormatDouble(r.rho), "\n");
  absl::StrAppend(&out, "full_protection ", r.full_protection ? 1 : 0, "\n");
  absl::StrAppend(&out, "phase_recommendation ",
                  PhaseName(r.phase_recommendation), "\n");
  out += "end\n";
  return out;
}

absl::StatusOr<MsspReport> DecodeMsspReport(absl::string_view text) {
  auto lines = Split(text);
  if (!lines.ok()) return lines.status();
  if (lines->kind != "report") {
    return absl::InvalidArgumentError("not a report message");
  }
  const Fields f(*lines);
  MsspReport r;
  absl::string_view s;
  DPOAD_ASSIGN(r.iteration, f.Int("iteration"));
  DPOAD_ASSIGN(s, f.Get("release_phase"));
  DPOAD_ASSIGN(r.release_phase, ParsePhase(s));
  DPOAD_ASSIGN(r.anomalies.threshold, f.Double("threshold"));
  r.anomalies.iteration = r.iteration;
  DPOAD_ASSIGN(r.sampled_sensitivity, f.Double("sampled_sensitivity"));
  DPOAD_ASSIGN(r.m, f.Int("m"));
  DPOAD_ASSIGN(r.k, f.Int("k"));
  DPOAD_ASSIGN(r.rho, f.Double("rho"));
  int64_t full = 0;
  DPOAD_ASSIGN(full, f.Int("full_protection"));
  r.full_protection = full != 0;
  DPOAD_ASSIGN(s, f.Get("phase_recommendation"));
  DPOAD_ASSIGN(r.phase_recommendation, ParsePhase(s));

  for (const auto& [key, values] : lines->entries) {
    if (key == "scores") {
      DPOAD_ASSIGN(r.anomalies.scores, ParseDoubles(values));
    } else if (key == "bin_sensitivities") {
      DPOAD_ASSIGN(r.bin_sensitivities, ParseDoubles(values));
    } else if (key == "labels") {
      if (values.size() > 1) return absl::InvalidArgumentError("bad labels");
      const absl::string_view bits = values.empty() ? "" : values[0];
      for (char c : bits) {
        if (c != '0' && c != '1') {
          return absl::InvalidArgumentError("labels must be 0/1");
        }
        r.anomalies.labels.push_back(c == '1');
      }
    } else if (key == "pdf") {
      if (values.empty()) return absl::InvalidArgumentError("short pdf line");
      std::vector<double> mass;
      DPOAD_ASSIGN(mass, ParseDoubles(std::span(values).subspan(1)));
      DiscretePdf pdf = DiscretePdf::Uniform(0);
      DPOAD_ASSIGN(pdf, DiscretePdf::Create(std::move(mass)));
      r.updated_pdfs.push_back(std::move(pdf));
    }
  }
  if (r.anomalies.labels.size() != r.anomalies.scores.size()) {
    return absl::InvalidArgumentError("labels and scores differ in length");
  }
  return r;
}

std::string EncodeTrace(const SessionTrace& trace) {
  std::string out;
  for (const auto& it : trace.iterations) {
    out += EncodeOwnerRelease(it.release);
    out += EncodeMsspReport(it.report);
  }
  return out;
}

}  // namespace dpoad
