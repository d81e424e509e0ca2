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

#ifndef DPOAD_KERNELS_KERNELS_H_
#define DPOAD_KERNELS_KERNELS_H_

#include <span>

#include "absl/strings/string_view.h"

// Data-parallel inner loops. Each kernel has a scalar reference and, on
// x86-64, an AVX2 variant. The variant is picked once at startup from CPUID;
// tests can pin either one with ScopedIsa.
//
// Floating-point contract: AddScaled is bit-identical across variants.
// Reductions (SumAbsDiff, MaxAbsPrefixDiff) reassociate and agree with the
// scalar reference to a few ulps of the running sum.

namespace dpoad::kernels {

enum class Isa { kScalar, kAvx2 };

absl::string_view IsaName(Isa isa);

// True when the binary carries AVX2 code and the CPU supports it.
bool Avx2Available();

// Currently selected variant.
Isa ActiveIsa();

// Pins the variant for the lifetime of the object. Requests for an
// unavailable ISA fall back to scalar.
class ScopedIsa {
 public:
  explicit ScopedIsa(Isa isa);
  ~ScopedIsa();
  ScopedIsa(const ScopedIsa&) = delete;
  ScopedIsa& operator=(const ScopedIsa&) = delete;

 private:
  Isa previous_;
};

// sum_i |a[i] - b[i]|. Spans must have equal length.
double SumAbsDiff(std::span<const double> a, std::span<const double> b);

// max_j |sum_{i<=j} (a[i] - b[i])|; 0 for empty input.
double MaxAbsPrefixDiff(std::span<const double> a, std::span<const double> b);

// out[i] = values[i] + scale * unit_noise[i].
void AddScaled(std::span<const double> values, double scale,
               std::span<const double> unit_noise, std::span<double> out);

namespace scalar {
double SumAbsDiff(std::span<const double> a, std::span<const double> b);
double MaxAbsPrefixDiff(std::span<const double> a, std::span<const double> b);
void AddScaled(std::span<const double> values, double scale,
               std::span<const double> unit_noise, std::span<double> out);
}  // namespace scalar

namespace avx2 {
double SumAbsDiff(std::span<const double> a, std::span<const double> b);
double MaxAbsPrefixDiff(std::span<const double> a, std::span<const double> b);
void AddScaled(std::span<const double> values, double scale,
               std::span<const double> unit_noise, std::span<double> out);
}  // namespace avx2

}  // namespace dpoad::kernels

#endif  // DPOAD_KERNELS_KERNELS_H_
