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

#include <atomic>
#include <cassert>

#include "dpoad/kernels/kernels.h"

namespace dpoad::kernels {
namespace {

bool DetectAvx2() {
#if defined(DPOAD_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2");
#else
  return false;
#endif
}

std::atomic<Isa>& Selected() {
  static std::atomic<Isa> isa{DetectAvx2() ? Isa::kAvx2 : Isa::kScalar};
  return isa;
}

}  // namespace

absl::string_view IsaName(Isa isa) {
  return isa == Isa::kAvx2 ? "avx2" : "scalar";
}

bool Avx2Available() {
  static const bool available = DetectAvx2();
  return available;
}

Isa ActiveIsa() { return Selected().load(std::memory_order_relaxed); }

ScopedIsa::ScopedIsa(Isa isa) : previous_(ActiveIsa()) {
  if (isa == Isa::kAvx2 && !Avx2Available()) isa = Isa::kScalar;
  Selected().store(isa, std::memory_order_relaxed);
}

ScopedIsa::~ScopedIsa() {
  Selected().store(previous_, std::memory_order_relaxed);
}

#if defined(DPOAD_HAVE_AVX2)
#define DPOAD_DISPATCH(fn, ...)                                  \
  (ActiveIsa() == Isa::kAvx2 ? avx2::fn(__VA_ARGS__)             \
                             : scalar::fn(__VA_ARGS__))
#else
#define DPOAD_DISPATCH(fn, ...) scalar::fn(__VA_ARGS__)
#endif

double SumAbsDiff(std::span<const double> a, std::span<const double> b) {
  assert(a.size() == b.size());
  return DPOAD_DISPATCH(SumAbsDiff, a, b);
}

double MaxAbsPrefixDiff(std::span<const double> a, std::span<const double> b) {
  assert(a.size() == b.size());
  return DPOAD_DISPATCH(MaxAbsPrefixDiff, a, b);
}

void AddScaled(std::span<const double> values, double scale,
               std::span<const double> unit_noise, std::span<double> out) {
  assert(values.size() == unit_noise.size() && values.size() == out.size());
  DPOAD_DISPATCH(AddScaled, values, scale, unit_noise, out);
}

#undef DPOAD_DISPATCH

#if !defined(DPOAD_HAVE_AVX2)
namespace avx2 {
double SumAbsDiff(std::span<const double> a, std::span<const double> b) {
  return scalar::SumAbsDiff(a, b);
}
double MaxAbsPrefixDiff(std::span<const double> a, std::span<const double> b) {
  return scalar::MaxAbsPrefixDiff(a, b);
}
void AddScaled(std::span<const double> values, double scale,
               std::span<const double> unit_noise, std::span<double> out) {
  scalar::AddScaled(values, scale, unit_noise, out);
}
}  // namespace avx2
#endif

}  // namespace dpoad::kernels
