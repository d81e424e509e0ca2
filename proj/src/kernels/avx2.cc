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

#include <immintrin.h>

#include <algorithm>
#include <cmath>

#include "dpoad/kernels/kernels.h"

namespace dpoad::kernels::avx2 {
namespace {

inline __m256d Abs(__m256d v) {
  return _mm256_andnot_pd(_mm256_set1_pd(-0.0), v);
}

inline double HorizontalSum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d pair = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(pair, _mm_unpackhi_pd(pair, pair)));
}

inline double HorizontalMax(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d pair = _mm_max_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_max_sd(pair, _mm_unpackhi_pd(pair, pair)));
}

// Inclusive prefix sum across the four lanes.
inline __m256d LaneScan(__m256d v) {
  const __m256d zero = _mm256_setzero_pd();
  const __m256d shift1 =
      _mm256_blend_pd(_mm256_permute4x64_pd(v, _MM_SHUFFLE(2, 1, 0, 0)), zero,
                      0b0001);
  v = _mm256_add_pd(v, shift1);
  const __m256d shift2 =
      _mm256_blend_pd(_mm256_permute4x64_pd(v, _MM_SHUFFLE(1, 0, 0, 0)), zero,
                      0b0011);
  return _mm256_add_pd(v, shift2);
}

}  // namespace

double SumAbsDiff(std::span<const double> a, std::span<const double> b) {
  const size_t n = a.size();
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    const __m256d d0 =
        _mm256_sub_pd(_mm256_loadu_pd(&a[i]), _mm256_loadu_pd(&b[i]));
    const __m256d d1 =
        _mm256_sub_pd(_mm256_loadu_pd(&a[i + 4]), _mm256_loadu_pd(&b[i + 4]));
    acc0 = _mm256_add_pd(acc0, Abs(d0));
    acc1 = _mm256_add_pd(acc1, Abs(d1));
  }
  for (; i + 4 <= n; i += 4) {
    const __m256d d =
        _mm256_sub_pd(_mm256_loadu_pd(&a[i]), _mm256_loadu_pd(&b[i]));
    acc0 = _mm256_add_pd(acc0, Abs(d));
  }
  double total = HorizontalSum(_mm256_add_pd(acc0, acc1));
  for (; i < n; ++i) total += std::abs(a[i] - b[i]);
  return total;
}

double MaxAbsPrefixDiff(std::span<const double> a, std::span<const double> b) {
  const size_t n = a.size();
  __m256d carry = _mm256_setzero_pd();
  __m256d best = _mm256_setzero_pd();
  size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d d =
        _mm256_sub_pd(_mm256_loadu_pd(&a[i]), _mm256_loadu_pd(&b[i]));
    const __m256d prefix = _mm256_add_pd(LaneScan(d), carry);
    best = _mm256_max_pd(best, Abs(prefix));
    carry = _mm256_permute4x64_pd(prefix, _MM_SHUFFLE(3, 3, 3, 3));
  }
  double prefix = _mm256_cvtsd_f64(carry);
  double result = HorizontalMax(best);
  for (; i < n; ++i) {
    prefix += a[i] - b[i];
    result = std::max(result, std::abs(prefix));
  }
  return result;
}

void AddScaled(std::span<const double> values, double scale,
               std::span<const double> unit_noise, std::span<double> out) {
  const size_t n = values.size();
  const __m256d s = _mm256_set1_pd(scale);
  size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    // Separate multiply and add (no FMA) keeps results bit-identical to the
    // scalar reference.
    const __m256d scaled = _mm256_mul_pd(s, _mm256_loadu_pd(&unit_noise[i]));
    _mm256_storeu_pd(&out[i],
                     _mm256_add_pd(_mm256_loadu_pd(&values[i]), scaled));
  }
  for (; i < n; ++i) out[i] = values[i] + scale * unit_noise[i];
}

}  // namespace dpoad::kernels::avx2
