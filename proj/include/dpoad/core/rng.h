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

#ifndef DPOAD_CORE_RNG_H_
#define DPOAD_CORE_RNG_H_

#include <cstdint>
#include <random>

namespace dpoad {

// Seeded random stream. Every trial owns one; streams are never shared
// across threads. Child streams derived with Fork() are independent of the
// parent's position, so adding draws to one component does not perturb
// another.
class Rng {
 public:
  explicit Rng(uint64_t seed) : seed_(seed), engine_(Mix(seed)) {}

  uint64_t seed() const { return seed_; }
  std::mt19937_64& engine() { return engine_; }

  // Uniform double in [0, 1).
  double Uniform01();

  // Stream keyed by (seed, stream_id); independent of draws made so far.
  Rng Fork(uint64_t stream_id) const;

  // SplitMix64 finalizer.
  static uint64_t Mix(uint64_t x);

 private:
  uint64_t seed_;
  std::mt19937_64 engine_;
};

}  // namespace dpoad

#endif  // DPOAD_CORE_RNG_H_
