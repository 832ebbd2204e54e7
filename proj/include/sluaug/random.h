// Copyright 2026 The sluaug Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef SLUAUG_RANDOM_H_
#define SLUAUG_RANDOM_H_

#include <cstdint>
#include <random>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

namespace sluaug {

// Seeded generator with a fixed algorithm (64-bit Mersenne Twister) and
// hand-written range reductions, so a given seed produces the same stream on
// every platform and standard library. The std distributions are not used
// because their output is implementation-defined.
class Rng {
 public:
  explicit Rng(uint64_t seed) : engine_(seed) {}

  uint64_t Next() { return engine_(); }

  // Uniform integer in [0, n). n must be positive.
  uint64_t Uniform(uint64_t n);

  // Uniform double in [0, 1) with 53 bits of precision.
  double UniformDouble();

  // Index drawn proportionally to non-negative weights. At least one weight
  // must be positive.
  size_t WeightedIndex(std::span<const double> weights);

  template <typename T>
  void Shuffle(std::vector<T> &items) {
    for (size_t i = items.size(); i > 1; --i) {
      size_t j = static_cast<size_t>(Uniform(i));
      std::swap(items[i - 1], items[j]);
    }
  }

 private:
  std::mt19937_64 engine_;
};

// Derives an independent stream seed from a base seed and a purpose tag.
uint64_t DeriveSeed(uint64_t base, std::string_view tag);

}  // namespace sluaug

#endif  // SLUAUG_RANDOM_H_
