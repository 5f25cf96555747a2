// Copyright 2026 The EdgeMORE Authors
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

// Reproducible random streams. All randomness in the project flows through
// Rng so that results are identical across platforms and standard library
// implementations: the engine is std::mt19937_64 (fully specified by the
// standard) and the conversions to reals and bounded integers are our own.

#ifndef EDGEMORE_RANDOM_HPP_
#define EDGEMORE_RANDOM_HPP_

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <random>
#include <string_view>

namespace edgemore {

// Recorded in every output file that depends on random draws.
inline constexpr std::string_view kPrngName = "mt19937_64/splitmix64-derived";

std::uint64_t splitmix64(std::uint64_t x);

// Derives a child seed from a base seed and a path of keys. Different paths
// give statistically independent streams; the mapping is fixed forever.
std::uint64_t derive_seed(std::uint64_t base,
                          std::initializer_list<std::uint64_t> keys);

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(splitmix64(seed)) {}

  std::uint64_t next_u64() { return engine_(); }
  // Uniform on [0, 1) with 53 random bits.
  double uniform01() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }
  // Uniform on [lo, hi); returns lo when the interval is empty.
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }
  // Uniform integer in [0, n); n must be positive.
  std::size_t index(std::size_t n);

 private:
  std::mt19937_64 engine_;
};

}  // namespace edgemore

#endif  // EDGEMORE_RANDOM_HPP_
