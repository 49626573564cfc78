// Copyright 2026 The graphevo Authors.
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

#ifndef GRAPHEVO_RNG_HPP_
#define GRAPHEVO_RNG_HPP_

#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

namespace graphevo {

// Identifies an independent random stream: (generation, slot) under a master
// seed. Reserved generation ids below name streams that are not tied to a
// population slot.
struct StreamId {
  std::uint64_t generation = 0;
  std::uint64_t slot = 0;

  friend bool operator==(const StreamId&, const StreamId&) = default;
};

namespace streams {
inline constexpr std::uint64_t kCrossValidation = 0xC0FFEEull << 32;
inline constexpr std::uint64_t kSplit = 0x5E1Full << 32;
inline constexpr std::uint64_t kHyperopt = 0xB40ull << 32;
inline constexpr std::uint64_t kSynthetic = 0xDA7Aull << 32;
}  // namespace streams

// Deterministic random stream. Identical seed and stream id yield identical
// draw sequences regardless of which thread consumes the stream.
class Rng {
 public:
  using result_type = std::mt19937_64::result_type;

  explicit Rng(std::uint64_t seed, StreamId stream = {});

  static constexpr result_type min() { return std::mt19937_64::min(); }
  static constexpr result_type max() { return std::mt19937_64::max(); }
  result_type operator()() { return engine_(); }

  // Uniform integer in the closed range [lo, hi].
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi);
  // Uniform index in [0, n).
  std::size_t index(std::size_t n);
  // Uniform real in [0, 1).
  double uniform();
  double normal(double mean = 0.0, double sd = 1.0);
  bool bernoulli(double p) { return uniform() < p; }

  // Derives a child stream; the parent state is not advanced.
  Rng fork(StreamId stream) const;

  template <class T>
  void shuffle(std::vector<T>& values) {
    for (std::size_t i = values.size(); i > 1; --i) {
      std::swap(values[i - 1], values[index(i)]);
    }
  }

  std::uint64_t seed() const { return seed_; }

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
};

// splitmix64 finalizer; used to derive stream seeds.
std::uint64_t mix64(std::uint64_t x);

}  // namespace graphevo

#endif  // GRAPHEVO_RNG_HPP_
