// Copyright 2026 The crowdnorm Authors
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

#ifndef CROWDNORM_RNG_HPP
#define CROWDNORM_RNG_HPP

#include <cstdint>
#include <random>
#include <vector>

namespace crowdnorm {

// splitmix64 finalizer; the standard way to decorrelate derived seeds.
inline std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

// Stream-splitting rule: every agent (and the matcher) draws from its own
// mt19937_64 seeded by mix64 over (master seed, domain tag, index). Adding
// requesters therefore never reshuffles worker draws and vice versa.
enum : std::uint64_t {
  kWorkerStream = 0x57ull,
  kRequesterStream = 0x52ull,
  kMatchingStream = 0x4dull,
};

inline std::uint64_t substream_seed(std::uint64_t master, std::uint64_t tag,
                                    std::uint64_t index) {
  return mix64(mix64(master ^ (tag * 0xd1342543de82ef95ull)) ^ index);
}

// Deterministic draws on top of mt19937_64. All bounded draws use
// rejection sampling, so results depend only on the engine's bit stream
// and never on library-specific distribution internals.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  // Uniform integer in [0, n).
  std::uint64_t below(std::uint64_t n) {
    const std::uint64_t limit = ~std::uint64_t{0} - ~std::uint64_t{0} % n;
    std::uint64_t x;
    do {
      x = engine_();
    } while (x >= limit);
    return x % n;
  }

  // Uniform double in [0, 1) with 53-bit resolution.
  double uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  bool bernoulli(double p) { return uniform() < p; }

  // Uniformly permutes the first `take` positions (partial Fisher-Yates).
  template <typename T>
  void shuffle_prefix(std::vector<T>& v, std::size_t take) {
    const std::size_t n = v.size();
    if (take > n) take = n;
    for (std::size_t i = 0; i + 1 < n && i < take; ++i) {
      const std::size_t j = i + static_cast<std::size_t>(below(n - i));
      std::swap(v[i], v[j]);
    }
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace crowdnorm

#endif  // CROWDNORM_RNG_HPP
