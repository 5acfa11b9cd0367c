// Copyright 2026 The asymfb Authors.
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

#ifndef ASYMFB_RNG_H_
#define ASYMFB_RNG_H_

#include <cstdint>
#include <limits>

namespace asymfb {

// Purpose tags keep the streams of one (seed, agent, episode) cell apart.
enum class StreamTag : std::uint64_t {
  kDirection = 1,
  kCostSample = 2,
  kUser = 3,
};

// Counter-based generator. A stream is identified by a 64-bit key; the
// n-th output is a SplitMix64 finalization of (key, n). Streams for
// (seed, agent, episode, tag) are derived by hashing, so any run, replicate
// or sweep cell can be reproduced without replaying other streams.
//
// Satisfies UniformRandomBitGenerator, so it plugs into <random>
// distributions.
class Rng {
 public:
  using result_type = std::uint64_t;

  explicit Rng(std::uint64_t key) : key_(mix(key)), counter_(0) {}

  static Rng for_stream(std::uint64_t seed, std::uint64_t agent,
                        std::uint64_t episode,
                        StreamTag tag = StreamTag::kDirection);

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() {
    return std::numeric_limits<result_type>::max();
  }

  result_type operator()() {
    ++counter_;
    return mix(key_ + counter_ * 0x9e3779b97f4a7c15ULL);
  }

  // Uniform on [0, 1) with 53 bits of resolution.
  double uniform01() {
    return static_cast<double>((*this)() >> 11) * 0x1.0p-53;
  }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }
  double normal();

  // Splits off an independent child stream.
  Rng split() { return Rng((*this)() ^ 0x6a09e667f3bcc909ULL); }

  static constexpr std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

 private:
  std::uint64_t key_;
  std::uint64_t counter_;
};

}  // namespace asymfb

#endif  // ASYMFB_RNG_H_
