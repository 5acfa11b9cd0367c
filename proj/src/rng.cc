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

#include "asymfb/rng.h"

#include <random>

namespace asymfb {

Rng Rng::for_stream(std::uint64_t seed, std::uint64_t agent,
                    std::uint64_t episode, StreamTag tag) {
  std::uint64_t h = mix(seed ^ 0x243f6a8885a308d3ULL);
  h = mix(h ^ (agent + 0x13198a2e03707344ULL));
  h = mix(h ^ (episode + 0xa4093822299f31d0ULL));
  h = mix(h ^ (static_cast<std::uint64_t>(tag) + 0x082efa98ec4e6c89ULL));
  return Rng(h);
}

double Rng::normal() {
  std::normal_distribution<double> dist(0.0, 1.0);
  return dist(*this);
}

}  // namespace asymfb
