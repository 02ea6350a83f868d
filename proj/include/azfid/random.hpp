// Copyright 2026 The azfid Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef AZFID_RANDOM_HPP
#define AZFID_RANDOM_HPP

#include <complex>
#include <cstdint>
#include <random>

namespace azfid {

// Seeded, splittable pseudo-random stream.
//
// A stream is identified by a 64-bit key. The root key is the user seed;
// child keys are derived with SplitMix64 mixing of (parent key, index), so a
// Monte-Carlo trial can own `Rng(seed).substream(trial)` independently of how
// trials are scheduled. Draws come from std::mt19937_64 seeded with the key.
// Uniforms use the top 53 bits; normals use Box-Muller. Both are written out
// here rather than taken from <random> distributions so that the bit stream is
// identical across standard library implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed);

  std::uint64_t key() const { return key_; }
  Rng substream(std::uint64_t index) const;

  std::uint64_t next_u64() { return engine_(); }
  double uniform();  // [0, 1)
  double normal();   // N(0, 1)
  std::complex<double> complex_normal() { return {normal(), normal()}; }
  // Uniform integer in [lo, hi].
  int uniform_int(int lo, int hi);

 private:
  std::uint64_t key_;
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

std::uint64_t splitmix64(std::uint64_t x);

}  // namespace azfid

#endif  // AZFID_RANDOM_HPP
