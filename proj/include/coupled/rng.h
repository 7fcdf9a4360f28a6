// Copyright 2026 The Authors.
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

#ifndef COUPLED_RNG_H_
#define COUPLED_RNG_H_

#include <cstdint>
#include <random>

namespace coupled {

// Seedable 64-bit generator with platform-independent output.
//
// The engine is std::mt19937_64, whose sequence is fixed by the standard.
// Distributions are implemented here rather than taken from <random>, since
// the library distributions are allowed to differ between implementations:
//   Uniform01   (NextU64() >> 11) * 2^-53, one engine draw
//   UniformInt  rejection sampling on the top bits, >= 1 engine draw
//   Normal      Box-Muller on two Uniform01 draws, cosine branch only
class Rng {
 public:
  explicit Rng(uint64_t seed) : engine_(seed) {}

  uint64_t NextU64() { return engine_(); }
  double Uniform01();
  // Uniform integer in [lo, hi]. Requires lo <= hi.
  int UniformInt(int lo, int hi);
  double Normal();

 private:
  std::mt19937_64 engine_;
};

// SplitMix64 finalizer over (base, stream); used to give every trial and
// every randomized method its own independent stream.
uint64_t DeriveSeed(uint64_t base, uint64_t stream);

}  // namespace coupled

#endif  // COUPLED_RNG_H_
