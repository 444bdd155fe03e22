// Copyright 2026 The SPCHS Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//   http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <array>
#include <cstdint>
#include <limits>
#include <span>

namespace spchs {

// ChaCha20 keystream generator. Seeded instances give reproducible corpora,
// keys and ciphertexts; unseeded instances draw their key from the OS.
class Rng {
 public:
  using result_type = uint64_t;
  using Seed = std::array<uint8_t, 32>;

  explicit Rng(const Seed& seed);

  static Rng FromOs();
  static Rng FromSeed(uint64_t seed);

  void Fill(std::span<uint8_t> out);
  uint64_t NextU64();
  // Uniform in [0, bound); bound must be nonzero.
  uint64_t Uniform(uint64_t bound);
  // Uniform in [0, 1).
  double NextDouble();

  // Independent child stream, keyed from this stream's output.
  Rng Fork();

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() {
    return std::numeric_limits<result_type>::max();
  }
  result_type operator()() { return NextU64(); }

 private:
  void Refill();

  Seed key_;
  uint64_t block_counter_ = 0;
  std::array<uint8_t, 512> buffer_{};
  size_t offset_ = 512;
};

}  // namespace spchs
