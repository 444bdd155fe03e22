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

#include "spchs/rng.h"

#include <sodium.h>

#include <algorithm>
#include <cstring>
#include <stdexcept>

namespace spchs {
namespace {

void EnsureSodium() {
  static const int status = sodium_init();
  if (status < 0) throw std::runtime_error("libsodium initialization failed");
}

}  // namespace

Rng::Rng(const Seed& seed) : key_(seed) { EnsureSodium(); }

Rng Rng::FromOs() {
  EnsureSodium();
  Seed seed;
  randombytes_buf(seed.data(), seed.size());
  return Rng(seed);
}

Rng Rng::FromSeed(uint64_t seed) {
  EnsureSodium();
  static constexpr char kLabel[] = "spchs-rng-seed";
  uint8_t in[sizeof(kLabel) + 8];
  std::memcpy(in, kLabel, sizeof(kLabel));
  for (int i = 0; i < 8; ++i) in[sizeof(kLabel) + i] = static_cast<uint8_t>(seed >> (8 * i));
  Seed key;
  crypto_hash_sha256(key.data(), in, sizeof(in));
  return Rng(key);
}

void Rng::Refill() {
  uint8_t nonce[crypto_stream_chacha20_NONCEBYTES] = {};
  for (size_t i = 0; i < sizeof(nonce); ++i) {
    nonce[i] = static_cast<uint8_t>(block_counter_ >> (8 * i));
  }
  ++block_counter_;
  crypto_stream_chacha20(buffer_.data(), buffer_.size(), nonce, key_.data());
  offset_ = 0;
}

void Rng::Fill(std::span<uint8_t> out) {
  size_t done = 0;
  while (done < out.size()) {
    if (offset_ == buffer_.size()) Refill();
    size_t n = std::min(out.size() - done, buffer_.size() - offset_);
    std::memcpy(out.data() + done, buffer_.data() + offset_, n);
    offset_ += n;
    done += n;
  }
}

uint64_t Rng::NextU64() {
  uint8_t b[8];
  Fill(b);
  uint64_t v = 0;
  for (int i = 7; i >= 0; --i) v = v << 8 | b[i];
  return v;
}

uint64_t Rng::Uniform(uint64_t bound) {
  if (bound == 0) throw std::invalid_argument("Rng::Uniform bound must be nonzero");
  // Rejection sampling removes modulo bias.
  const uint64_t limit = max() - max() % bound;
  uint64_t v;
  do {
    v = NextU64();
  } while (v >= limit);
  return v % bound;
}

double Rng::NextDouble() { return static_cast<double>(NextU64() >> 11) * 0x1.0p-53; }

Rng Rng::Fork() {
  Seed child;
  Fill(child);
  return Rng(child);
}

}  // namespace spchs
