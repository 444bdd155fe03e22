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

// Hash-then-compare PEKS sharing the SPCHS master keys: a ciphertext is
// (g^r, KDF(e(P, H(W))^r)), and testing it against T_W = H(W)^s is one
// pairing. Search is a linear scan.

#include <vector>

#include "spchs/common.h"
#include "spchs/group.h"
#include "spchs/rng.h"
#include "spchs/scratch.h"
#include "spchs/tag_store.h"

namespace spchs::peks {

inline constexpr std::string_view kKdfDomain = "SPCHS-PEKS-KDF-v1";

struct Ciphertext {
  group::G1 a;  // g^r
  Digest b;     // KDF(e(P, H(W))^r)

  bool operator==(const Ciphertext&) const = default;

  store::Record ToRecord() const;
  static Ciphertext FromRecord(const store::Record& r);
};

class Scheme {
 public:
  Scheme(group::Group& group, Rng& rng) : group_(group), rng_(rng) {}

  Ciphertext Encrypt(const scratch::MasterPublicKey& mpk, BytesView keyword);
  bool Test(const Ciphertext& ct, const scratch::Trapdoor& trap);
  // Indices of matching ciphertexts, ascending. Exactly cts.size() pairings.
  std::vector<uint64_t> Search(std::span<const Ciphertext> cts, const scratch::Trapdoor& trap);

 private:
  group::Group& group_;
  Rng& rng_;
};

}  // namespace spchs::peks
