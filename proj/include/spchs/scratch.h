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

// Pairing-based SPCHS. Ciphertexts of one keyword under one sender structure
// form a hidden chain: the first carries an anchor e(P, H(W))^u that the
// server can recompute from the public head and a trapdoor, and each
// ciphertext masks the random tag of its successor. Search therefore costs
// one pairing per structure plus one per matching ciphertext.

#include <map>
#include <utility>
#include <vector>

#include "spchs/common.h"
#include "spchs/group.h"
#include "spchs/rng.h"
#include "spchs/tag_store.h"

namespace spchs::scratch {

// Domain separation tag of the keyword hash H.
inline constexpr std::string_view kKeywordDst = "SPCHS-H-v1";

struct MasterPublicKey {
  group::G1 p;  // g^s

  Bytes Encode() const;
  static MasterPublicKey Decode(BytesView b);
};

struct MasterSecretKey {
  group::Scalar s;

  Bytes Encode() const;
  static MasterSecretKey Decode(BytesView b);
};

// Sender-local chain state. A keyword is present in `pointers` iff at least
// one ciphertext of it was produced under this structure; its value is the
// tag the next ciphertext of that keyword will carry.
struct StructurePrivate {
  group::Scalar u;
  std::map<Bytes, group::Gt> pointers;

  // u | count u32 | sorted (u32 keyword length, keyword, 576-byte GT)
  Bytes Serialize() const;
  static StructurePrivate Deserialize(BytesView b);
  bool operator==(const StructurePrivate&) const = default;
};

struct StructurePublic {
  group::G1 head;  // g^u

  Bytes Encode() const { return head.ToBytes(); }
  static StructurePublic Decode(BytesView b);
};

struct Ciphertext {
  group::Gt c1;  // tag: anchor or previous pointer
  group::G1 c2;  // g^r
  group::Gt c3;  // e(P, H(W))^r * next pointer

  Bytes Tag() const { return c1.ToBytes(); }
  Bytes Payload() const;
  store::Record ToRecord(const StructurePublic& pub) const;
  static Ciphertext FromRecord(const store::Record& r);
  // Decodes only (c2, c3); the tag is already known to a searcher.
  static std::pair<group::G1, group::Gt> DecodePayload(BytesView payload);
};

struct Trapdoor {
  group::G2 t;  // H(W)^s

  Bytes Encode() const { return t.ToBytes(); }
  static Trapdoor Decode(BytesView b);
};

struct SearchResult {
  std::vector<uint64_t> ordinals;  // chain order
  size_t comparisons = 0;
};

class Scheme {
 public:
  Scheme(group::Group& group, Rng& rng) : group_(group), rng_(rng) {}

  // Throws ConfigError for any level other than group::kSecurityBits.
  std::pair<MasterPublicKey, MasterSecretKey> SystemSetup(int security_bits = group::kSecurityBits);

  std::pair<StructurePrivate, StructurePublic> InitStructure(const MasterPublicKey& mpk);
  // Starts a fresh, independent structure; later ciphertexts are unreachable
  // from the old head.
  std::pair<StructurePrivate, StructurePublic> RotateStructure(const MasterPublicKey& mpk) {
    return InitStructure(mpk);
  }
  StructurePublic PublicFor(const StructurePrivate& pri);

  Ciphertext Encrypt(const MasterPublicKey& mpk, BytesView keyword, StructurePrivate& pri);

  Trapdoor MakeTrapdoor(const MasterSecretKey& msk, BytesView keyword);

  // Follows the keyword's chain under `pub`. Throws MalformedStoreError on
  // duplicate tags, cycles, runaway chains or undecodable payloads.
  SearchResult Search(const MasterPublicKey& mpk, const StructurePublic& pub,
                      const store::TagStore& store, const Trapdoor& trap);

  group::G2 HashKeyword(BytesView keyword) { return group_.HashToG2(keyword, kKeywordDst); }

 private:
  group::Group& group_;
  Rng& rng_;
};

}  // namespace spchs::scratch
