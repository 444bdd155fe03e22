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

// Identity-based KEM and IBE interfaces, plus the concrete instances used by
// the generic SPCHS construction.
//
// An IdentityKem must also provide Fim(pk, id, r): the key that *any*
// identity would decapsulate from the encapsulation produced with
// randomness r. That is what lets a structure's public head serve every
// keyword at once.

#include <concepts>
#include <optional>
#include <string_view>
#include <utility>

#include "spchs/common.h"
#include "spchs/group.h"
#include "spchs/rng.h"

namespace spchs::ibe {

template <typename Key, typename Enc>
struct Encapsulated {
  Key key;
  Enc encapsulation;
};

template <typename K>
concept IdentityKem = requires(K& kem, const typename K::PublicKey& pk,
                               const typename K::SecretKey& sk, const typename K::DecapsKey& dk,
                               const typename K::Encapsulation& enc,
                               const typename K::Randomness& r, BytesView id, BytesView bytes) {
  typename K::Key;
  { kem.Setup() } -> std::same_as<std::pair<typename K::PublicKey, typename K::SecretKey>>;
  { kem.Extract(sk, id) } -> std::same_as<typename K::DecapsKey>;
  { kem.SampleRandomness() } -> std::same_as<typename K::Randomness>;
  {
    kem.Encaps(pk, id, r)
  } -> std::same_as<Encapsulated<typename K::Key, typename K::Encapsulation>>;
  // nullopt for an invalid encapsulation.
  { kem.Decaps(dk, enc) } -> std::same_as<std::optional<typename K::Key>>;
  { kem.Fim(pk, id, r) } -> std::same_as<typename K::Key>;
  { K::EncodeRandomness(r) } -> std::same_as<Bytes>;
  { K::DecodeRandomness(bytes) } -> std::same_as<typename K::Randomness>;
  { K::EncodeEncapsulation(enc) } -> std::same_as<Bytes>;
  { K::DecodeEncapsulation(bytes) } -> std::same_as<typename K::Encapsulation>;
};

template <typename E>
concept IdentityEncryption = requires(E& ibe, const typename E::PublicKey& pk,
                                      const typename E::SecretKey& sk,
                                      const typename E::DecKey& dk,
                                      const typename E::Ciphertext& ct,
                                      const typename E::Message& m, BytesView id,
                                      BytesView bytes) {
  { ibe.Setup() } -> std::same_as<std::pair<typename E::PublicKey, typename E::SecretKey>>;
  { ibe.Extract(sk, id) } -> std::same_as<typename E::DecKey>;
  { ibe.Encrypt(pk, id, m) } -> std::same_as<typename E::Ciphertext>;
  // nullopt for an invalid ciphertext.
  { ibe.Decrypt(dk, ct) } -> std::same_as<std::optional<typename E::Message>>;
  { E::EncodeCiphertext(ct) } -> std::same_as<Bytes>;
  { E::DecodeCiphertext(bytes) } -> std::same_as<typename E::Ciphertext>;
};

// RO-model IBKEM: K = KDF(e(P, H(ID))^r), C = g^r, decapsulation key
// H(ID)^s. Fim(ID', r) = KDF(e(P, H(ID'))^r).
class RoIbkem {
 public:
  static constexpr std::string_view kIdentityDst = "SPCHS-IBKEM-H-v1";
  static constexpr std::string_view kKdfDomain = "SPCHS-IBKEM-KDF-v1";

  using Key = Digest;
  using Randomness = group::Scalar;
  struct PublicKey {
    group::G1 p;
  };
  struct SecretKey {
    group::Scalar s;
  };
  struct DecapsKey {
    group::G2 d;
  };
  struct Encapsulation {
    group::G1 c;
  };

  RoIbkem(group::Group& group, Rng& rng) : group_(group), rng_(rng) {}

  std::pair<PublicKey, SecretKey> Setup();
  DecapsKey Extract(const SecretKey& sk, BytesView id);
  Randomness SampleRandomness() { return group::Scalar::RandomNonzero(rng_); }
  Encapsulated<Key, Encapsulation> Encaps(const PublicKey& pk, BytesView id, const Randomness& r);
  std::optional<Key> Decaps(const DecapsKey& dk, const Encapsulation& enc);
  Key Fim(const PublicKey& pk, BytesView id, const Randomness& r);

  // Un-hashed target-group value e(P, H(ID))^r.
  group::Gt FimElement(const PublicKey& pk, BytesView id, const Randomness& r);

  static Bytes EncodeRandomness(const Randomness& r) { return r.ToBytes(); }
  static Randomness DecodeRandomness(BytesView b);
  static Bytes EncodeEncapsulation(const Encapsulation& e) { return e.c.ToBytes(); }
  static Encapsulation DecodeEncapsulation(BytesView b) { return {group::G1::FromBytes(b)}; }

  group::Group& group() { return group_; }

 private:
  group::Group& group_;
  Rng& rng_;
};

// Anonymous CPA IBE with a hash-derived XOR pad:
// (g^t, m XOR KDF(e(P', H'(ID))^t)), key H'(ID)^{s'}. Messages are lambda bits.
class HashMaskIbe {
 public:
  static constexpr std::string_view kIdentityDst = "SPCHS-IBE-H-v1";
  static constexpr std::string_view kKdfDomain = "SPCHS-IBE-KDF-v1";
  static constexpr size_t kCiphertextBytes = group::kG1Bytes + kDigestBytes;

  using Message = Digest;
  struct PublicKey {
    group::G1 p;
  };
  struct SecretKey {
    group::Scalar s;
  };
  struct DecKey {
    group::G2 d;
  };
  struct Ciphertext {
    group::G1 u;
    Digest v;
  };

  HashMaskIbe(group::Group& group, Rng& rng) : group_(group), rng_(rng) {}

  std::pair<PublicKey, SecretKey> Setup();
  DecKey Extract(const SecretKey& sk, BytesView id);
  Ciphertext Encrypt(const PublicKey& pk, BytesView id, const Message& m);
  std::optional<Message> Decrypt(const DecKey& dk, const Ciphertext& ct);

  static Bytes EncodeCiphertext(const Ciphertext& ct);
  static Ciphertext DecodeCiphertext(BytesView b);

 private:
  group::Group& group_;
  Rng& rng_;
};

static_assert(IdentityKem<RoIbkem>);
static_assert(IdentityEncryption<HashMaskIbe>);

}  // namespace spchs::ibe
