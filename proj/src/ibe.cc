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

#include "spchs/ibe.h"

#include <cstring>

namespace spchs::ibe {

using group::G1;
using group::Scalar;

std::pair<RoIbkem::PublicKey, RoIbkem::SecretKey> RoIbkem::Setup() {
  SecretKey sk{Scalar::RandomNonzero(rng_)};
  return {PublicKey{group_.MulGenerator(sk.s)}, sk};
}

RoIbkem::DecapsKey RoIbkem::Extract(const SecretKey& sk, BytesView id) {
  return {group_.Mul(group_.HashToG2(id, kIdentityDst), sk.s)};
}

group::Gt RoIbkem::FimElement(const PublicKey& pk, BytesView id, const Randomness& r) {
  return group_.Pair(group_.Mul(pk.p, r), group_.HashToG2(id, kIdentityDst));
}

RoIbkem::Key RoIbkem::Fim(const PublicKey& pk, BytesView id, const Randomness& r) {
  return group::Kdf(kKdfDomain, FimElement(pk, id, r));
}

Encapsulated<RoIbkem::Key, RoIbkem::Encapsulation> RoIbkem::Encaps(const PublicKey& pk,
                                                                   BytesView id,
                                                                   const Randomness& r) {
  return {Fim(pk, id, r), Encapsulation{group_.MulGenerator(r)}};
}

std::optional<RoIbkem::Key> RoIbkem::Decaps(const DecapsKey& dk, const Encapsulation& enc) {
  // g^r with r in Z_q^* is never the identity.
  if (enc.c.IsIdentity()) return std::nullopt;
  return group::Kdf(kKdfDomain, group_.Pair(enc.c, dk.d));
}

RoIbkem::Randomness RoIbkem::DecodeRandomness(BytesView b) {
  Scalar r = Scalar::FromBytes(b);
  if (r.IsZero()) throw DecodeError("IBKEM randomness is zero");
  return r;
}

std::pair<HashMaskIbe::PublicKey, HashMaskIbe::SecretKey> HashMaskIbe::Setup() {
  SecretKey sk{Scalar::RandomNonzero(rng_)};
  return {PublicKey{group_.MulGenerator(sk.s)}, sk};
}

HashMaskIbe::DecKey HashMaskIbe::Extract(const SecretKey& sk, BytesView id) {
  return {group_.Mul(group_.HashToG2(id, kIdentityDst), sk.s)};
}

HashMaskIbe::Ciphertext HashMaskIbe::Encrypt(const PublicKey& pk, BytesView id,
                                             const Message& m) {
  const Scalar t = Scalar::RandomNonzero(rng_);
  const Digest pad =
      group::Kdf(kKdfDomain, group_.Pair(group_.Mul(pk.p, t), group_.HashToG2(id, kIdentityDst)));
  Ciphertext ct{group_.MulGenerator(t), {}};
  for (size_t i = 0; i < kDigestBytes; ++i) ct.v[i] = m[i] ^ pad[i];
  return ct;
}

std::optional<HashMaskIbe::Message> HashMaskIbe::Decrypt(const DecKey& dk, const Ciphertext& ct) {
  if (ct.u.IsIdentity()) return std::nullopt;
  const Digest pad = group::Kdf(kKdfDomain, group_.Pair(ct.u, dk.d));
  Message m;
  for (size_t i = 0; i < kDigestBytes; ++i) m[i] = ct.v[i] ^ pad[i];
  return m;
}

Bytes HashMaskIbe::EncodeCiphertext(const Ciphertext& ct) {
  Bytes out = ct.u.ToBytes();
  out.insert(out.end(), ct.v.begin(), ct.v.end());
  return out;
}

HashMaskIbe::Ciphertext HashMaskIbe::DecodeCiphertext(BytesView b) {
  if (b.size() != kCiphertextBytes) throw DecodeError("IBE ciphertext has wrong length");
  Ciphertext ct{G1::FromBytes(b.first(group::kG1Bytes)), {}};
  std::memcpy(ct.v.data(), b.data() + group::kG1Bytes, kDigestBytes);
  return ct;
}

}  // namespace spchs::ibe
