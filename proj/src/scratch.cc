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

#include "spchs/scratch.h"

#include <set>
#include <string>

namespace spchs::scratch {

using group::G1;
using group::G2;
using group::Gt;
using group::Scalar;

Bytes MasterPublicKey::Encode() const {
  Bytes out{group::kGroupId};
  Append(out, p.ToBytes());
  return out;
}

MasterPublicKey MasterPublicKey::Decode(BytesView b) {
  ByteReader in(b);
  if (in.U8() != group::kGroupId) throw DecodeError("unsupported group identifier");
  MasterPublicKey mpk{G1::FromBytes(in.Take(group::kG1Bytes))};
  in.ExpectEnd();
  if (mpk.p.IsIdentity()) throw DecodeError("master public key is the identity");
  return mpk;
}

Bytes MasterSecretKey::Encode() const { return s.ToBytes(); }

MasterSecretKey MasterSecretKey::Decode(BytesView b) {
  MasterSecretKey msk{Scalar::FromBytes(b)};
  if (msk.s.IsZero()) throw DecodeError("master secret key is zero");
  return msk;
}

Bytes StructurePrivate::Serialize() const {
  Bytes out = u.ToBytes();
  AppendU32(out, static_cast<uint32_t>(pointers.size()));
  for (const auto& [keyword, pointer] : pointers) {
    AppendU32(out, static_cast<uint32_t>(keyword.size()));
    Append(out, keyword);
    Append(out, pointer.ToBytes());
  }
  return out;
}

StructurePrivate StructurePrivate::Deserialize(BytesView b) {
  ByteReader in(b);
  StructurePrivate pri;
  pri.u = Scalar::FromBytes(in.Take(group::kScalarBytes));
  if (pri.u.IsZero()) throw DecodeError("structure secret is zero");
  const uint32_t count = in.U32();
  const Bytes* prev = nullptr;
  for (uint32_t i = 0; i < count; ++i) {
    auto kw = in.Take(in.U32());
    Bytes keyword(kw.begin(), kw.end());
    if (prev && !(*prev < keyword)) throw DecodeError("private-part keywords not strictly sorted");
    auto [it, ok] = pri.pointers.emplace(std::move(keyword), Gt::FromBytes(in.Take(group::kGtBytes)));
    prev = &it->first;
  }
  in.ExpectEnd();
  return pri;
}

StructurePublic StructurePublic::Decode(BytesView b) {
  StructurePublic pub{G1::FromBytes(b)};
  if (pub.head.IsIdentity()) throw DecodeError("structure head is the identity");
  return pub;
}

Bytes Ciphertext::Payload() const {
  Bytes out = c2.ToBytes();
  Append(out, c3.ToBytes());
  return out;
}

store::Record Ciphertext::ToRecord(const StructurePublic& pub) const {
  return {Tag(), Payload(), pub.Encode()};
}

std::pair<G1, Gt> Ciphertext::DecodePayload(BytesView payload) {
  if (payload.size() != group::kG1Bytes + group::kGtBytes) {
    throw DecodeError("ciphertext payload has wrong length");
  }
  G1 c2 = G1::FromBytes(payload.first(group::kG1Bytes));
  if (c2.IsIdentity()) throw DecodeError("ciphertext randomizer is the identity");
  return {c2, Gt::FromBytes(payload.subspan(group::kG1Bytes))};
}

Ciphertext Ciphertext::FromRecord(const store::Record& r) {
  auto [c2, c3] = DecodePayload(r.payload);
  return Ciphertext{Gt::FromBytes(r.tag), c2, c3};
}

Trapdoor Trapdoor::Decode(BytesView b) { return Trapdoor{G2::FromBytes(b)}; }

std::pair<MasterPublicKey, MasterSecretKey> Scheme::SystemSetup(int security_bits) {
  if (security_bits != group::kSecurityBits) {
    throw ConfigError("unsupported security level " + std::to_string(security_bits) +
                      " (only 128 is available)");
  }
  MasterSecretKey msk{Scalar::RandomNonzero(rng_)};
  MasterPublicKey mpk{group_.MulGenerator(msk.s)};
  return {mpk, msk};
}

std::pair<StructurePrivate, StructurePublic> Scheme::InitStructure(const MasterPublicKey&) {
  StructurePrivate pri{Scalar::RandomNonzero(rng_), {}};
  StructurePublic pub{group_.MulGenerator(pri.u)};
  return {std::move(pri), pub};
}

StructurePublic Scheme::PublicFor(const StructurePrivate& pri) {
  return StructurePublic{group_.MulGenerator(pri.u)};
}

Ciphertext Scheme::Encrypt(const MasterPublicKey& mpk, BytesView keyword, StructurePrivate& pri) {
  const Scalar r = Scalar::RandomNonzero(rng_);
  const Gt base = group_.Pair(mpk.p, HashKeyword(keyword));
  const Gt next = group_.RandomGt(rng_);

  Ciphertext ct;
  Bytes key(keyword.begin(), keyword.end());
  auto it = pri.pointers.find(key);
  if (it == pri.pointers.end()) {
    ct.c1 = group_.Pow(base, pri.u);
    pri.pointers.emplace(std::move(key), next);
  } else {
    ct.c1 = it->second;
    it->second = next;
  }
  ct.c2 = group_.MulGenerator(r);
  ct.c3 = group_.Pow(base, r) * next;
  return ct;
}

Trapdoor Scheme::MakeTrapdoor(const MasterSecretKey& msk, BytesView keyword) {
  return Trapdoor{group_.Mul(HashKeyword(keyword), msk.s)};
}

SearchResult Scheme::Search(const MasterPublicKey&, const StructurePublic& pub,
                            const store::TagStore& store, const Trapdoor& trap) {
  SearchResult out;
  std::set<uint64_t> visited;
  Gt pointer = group_.Pair(pub.head, trap.t);
  for (;;) {
    const auto hit = store.FindByTag(pointer.ToBytes());
    out.comparisons += hit.comparisons;
    if (!hit.ordinal) return out;
    if (hit.ambiguous) throw MalformedStoreError("several records share one tag");
    if (!visited.insert(*hit.ordinal).second) {
      throw MalformedStoreError("pointer cycle at record " + std::to_string(*hit.ordinal));
    }
    if (out.ordinals.size() >= store.size()) {
      throw MalformedStoreError("chain longer than the store");
    }
    out.ordinals.push_back(*hit.ordinal);

    std::pair<G1, Gt> body;
    try {
      body = Ciphertext::DecodePayload(store.at(*hit.ordinal).payload);
    } catch (const DecodeError& e) {
      throw MalformedStoreError("record " + std::to_string(*hit.ordinal) + ": " + e.what());
    }
    pointer = group_.Pair(body.first, trap.t).Inverse() * body.second;
  }
}

}  // namespace spchs::scratch
