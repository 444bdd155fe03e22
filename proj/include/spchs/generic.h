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

// Generic SPCHS from a collision-free full-identity malleable IBKEM and an
// anonymous IBE with K_IBKEM = M_IBE = {0,1}^256.
//
// A structure is an encapsulation C = Encaps(reserved keyword, u). The first
// ciphertext of W carries tag Fim(W, u), which a holder of W's decapsulation
// key recovers from C; every ciphertext IBE-encrypts, under identity W, the
// tag of its successor.

#include <concepts>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "spchs/common.h"
#include "spchs/conformance.h"
#include "spchs/ibe.h"
#include "spchs/rng.h"
#include "spchs/tag_store.h"

namespace spchs::generic {

// Keyword used to build every structure head. Starts with a NUL byte so it
// stays outside the keyword space exposed by the tools.
inline constexpr std::string_view kAnchorKeyword{"\0SPCHS-INIT", 11};

class ConformanceError : public Error {
 public:
  using Error::Error;
};

template <ibe::IdentityKem Kem, ibe::IdentityEncryption Ibe>
  requires std::same_as<typename Kem::Key, Digest> && std::same_as<typename Ibe::Message, Digest>
class Scheme {
 public:
  struct MasterPublicKey {
    typename Kem::PublicKey kem;
    typename Ibe::PublicKey ibe;
  };
  struct MasterSecretKey {
    typename Kem::SecretKey kem;
    typename Ibe::SecretKey ibe;
  };
  struct StructurePrivate {
    typename Kem::Randomness u;
    std::map<Bytes, Digest> pointers;

    // u32 len, u | count u32 | sorted (u32 keyword length, keyword, 32-byte pointer)
    Bytes Serialize() const {
      Bytes out;
      const Bytes ub = Kem::EncodeRandomness(u);
      AppendU32(out, static_cast<uint32_t>(ub.size()));
      Append(out, ub);
      AppendU32(out, static_cast<uint32_t>(pointers.size()));
      for (const auto& [keyword, pointer] : pointers) {
        AppendU32(out, static_cast<uint32_t>(keyword.size()));
        Append(out, keyword);
        Append(out, pointer);
      }
      return out;
    }

    static StructurePrivate Deserialize(BytesView b) {
      ByteReader in(b);
      StructurePrivate pri{Kem::DecodeRandomness(in.Take(in.U32())), {}};
      const uint32_t count = in.U32();
      const Bytes* prev = nullptr;
      for (uint32_t i = 0; i < count; ++i) {
        auto kw = in.Take(in.U32());
        Bytes keyword(kw.begin(), kw.end());
        if (prev && !(*prev < keyword)) {
          throw DecodeError("private-part keywords not strictly sorted");
        }
        Digest pointer;
        auto pb = in.Take(kDigestBytes);
        std::copy(pb.begin(), pb.end(), pointer.begin());
        auto [it, ok] = pri.pointers.emplace(std::move(keyword), pointer);
        prev = &it->first;
      }
      in.ExpectEnd();
      return pri;
    }
  };
  struct StructurePublic {
    typename Kem::Encapsulation head;

    Bytes Encode() const { return Kem::EncodeEncapsulation(head); }
    static StructurePublic Decode(BytesView b) { return {Kem::DecodeEncapsulation(b)}; }
  };
  struct Trapdoor {
    typename Kem::DecapsKey kem;
    typename Ibe::DecKey ibe;
  };
  struct Ciphertext {
    Digest tag;
    typename Ibe::Ciphertext body;

    store::Record ToRecord(const StructurePublic& pub) const {
      return {Bytes(tag.begin(), tag.end()), Ibe::EncodeCiphertext(body), pub.Encode()};
    }
  };
  struct SearchResult {
    std::vector<uint64_t> ordinals;  // chain order
    size_t comparisons = 0;
    size_t decapsulations = 0;
    size_t decryptions = 0;
  };

  Scheme(Kem& kem, Ibe& ibe, Rng& rng) : kem_(kem), ibe_(ibe), rng_(rng) {}

  std::pair<MasterPublicKey, MasterSecretKey> SystemSetup() {
    auto [kpk, ksk] = kem_.Setup();
    auto [ipk, isk] = ibe_.Setup();
    return {MasterPublicKey{kpk, ipk}, MasterSecretKey{ksk, isk}};
  }

  std::pair<StructurePrivate, StructurePublic> InitStructure(const MasterPublicKey& mpk) {
    StructurePrivate pri{kem_.SampleRandomness(), {}};
    StructurePublic pub = PublicFor(mpk, pri);
    return {std::move(pri), std::move(pub)};
  }

  std::pair<StructurePrivate, StructurePublic> RotateStructure(const MasterPublicKey& mpk) {
    return InitStructure(mpk);
  }

  StructurePublic PublicFor(const MasterPublicKey& mpk, const StructurePrivate& pri) {
    return {kem_.Encaps(mpk.kem, AsBytes(kAnchorKeyword), pri.u).encapsulation};
  }

  Ciphertext Encrypt(const MasterPublicKey& mpk, BytesView keyword, StructurePrivate& pri) {
    Digest next;
    rng_.Fill(std::span(next.data(), next.size()));
    Ciphertext ct;
    Bytes key(keyword.begin(), keyword.end());
    auto it = pri.pointers.find(key);
    if (it == pri.pointers.end()) {
      ct.tag = kem_.Fim(mpk.kem, keyword, pri.u);
      pri.pointers.emplace(std::move(key), next);
    } else {
      ct.tag = it->second;
      it->second = next;
    }
    ct.body = ibe_.Encrypt(mpk.ibe, keyword, next);
    return ct;
  }

  Trapdoor MakeTrapdoor(const MasterSecretKey& msk, BytesView keyword) {
    return {kem_.Extract(msk.kem, keyword), ibe_.Extract(msk.ibe, keyword)};
  }

  SearchResult Search(const MasterPublicKey&, const StructurePublic& pub,
                      const store::TagStore& store, const Trapdoor& trap) {
    SearchResult out;
    ++out.decapsulations;
    auto anchor = kem_.Decaps(trap.kem, pub.head);
    if (!anchor) throw DecodeError("structure public part is not a valid encapsulation");
    Digest pointer = *anchor;
    std::set<uint64_t> visited;
    for (;;) {
      const auto hit = store.FindByTag(pointer);
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

      std::optional<Digest> next;
      try {
        ++out.decryptions;
        next = ibe_.Decrypt(trap.ibe, Ibe::DecodeCiphertext(store.at(*hit.ordinal).payload));
      } catch (const DecodeError& e) {
        throw MalformedStoreError("record " + std::to_string(*hit.ordinal) + ": " + e.what());
      }
      if (!next) {
        throw MalformedStoreError("record " + std::to_string(*hit.ordinal) +
                                  ": invalid IBE ciphertext");
      }
      pointer = *next;
    }
  }

  Kem& kem() { return kem_; }
  Ibe& ibe() { return ibe_; }

 private:
  Kem& kem_;
  Ibe& ibe_;
  Rng& rng_;
};

// Instantiates the construction only over backends that pass the law
// checks; throws ConformanceError listing the failed laws otherwise.
template <ibe::IdentityKem Kem, ibe::IdentityEncryption Ibe>
Scheme<Kem, Ibe> InstantiateChecked(Kem& kem, Ibe& ibe, Rng& rng,
                                    ibe::ConformanceOptions opts = {}) {
  auto report = ibe::CheckBackends(kem, ibe, rng, opts);
  if (!report.ok()) throw ConformanceError("backend laws violated:\n" + report.Summary());
  return Scheme<Kem, Ibe>(kem, ibe, rng);
}

using RoScheme = Scheme<ibe::RoIbkem, ibe::HashMaskIbe>;

}  // namespace spchs::generic
