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

#include "spchs/peks.h"

#include <sodium.h>

#include <cstring>

namespace spchs::peks {

store::Record Ciphertext::ToRecord() const {
  return {a.ToBytes(), Bytes(b.begin(), b.end()), {}};
}

Ciphertext Ciphertext::FromRecord(const store::Record& r) {
  if (r.payload.size() != kDigestBytes) throw DecodeError("PEKS digest has wrong length");
  Ciphertext ct{group::G1::FromBytes(r.tag), {}};
  if (ct.a.IsIdentity()) throw DecodeError("PEKS randomizer is the identity");
  std::memcpy(ct.b.data(), r.payload.data(), kDigestBytes);
  return ct;
}

Ciphertext Scheme::Encrypt(const scratch::MasterPublicKey& mpk, BytesView keyword) {
  const auto r = group::Scalar::RandomNonzero(rng_);
  const auto h = group_.HashToG2(keyword, scratch::kKeywordDst);
  // e(P, H(W))^r computed as e(P^r, H(W)).
  const auto k = group_.Pair(group_.Mul(mpk.p, r), h);
  return Ciphertext{group_.MulGenerator(r), group::Kdf(kKdfDomain, k)};
}

bool Scheme::Test(const Ciphertext& ct, const scratch::Trapdoor& trap) {
  const Digest d = group::Kdf(kKdfDomain, group_.Pair(ct.a, trap.t));
  return sodium_memcmp(d.data(), ct.b.data(), kDigestBytes) == 0;
}

std::vector<uint64_t> Scheme::Search(std::span<const Ciphertext> cts,
                                     const scratch::Trapdoor& trap) {
  std::vector<uint64_t> out;
  for (size_t i = 0; i < cts.size(); ++i) {
    if (Test(cts[i], trap)) out.push_back(i);
  }
  return out;
}

}  // namespace spchs::peks
