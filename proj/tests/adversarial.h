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

// Hand-built hostile stores for search robustness tests.

#include <vector>

#include "spchs/scratch.h"

namespace spchs::testing {

// A chain of `length` well-formed records whose last pointer leads back to
// the first, reachable from `pub` with the trapdoor of `keyword`. Extra
// unrelated records are prepended so the cycle does not start at ordinal 0.
inline store::TagStore BuildCycleStore(group::Group& grp, Rng& rng,
                                       const scratch::MasterSecretKey& msk,
                                       const scratch::StructurePublic& pub, BytesView keyword,
                                       size_t length, size_t padding = 0) {
  scratch::Scheme scheme(grp, rng);
  const auto trap = scheme.MakeTrapdoor(msk, keyword);
  std::vector<group::Gt> tags = {grp.Pair(pub.head, trap.t)};
  while (tags.size() < length) tags.push_back(grp.RandomGt(rng));

  store::TagStore store(BackendId::kScratch);
  for (size_t i = 0; i < padding; ++i) {
    scratch::Ciphertext filler{grp.RandomGt(rng), grp.MulGenerator(group::Scalar::RandomNonzero(rng)),
                               grp.RandomGt(rng)};
    store.Insert(filler.ToRecord(pub));
  }
  for (size_t i = 0; i < length; ++i) {
    const auto r = group::Scalar::RandomNonzero(rng);
    scratch::Ciphertext ct;
    ct.c1 = tags[i];
    ct.c2 = grp.MulGenerator(r);
    ct.c3 = grp.Pair(ct.c2, trap.t) * tags[(i + 1) % length];
    store.Insert(ct.ToRecord(pub));
  }
  return store;
}

}  // namespace spchs::testing
