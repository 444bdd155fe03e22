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

#include "spchs/backend.h"

#include "gtest/gtest.h"
#include "spchs/corpus.h"

namespace spchs {
namespace {

class BackendTest : public ::testing::TestWithParam<BackendId> {};

// Property: random interleaved corpora are searched back exactly, and every
// search costs one pairing per match plus the anchor.
TEST_P(BackendTest, ConsistencyOnRandomCorpora) {
  Rng rng = Rng::FromSeed(71);
  auto backend = MakeBackend(GetParam(), rng);
  for (int trial = 0; trial < 4; ++trial) {
    const auto script = corpus::RandomScript(rng, 3, 8, 80);
    auto built = corpus::Build(*backend, script);
    for (const auto& kw : built.keywords) {
      const Bytes trap = backend->Trapdoor(built.keys.msk, kw);
      for (size_t s = 0; s < built.senders.size(); ++s) {
        backend->group().Reset();
        const auto r =
            backend->Search(built.keys.mpk, built.senders[s]->public_part(), built.store, trap);
        const auto it = built.truth.find({s, kw});
        const auto expected = it == built.truth.end() ? std::vector<uint64_t>{} : it->second;
        ASSERT_EQ(r.ordinals, expected);
        ASSERT_EQ(backend->group().Snapshot().pairings, expected.size() + 1);
      }
    }
  }
}

TEST_P(BackendTest, RestoredSenderContinuesChains) {
  Rng rng = Rng::FromSeed(72);
  auto backend = MakeBackend(GetParam(), rng);
  const auto keys = backend->Setup();
  auto sender = backend->NewStructure(keys.mpk);
  store::TagStore store(GetParam());
  std::vector<uint64_t> truth;
  truth.push_back(store.Insert(sender->Encrypt(AsBytes("w"))));
  auto restored = backend->RestoreStructure(keys.mpk, sender->SerializePrivate());
  truth.push_back(store.Insert(restored->Encrypt(AsBytes("w"))));
  truth.push_back(store.Insert(restored->Encrypt(AsBytes("w"))));
  const auto r = backend->Search(keys.mpk, sender->public_part(), store,
                                 backend->Trapdoor(keys.msk, AsBytes("w")));
  EXPECT_EQ(r.ordinals, truth);
}

TEST_P(BackendTest, WrongMasterKeyFindsNothing) {
  Rng rng = Rng::FromSeed(73);
  auto backend = MakeBackend(GetParam(), rng);
  const auto keys = backend->Setup();
  const auto other = backend->Setup();
  auto sender = backend->NewStructure(keys.mpk);
  store::TagStore store(GetParam());
  for (int i = 0; i < 3; ++i) store.Insert(sender->Encrypt(AsBytes("w")));
  const auto r = backend->Search(keys.mpk, sender->public_part(), store,
                                 backend->Trapdoor(other.msk, AsBytes("w")));
  EXPECT_TRUE(r.ordinals.empty());
}

TEST_P(BackendTest, RejectsMalformedKeys) {
  Rng rng = Rng::FromSeed(74);
  auto backend = MakeBackend(GetParam(), rng);
  const auto keys = backend->Setup();
  Bytes bad = keys.mpk;
  bad.pop_back();
  EXPECT_THROW(backend->NewStructure(bad), DecodeError);
  EXPECT_THROW(backend->Trapdoor(BytesView(keys.msk).first(5), AsBytes("w")), DecodeError);
  EXPECT_THROW(backend->RestoreStructure(keys.mpk, Bytes{1, 2, 3}), DecodeError);
}

INSTANTIATE_TEST_SUITE_P(Both, BackendTest,
                         ::testing::Values(BackendId::kScratch, BackendId::kGeneric),
                         [](const auto& info) { return BackendName(info.param); });

// Both backends, driven by the same script, label the same ordinals.
TEST(BackendEquivalenceTest, SameScriptSameResults) {
  Rng script_rng = Rng::FromSeed(75);
  const auto script = corpus::RandomScript(script_rng, 4, 6, 60);
  Rng a_rng = Rng::FromSeed(76), b_rng = Rng::FromSeed(77);
  auto scratch = MakeBackend(BackendId::kScratch, a_rng);
  auto generic = MakeBackend(BackendId::kGeneric, b_rng);
  auto a = corpus::Build(*scratch, script);
  auto b = corpus::Build(*generic, script);
  ASSERT_EQ(a.truth, b.truth);
  for (const auto& kw : a.keywords) {
    const Bytes ta = scratch->Trapdoor(a.keys.msk, kw);
    const Bytes tb = generic->Trapdoor(b.keys.msk, kw);
    for (size_t s = 0; s < script.structures; ++s) {
      ASSERT_EQ(scratch->Search(a.keys.mpk, a.senders[s]->public_part(), a.store, ta).ordinals,
                generic->Search(b.keys.mpk, b.senders[s]->public_part(), b.store, tb).ordinals);
    }
  }
}

TEST(BackendFactoryTest, PeksIsNotAStructuredBackend) {
  Rng rng = Rng::FromSeed(78);
  EXPECT_THROW(MakeBackend(BackendId::kPeks, rng), ConfigError);
}

}  // namespace
}  // namespace spchs
