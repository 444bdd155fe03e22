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

#include <map>
#include <set>

#include "adversarial.h"
#include "gtest/gtest.h"

namespace spchs::scratch {
namespace {

using group::G1;
using group::G2;
using group::Gt;
using group::Scalar;

class ScratchTest : public ::testing::Test {
 protected:
  void SetUp() override {
    std::tie(mpk_, msk_) = scheme_.SystemSetup();
  }

  Trapdoor Trap(std::string_view kw) { return scheme_.MakeTrapdoor(msk_, AsBytes(kw)); }

  group::Group grp_;
  Rng rng_ = Rng::FromSeed(31);
  Scheme scheme_{grp_, rng_};
  MasterPublicKey mpk_;
  MasterSecretKey msk_;
};

TEST_F(ScratchTest, SetupIsFreshAndDefinitional) {
  EXPECT_EQ(mpk_.p, grp_.MulGenerator(msk_.s));
  EXPECT_FALSE(mpk_.p.IsIdentity());
  auto [mpk2, msk2] = scheme_.SystemSetup();
  EXPECT_FALSE(msk2.s == msk_.s);
  EXPECT_THROW(scheme_.SystemSetup(80), ConfigError);
}

TEST_F(ScratchTest, DelegationIdentity) {
  for (const char* kw : {"w", "", "invoice"}) {
    const Trapdoor t = Trap(kw);
    EXPECT_EQ(grp_.Pair(mpk_.p, scheme_.HashKeyword(AsBytes(kw))), grp_.Pair(G1::Generator(), t.t));
  }
}

TEST_F(ScratchTest, TrapdoorDeterministicAndDistinct) {
  EXPECT_EQ(Trap("w").t, Trap("w").t);
  std::set<Bytes> seen;
  for (int i = 0; i < 100; ++i) {
    ASSERT_TRUE(seen.insert(Trap("kw" + std::to_string(i)).Encode()).second);
  }
}

TEST_F(ScratchTest, InitStructure) {
  auto [pri, pub] = scheme_.InitStructure(mpk_);
  auto [pri2, pub2] = scheme_.InitStructure(mpk_);
  EXPECT_TRUE(pri.pointers.empty());
  EXPECT_EQ(pub.head, grp_.MulGenerator(pri.u));
  EXPECT_FALSE(pub.head == pub2.head);
  scheme_.Encrypt(mpk_, AsBytes("w"), pri);
  ASSERT_EQ(pri.pointers.size(), 1u);
  EXPECT_EQ(pri.pointers.begin()->first, ToBytes("w"));
}

TEST_F(ScratchTest, AnchorIdentity) {
  auto [pri, pub] = scheme_.InitStructure(mpk_);
  const Ciphertext ct = scheme_.Encrypt(mpk_, AsBytes("w"), pri);
  EXPECT_EQ(ct.c1, grp_.Pair(pub.head, Trap("w").t));
}

TEST_F(ScratchTest, ChainLinkage) {
  auto [pri, pub] = scheme_.InitStructure(mpk_);
  const Trapdoor t = Trap("w");
  std::vector<Ciphertext> chain;
  for (int i = 0; i < 6; ++i) {
    chain.push_back(scheme_.Encrypt(mpk_, AsBytes("w"), pri));
    scheme_.Encrypt(mpk_, AsBytes("other"), pri);
  }
  for (size_t i = 0; i + 1 < chain.size(); ++i) {
    ASSERT_EQ(chain[i + 1].c1, grp_.Pair(chain[i].c2, t.t).Inverse() * chain[i].c3) << i;
  }
  // The last pointer is held privately and not yet used as a tag.
  const Gt pending = grp_.Pair(chain.back().c2, t.t).Inverse() * chain.back().c3;
  EXPECT_EQ(pri.pointers.at(ToBytes("w")), pending);
}

TEST_F(ScratchTest, FreshComponents) {
  auto [pri, pub] = scheme_.InitStructure(mpk_);
  std::set<Bytes> c2s, c3s;
  for (int i = 0; i < 40; ++i) {
    const auto ct = scheme_.Encrypt(mpk_, AsBytes(i % 2 ? "a" : "b"), pri);
    ASSERT_TRUE(c2s.insert(ct.c2.ToBytes()).second);
    ASSERT_TRUE(c3s.insert(ct.c3.ToBytes()).second);
    ASSERT_FALSE(ct.c2.IsIdentity());
  }
}

TEST_F(ScratchTest, SearchEmptyStoreCostsOnePairing) {
  auto [pri, pub] = scheme_.InitStructure(mpk_);
  const Trapdoor t = Trap("w");
  store::TagStore store(BackendId::kScratch);
  grp_.Reset();
  const auto r = scheme_.Search(mpk_, pub, store, t);
  EXPECT_TRUE(r.ordinals.empty());
  EXPECT_EQ(grp_.Snapshot().pairings, 1u);
}

TEST_F(ScratchTest, SearchFindsExactlyTheChain) {
  auto [pri_u, pub_u] = scheme_.InitStructure(mpk_);
  auto [pri_v, pub_v] = scheme_.InitStructure(mpk_);
  store::TagStore store(BackendId::kScratch);
  std::vector<uint64_t> truth;
  Rng order = Rng::FromSeed(32);
  size_t w_left = 5, other_left = 20;
  while (w_left + other_left > 0) {
    if (w_left > 0 && order.Uniform(w_left + other_left) < w_left) {
      truth.push_back(store.Insert(scheme_.Encrypt(mpk_, AsBytes("w"), pri_u).ToRecord(pub_u)));
      --w_left;
    } else {
      const bool other_struct = order.Uniform(2) == 0;
      const std::string kw = other_struct ? "w" : "x" + std::to_string(other_left % 3);
      auto& pri = other_struct ? pri_v : pri_u;
      auto& pub = other_struct ? pub_v : pub_u;
      store.Insert(scheme_.Encrypt(mpk_, AsBytes(kw), pri).ToRecord(pub));
      --other_left;
    }
  }
  const Trapdoor t = Trap("w");
  grp_.Reset();
  const auto r = scheme_.Search(mpk_, pub_u, store, t);
  EXPECT_EQ(r.ordinals, truth);
  EXPECT_EQ(grp_.Snapshot().pairings, 6u);
  EXPECT_TRUE(scheme_.Search(mpk_, pub_u, store, Trap("never")).ordinals.empty());
}

TEST_F(ScratchTest, ChainsOfDifferentKeywordsAreIndependent) {
  auto [pri, pub] = scheme_.InitStructure(mpk_);
  store::TagStore store(BackendId::kScratch);
  const auto a = store.Insert(scheme_.Encrypt(mpk_, AsBytes("w1"), pri).ToRecord(pub));
  const auto b = store.Insert(scheme_.Encrypt(mpk_, AsBytes("w2"), pri).ToRecord(pub));
  EXPECT_EQ(scheme_.Search(mpk_, pub, store, Trap("w1")).ordinals, std::vector<uint64_t>{a});
  EXPECT_EQ(scheme_.Search(mpk_, pub, store, Trap("w2")).ordinals, std::vector<uint64_t>{b});
}

TEST_F(ScratchTest, Rotation) {
  auto [old_pri, old_pub] = scheme_.InitStructure(mpk_);
  store::TagStore store(BackendId::kScratch);
  std::vector<uint64_t> before, after;
  for (int i = 0; i < 3; ++i) {
    before.push_back(store.Insert(scheme_.Encrypt(mpk_, AsBytes("w"), old_pri).ToRecord(old_pub)));
  }
  auto [new_pri, new_pub] = scheme_.RotateStructure(mpk_);
  EXPECT_FALSE(new_pub.head == old_pub.head);
  for (int i = 0; i < 2; ++i) {
    after.push_back(store.Insert(scheme_.Encrypt(mpk_, AsBytes("w"), new_pri).ToRecord(new_pub)));
  }
  const Trapdoor t = Trap("w");
  EXPECT_EQ(scheme_.Search(mpk_, old_pub, store, t).ordinals, before);
  EXPECT_EQ(scheme_.Search(mpk_, new_pub, store, t).ordinals, after);
}

// Property: for random corpora, search returns the encryption-time log and
// uses exactly one pairing per match plus the anchor.
TEST_F(ScratchTest, SearchMatchesLogWithExactPairingBudget) {
  Rng script = Rng::FromSeed(33);
  for (int trial = 0; trial < 3; ++trial) {
    std::vector<std::pair<StructurePrivate, StructurePublic>> structs;
    for (int s = 0; s < 3; ++s) structs.push_back(scheme_.InitStructure(mpk_));
    store::TagStore store(BackendId::kScratch);
    std::map<std::pair<size_t, std::string>, std::vector<uint64_t>> truth;
    for (int i = 0; i < 60; ++i) {
      const size_t s = script.Uniform(structs.size());
      const std::string kw = "k" + std::to_string(script.Uniform(6));
      auto& [pri, pub] = structs[s];
      truth[{s, kw}].push_back(store.Insert(scheme_.Encrypt(mpk_, AsBytes(kw), pri).ToRecord(pub)));
    }
    for (size_t s = 0; s < structs.size(); ++s) {
      for (int k = 0; k < 7; ++k) {
        const std::string kw = "k" + std::to_string(k);
        const Trapdoor t = Trap(kw);
        grp_.Reset();
        const auto r = scheme_.Search(mpk_, structs[s].second, store, t);
        const auto it = truth.find({s, kw});
        const auto expected = it == truth.end() ? std::vector<uint64_t>{} : it->second;
        ASSERT_EQ(r.ordinals, expected);
        ASSERT_EQ(grp_.Snapshot().pairings, expected.size() + 1);
      }
    }
  }
}

TEST_F(ScratchTest, RecordRoundTrip) {
  auto [pri, pub] = scheme_.InitStructure(mpk_);
  const Ciphertext ct = scheme_.Encrypt(mpk_, AsBytes("w"), pri);
  const auto rec = ct.ToRecord(pub);
  EXPECT_EQ(rec.label, pub.Encode());
  const auto back = Ciphertext::FromRecord(rec);
  EXPECT_EQ(back.c1, ct.c1);
  EXPECT_EQ(back.c2, ct.c2);
  EXPECT_EQ(back.c3, ct.c3);
  EXPECT_EQ(MasterPublicKey::Decode(mpk_.Encode()).p, mpk_.p);
  EXPECT_EQ(MasterSecretKey::Decode(msk_.Encode()).s, msk_.s);
  EXPECT_THROW(MasterPublicKey::Decode(MasterPublicKey{G1()}.Encode()), DecodeError);
  EXPECT_THROW(MasterSecretKey::Decode(MasterSecretKey{Scalar()}.Encode()), DecodeError);
}

TEST_F(ScratchTest, SelfCycleIsMalformed) {
  auto [pri, pub] = scheme_.InitStructure(mpk_);
  const auto store = testing::BuildCycleStore(grp_, rng_, msk_, pub, AsBytes("w"), 1);
  grp_.Reset();
  EXPECT_THROW(scheme_.Search(mpk_, pub, store, Trap("w")), MalformedStoreError);
  EXPECT_LE(grp_.Snapshot().pairings - 1, store.size());
}

TEST_F(ScratchTest, LongCycleIsMalformed) {
  auto [pri, pub] = scheme_.InitStructure(mpk_);
  const auto store = testing::BuildCycleStore(grp_, rng_, msk_, pub, AsBytes("w"), 7, 5);
  grp_.Reset();
  EXPECT_THROW(scheme_.Search(mpk_, pub, store, Trap("w")), MalformedStoreError);
  EXPECT_LE(grp_.Snapshot().pairings - 1, store.size());
}

TEST_F(ScratchTest, DuplicateTagsAreMalformed) {
  auto [pri, pub] = scheme_.InitStructure(mpk_);
  const auto first = scheme_.Encrypt(mpk_, AsBytes("w"), pri).ToRecord(pub);
  auto second = first;
  second.tag.back() ^= 1;
  store::TagStore twin(BackendId::kScratch);
  twin.Insert(first);
  twin.Insert(second);

  // Rewrite the second tag to equal the first and drop the checksum, which
  // is the only way such a store can exist.
  Bytes raw = twin.Serialize();
  const size_t second_tag = store::TagStore::kHeaderBytes + 4 + first.tag.size() + 4 +
                            first.payload.size() + 4 + first.label.size() + 4;
  std::copy(first.tag.begin(), first.tag.end(), raw.begin() + second_tag);
  raw[9] = 0;
  raw.resize(raw.size() - 4);
  const auto bad = store::TagStore::Deserialize(raw);
  EXPECT_THROW(scheme_.Search(mpk_, pub, bad, Trap("w")), MalformedStoreError);
}

TEST_F(ScratchTest, GarbledPayloadIsMalformed) {
  auto [pri, pub] = scheme_.InitStructure(mpk_);
  auto rec = scheme_.Encrypt(mpk_, AsBytes("w"), pri).ToRecord(pub);
  rec.payload.resize(10);
  store::TagStore store(BackendId::kScratch);
  store.Insert(rec);
  EXPECT_THROW(scheme_.Search(mpk_, pub, store, Trap("w")), MalformedStoreError);
}

TEST_F(ScratchTest, PrivateDeserializeRejectsUnsorted) {
  auto [pri, pub] = scheme_.InitStructure(mpk_);
  scheme_.Encrypt(mpk_, AsBytes("a"), pri);
  scheme_.Encrypt(mpk_, AsBytes("b"), pri);
  Bytes b = pri.Serialize();
  // Keywords sit after u and the count: swap their single bytes.
  const size_t first = group::kScalarBytes + 4 + 4;
  const size_t second = first + 1 + group::kGtBytes + 4;
  std::swap(b[first], b[second]);
  EXPECT_THROW(StructurePrivate::Deserialize(b), DecodeError);
}

}  // namespace
}  // namespace spchs::scratch
