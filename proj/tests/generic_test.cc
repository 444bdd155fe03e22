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

#include "spchs/generic.h"

#include <algorithm>
#include <map>

#include "gtest/gtest.h"

namespace spchs::generic {
namespace {

using ibe::HashMaskIbe;
using ibe::RoIbkem;

// IBKEM whose randomness is pinned to 1: still consistent and malleable, but
// fim(ID, r) no longer depends on r.
class PinnedRandomnessKem : public RoIbkem {
 public:
  using RoIbkem::RoIbkem;

  Key Fim(const PublicKey& pk, BytesView id, const Randomness&) {
    return RoIbkem::Fim(pk, id, group::Scalar::FromU64(1));
  }
  ibe::Encapsulated<Key, Encapsulation> Encaps(const PublicKey& pk, BytesView id,
                                               const Randomness&) {
    return RoIbkem::Encaps(pk, id, group::Scalar::FromU64(1));
  }
};

// IBE that silently drops the second half of every message.
class TruncatingIbe : public HashMaskIbe {
 public:
  using HashMaskIbe::HashMaskIbe;

  Ciphertext Encrypt(const PublicKey& pk, BytesView id, const Message& m) {
    Message cut = m;
    std::fill(cut.begin() + 16, cut.end(), 0);
    return HashMaskIbe::Encrypt(pk, id, cut);
  }
};

static_assert(ibe::IdentityKem<PinnedRandomnessKem>);
static_assert(ibe::IdentityEncryption<TruncatingIbe>);

class GenericTest : public ::testing::Test {
 protected:
  void SetUp() override { std::tie(mpk_, msk_) = scheme_.SystemSetup(); }

  RoScheme::Trapdoor Trap(std::string_view kw) { return scheme_.MakeTrapdoor(msk_, AsBytes(kw)); }

  group::Group grp_;
  Rng rng_ = Rng::FromSeed(61);
  RoIbkem kem_{grp_, rng_};
  HashMaskIbe ibe_{grp_, rng_};
  RoScheme scheme_{kem_, ibe_, rng_};
  RoScheme::MasterPublicKey mpk_;
  RoScheme::MasterSecretKey msk_;
};

TEST_F(GenericTest, ConformingBackendsPass) {
  const auto report = ibe::CheckBackends(kem_, ibe_, rng_, {20, 1000});
  EXPECT_TRUE(report.ok()) << report.Summary();
  EXPECT_NO_THROW(InstantiateChecked(kem_, ibe_, rng_, {4, 16}));
}

TEST_F(GenericTest, PinnedRandomnessFailsCollisionFreeness) {
  PinnedRandomnessKem broken(grp_, rng_);
  const auto report = ibe::CheckBackends(broken, ibe_, rng_, {10, 1000});
  EXPECT_TRUE(report.Failed(ibe::kLawCollisionFree)) << report.Summary();
  EXPECT_FALSE(report.Failed(ibe::kLawKemConsistency));
  EXPECT_FALSE(report.Failed(ibe::kLawMalleability));
  EXPECT_FALSE(report.Failed(ibe::kLawIbeConsistency));
  EXPECT_THROW(InstantiateChecked(broken, ibe_, rng_, {10, 1000}), ConformanceError);
}

TEST_F(GenericTest, TruncatingIbeFailsRoundTrip) {
  TruncatingIbe broken(grp_, rng_);
  const auto report = ibe::CheckBackends(kem_, broken, rng_, {10, 50});
  EXPECT_TRUE(report.Failed(ibe::kLawIbeConsistency)) << report.Summary();
  EXPECT_EQ(report.failures.size(), 1u);
  EXPECT_THROW(InstantiateChecked(kem_, broken, rng_, {10, 50}), ConformanceError);
}

TEST_F(GenericTest, EmptyStoreSearch) {
  auto [pri, pub] = scheme_.InitStructure(mpk_);
  store::TagStore store(BackendId::kGeneric);
  const auto r = scheme_.Search(mpk_, pub, store, Trap("w"));
  EXPECT_TRUE(r.ordinals.empty());
  EXPECT_EQ(r.decapsulations, 1u);
  EXPECT_EQ(r.decryptions, 0u);
}

TEST_F(GenericTest, AnchorIsDecapsulationOfPublicPart) {
  auto [pri, pub] = scheme_.InitStructure(mpk_);
  const auto ct = scheme_.Encrypt(mpk_, AsBytes("w"), pri);
  EXPECT_EQ(ct.tag, kem_.Decaps(kem_.Extract(msk_.kem, AsBytes("w")), pub.head));
  EXPECT_EQ(ct.tag, kem_.Fim(mpk_.kem, AsBytes("w"), pri.u));
}

TEST_F(GenericTest, CorpusMatchesLog) {
  Rng script = Rng::FromSeed(62);
  std::vector<std::pair<RoScheme::StructurePrivate, RoScheme::StructurePublic>> structs;
  for (int s = 0; s < 5; ++s) structs.push_back(scheme_.InitStructure(mpk_));
  std::vector<std::pair<size_t, int>> plan;
  for (size_t s = 0; s < 5; ++s) {
    for (int k = 0; k < 10; ++k) {
      const size_t count = script.Uniform(9);
      for (size_t c = 0; c < count; ++c) plan.push_back({s, k});
    }
  }
  std::shuffle(plan.begin(), plan.end(), script);

  store::TagStore store(BackendId::kGeneric);
  std::map<std::pair<size_t, int>, std::vector<uint64_t>> truth;
  for (const auto& [s, k] : plan) {
    auto& [pri, pub] = structs[s];
    const auto ct = scheme_.Encrypt(mpk_, AsBytes("kw" + std::to_string(k)), pri);
    truth[{s, k}].push_back(store.Insert(ct.ToRecord(pub)));
  }
  for (int k = 0; k < 10; ++k) {
    const auto t = Trap("kw" + std::to_string(k));
    for (size_t s = 0; s < 5; ++s) {
      const auto r = scheme_.Search(mpk_, structs[s].second, store, t);
      const auto it = truth.find({s, k});
      const auto expected = it == truth.end() ? std::vector<uint64_t>{} : it->second;
      ASSERT_EQ(r.ordinals, expected) << s << "/" << k;
      ASSERT_EQ(r.decapsulations, 1u);
      ASSERT_EQ(r.decryptions, expected.size());
    }
  }
}

// Any anchor keyword gives the same encapsulation g^u, so retrieval does not
// depend on the reserved keyword.
TEST_F(GenericTest, AnchorKeywordIsImmaterial) {
  auto [pri, pub] = scheme_.InitStructure(mpk_);
  store::TagStore store(BackendId::kGeneric);
  std::vector<uint64_t> truth;
  for (int i = 0; i < 4; ++i) {
    truth.push_back(store.Insert(scheme_.Encrypt(mpk_, AsBytes("w"), pri).ToRecord(pub)));
  }
  for (const char* anchor : {"w", "something-else", ""}) {
    const RoScheme::StructurePublic alt{kem_.Encaps(mpk_.kem, AsBytes(anchor), pri.u).encapsulation};
    EXPECT_EQ(scheme_.Search(mpk_, alt, store, Trap("w")).ordinals, truth) << anchor;
  }
}

TEST_F(GenericTest, RotationSeparatesChains) {
  auto [old_pri, old_pub] = scheme_.InitStructure(mpk_);
  store::TagStore store(BackendId::kGeneric);
  const auto a = store.Insert(scheme_.Encrypt(mpk_, AsBytes("w"), old_pri).ToRecord(old_pub));
  auto [new_pri, new_pub] = scheme_.RotateStructure(mpk_);
  const auto b = store.Insert(scheme_.Encrypt(mpk_, AsBytes("w"), new_pri).ToRecord(new_pub));
  EXPECT_EQ(scheme_.Search(mpk_, old_pub, store, Trap("w")).ordinals, std::vector<uint64_t>{a});
  EXPECT_EQ(scheme_.Search(mpk_, new_pub, store, Trap("w")).ordinals, std::vector<uint64_t>{b});
}

TEST_F(GenericTest, CycleIsMalformed) {
  auto [pri, pub] = scheme_.InitStructure(mpk_);
  const auto t = Trap("w");
  std::vector<Digest> tags = {*kem_.Decaps(t.kem, pub.head)};
  for (int i = 1; i < 4; ++i) {
    Digest d;
    rng_.Fill(d);
    tags.push_back(d);
  }
  store::TagStore store(BackendId::kGeneric);
  for (size_t i = 0; i < tags.size(); ++i) {
    RoScheme::Ciphertext ct{tags[i], ibe_.Encrypt(mpk_.ibe, AsBytes("w"), tags[(i + 1) % 4])};
    store.Insert(ct.ToRecord(pub));
  }
  EXPECT_THROW(scheme_.Search(mpk_, pub, store, t), MalformedStoreError);
}

TEST_F(GenericTest, PrivateStateRoundTrip) {
  auto [pri, pub] = scheme_.InitStructure(mpk_);
  for (const char* kw : {"b", "a", "b"}) scheme_.Encrypt(mpk_, AsBytes(kw), pri);
  const Bytes b = pri.Serialize();
  const auto back = RoScheme::StructurePrivate::Deserialize(b);
  EXPECT_EQ(back.Serialize(), b);
  EXPECT_EQ(back.pointers, pri.pointers);
  EXPECT_THROW(RoScheme::StructurePrivate::Deserialize(BytesView(b).first(b.size() - 1)),
               DecodeError);
}

}  // namespace
}  // namespace spchs::generic
