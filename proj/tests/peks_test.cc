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

#include <algorithm>
#include <set>

#include "gtest/gtest.h"

namespace spchs::peks {
namespace {

class PeksTest : public ::testing::Test {
 protected:
  void SetUp() override { std::tie(mpk_, msk_) = spchs_.SystemSetup(); }

  scratch::Trapdoor Trap(std::string_view kw) { return spchs_.MakeTrapdoor(msk_, AsBytes(kw)); }

  group::Group grp_;
  Rng rng_ = Rng::FromSeed(41);
  scratch::Scheme spchs_{grp_, rng_};
  Scheme peks_{grp_, rng_};
  scratch::MasterPublicKey mpk_;
  scratch::MasterSecretKey msk_;
};

TEST_F(PeksTest, TestMatchesOnlyItsKeyword) {
  const auto ct = peks_.Encrypt(mpk_, AsBytes("w"));
  EXPECT_TRUE(peks_.Test(ct, Trap("w")));
  EXPECT_FALSE(peks_.Test(ct, Trap("v")));
  EXPECT_FALSE(ct == peks_.Encrypt(mpk_, AsBytes("w")));
}

// The digest is KDF(e(g^r, T_W)), recomputed here from the trapdoor side.
TEST_F(PeksTest, DigestMatchesTrapdoorSide) {
  const auto ct = peks_.Encrypt(mpk_, AsBytes("w"));
  EXPECT_EQ(ct.b, group::Kdf(kKdfDomain, grp_.Pair(ct.a, Trap("w").t)));
}

TEST_F(PeksTest, TestCostsOnePairing) {
  const auto ct = peks_.Encrypt(mpk_, AsBytes("w"));
  const auto t = Trap("w");
  grp_.Reset();
  peks_.Test(ct, t);
  EXPECT_EQ(grp_.Snapshot().pairings, 1u);
}

TEST_F(PeksTest, SearchIsLinearScan) {
  const auto t = Trap("w");
  grp_.Reset();
  EXPECT_TRUE(peks_.Search({}, t).empty());
  EXPECT_EQ(grp_.Snapshot().pairings, 0u);

  Rng pick = Rng::FromSeed(42);
  std::vector<Ciphertext> cts;
  std::vector<uint64_t> truth;
  std::vector<size_t> slots(100);
  for (size_t i = 0; i < 100; ++i) slots[i] = i;
  std::shuffle(slots.begin(), slots.end(), pick);
  std::set<size_t> hits(slots.begin(), slots.begin() + 7);
  for (size_t i = 0; i < 100; ++i) {
    const bool match = hits.contains(i);
    cts.push_back(peks_.Encrypt(mpk_, AsBytes(match ? "w" : "f" + std::to_string(i % 9))));
    if (match) truth.push_back(i);
  }
  grp_.Reset();
  EXPECT_EQ(peks_.Search(cts, t), truth);
  EXPECT_EQ(grp_.Snapshot().pairings, 100u);
}

TEST_F(PeksTest, AllMatchCorpus) {
  std::vector<Ciphertext> cts;
  for (int i = 0; i < 12; ++i) cts.push_back(peks_.Encrypt(mpk_, AsBytes("w")));
  const auto t = Trap("w");
  grp_.Reset();
  EXPECT_EQ(peks_.Search(cts, t).size(), 12u);
  EXPECT_EQ(grp_.Snapshot().pairings, 12u);
}

TEST_F(PeksTest, RecordRoundTrip) {
  const auto ct = peks_.Encrypt(mpk_, AsBytes("w"));
  EXPECT_EQ(Ciphertext::FromRecord(ct.ToRecord()), ct);
  auto rec = ct.ToRecord();
  rec.payload.pop_back();
  EXPECT_THROW(Ciphertext::FromRecord(rec), DecodeError);
  EXPECT_THROW(Ciphertext::FromRecord({group::G1().ToBytes(), Bytes(kDigestBytes), {}}),
               DecodeError);
}

}  // namespace
}  // namespace spchs::peks
