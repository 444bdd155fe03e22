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

#include "spchs/group.h"

#include <set>

#include "gtest/gtest.h"

namespace spchs::group {
namespace {

class GroupTest : public ::testing::Test {
 protected:
  Group grp_;
  Rng rng_ = Rng::FromSeed(11);
};

TEST_F(GroupTest, GeneratorPairingIsGt) {
  EXPECT_EQ(grp_.Pair(G1::Generator(), G2::Generator()), GtGenerator());
  EXPECT_FALSE(GtGenerator().IsOne());
}

TEST_F(GroupTest, Bilinearity) {
  const Gt base = grp_.Pair(G1::Generator(), G2::Generator());
  for (int i = 0; i < 100; ++i) {
    const Scalar x = Scalar::RandomNonzero(rng_);
    const Scalar y = Scalar::RandomNonzero(rng_);
    const Gt lhs = grp_.Pair(grp_.MulGenerator(x), grp_.MulGeneratorG2(y));
    ASSERT_EQ(lhs, grp_.Pow(base, x * y)) << i;
    ASSERT_EQ(lhs, grp_.Pair(G1::Generator(), grp_.MulGeneratorG2(x * y))) << i;
  }
}

TEST_F(GroupTest, BilinearitySymmetry) {
  const Scalar x = Scalar::RandomNonzero(rng_);
  EXPECT_EQ(grp_.Pair(grp_.MulGenerator(x), G2::Generator()),
            grp_.Pair(G1::Generator(), grp_.MulGeneratorG2(x)));
}

// Square-and-multiply must agree with plain repeated multiplication.
TEST_F(GroupTest, PowMatchesRepeatedProduct) {
  const Gt base = grp_.RandomGt(rng_);
  Gt acc;
  for (uint64_t k = 0; k < 40; ++k) {
    ASSERT_EQ(grp_.Pow(base, Scalar::FromU64(k)), acc) << k;
    acc = acc * base;
  }
}

TEST_F(GroupTest, InverseAndIdentityPairing) {
  const Gt a = grp_.RandomGt(rng_);
  EXPECT_TRUE((a * a.Inverse()).IsOne());
  EXPECT_TRUE(grp_.Pair(G1(), G2::Generator()).IsOne());
  EXPECT_TRUE(grp_.Pair(G1::Generator(), G2()).IsOne());
}

TEST_F(GroupTest, ScalarArithmetic) {
  const Scalar a = Scalar::RandomNonzero(rng_);
  EXPECT_EQ(a * a.Inverse(), Scalar::FromU64(1));
  EXPECT_EQ(Scalar::FromU64(2) + Scalar::FromU64(3), Scalar::FromU64(5));
  EXPECT_TRUE(Scalar().IsZero());
  for (int i = 0; i < 200; ++i) ASSERT_FALSE(Scalar::RandomNonzero(rng_).IsZero());
}

TEST_F(GroupTest, ScalarRejectsOutOfRange) {
  Bytes all_ones(kScalarBytes, 0xff);
  EXPECT_THROW(Scalar::FromBytes(all_ones), DecodeError);
  EXPECT_THROW(Scalar::FromBytes(Bytes(31, 0)), DecodeError);
  const Scalar a = Scalar::RandomNonzero(rng_);
  EXPECT_EQ(Scalar::FromBytes(a.ToBytes()), a);
}

TEST_F(GroupTest, HashToG2) {
  const G2 a = grp_.HashToG2(AsBytes("w"), "SPCHS-H-v1");
  EXPECT_EQ(a, grp_.HashToG2(AsBytes("w"), "SPCHS-H-v1"));
  EXPECT_NE(grp_.HashToG2(AsBytes("w1"), "SPCHS-H-v1"), grp_.HashToG2(AsBytes("w2"), "SPCHS-H-v1"));
  EXPECT_NE(a, grp_.HashToG2(AsBytes("w"), "OTHER-DST"));
  const G2 empty = grp_.HashToG2({}, "SPCHS-H-v1");
  EXPECT_FALSE(empty.IsIdentity());
  EXPECT_EQ(G2::FromBytes(empty.ToBytes()), empty);
}

TEST_F(GroupTest, HashToG2DistinctOverCorpus) {
  std::set<Bytes> seen;
  for (int i = 0; i < 2000; ++i) {
    const auto h = grp_.HashToG2(AsBytes("keyword-" + std::to_string(i)), "SPCHS-H-v1");
    ASSERT_TRUE(seen.insert(h.ToBytes()).second) << i;
  }
}

TEST_F(GroupTest, SerializationRoundTrips) {
  for (int i = 0; i < 20; ++i) {
    const Scalar k = Scalar::RandomNonzero(rng_);
    const G1 p = grp_.MulGenerator(k);
    const G2 q = grp_.MulGeneratorG2(k);
    const Gt t = grp_.RandomGt(rng_);
    ASSERT_EQ(p.ToBytes().size(), kG1Bytes);
    ASSERT_EQ(q.ToBytes().size(), kG2Bytes);
    ASSERT_EQ(t.ToBytes().size(), kGtBytes);
    ASSERT_EQ(G1::FromBytes(p.ToBytes()), p);
    ASSERT_EQ(G2::FromBytes(q.ToBytes()), q);
    ASSERT_EQ(Gt::FromBytes(t.ToBytes()), t);
    ASSERT_EQ(Gt::FromBytes(t.ToBytes()).ToBytes(), t.ToBytes());
  }
  EXPECT_EQ(G1::FromBytes(G1().ToBytes()), G1());
  EXPECT_EQ(G2::FromBytes(G2().ToBytes()), G2());
  EXPECT_EQ(Gt::FromBytes(Gt().ToBytes()), Gt());
}

TEST_F(GroupTest, DistinctGtEncodings) {
  std::set<Bytes> seen;
  for (int i = 0; i < 50; ++i) ASSERT_TRUE(seen.insert(grp_.RandomGt(rng_).ToBytes()).second);
}

TEST_F(GroupTest, DeserializeRejectsMalformed) {
  EXPECT_THROW(G1::FromBytes(Bytes(47, 0)), DecodeError);
  EXPECT_THROW(G2::FromBytes(Bytes(95, 0)), DecodeError);
  EXPECT_THROW(Gt::FromBytes(Bytes(575, 0)), DecodeError);
  // All-zero is neither a compressed point nor an element of the order-q subgroup.
  EXPECT_THROW(G1::FromBytes(Bytes(kG1Bytes, 0)), DecodeError);
  EXPECT_THROW(Gt::FromBytes(Bytes(kGtBytes, 0)), DecodeError);
  // A random field element of the full extension is almost never in GT.
  Bytes junk(kGtBytes);
  rng_.Fill(junk);
  for (size_t i = 0; i < kGtBytes; i += 48) junk[i] &= 0x0f;
  EXPECT_THROW(Gt::FromBytes(junk), DecodeError);
  Bytes g1 = grp_.MulGenerator(Scalar::RandomNonzero(rng_)).ToBytes();
  g1[0] &= 0x7f;  // clear the compression flag
  EXPECT_THROW(G1::FromBytes(g1), DecodeError);
}

TEST_F(GroupTest, Counters) {
  grp_.Reset();
  EXPECT_EQ(grp_.Snapshot(), OpCounters{});
  grp_.Pair(G1::Generator(), G2::Generator());
  EXPECT_EQ(grp_.Snapshot().pairings, 1u);
  grp_.Reset();
  for (int k = 0; k < 7; ++k) grp_.Pair(G1::Generator(), G2::Generator());
  EXPECT_EQ(grp_.Snapshot().pairings, 7u);
  const Scalar s = Scalar::FromU64(3);
  grp_.MulGenerator(s);
  grp_.Mul(G2::Generator(), s);
  grp_.Pow(GtGenerator(), s);
  grp_.HashToG2(AsBytes("x"), "D");
  const auto c = grp_.Snapshot();
  EXPECT_EQ(c.g1_muls, 1u);
  EXPECT_EQ(c.g2_muls, 1u);
  EXPECT_EQ(c.gt_exps, 1u);
  EXPECT_EQ(c.hashes, 1u);
  EXPECT_EQ(c.pairings, 7u);
}

TEST_F(GroupTest, KdfSeparatesDomains) {
  const Gt a = grp_.RandomGt(rng_);
  EXPECT_EQ(Kdf("A", a), Kdf("A", a));
  EXPECT_NE(Kdf("A", a), Kdf("B", a));
  EXPECT_NE(Kdf("A", a), Kdf("A", grp_.RandomGt(rng_)));
}

}  // namespace
}  // namespace spchs::group
