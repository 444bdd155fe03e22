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

#include <set>

#include "gtest/gtest.h"
#include "spchs/conformance.h"

namespace spchs::ibe {
namespace {

Bytes RandomId(Rng& rng) {
  Bytes id(1 + rng.Uniform(24));
  rng.Fill(id);
  return id;
}

class IbeTest : public ::testing::Test {
 protected:
  group::Group grp_;
  Rng rng_ = Rng::FromSeed(51);
  RoIbkem kem_{grp_, rng_};
  HashMaskIbe ibe_{grp_, rng_};
};

TEST_F(IbeTest, KemRoundTripAndDeterminism) {
  auto [pk, sk] = kem_.Setup();
  for (int i = 0; i < 20; ++i) {
    const Bytes id = RandomId(rng_);
    const auto r = kem_.SampleRandomness();
    const auto out = kem_.Encaps(pk, id, r);
    const auto again = kem_.Encaps(pk, id, r);
    ASSERT_EQ(out.key, again.key);
    ASSERT_EQ(out.encapsulation.c, again.encapsulation.c);
    ASSERT_EQ(kem_.Decaps(kem_.Extract(sk, id), out.encapsulation), out.key);
    ASSERT_EQ(kem_.Fim(pk, id, r), out.key);
  }
}

// Malleability from the definition: e(g^r, H(ID')^s) = e(P, H(ID'))^r, with
// the right side built from pk and r only.
TEST_F(IbeTest, CrossIdentityDecapsulationIsFim) {
  auto [pk, sk] = kem_.Setup();
  for (int i = 0; i < 100; ++i) {
    const Bytes id = RandomId(rng_);
    const Bytes other = RandomId(rng_);
    const auto r = kem_.SampleRandomness();
    const auto enc = kem_.Encaps(pk, id, r).encapsulation;
    ASSERT_EQ(kem_.Decaps(kem_.Extract(sk, other), enc), kem_.Fim(pk, other, r));
    const auto h = grp_.HashToG2(other, RoIbkem::kIdentityDst);
    ASSERT_EQ(kem_.FimElement(pk, other, r), grp_.Pow(grp_.Pair(pk.p, h), r));
  }
}

TEST_F(IbeTest, FimCollisionFreeOnSample) {
  auto [pk, sk] = kem_.Setup();
  std::set<Bytes> seen;
  for (int i = 0; i < 1000; ++i) {
    const auto k = kem_.Fim(pk, RandomId(rng_), kem_.SampleRandomness());
    ASSERT_TRUE(seen.insert(Bytes(k.begin(), k.end())).second) << i;
  }
}

TEST_F(IbeTest, DecapsRejectsIdentityEncapsulation) {
  auto [pk, sk] = kem_.Setup();
  EXPECT_FALSE(kem_.Decaps(kem_.Extract(sk, AsBytes("id")), {group::G1()}).has_value());
  EXPECT_THROW(RoIbkem::DecodeRandomness(group::Scalar().ToBytes()), DecodeError);
}

TEST_F(IbeTest, IbeRoundTrip) {
  auto [pk, sk] = ibe_.Setup();
  for (int i = 0; i < 20; ++i) {
    const Bytes id = RandomId(rng_);
    Digest m;
    rng_.Fill(m);
    const auto ct = ibe_.Encrypt(pk, id, m);
    ASSERT_EQ(ibe_.Decrypt(ibe_.Extract(sk, id), ct), m);
    const auto encoded = HashMaskIbe::EncodeCiphertext(ct);
    ASSERT_EQ(encoded.size(), HashMaskIbe::kCiphertextBytes);
    ASSERT_EQ(ibe_.Decrypt(ibe_.Extract(sk, id), HashMaskIbe::DecodeCiphertext(encoded)), m);
  }
}

TEST_F(IbeTest, IbeFreshAndWrongIdentity) {
  auto [pk, sk] = ibe_.Setup();
  Digest m;
  rng_.Fill(m);
  const auto a = ibe_.Encrypt(pk, AsBytes("alice"), m);
  const auto b = ibe_.Encrypt(pk, AsBytes("alice"), m);
  EXPECT_NE(HashMaskIbe::EncodeCiphertext(a), HashMaskIbe::EncodeCiphertext(b));
  const auto wrong = ibe_.Decrypt(ibe_.Extract(sk, AsBytes("bob")), a);
  ASSERT_TRUE(wrong.has_value());
  EXPECT_NE(*wrong, m);
  EXPECT_FALSE(ibe_.Decrypt(ibe_.Extract(sk, AsBytes("alice")), {group::G1(), m}).has_value());
  EXPECT_THROW(HashMaskIbe::DecodeCiphertext(Bytes(79)), DecodeError);
}

TEST_F(IbeTest, ConformanceSuitePasses) {
  const auto report = CheckBackends(kem_, ibe_, rng_);
  EXPECT_TRUE(report.ok()) << report.Summary();
  EXPECT_EQ(report.checked.size(), 5u);
}

}  // namespace
}  // namespace spchs::ibe
