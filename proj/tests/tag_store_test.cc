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

#include "spchs/tag_store.h"

#include <algorithm>
#include <cmath>
#include <filesystem>

#include "gtest/gtest.h"
#include "spchs/rng.h"

namespace spchs::store {
namespace {

Record MakeRecord(Rng& rng, size_t tag_len = 32) {
  Record r{Bytes(tag_len), Bytes(1 + rng.Uniform(40)), Bytes(rng.Uniform(8))};
  rng.Fill(r.tag);
  rng.Fill(r.payload);
  rng.Fill(r.label);
  return r;
}

size_t CeilLog2(size_t x) {
  size_t bits = 0;
  while ((size_t{1} << bits) < x) ++bits;
  return bits;
}

// Reflected CRC-32 (polynomial 0xEDB88320), bit by bit.
uint32_t ReferenceCrc32(BytesView data) {
  uint32_t crc = 0xffffffffu;
  for (uint8_t b : data) {
    crc ^= b;
    for (int k = 0; k < 8; ++k) crc = (crc >> 1) ^ (0xedb88320u & (0u - (crc & 1u)));
  }
  return ~crc;
}

void PutU32(Bytes& out, uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<uint8_t>(v >> (8 * i)));
}

TEST(TagStoreTest, InsertThenFind) {
  Rng rng = Rng::FromSeed(1);
  TagStore store(BackendId::kScratch);
  const Record r = MakeRecord(rng);
  EXPECT_EQ(store.Insert(r), 0u);
  const auto hit = store.FindByTag(r.tag);
  ASSERT_TRUE(hit.ordinal.has_value());
  EXPECT_EQ(store.at(*hit.ordinal), r);
  EXPECT_FALSE(hit.ambiguous);
}

TEST(TagStoreTest, EmptyStoreLookup) {
  TagStore store(BackendId::kScratch);
  const auto hit = store.FindByTag(ToBytes("anything"));
  EXPECT_FALSE(hit.ordinal);
  EXPECT_EQ(hit.comparisons, 0u);
}

TEST(TagStoreTest, DuplicateAndEmptyTagsRejected) {
  Rng rng = Rng::FromSeed(2);
  TagStore store(BackendId::kScratch);
  Record r = MakeRecord(rng);
  store.Insert(r);
  r.payload.push_back(1);
  EXPECT_THROW(store.Insert(r), DuplicateTagError);
  EXPECT_THROW(store.Insert(Record{{}, {1}, {}}), std::invalid_argument);
  EXPECT_EQ(store.size(), 1u);
}

TEST(TagStoreTest, DenseOrdinals) {
  Rng rng = Rng::FromSeed(3);
  TagStore store(BackendId::kGeneric);
  for (uint64_t i = 0; i < 1000; ++i) ASSERT_EQ(store.Insert(MakeRecord(rng)), i);
}

TEST(TagStoreTest, LookupCostIsLogarithmic) {
  Rng rng = Rng::FromSeed(4);
  TagStore store(BackendId::kScratch);
  std::vector<Bytes> tags;
  for (int i = 0; i < 1024; ++i) {
    tags.push_back(MakeRecord(rng).tag);
    store.Insert({tags.back(), {0}, {}});
  }
  size_t worst = 0;
  for (size_t i = 0; i < tags.size(); ++i) {
    const auto hit = store.FindByTag(tags[i]);
    ASSERT_EQ(hit.ordinal, i);
    worst = std::max(worst, hit.comparisons);
  }
  EXPECT_LE(worst, 11u);
  for (int i = 0; i < 200; ++i) {
    const auto miss = store.FindByTag(MakeRecord(rng).tag);
    ASSERT_FALSE(miss.ordinal);
    ASSERT_LE(miss.comparisons, 11u);
  }
}

// Property: after random interleavings of inserts and save/load cycles, every
// record is found at its ordinal and lookups stay within ceil(log2 n) + 1.
TEST(TagStoreTest, IndexAgreesWithRecordsAcrossReloads) {
  Rng rng = Rng::FromSeed(5);
  for (int trial = 0; trial < 20; ++trial) {
    TagStore store(BackendId::kScratch);
    std::vector<Record> expected;
    const size_t steps = 1 + rng.Uniform(300);
    for (size_t s = 0; s < steps; ++s) {
      if (rng.Uniform(25) == 0) store = TagStore::Deserialize(store.Serialize());
      expected.push_back(MakeRecord(rng, 1 + rng.Uniform(48)));
      if (store.FindByTag(expected.back().tag).ordinal) {
        expected.pop_back();
        continue;
      }
      store.Insert(expected.back());
    }
    store = TagStore::Deserialize(store.Serialize());
    ASSERT_EQ(store.records(), expected);
    const size_t bound = CeilLog2(expected.size()) + 1;
    for (size_t i = 0; i < expected.size(); ++i) {
      const auto hit = store.FindByTag(expected[i].tag);
      ASSERT_EQ(hit.ordinal, i);
      ASSERT_LE(hit.comparisons, bound);
    }
  }
}

TEST(TagStoreTest, SerializedLayout) {
  TagStore store(BackendId::kGeneric);
  store.Insert({{0xaa, 0xbb}, {0x01}, {0x7e, 0x7f, 0x80}});
  store.Insert({{0x05}, {}, {}});

  Bytes expected = ToBytes("SPCHSDB1");
  expected.insert(expected.end(), {0x02, 0x01, 0x00, 0x00});
  PutU32(expected, 2);
  Bytes region;
  PutU32(region, 2);
  region.insert(region.end(), {0xaa, 0xbb});
  PutU32(region, 1);
  region.push_back(0x01);
  PutU32(region, 3);
  region.insert(region.end(), {0x7e, 0x7f, 0x80});
  PutU32(region, 1);
  region.push_back(0x05);
  PutU32(region, 0);
  PutU32(region, 0);
  expected.insert(expected.end(), region.begin(), region.end());
  PutU32(expected, ReferenceCrc32(region));

  EXPECT_EQ(store.Serialize(), expected);
}

TEST(TagStoreTest, EmptyStoreIsHeaderOnly) {
  TagStore store(BackendId::kScratch);
  const Bytes file = store.Serialize();
  ASSERT_EQ(file.size(), TagStore::kHeaderBytes);
  Bytes expected = ToBytes("SPCHSDB1");
  expected.insert(expected.end(), {0x01, 0x00, 0x00, 0x00, 0, 0, 0, 0});
  EXPECT_EQ(file, expected);
  const auto back = TagStore::Deserialize(file);
  EXPECT_TRUE(back.empty());
  EXPECT_EQ(back.backend(), BackendId::kScratch);
  EXPECT_EQ(back.Serialize(), file);
}

TEST(TagStoreTest, PersistLoadRoundTrip) {
  Rng rng = Rng::FromSeed(6);
  TagStore store(BackendId::kScratch);
  for (int i = 0; i < 50; ++i) store.Insert(MakeRecord(rng));
  const auto path = (std::filesystem::temp_directory_path() / "spchs_tag_store_test.db").string();
  store.Persist(path);
  const auto back = TagStore::Load(path);
  EXPECT_EQ(back.records(), store.records());
  EXPECT_EQ(ReadFile(path), store.Serialize());
  EXPECT_EQ(back.Serialize(), store.Serialize());
  std::filesystem::remove(path);
  EXPECT_THROW(TagStore::Load(path), IoError);
}

TEST(TagStoreTest, RejectsEveryTruncation) {
  Rng rng = Rng::FromSeed(7);
  TagStore store(BackendId::kScratch);
  for (int i = 0; i < 5; ++i) store.Insert(MakeRecord(rng));
  const Bytes file = store.Serialize();
  for (size_t len = 0; len < file.size(); ++len) {
    ASSERT_THROW(TagStore::Deserialize(BytesView(file).first(len)), DecodeError) << len;
  }
  Bytes longer = file;
  longer.push_back(0);
  EXPECT_THROW(TagStore::Deserialize(longer), DecodeError);
}

TEST(TagStoreTest, RejectsCorruption) {
  Rng rng = Rng::FromSeed(8);
  TagStore store(BackendId::kScratch);
  for (int i = 0; i < 5; ++i) store.Insert(MakeRecord(rng));
  const Bytes file = store.Serialize();

  Bytes bad_magic = file;
  bad_magic[3] ^= 1;
  EXPECT_THROW(TagStore::Deserialize(bad_magic), DecodeError);

  Bytes bad_backend = file;
  bad_backend[8] = 0x77;
  EXPECT_THROW(TagStore::Deserialize(bad_backend), DecodeError);

  Bytes bad_reserved = file;
  bad_reserved[10] = 1;
  EXPECT_THROW(TagStore::Deserialize(bad_reserved), DecodeError);

  for (size_t pos = TagStore::kHeaderBytes; pos < file.size(); ++pos) {
    Bytes flipped = file;
    flipped[pos] ^= 0x40;
    ASSERT_THROW(TagStore::Deserialize(flipped), DecodeError) << pos;
  }
}

TEST(TagStoreTest, LoadedDuplicatesAreFlaggedAmbiguous) {
  Bytes file = ToBytes("SPCHSDB1");
  file.insert(file.end(), {0x01, 0x00, 0x00, 0x00});
  PutU32(file, 3);
  for (uint8_t t : {0x10, 0x20, 0x10}) {
    PutU32(file, 1);
    file.push_back(t);
    PutU32(file, 0);
    PutU32(file, 0);
  }
  const auto store = TagStore::Deserialize(file);
  EXPECT_TRUE(store.FindByTag(Bytes{0x10}).ambiguous);
  EXPECT_FALSE(store.FindByTag(Bytes{0x20}).ambiguous);
}

TEST(TagStoreTest, LabelsInFirstAppearanceOrder) {
  TagStore store(BackendId::kScratch);
  store.Insert({{1}, {}, {0xb}});
  store.Insert({{2}, {}, {0xa}});
  store.Insert({{3}, {}, {0xb}});
  EXPECT_EQ(store.Labels(), (std::vector<Bytes>{{0xb}, {0xa}}));
}

TEST(BackendIdTest, Names) {
  EXPECT_EQ(ParseBackendName("scratch"), BackendId::kScratch);
  EXPECT_EQ(ParseBackendName("generic"), BackendId::kGeneric);
  EXPECT_EQ(BackendName(BackendId::kPeks), "peks");
  EXPECT_THROW(ParseBackendName("bogus"), ConfigError);
  EXPECT_THROW(BackendFromByte(0), DecodeError);
}

}  // namespace
}  // namespace spchs::store
