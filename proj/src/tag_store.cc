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

#include <zlib.h>

#include <algorithm>
#include <cstring>

namespace spchs {

std::string BackendName(BackendId id) {
  switch (id) {
    case BackendId::kScratch:
      return "scratch";
    case BackendId::kGeneric:
      return "generic";
    case BackendId::kPeks:
      return "peks";
  }
  return "unknown";
}

BackendId ParseBackendName(std::string_view name) {
  if (name == "scratch") return BackendId::kScratch;
  if (name == "generic") return BackendId::kGeneric;
  if (name == "peks") return BackendId::kPeks;
  throw ConfigError("unknown backend '" + std::string(name) + "'");
}

BackendId BackendFromByte(uint8_t b) {
  if (b < 0x01 || b > 0x03) throw DecodeError("unknown backend identifier");
  return static_cast<BackendId>(b);
}

}  // namespace spchs

namespace spchs::store {
namespace {

int CompareBytes(BytesView a, BytesView b) {
  const size_t n = std::min(a.size(), b.size());
  if (n != 0) {
    if (int c = std::memcmp(a.data(), b.data(), n); c != 0) return c < 0 ? -1 : 1;
  }
  if (a.size() == b.size()) return 0;
  return a.size() < b.size() ? -1 : 1;
}

constexpr uint8_t kFlagCrc = 0x01;

uint32_t Crc32(BytesView data) {
  uLong crc = crc32(0L, Z_NULL, 0);
  // zlib takes uInt lengths; chunk to stay within range.
  size_t off = 0;
  while (off < data.size()) {
    const size_t n = std::min<size_t>(data.size() - off, 1u << 30);
    crc = crc32(crc, data.data() + off, static_cast<uInt>(n));
    off += n;
  }
  return static_cast<uint32_t>(crc);
}

}  // namespace

size_t TagStore::LowerBound(BytesView tag) const {
  size_t lo = 0, hi = index_.size();
  while (lo < hi) {
    const size_t mid = lo + (hi - lo) / 2;
    if (CompareBytes(records_[index_[mid]].tag, tag) < 0) {
      lo = mid + 1;
    } else {
      hi = mid;
    }
  }
  return lo;
}

uint64_t TagStore::Insert(Record record) {
  if (record.tag.empty()) throw std::invalid_argument("record tag must be nonempty");
  const size_t pos = LowerBound(record.tag);
  if (pos < index_.size() && CompareBytes(records_[index_[pos]].tag, record.tag) == 0) {
    throw DuplicateTagError("tag already present in store");
  }
  const uint64_t ordinal = records_.size();
  records_.push_back(std::move(record));
  index_.insert(index_.begin() + static_cast<std::ptrdiff_t>(pos), ordinal);
  return ordinal;
}

Lookup TagStore::FindByTag(BytesView tag) const {
  Lookup out;
  size_t lo = 0, hi = index_.size();
  while (lo < hi) {
    const size_t mid = lo + (hi - lo) / 2;
    const int c = CompareBytes(records_[index_[mid]].tag, tag);
    ++out.comparisons;
    if (c == 0) {
      out.ordinal = index_[mid];
      out.ambiguous =
          !duplicate_tags_.empty() && duplicate_tags_.contains(Bytes(tag.begin(), tag.end()));
      return out;
    }
    if (c < 0) {
      lo = mid + 1;
    } else {
      hi = mid;
    }
  }
  return out;
}

std::vector<Bytes> TagStore::Labels() const {
  std::vector<Bytes> out;
  std::set<Bytes> seen;
  for (const auto& r : records_) {
    if (seen.insert(r.label).second) out.push_back(r.label);
  }
  return out;
}

// Layout (integers little-endian):
//   magic "SPCHSDB1" | backend u8 | flags u8 | reserved u16 | count u32
//   count x (u32 len, tag | u32 len, payload | u32 len, label)
//   [crc32 u32 of the record region, present when flags & 1]
Bytes TagStore::Serialize() const {
  Bytes out(kMagic, kMagic + 8);
  out.push_back(static_cast<uint8_t>(backend_));
  out.push_back(records_.empty() ? 0 : kFlagCrc);
  out.push_back(0);
  out.push_back(0);
  if (records_.size() > UINT32_MAX) throw std::length_error("store too large to persist");
  AppendU32(out, static_cast<uint32_t>(records_.size()));
  const size_t region_start = out.size();
  for (const auto& r : records_) {
    AppendU32(out, static_cast<uint32_t>(r.tag.size()));
    Append(out, r.tag);
    AppendU32(out, static_cast<uint32_t>(r.payload.size()));
    Append(out, r.payload);
    AppendU32(out, static_cast<uint32_t>(r.label.size()));
    Append(out, r.label);
  }
  if (!records_.empty()) {
    AppendU32(out, Crc32(BytesView(out).subspan(region_start)));
  }
  return out;
}

TagStore TagStore::Deserialize(BytesView data) {
  ByteReader in(data);
  if (data.size() < kHeaderBytes) throw DecodeError("store file shorter than its header");
  auto magic = in.Take(8);
  if (std::memcmp(magic.data(), kMagic, 8) != 0) throw DecodeError("bad store magic");
  TagStore store(BackendFromByte(in.U8()));
  const uint8_t flags = in.U8();
  if ((flags & ~kFlagCrc) != 0) throw DecodeError("unknown store flags");
  if (in.U8() != 0 || in.U8() != 0) throw DecodeError("reserved header bytes must be zero");
  const uint32_t count = in.U32();

  const size_t region_start = in.position();
  store.records_.reserve(std::min<size_t>(count, in.remaining() / 12));
  for (uint32_t i = 0; i < count; ++i) {
    Record r;
    auto tag = in.Take(in.U32());
    r.tag.assign(tag.begin(), tag.end());
    auto payload = in.Take(in.U32());
    r.payload.assign(payload.begin(), payload.end());
    auto label = in.Take(in.U32());
    r.label.assign(label.begin(), label.end());
    if (r.tag.empty()) throw DecodeError("store record with empty tag");
    store.records_.push_back(std::move(r));
  }
  const size_t region_end = in.position();
  if (flags & kFlagCrc) {
    const uint32_t expected = in.U32();
    if (Crc32(data.subspan(region_start, region_end - region_start)) != expected) {
      throw DecodeError("store checksum mismatch");
    }
  }
  in.ExpectEnd();

  store.index_.resize(store.records_.size());
  for (size_t i = 0; i < store.index_.size(); ++i) store.index_[i] = i;
  std::stable_sort(store.index_.begin(), store.index_.end(), [&](uint64_t a, uint64_t b) {
    return CompareBytes(store.records_[a].tag, store.records_[b].tag) < 0;
  });
  for (size_t i = 1; i < store.index_.size(); ++i) {
    const auto& prev = store.records_[store.index_[i - 1]].tag;
    if (CompareBytes(prev, store.records_[store.index_[i]].tag) == 0) {
      store.duplicate_tags_.insert(prev);
    }
  }
  return store;
}

void TagStore::Persist(const std::string& path) const { WriteFile(path, Serialize()); }

TagStore TagStore::Load(const std::string& path) { return Deserialize(ReadFile(path)); }

}  // namespace spchs::store
