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

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "spchs/common.h"

namespace spchs {

// Which scheme produced a file. Stores and key files carry it so material
// from different backends is never mixed.
enum class BackendId : uint8_t {
  kScratch = 0x01,
  kGeneric = 0x02,
  kPeks = 0x03,
};

std::string BackendName(BackendId id);
BackendId ParseBackendName(std::string_view name);
BackendId BackendFromByte(uint8_t b);

}  // namespace spchs

namespace spchs::store {

struct Record {
  Bytes tag;      // canonical first ciphertext component
  Bytes payload;  // remaining components
  Bytes label;    // structure public part, for result labeling only

  bool operator==(const Record&) const = default;
};

struct Lookup {
  std::optional<uint64_t> ordinal;
  // Three-way key comparisons performed by the binary search.
  size_t comparisons = 0;
  // The tag is held by more than one record (only possible for loaded files).
  bool ambiguous = false;
};

// Append-only ciphertext store indexed by tag bytes. Lookups are a binary
// search over a sorted ordinal index, so a store of n records answers in at
// most ceil(log2(n+1)) comparisons.
//
// Single writer; concurrent FindByTag calls are safe when no insert runs.
class TagStore {
 public:
  static constexpr char kMagic[9] = "SPCHSDB1";
  static constexpr size_t kHeaderBytes = 16;

  explicit TagStore(BackendId backend) : backend_(backend) {}

  BackendId backend() const { return backend_; }
  size_t size() const { return records_.size(); }
  bool empty() const { return records_.empty(); }
  const Record& at(uint64_t ordinal) const { return records_.at(ordinal); }
  const std::vector<Record>& records() const { return records_; }

  // Returns the new record's ordinal. Throws DuplicateTagError if the tag is
  // already indexed and std::invalid_argument for an empty tag.
  uint64_t Insert(Record record);

  Lookup FindByTag(BytesView tag) const;

  // Distinct labels in order of first appearance.
  std::vector<Bytes> Labels() const;

  Bytes Serialize() const;
  static TagStore Deserialize(BytesView data);

  void Persist(const std::string& path) const;
  static TagStore Load(const std::string& path);

 private:
  // Position in index_ where `tag` would be inserted.
  size_t LowerBound(BytesView tag) const;

  BackendId backend_;
  std::vector<Record> records_;
  std::vector<uint64_t> index_;  // ordinals sorted by tag
  std::set<Bytes> duplicate_tags_;
};

}  // namespace spchs::store
