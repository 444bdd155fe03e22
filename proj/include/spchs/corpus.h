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

// Scripted corpora for consistency checks. The ground truth is the list of
// ordinals the store handed out at encryption time, grouped by
// (structure, keyword); it never consults the search path.

#include <map>
#include <memory>
#include <utility>
#include <vector>

#include "spchs/backend.h"
#include "spchs/common.h"
#include "spchs/rng.h"
#include "spchs/tag_store.h"

namespace spchs::corpus {

struct Step {
  size_t structure;
  Bytes keyword;
};

struct Script {
  size_t structures = 1;
  std::vector<Step> steps;
};

using GroundTruth = std::map<std::pair<size_t, Bytes>, std::vector<uint64_t>>;

struct Built {
  EncodedMasterKeys keys;
  std::vector<std::unique_ptr<Sender>> senders;
  store::TagStore store;
  GroundTruth truth;
  std::vector<Bytes> keywords;  // distinct keywords appearing in the script
};

// Random interleaving of up to max_structures structures and max_keywords
// keywords, with between 1 and max_ciphertexts encryptions.
Script RandomScript(Rng& rng, size_t max_structures, size_t max_keywords, size_t max_ciphertexts);

Built Build(Backend& backend, const Script& script);

}  // namespace spchs::corpus
