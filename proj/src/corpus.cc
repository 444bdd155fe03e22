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

#include "spchs/corpus.h"

#include <set>
#include <string>

namespace spchs::corpus {

Script RandomScript(Rng& rng, size_t max_structures, size_t max_keywords,
                    size_t max_ciphertexts) {
  Script s;
  s.structures = 1 + rng.Uniform(max_structures);
  const size_t keywords = 1 + rng.Uniform(max_keywords);
  const size_t count = 1 + rng.Uniform(max_ciphertexts);
  s.steps.reserve(count);
  for (size_t i = 0; i < count; ++i) {
    s.steps.push_back(
        {rng.Uniform(s.structures), ToBytes("keyword-" + std::to_string(rng.Uniform(keywords)))});
  }
  return s;
}

Built Build(Backend& backend, const Script& script) {
  Built b{backend.Setup(), {}, store::TagStore(backend.id()), {}, {}};
  for (size_t i = 0; i < script.structures; ++i) {
    b.senders.push_back(backend.NewStructure(b.keys.mpk));
  }
  std::set<Bytes> seen;
  for (const auto& step : script.steps) {
    const uint64_t ordinal = b.store.Insert(b.senders.at(step.structure)->Encrypt(step.keyword));
    b.truth[{step.structure, step.keyword}].push_back(ordinal);
    if (seen.insert(step.keyword).second) b.keywords.push_back(step.keyword);
  }
  return b;
}

}  // namespace spchs::corpus
