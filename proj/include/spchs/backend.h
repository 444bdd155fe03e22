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

// Byte-level facade over the two SPCHS constructions. Key material crosses
// this boundary in its canonical encodings (the bodies of SPCHS1 key files),
// so tools can drive either backend without knowing its types.

#include <memory>
#include <vector>

#include "spchs/common.h"
#include "spchs/group.h"
#include "spchs/rng.h"
#include "spchs/tag_store.h"

namespace spchs {

struct EncodedMasterKeys {
  Bytes mpk;
  Bytes msk;
};

struct SearchOutcome {
  std::vector<uint64_t> ordinals;
  size_t comparisons = 0;
};

// One sender's hidden structure. Encrypt mutates the private state.
class Sender {
 public:
  virtual ~Sender() = default;
  virtual const Bytes& public_part() const = 0;
  virtual store::Record Encrypt(BytesView keyword) = 0;
  virtual Bytes SerializePrivate() const = 0;
};

class Backend {
 public:
  virtual ~Backend() = default;

  virtual BackendId id() const = 0;
  virtual group::Group& group() = 0;

  virtual EncodedMasterKeys Setup() = 0;
  virtual std::unique_ptr<Sender> NewStructure(BytesView mpk) = 0;
  // Rebuilds a sender from a canonical private-state serialization.
  virtual std::unique_ptr<Sender> RestoreStructure(BytesView mpk, BytesView private_state) = 0;
  virtual Bytes Trapdoor(BytesView msk, BytesView keyword) = 0;
  virtual SearchOutcome Search(BytesView mpk, BytesView pub, const store::TagStore& store,
                               BytesView trapdoor) = 0;
};

// Scratch or generic; any other id is a ConfigError. The generic backend is
// instantiated only after its IBKEM/IBE pass a reduced law check.
std::unique_ptr<Backend> MakeBackend(BackendId id, Rng& rng);

}  // namespace spchs
