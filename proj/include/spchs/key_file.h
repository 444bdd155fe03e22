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

#include <array>
#include <optional>

#include "spchs/common.h"
#include "spchs/rng.h"
#include "spchs/tag_store.h"

namespace spchs::keyfile {

// "SPCHS1" | role u8 | backend u8 | body
inline constexpr char kMagic[7] = "SPCHS1";
inline constexpr size_t kHeaderBytes = 8;

enum class Role : uint8_t {
  kMasterPublic = 0x01,
  kMasterSecret = 0x02,
  kStructurePublic = 0x03,
  kTrapdoor = 0x04,
  kStructurePrivateSealed = 0x05,
  kStructurePrivatePlain = 0x06,
};

std::string RoleName(Role role);

struct Framed {
  Role role;
  BackendId backend;
  Bytes body;
};

Bytes Frame(Role role, BackendId backend, BytesView body);
// Throws DecodeError on bad magic, unknown role/backend or a role mismatch.
Framed Unframe(BytesView data, std::optional<Role> expected = std::nullopt);

}  // namespace spchs::keyfile

namespace spchs::vault {

// XChaCha20-Poly1305 sealing for sender-private state kept at rest.
inline constexpr size_t kKeyBytes = 32;
inline constexpr size_t kNonceBytes = 24;
inline constexpr size_t kTagBytes = 16;
using SealKey = std::array<uint8_t, kKeyBytes>;

SealKey GenerateKey(Rng& rng);
SealKey KeyFromBytes(BytesView b);

// nonce || ciphertext || tag, with `associated` authenticated but not stored.
Bytes Seal(BytesView plaintext, const SealKey& key, Rng& rng, BytesView associated = {});
// Throws AuthenticationError on a wrong key or any modification.
Bytes Open(BytesView sealed, const SealKey& key, BytesView associated = {});

// Key-file wrapped export of a canonical private-state serialization; the
// file header is bound as associated data.
Bytes ExportPrivate(BackendId backend, BytesView canonical, const SealKey& key, Rng& rng);
Bytes ImportPrivate(BackendId backend, BytesView file, const SealKey& key);

}  // namespace spchs::vault
