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

#include "spchs/key_file.h"

#include <sodium.h>

#include <cstring>

namespace spchs::keyfile {

std::string RoleName(Role role) {
  switch (role) {
    case Role::kMasterPublic:
      return "master public key";
    case Role::kMasterSecret:
      return "master secret key";
    case Role::kStructurePublic:
      return "structure public part";
    case Role::kTrapdoor:
      return "trapdoor";
    case Role::kStructurePrivateSealed:
      return "sealed structure private part";
    case Role::kStructurePrivatePlain:
      return "structure private part";
  }
  return "unknown";
}

Bytes Frame(Role role, BackendId backend, BytesView body) {
  Bytes out(kMagic, kMagic + 6);
  out.push_back(static_cast<uint8_t>(role));
  out.push_back(static_cast<uint8_t>(backend));
  Append(out, body);
  return out;
}

Framed Unframe(BytesView data, std::optional<Role> expected) {
  if (data.size() < kHeaderBytes || std::memcmp(data.data(), kMagic, 6) != 0) {
    throw DecodeError("not an SPCHS1 key file");
  }
  const uint8_t role = data[6];
  if (role < 0x01 || role > 0x06) throw DecodeError("unknown key-file role");
  Framed f{static_cast<Role>(role), BackendFromByte(data[7]),
           Bytes(data.begin() + kHeaderBytes, data.end())};
  if (expected && f.role != *expected) {
    throw DecodeError("expected a " + RoleName(*expected) + " file, found a " + RoleName(f.role));
  }
  return f;
}

}  // namespace spchs::keyfile

namespace spchs::vault {

SealKey GenerateKey(Rng& rng) {
  SealKey k;
  rng.Fill(k);
  return k;
}

SealKey KeyFromBytes(BytesView b) {
  if (b.size() != kKeyBytes) throw DecodeError("seal key must be 32 bytes");
  SealKey k;
  std::memcpy(k.data(), b.data(), k.size());
  return k;
}

Bytes Seal(BytesView plaintext, const SealKey& key, Rng& rng, BytesView associated) {
  Bytes out(kNonceBytes + plaintext.size() + kTagBytes);
  rng.Fill(std::span(out.data(), kNonceBytes));
  unsigned long long clen = 0;
  crypto_aead_xchacha20poly1305_ietf_encrypt(out.data() + kNonceBytes, &clen, plaintext.data(),
                                             plaintext.size(), associated.data(), associated.size(),
                                             nullptr, out.data(), key.data());
  out.resize(kNonceBytes + clen);
  return out;
}

Bytes Open(BytesView sealed, const SealKey& key, BytesView associated) {
  if (sealed.size() < kNonceBytes + kTagBytes) throw AuthenticationError("sealed blob too short");
  Bytes out(sealed.size() - kNonceBytes - kTagBytes);
  unsigned long long mlen = 0;
  if (crypto_aead_xchacha20poly1305_ietf_decrypt(
          out.data(), &mlen, nullptr, sealed.data() + kNonceBytes, sealed.size() - kNonceBytes,
          associated.data(), associated.size(), sealed.data(), key.data()) != 0) {
    throw AuthenticationError("authentication failed");
  }
  out.resize(mlen);
  return out;
}

Bytes ExportPrivate(BackendId backend, BytesView canonical, const SealKey& key, Rng& rng) {
  Bytes header = keyfile::Frame(keyfile::Role::kStructurePrivateSealed, backend, {});
  Bytes sealed = Seal(canonical, key, rng, header);
  Append(header, sealed);
  return header;
}

Bytes ImportPrivate(BackendId backend, BytesView file, const SealKey& key) {
  auto framed = keyfile::Unframe(file, keyfile::Role::kStructurePrivateSealed);
  if (framed.backend != backend) throw DecodeError("private part belongs to another backend");
  return Open(framed.body, key, file.first(keyfile::kHeaderBytes));
}

}  // namespace spchs::vault
