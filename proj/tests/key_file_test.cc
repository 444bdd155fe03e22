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

#include "gtest/gtest.h"
#include "spchs/backend.h"
#include "spchs/scratch.h"

namespace spchs {
namespace {

using keyfile::Role;

TEST(KeyFileTest, FrameLayout) {
  const Bytes body = {0xde, 0xad};
  const Bytes framed = keyfile::Frame(Role::kTrapdoor, BackendId::kGeneric, body);
  Bytes expected = ToBytes("SPCHS1");
  expected.insert(expected.end(), {0x04, 0x02, 0xde, 0xad});
  EXPECT_EQ(framed, expected);
  const auto back = keyfile::Unframe(framed, Role::kTrapdoor);
  EXPECT_EQ(back.role, Role::kTrapdoor);
  EXPECT_EQ(back.backend, BackendId::kGeneric);
  EXPECT_EQ(back.body, body);
}

TEST(KeyFileTest, UnframeRejects) {
  const Bytes framed = keyfile::Frame(Role::kMasterPublic, BackendId::kScratch, Bytes{1, 2, 3});
  EXPECT_THROW(keyfile::Unframe(framed, Role::kMasterSecret), DecodeError);
  EXPECT_THROW(keyfile::Unframe(BytesView(framed).first(7)), DecodeError);
  Bytes bad = framed;
  bad[0] = 'X';
  EXPECT_THROW(keyfile::Unframe(bad), DecodeError);
  bad = framed;
  bad[6] = 0x09;
  EXPECT_THROW(keyfile::Unframe(bad), DecodeError);
  bad = framed;
  bad[7] = 0x00;
  EXPECT_THROW(keyfile::Unframe(bad), DecodeError);
}

// Every encoded key of both backends survives framing, decoding and
// re-encoding byte for byte.
TEST(KeyFileTest, BackendKeysRoundTrip) {
  for (BackendId id : {BackendId::kScratch, BackendId::kGeneric}) {
    Rng rng = Rng::FromSeed(21);
    auto backend = MakeBackend(id, rng);
    const auto keys = backend->Setup();
    auto sender = backend->NewStructure(keys.mpk);
    sender->Encrypt(AsBytes("alpha"));
    sender->Encrypt(AsBytes("beta"));
    const Bytes trap = backend->Trapdoor(keys.msk, AsBytes("alpha"));

    for (const auto& [role, body] :
         std::vector<std::pair<Role, Bytes>>{{Role::kMasterPublic, keys.mpk},
                                             {Role::kMasterSecret, keys.msk},
                                             {Role::kStructurePublic, sender->public_part()},
                                             {Role::kTrapdoor, trap}}) {
      const Bytes file = keyfile::Frame(role, id, body);
      ASSERT_EQ(keyfile::Unframe(file, role).body, body) << keyfile::RoleName(role);
    }

    const Bytes state = sender->SerializePrivate();
    auto restored = backend->RestoreStructure(keys.mpk, state);
    EXPECT_EQ(restored->SerializePrivate(), state);
    EXPECT_EQ(restored->public_part(), sender->public_part());
  }
}

TEST(KeyFileTest, ScratchPrivateCanonicalForm) {
  group::Group grp;
  Rng rng = Rng::FromSeed(22);
  scratch::Scheme scheme(grp, rng);
  auto [mpk, msk] = scheme.SystemSetup();
  auto [pri, pub] = scheme.InitStructure(mpk);
  for (const char* kw : {"zeta", "alpha", "mid", "alpha"}) scheme.Encrypt(mpk, AsBytes(kw), pri);
  const Bytes b = pri.Serialize();
  EXPECT_EQ(b.size(), group::kScalarBytes + 4 + 3 * (4 + group::kGtBytes) + 5 + 4 + 3);
  const auto back = scratch::StructurePrivate::Deserialize(b);
  EXPECT_EQ(back, pri);
  EXPECT_EQ(back.Serialize(), b);
  EXPECT_THROW(scratch::StructurePrivate::Deserialize(BytesView(b).first(b.size() - 1)),
               DecodeError);
}

TEST(VaultTest, SealMatchesLibsodium) {
  ASSERT_GE(sodium_init(), 0);
  Rng rng = Rng::FromSeed(23);
  const auto key = vault::GenerateKey(rng);
  const Bytes msg = ToBytes("structure private state");
  const Bytes ad = ToBytes("header");
  const Bytes sealed = vault::Seal(msg, key, rng, ad);
  ASSERT_EQ(sealed.size(), vault::kNonceBytes + msg.size() + vault::kTagBytes);

  Bytes plain(msg.size());
  unsigned long long len = 0;
  ASSERT_EQ(crypto_aead_xchacha20poly1305_ietf_decrypt(
                plain.data(), &len, nullptr, sealed.data() + vault::kNonceBytes,
                sealed.size() - vault::kNonceBytes, ad.data(), ad.size(), sealed.data(),
                key.data()),
            0);
  EXPECT_EQ(plain, msg);
  EXPECT_EQ(vault::Open(sealed, key, ad), msg);
}

TEST(VaultTest, PrivateExportRoundTripAndTamper) {
  Rng rng = Rng::FromSeed(24);
  auto backend = MakeBackend(BackendId::kScratch, rng);
  const auto keys = backend->Setup();
  auto sender = backend->NewStructure(keys.mpk);
  sender->Encrypt(AsBytes("w"));
  const Bytes state = sender->SerializePrivate();
  const auto key = vault::GenerateKey(rng);

  const Bytes file = vault::ExportPrivate(BackendId::kScratch, state, key, rng);
  EXPECT_EQ(vault::ImportPrivate(BackendId::kScratch, file, key), state);
  EXPECT_NE(vault::ExportPrivate(BackendId::kScratch, state, key, rng), file);

  for (size_t pos = keyfile::kHeaderBytes; pos < file.size(); ++pos) {
    Bytes bad = file;
    bad[pos] ^= 0x01;
    ASSERT_THROW(vault::ImportPrivate(BackendId::kScratch, bad, key), AuthenticationError) << pos;
  }
  auto wrong = key;
  wrong[0] ^= 0x80;
  EXPECT_THROW(vault::ImportPrivate(BackendId::kScratch, file, wrong), AuthenticationError);
  EXPECT_THROW(vault::ImportPrivate(BackendId::kGeneric, file, key), DecodeError);
  EXPECT_THROW(vault::ImportPrivate(BackendId::kScratch, BytesView(file).first(40), key),
               AuthenticationError);
}

TEST(VaultTest, HeaderIsAuthenticated) {
  Rng rng = Rng::FromSeed(25);
  const auto key = vault::GenerateKey(rng);
  Bytes file = vault::ExportPrivate(BackendId::kScratch, ToBytes("x"), key, rng);
  file[7] = static_cast<uint8_t>(BackendId::kGeneric);
  EXPECT_THROW(vault::ImportPrivate(BackendId::kGeneric, file, key), AuthenticationError);
}

}  // namespace
}  // namespace spchs
