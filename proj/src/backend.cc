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

#include "spchs/backend.h"

#include "spchs/generic.h"
#include "spchs/scratch.h"

namespace spchs {
namespace {

class ScratchSender final : public Sender {
 public:
  ScratchSender(scratch::Scheme& scheme, scratch::MasterPublicKey mpk,
                scratch::StructurePrivate pri, scratch::StructurePublic pub)
      : scheme_(scheme), mpk_(mpk), pri_(std::move(pri)), pub_(pub), pub_bytes_(pub.Encode()) {}

  const Bytes& public_part() const override { return pub_bytes_; }

  store::Record Encrypt(BytesView keyword) override {
    return scheme_.Encrypt(mpk_, keyword, pri_).ToRecord(pub_);
  }

  Bytes SerializePrivate() const override { return pri_.Serialize(); }

 private:
  scratch::Scheme& scheme_;
  scratch::MasterPublicKey mpk_;
  scratch::StructurePrivate pri_;
  scratch::StructurePublic pub_;
  Bytes pub_bytes_;
};

class ScratchBackend final : public Backend {
 public:
  explicit ScratchBackend(Rng& rng) : scheme_(group_, rng) {}

  BackendId id() const override { return BackendId::kScratch; }
  group::Group& group() override { return group_; }

  EncodedMasterKeys Setup() override {
    auto [mpk, msk] = scheme_.SystemSetup();
    return {mpk.Encode(), msk.Encode()};
  }

  std::unique_ptr<Sender> NewStructure(BytesView mpk_bytes) override {
    const auto mpk = scratch::MasterPublicKey::Decode(mpk_bytes);
    auto [pri, pub] = scheme_.InitStructure(mpk);
    return std::make_unique<ScratchSender>(scheme_, mpk, std::move(pri), pub);
  }

  std::unique_ptr<Sender> RestoreStructure(BytesView mpk_bytes, BytesView state) override {
    const auto mpk = scratch::MasterPublicKey::Decode(mpk_bytes);
    auto pri = scratch::StructurePrivate::Deserialize(state);
    const auto pub = scheme_.PublicFor(pri);
    return std::make_unique<ScratchSender>(scheme_, mpk, std::move(pri), pub);
  }

  Bytes Trapdoor(BytesView msk, BytesView keyword) override {
    return scheme_.MakeTrapdoor(scratch::MasterSecretKey::Decode(msk), keyword).Encode();
  }

  SearchOutcome Search(BytesView mpk, BytesView pub, const store::TagStore& store,
                       BytesView trapdoor) override {
    auto r = scheme_.Search(scratch::MasterPublicKey::Decode(mpk),
                            scratch::StructurePublic::Decode(pub), store,
                            scratch::Trapdoor::Decode(trapdoor));
    return {std::move(r.ordinals), r.comparisons};
  }

 private:
  group::Group group_;
  scratch::Scheme scheme_;
};

// Generic encodings:
//   mpk = group id | IBKEM P | IBE P'    msk = s | s'
//   pub = encapsulation                  trapdoor = H(W)^s | H'(W)^s'
class GenericBackend final : public Backend {
  using Scheme = generic::RoScheme;

 public:
  explicit GenericBackend(Rng& rng)
      : kem_(group_, rng),
        ibe_(group_, rng),
        scheme_(generic::InstantiateChecked(kem_, ibe_, rng, {.trials = 4, .collision_samples = 16})) {
    group_.Reset();
  }

  BackendId id() const override { return BackendId::kGeneric; }
  group::Group& group() override { return group_; }

  EncodedMasterKeys Setup() override {
    auto [mpk, msk] = scheme_.SystemSetup();
    EncodedMasterKeys out;
    out.mpk = {group::kGroupId};
    Append(out.mpk, mpk.kem.p.ToBytes());
    Append(out.mpk, mpk.ibe.p.ToBytes());
    out.msk = msk.kem.s.ToBytes();
    Append(out.msk, msk.ibe.s.ToBytes());
    return out;
  }

  static Scheme::MasterPublicKey DecodeMpk(BytesView b) {
    ByteReader in(b);
    if (in.U8() != group::kGroupId) throw DecodeError("unsupported group identifier");
    Scheme::MasterPublicKey mpk{{group::G1::FromBytes(in.Take(group::kG1Bytes))},
                                {group::G1::FromBytes(in.Take(group::kG1Bytes))}};
    in.ExpectEnd();
    if (mpk.kem.p.IsIdentity() || mpk.ibe.p.IsIdentity()) {
      throw DecodeError("master public key is the identity");
    }
    return mpk;
  }

  static Scheme::MasterSecretKey DecodeMsk(BytesView b) {
    ByteReader in(b);
    Scheme::MasterSecretKey msk{{group::Scalar::FromBytes(in.Take(group::kScalarBytes))},
                                {group::Scalar::FromBytes(in.Take(group::kScalarBytes))}};
    in.ExpectEnd();
    if (msk.kem.s.IsZero() || msk.ibe.s.IsZero()) throw DecodeError("master secret key is zero");
    return msk;
  }

  class GenericSender final : public Sender {
   public:
    GenericSender(Scheme& scheme, Scheme::MasterPublicKey mpk, Scheme::StructurePrivate pri,
                  Scheme::StructurePublic pub)
        : scheme_(scheme), mpk_(mpk), pri_(std::move(pri)), pub_(pub), pub_bytes_(pub.Encode()) {}

    const Bytes& public_part() const override { return pub_bytes_; }
    store::Record Encrypt(BytesView keyword) override {
      return scheme_.Encrypt(mpk_, keyword, pri_).ToRecord(pub_);
    }
    Bytes SerializePrivate() const override { return pri_.Serialize(); }

   private:
    Scheme& scheme_;
    Scheme::MasterPublicKey mpk_;
    Scheme::StructurePrivate pri_;
    Scheme::StructurePublic pub_;
    Bytes pub_bytes_;
  };

  std::unique_ptr<Sender> NewStructure(BytesView mpk_bytes) override {
    const auto mpk = DecodeMpk(mpk_bytes);
    auto [pri, pub] = scheme_.InitStructure(mpk);
    return std::make_unique<GenericSender>(scheme_, mpk, std::move(pri), pub);
  }

  std::unique_ptr<Sender> RestoreStructure(BytesView mpk_bytes, BytesView state) override {
    const auto mpk = DecodeMpk(mpk_bytes);
    auto pri = Scheme::StructurePrivate::Deserialize(state);
    const auto pub = scheme_.PublicFor(mpk, pri);
    return std::make_unique<GenericSender>(scheme_, mpk, std::move(pri), pub);
  }

  Bytes Trapdoor(BytesView msk, BytesView keyword) override {
    const auto t = scheme_.MakeTrapdoor(DecodeMsk(msk), keyword);
    Bytes out = t.kem.d.ToBytes();
    Append(out, t.ibe.d.ToBytes());
    return out;
  }

  SearchOutcome Search(BytesView mpk, BytesView pub, const store::TagStore& store,
                       BytesView trapdoor) override {
    ByteReader in(trapdoor);
    Scheme::Trapdoor trap{{group::G2::FromBytes(in.Take(group::kG2Bytes))},
                          {group::G2::FromBytes(in.Take(group::kG2Bytes))}};
    in.ExpectEnd();
    auto head = Scheme::StructurePublic::Decode(pub);
    if (head.head.c.IsIdentity()) throw DecodeError("structure head is the identity");
    auto r = scheme_.Search(DecodeMpk(mpk), head, store, trap);
    return {std::move(r.ordinals), r.comparisons};
  }

 private:
  group::Group group_;
  ibe::RoIbkem kem_;
  ibe::HashMaskIbe ibe_;
  Scheme scheme_;
};

}  // namespace

std::unique_ptr<Backend> MakeBackend(BackendId id, Rng& rng) {
  switch (id) {
    case BackendId::kScratch:
      return std::make_unique<ScratchBackend>(rng);
    case BackendId::kGeneric:
      return std::make_unique<GenericBackend>(rng);
    case BackendId::kPeks:
      break;
  }
  throw ConfigError("backend '" + BackendName(id) + "' has no structured search");
}

}  // namespace spchs
