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

#include "spchs/group.h"

#include <sodium.h>

#include <cstring>

namespace spchs::group {
namespace {

// Bit length of the BLS12-381 group order.
constexpr size_t kOrderBits = 255;

blst_fr ToFr(const Scalar& s) {
  blst_fr f;
  blst_fr_from_scalar(&f, &s.raw());
  return f;
}

bool ScalarBit(const blst_scalar& s, size_t i) { return (s.b[i / 8] >> (i % 8)) & 1; }

}  // namespace

// ---------------------------------------------------------------------------
// Scalar

Scalar Scalar::FromU64(uint64_t v) {
  const uint64_t limbs[4] = {v, 0, 0, 0};
  Scalar s;
  blst_scalar_from_uint64(&s.v_, limbs);
  return s;
}

Scalar Scalar::RandomNonzero(Rng& rng) {
  // 512 uniform bits reduced mod q: statistical distance 2^-257.
  uint8_t wide[64];
  Scalar s;
  for (;;) {
    rng.Fill(wide);
    if (blst_scalar_from_be_bytes(&s.v_, wide, sizeof(wide))) return s;
  }
}

Scalar Scalar::FromBytes(BytesView b) {
  if (b.size() != kScalarBytes) throw DecodeError("scalar encoding must be 32 bytes");
  Scalar s;
  blst_scalar_from_bendian(&s.v_, b.data());
  if (!s.IsZero() && !blst_scalar_fr_check(&s.v_)) {
    throw DecodeError("scalar is not reduced modulo the group order");
  }
  return s;
}

Bytes Scalar::ToBytes() const {
  Bytes out(kScalarBytes);
  blst_bendian_from_scalar(out.data(), &v_);
  return out;
}

bool Scalar::IsZero() const {
  for (uint8_t c : v_.b) {
    if (c != 0) return false;
  }
  return true;
}

Scalar Scalar::operator*(const Scalar& o) const {
  blst_fr a = ToFr(*this), b = ToFr(o), r;
  blst_fr_mul(&r, &a, &b);
  Scalar s;
  blst_scalar_from_fr(&s.v_, &r);
  return s;
}

Scalar Scalar::operator+(const Scalar& o) const {
  blst_fr a = ToFr(*this), b = ToFr(o), r;
  blst_fr_add(&r, &a, &b);
  Scalar s;
  blst_scalar_from_fr(&s.v_, &r);
  return s;
}

Scalar Scalar::Inverse() const {
  if (IsZero()) throw std::domain_error("inverse of zero scalar");
  blst_fr a = ToFr(*this), r;
  blst_fr_inverse(&r, &a);
  Scalar s;
  blst_scalar_from_fr(&s.v_, &r);
  return s;
}

bool Scalar::operator==(const Scalar& o) const {
  return std::memcmp(v_.b, o.v_.b, sizeof(v_.b)) == 0;
}

// ---------------------------------------------------------------------------
// G1

G1::G1() = default;

G1 G1::Generator() { return FromRaw(*blst_p1_generator()); }

G1 G1::FromRaw(const blst_p1& p) {
  G1 g;
  blst_p1_to_affine(&g.p_, &p);
  return g;
}

G1 G1::FromBytes(BytesView b) {
  if (b.size() != kG1Bytes) throw DecodeError("G1 encoding must be 48 bytes");
  G1 g;
  if (blst_p1_uncompress(&g.p_, b.data()) != BLST_SUCCESS) {
    throw DecodeError("invalid G1 encoding");
  }
  if (!blst_p1_affine_in_g1(&g.p_)) throw DecodeError("G1 point outside the prime-order subgroup");
  if (g.ToBytes() != Bytes(b.begin(), b.end())) throw DecodeError("non-canonical G1 encoding");
  return g;
}

Bytes G1::ToBytes() const {
  Bytes out(kG1Bytes);
  blst_p1_affine_compress(out.data(), &p_);
  return out;
}

bool G1::IsIdentity() const { return blst_p1_affine_is_inf(&p_); }

G1 G1::operator+(const G1& o) const {
  blst_p1 a, r;
  blst_p1_from_affine(&a, &p_);
  blst_p1_add_or_double_affine(&r, &a, &o.p_);
  return FromRaw(r);
}

G1 G1::operator-() const {
  blst_p1 a;
  blst_p1_from_affine(&a, &p_);
  blst_p1_cneg(&a, true);
  return FromRaw(a);
}

bool G1::operator==(const G1& o) const { return blst_p1_affine_is_equal(&p_, &o.p_); }

// ---------------------------------------------------------------------------
// G2

G2::G2() = default;

G2 G2::Generator() { return FromRaw(*blst_p2_generator()); }

G2 G2::FromRaw(const blst_p2& p) {
  G2 g;
  blst_p2_to_affine(&g.p_, &p);
  return g;
}

G2 G2::FromBytes(BytesView b) {
  if (b.size() != kG2Bytes) throw DecodeError("G2 encoding must be 96 bytes");
  G2 g;
  if (blst_p2_uncompress(&g.p_, b.data()) != BLST_SUCCESS) {
    throw DecodeError("invalid G2 encoding");
  }
  if (!blst_p2_affine_in_g2(&g.p_)) throw DecodeError("G2 point outside the prime-order subgroup");
  if (g.ToBytes() != Bytes(b.begin(), b.end())) throw DecodeError("non-canonical G2 encoding");
  return g;
}

Bytes G2::ToBytes() const {
  Bytes out(kG2Bytes);
  blst_p2_affine_compress(out.data(), &p_);
  return out;
}

bool G2::IsIdentity() const { return blst_p2_affine_is_inf(&p_); }

G2 G2::operator+(const G2& o) const {
  blst_p2 a, r;
  blst_p2_from_affine(&a, &p_);
  blst_p2_add_or_double_affine(&r, &a, &o.p_);
  return FromRaw(r);
}

bool G2::operator==(const G2& o) const { return blst_p2_affine_is_equal(&p_, &o.p_); }

// ---------------------------------------------------------------------------
// Gt

Gt::Gt() : f_(*blst_fp12_one()) {}

// Coordinate order matches blst_bendian_from_fp12: for i in 0..2, j in 0..1,
// the two Fp limbs of fp6[j].fp2[i].
Gt Gt::FromBytes(BytesView b) {
  if (b.size() != kGtBytes) throw DecodeError("GT encoding must be 576 bytes");
  Gt g;
  const uint8_t* p = b.data();
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 2; ++j) {
      blst_fp_from_bendian(&g.f_.fp6[j].fp2[i].fp[0], p);
      p += 48;
      blst_fp_from_bendian(&g.f_.fp6[j].fp2[i].fp[1], p);
      p += 48;
    }
  }
  if (g.ToBytes() != Bytes(b.begin(), b.end())) throw DecodeError("non-canonical GT encoding");
  if (!blst_fp12_in_group(&g.f_)) throw DecodeError("GT element outside the prime-order subgroup");
  return g;
}

Bytes Gt::ToBytes() const {
  Bytes out(kGtBytes);
  blst_bendian_from_fp12(out.data(), &f_);
  return out;
}

bool Gt::IsOne() const { return blst_fp12_is_one(&f_); }

Gt Gt::operator*(const Gt& o) const {
  Gt r;
  blst_fp12_mul(&r.f_, &f_, &o.f_);
  return r;
}

Gt Gt::Inverse() const {
  Gt r;
  blst_fp12_inverse(&r.f_, &f_);
  return r;
}

bool Gt::operator==(const Gt& o) const { return blst_fp12_is_equal(&f_, &o.f_); }

// ---------------------------------------------------------------------------
// Group context

namespace {

Gt RawPair(const G1& a, const G2& b) {
  if (a.IsIdentity() || b.IsIdentity()) return Gt();
  blst_fp12 ml, out;
  blst_miller_loop(&ml, &b.raw(), &a.raw());
  blst_final_exp(&out, &ml);
  return Gt::FromRaw(out);
}

}  // namespace

Gt Group::Pair(const G1& a, const G2& b) {
  ++counters_.pairings;
  return RawPair(a, b);
}

G1 Group::Mul(const G1& a, const Scalar& k) {
  ++counters_.g1_muls;
  blst_p1 p, r;
  blst_p1_from_affine(&p, &a.raw());
  blst_p1_mult(&r, &p, k.raw().b, kOrderBits);
  return G1::FromRaw(r);
}

G1 Group::MulGenerator(const Scalar& k) {
  ++counters_.g1_muls;
  blst_p1 r;
  blst_p1_mult(&r, blst_p1_generator(), k.raw().b, kOrderBits);
  return G1::FromRaw(r);
}

G2 Group::Mul(const G2& a, const Scalar& k) {
  ++counters_.g2_muls;
  blst_p2 p, r;
  blst_p2_from_affine(&p, &a.raw());
  blst_p2_mult(&r, &p, k.raw().b, kOrderBits);
  return G2::FromRaw(r);
}

G2 Group::MulGeneratorG2(const Scalar& k) {
  ++counters_.g2_muls;
  blst_p2 r;
  blst_p2_mult(&r, blst_p2_generator(), k.raw().b, kOrderBits);
  return G2::FromRaw(r);
}

Gt Group::Pow(const Gt& a, const Scalar& k) {
  ++counters_.gt_exps;
  // Left-to-right square-and-multiply; GT lies in the cyclotomic subgroup,
  // so the cheaper cyclotomic squaring applies.
  blst_fp12 acc = *blst_fp12_one();
  bool started = false;
  for (size_t i = kOrderBits; i-- > 0;) {
    if (started) blst_fp12_cyclotomic_sqr(&acc, &acc);
    if (ScalarBit(k.raw(), i)) {
      if (started) {
        blst_fp12_mul(&acc, &acc, &a.raw());
      } else {
        acc = a.raw();
        started = true;
      }
    }
  }
  return Gt::FromRaw(acc);
}

G2 Group::HashToG2(BytesView msg, std::string_view dst) {
  ++counters_.hashes;
  blst_p2 out;
  blst_hash_to_g2(&out, msg.data(), msg.size(), reinterpret_cast<const byte*>(dst.data()),
                  dst.size(), nullptr, 0);
  return G2::FromRaw(out);
}

Gt Group::RandomGt(Rng& rng) { return Pow(GtGenerator(), Scalar::RandomNonzero(rng)); }

const Gt& GtGenerator() {
  static const Gt kGenerator = RawPair(G1::Generator(), G2::Generator());
  return kGenerator;
}

Digest Kdf(std::string_view domain, const Gt& value) {
  crypto_hash_sha256_state st;
  crypto_hash_sha256_init(&st);
  crypto_hash_sha256_update(&st, reinterpret_cast<const uint8_t*>(domain.data()), domain.size());
  const uint8_t sep = 0;
  crypto_hash_sha256_update(&st, &sep, 1);
  const Bytes enc = value.ToBytes();
  crypto_hash_sha256_update(&st, enc.data(), enc.size());
  Digest out;
  crypto_hash_sha256_final(&st, out.data());
  return out;
}

}  // namespace spchs::group
