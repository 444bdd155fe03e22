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

// Type-3 pairing group (BLS12-381) with canonical encodings and per-context
// operation counters. Elements are immutable values; counting happens only
// on the Group context through which costly operations are issued.

#include <blst.h>

#include <cstdint>
#include <string_view>

#include "spchs/common.h"
#include "spchs/rng.h"

namespace spchs::group {

inline constexpr size_t kScalarBytes = 32;
inline constexpr size_t kG1Bytes = 48;
inline constexpr size_t kG2Bytes = 96;
inline constexpr size_t kGtBytes = 576;

// The only supported security level, in bits.
inline constexpr int kSecurityBits = 128;
// Identifier written into key files for BLS12-381.
inline constexpr uint8_t kGroupId = 0x01;

class Scalar {
 public:
  Scalar() = default;

  static Scalar FromU64(uint64_t v);
  // Uniform in [1, q).
  static Scalar RandomNonzero(Rng& rng);
  // 32-byte big-endian, rejects values >= q.
  static Scalar FromBytes(BytesView b);

  Bytes ToBytes() const;
  bool IsZero() const;

  Scalar operator*(const Scalar& o) const;
  Scalar operator+(const Scalar& o) const;
  Scalar Inverse() const;

  bool operator==(const Scalar& o) const;

  const blst_scalar& raw() const { return v_; }

 private:
  blst_scalar v_{};
};

class G1 {
 public:
  G1();  // identity

  static G1 Generator();
  // 48-byte compressed encoding; validates subgroup membership and
  // canonical form.
  static G1 FromBytes(BytesView b);

  Bytes ToBytes() const;
  bool IsIdentity() const;
  G1 operator+(const G1& o) const;
  G1 operator-() const;
  bool operator==(const G1& o) const;

  const blst_p1_affine& raw() const { return p_; }
  static G1 FromRaw(const blst_p1& p);

 private:
  blst_p1_affine p_{};
};

class G2 {
 public:
  G2();  // identity

  static G2 Generator();
  static G2 FromBytes(BytesView b);

  Bytes ToBytes() const;
  bool IsIdentity() const;
  G2 operator+(const G2& o) const;
  bool operator==(const G2& o) const;

  const blst_p2_affine& raw() const { return p_; }
  static G2 FromRaw(const blst_p2& p);

 private:
  blst_p2_affine p_{};
};

// Element of the order-q subgroup of Fp12^*, written multiplicatively.
class Gt {
 public:
  Gt();  // identity

  // 576-byte big-endian tower encoding; validates canonical coordinates
  // and subgroup membership.
  static Gt FromBytes(BytesView b);

  Bytes ToBytes() const;
  bool IsOne() const;
  Gt operator*(const Gt& o) const;
  Gt Inverse() const;
  bool operator==(const Gt& o) const;

  const blst_fp12& raw() const { return f_; }
  static Gt FromRaw(const blst_fp12& f) {
    Gt g;
    g.f_ = f;
    return g;
  }

 private:
  blst_fp12 f_{};
};

struct OpCounters {
  uint64_t pairings = 0;
  uint64_t g1_muls = 0;
  uint64_t g2_muls = 0;
  uint64_t gt_exps = 0;
  uint64_t hashes = 0;

  bool operator==(const OpCounters&) const = default;
};

// Counting context. Single owner: concurrent use of one context is not
// supported, separate contexts never interfere.
class Group {
 public:
  Group() = default;

  Gt Pair(const G1& a, const G2& b);
  G1 Mul(const G1& a, const Scalar& k);
  G1 MulGenerator(const Scalar& k);
  G2 Mul(const G2& a, const Scalar& k);
  G2 MulGeneratorG2(const Scalar& k);
  Gt Pow(const Gt& a, const Scalar& k);
  // RFC 9380 hash-to-curve (BLS12381G2_XMD:SHA-256_SSWU_RO_) under `dst`.
  G2 HashToG2(BytesView msg, std::string_view dst);
  // Uniform element of GT, sampled as gt^x.
  Gt RandomGt(Rng& rng);

  OpCounters Snapshot() const { return counters_; }
  void Reset() { counters_ = {}; }

 private:
  OpCounters counters_;
};

// e(g1, g2); computed once, not charged to any context.
const Gt& GtGenerator();

// Fixed-length KDF from a target-group element to lambda bits:
// SHA-256(domain || 0x00 || encoding).
Digest Kdf(std::string_view domain, const Gt& value);

}  // namespace spchs::group
