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

// Law checks for IBKEM/IBE backends: KEM consistency and determinism in r,
// full-identity malleability, sampled collision-freeness of Fim, and IBE
// round-trip consistency.

#include <set>
#include <string>
#include <vector>

#include "spchs/common.h"
#include "spchs/ibe.h"
#include "spchs/rng.h"

namespace spchs::ibe {

struct LawFailure {
  std::string law;
  std::string counterexample;
};

struct ConformanceReport {
  std::vector<std::string> checked;
  std::vector<LawFailure> failures;

  bool ok() const { return failures.empty(); }
  bool Failed(std::string_view law) const {
    for (const auto& f : failures) {
      if (f.law == law) return true;
    }
    return false;
  }
  std::string Summary() const {
    std::string out;
    for (const auto& f : failures) out += f.law + ": " + f.counterexample + "\n";
    return out;
  }
};

struct ConformanceOptions {
  size_t trials = 100;
  size_t collision_samples = 1000;
};

inline constexpr std::string_view kLawKemConsistency = "ibkem-consistency";
inline constexpr std::string_view kLawKemDeterminism = "ibkem-determinism";
inline constexpr std::string_view kLawMalleability = "ibkem-full-identity-malleability";
inline constexpr std::string_view kLawCollisionFree = "ibkem-collision-freeness";
inline constexpr std::string_view kLawIbeConsistency = "ibe-consistency";

namespace detail {

inline Bytes RandomIdentity(Rng& rng) {
  Bytes id(rng.Uniform(33));
  rng.Fill(id);
  return id;
}

template <typename T>
Bytes DigestBytes(const T& d) {
  return Bytes(d.begin(), d.end());
}

}  // namespace detail

template <IdentityKem Kem, IdentityEncryption Ibe>
ConformanceReport CheckBackends(Kem& kem, Ibe& ibe, Rng& rng, ConformanceOptions opts = {}) {
  ConformanceReport report;
  report.checked = {std::string(kLawKemConsistency), std::string(kLawKemDeterminism),
                    std::string(kLawMalleability), std::string(kLawCollisionFree),
                    std::string(kLawIbeConsistency)};
  auto fail = [&](std::string_view law, std::string detail) {
    if (!report.Failed(law)) report.failures.push_back({std::string(law), std::move(detail)});
  };

  auto [kpk, ksk] = kem.Setup();
  for (size_t i = 0; i < opts.trials; ++i) {
    const Bytes id = detail::RandomIdentity(rng);
    Bytes other = detail::RandomIdentity(rng);
    other.push_back(0x5a);  // differs from id in length or content w.h.p.
    const auto r = kem.SampleRandomness();
    const std::string where =
        "id=" + ToHex(id) + " id'=" + ToHex(other) + " r=" + ToHex(Kem::EncodeRandomness(r));

    const auto out = kem.Encaps(kpk, id, r);
    const auto again = kem.Encaps(kpk, id, r);
    if (out.key != again.key || Kem::EncodeEncapsulation(out.encapsulation) !=
                                    Kem::EncodeEncapsulation(again.encapsulation)) {
      fail(kLawKemDeterminism, where);
    }

    const auto own = kem.Decaps(kem.Extract(ksk, id), out.encapsulation);
    if (!own || *own != out.key) fail(kLawKemConsistency, where);
    if (kem.Fim(kpk, id, r) != out.key) fail(kLawMalleability, where + " (own identity)");

    const auto cross = kem.Decaps(kem.Extract(ksk, other), out.encapsulation);
    if (!cross || *cross != kem.Fim(kpk, other, r)) fail(kLawMalleability, where);
  }

  std::set<Bytes> seen;
  for (size_t i = 0; i < opts.collision_samples; ++i) {
    const Bytes id = detail::RandomIdentity(rng);
    const auto r = kem.SampleRandomness();
    if (!seen.insert(detail::DigestBytes(kem.Fim(kpk, id, r))).second) {
      fail(kLawCollisionFree, "repeat at sample " + std::to_string(i) + " id=" + ToHex(id) +
                                  " r=" + ToHex(Kem::EncodeRandomness(r)));
      break;
    }
  }

  auto [ipk, isk] = ibe.Setup();
  for (size_t i = 0; i < opts.trials; ++i) {
    const Bytes id = detail::RandomIdentity(rng);
    typename Ibe::Message m;
    rng.Fill(std::span(m.data(), m.size()));
    const auto ct = ibe.Encrypt(ipk, id, m);
    const auto back = ibe.Decrypt(ibe.Extract(isk, id), ct);
    if (!back || *back != m) {
      fail(kLawIbeConsistency, "id=" + ToHex(id) + " m=" + ToHex(detail::DigestBytes(m)));
    }
  }
  return report;
}

}  // namespace spchs::ibe
