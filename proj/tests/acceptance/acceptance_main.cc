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

// Acceptance runner: one PASS/FAIL line per criterion, nonzero exit on any
// failure.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <future>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <thread>

#include "adversarial.h"
#include "spchs/backend.h"
#include "spchs/bench.h"
#include "spchs/conformance.h"
#include "spchs/corpus.h"
#include "spchs/generic.h"
#include "spchs/ibe.h"
#include "spchs/key_file.h"
#include "spchs/scratch.h"
#include "spchs/tag_store.h"

namespace spchs::acceptance {
namespace {

namespace fs = std::filesystem;

// Thrown by Check(); carries the first violated expectation.
class Violation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

void Check(bool ok, const std::string& what) {
  if (!ok) throw Violation(what);
}

template <typename Fn>
void ExpectThrow(Fn&& fn, const std::string& what) {
  try {
    fn();
  } catch (const Error&) {
    return;
  }
  throw Violation("accepted: " + what);
}

constexpr size_t kCorpora = 50;

// Runs the corpus consistency suite on one backend. Returns a summary.
std::string ConsistencySuite(BackendId id) {
  size_t searches = 0, ciphertexts = 0;
  for (size_t c = 0; c < kCorpora; ++c) {
    Rng script_rng = Rng::FromSeed(1000 + c);
    const auto script = corpus::RandomScript(script_rng, 5, 50, 500);
    Rng rng = Rng::FromSeed(2000 + c);
    auto backend = MakeBackend(id, rng);
    auto built = corpus::Build(*backend, script);
    ciphertexts += built.store.size();

    auto keywords = built.keywords;
    keywords.push_back(ToBytes("never-encrypted"));
    for (const auto& kw : keywords) {
      const Bytes trap = backend->Trapdoor(built.keys.msk, kw);
      for (size_t s = 0; s < built.senders.size(); ++s) {
        const auto r =
            backend->Search(built.keys.mpk, built.senders[s]->public_part(), built.store, trap);
        const auto it = built.truth.find({s, kw});
        const auto expected = it == built.truth.end() ? std::vector<uint64_t>{} : it->second;
        ++searches;
        Check(r.ordinals == expected, "corpus " + std::to_string(c) + " structure " +
                                          std::to_string(s) + " keyword " + ToString(kw) +
                                          " diverges from the encryption log");
      }
    }
  }
  return std::to_string(kCorpora) + " corpora, " + std::to_string(ciphertexts) +
         " ciphertexts, " + std::to_string(searches) + " searches exact";
}

std::string Criterion1() { return ConsistencySuite(BackendId::kScratch); }
std::string Criterion2() { return ConsistencySuite(BackendId::kGeneric); }

std::string Criterion3() {
  struct Config {
    BackendId backend;
    size_t n, structures;
    std::vector<size_t> m_list;
  };
  const std::vector<Config> configs = {
      {BackendId::kScratch, 40, 1, {0}},
      {BackendId::kScratch, 40, 1, {40}},
      {BackendId::kScratch, 150, 5, {0, 1, 17, 60}},
      {BackendId::kScratch, 90, 3, {90}},
      {BackendId::kScratch, 200, 2, {0, 100, 99}},
      {BackendId::kGeneric, 60, 4, {0, 9, 30}},
      {BackendId::kGeneric, 25, 2, {25}},
  };
  size_t checked = 0;
  uint64_t seed = 30;
  for (const auto& c : configs) {
    bench::BenchConfig cfg;
    cfg.backend = c.backend;
    cfg.n = c.n;
    cfg.structures = c.structures;
    cfg.m_list = c.m_list;
    cfg.keyword_universe = 20;
    cfg.repetitions = 2;
    cfg.seed = ++seed;
    const auto result = bench::RunBench(cfg);
    Check(result.rows.size() == 2 * c.m_list.size(), "missing bench rows");
    for (const auto& row : result.rows) {
      const std::string where = row.backend + " n=" + std::to_string(row.n) +
                                " n_S=" + std::to_string(row.structures) +
                                " m=" + std::to_string(row.m);
      if (row.backend == "peks") {
        Check(row.pairings == c.n, where + ": PEKS used " + std::to_string(row.pairings));
      } else {
        Check(row.pairings == c.structures + row.m,
              where + ": SPCHS used " + std::to_string(row.pairings));
        ++checked;
      }
    }
  }
  return std::to_string(checked) + " configurations (m = 0 and m = n included), counts exact";
}

std::string Criterion4() {
  bench::BenchConfig cfg;
  cfg.n = 10000;
  cfg.structures = 4;
  cfg.keyword_universe = 1000;
  cfg.repetitions = 5;
  cfg.seed = 4;
  cfg.m_list.clear();
  for (size_t m = 0; m <= 1000; m += 100) cfg.m_list.push_back(m);
  const auto result = bench::RunBench(cfg, &std::cerr);

  const fs::path csv = fs::current_path() / "acceptance_trend.csv";
  bench::EmitResults(result, csv.string());

  std::vector<double> ms, spchs, peks;
  double spchs_at_100 = 0, peks_at_100 = 0;
  uint64_t last_pairings = 0;
  for (const auto& row : result.rows) {
    if (row.backend == "peks") {
      peks.push_back(row.median_ms);
      if (row.m == 100) peks_at_100 = row.median_ms;
    } else {
      ms.push_back(static_cast<double>(row.m));
      spchs.push_back(row.median_ms);
      if (row.m == 100) spchs_at_100 = row.median_ms;
      Check(row.pairings >= last_pairings, "pairing counts not monotone");
      last_pairings = row.pairings;
    }
  }
  Check(spchs.size() == 11 && peks.size() == 11, "expected 11 rows per scheme");
  const double r2 = bench::LinearFitR2(ms, spchs);
  const auto [lo, hi] = std::minmax_element(peks.begin(), peks.end());
  const double variation = (*hi - *lo) / *lo;
  const double ratio = peks_at_100 / spchs_at_100;

  char buf[256];
  std::snprintf(buf, sizeof(buf),
                "R^2=%.4f, PEKS spread=%.1f%% (%.0f..%.0f ms), PEKS/SPCHS at m=100 = %.1fx; "
                "csv %s",
                r2, 100 * variation, *lo, *hi, ratio, csv.c_str());
  Check(r2 >= 0.9, std::string("SPCHS time not linear in m: ") + buf);
  Check(variation < 0.2, std::string("PEKS time varies with m: ") + buf);
  Check(ratio >= 5, std::string("PEKS not 5x slower at m=100: ") + buf);
  return buf;
}

std::string Criterion5() {
  group::Group grp;
  Rng rng = Rng::FromSeed(5);
  ibe::RoIbkem kem(grp, rng);
  ibe::HashMaskIbe ibe(grp, rng);
  auto [pk, sk] = kem.Setup();

  auto random_id = [&] {
    Bytes id(1 + rng.Uniform(32));
    rng.Fill(id);
    return id;
  };
  for (int i = 0; i < 100; ++i) {
    const Bytes id = random_id(), other = random_id();
    const auto r = kem.SampleRandomness();
    const auto enc = kem.Encaps(pk, id, r).encapsulation;
    const auto dec = kem.Decaps(kem.Extract(sk, other), enc);
    Check(dec.has_value() && *dec == kem.Fim(pk, other, r),
          "malleability fails for triple " + std::to_string(i));
  }
  std::set<Bytes> outputs;
  for (int i = 0; i < 1000; ++i) {
    const auto k = kem.Fim(pk, random_id(), kem.SampleRandomness());
    outputs.insert(Bytes(k.begin(), k.end()));
  }
  Check(outputs.size() == 1000, "only " + std::to_string(outputs.size()) + " distinct outputs");

  const auto report = ibe::CheckBackends(kem, ibe, rng);
  Check(report.ok(), report.Summary());
  return "100/100 triples malleable, 1000/1000 distinct outputs, conformance suite clean";
}

std::string Criterion6() {
  size_t checks = 0;
  for (BackendId id : {BackendId::kScratch, BackendId::kGeneric}) {
    Rng rng = Rng::FromSeed(6);
    auto backend = MakeBackend(id, rng);
    const auto keys = backend->Setup();
    auto sender = backend->NewStructure(keys.mpk);
    store::TagStore st(id);
    for (const char* kw : {"a", "b", "a", "c", "a"}) st.Insert(sender->Encrypt(AsBytes(kw)));
    const Bytes trap = backend->Trapdoor(keys.msk, AsBytes("a"));

    const fs::path dir = fs::temp_directory_path() / ("spchs_acceptance_" + BackendName(id));
    fs::create_directories(dir);
    using keyfile::Role;
    const std::vector<std::pair<Role, Bytes>> files = {{Role::kMasterPublic, keys.mpk},
                                                       {Role::kMasterSecret, keys.msk},
                                                       {Role::kStructurePublic, sender->public_part()},
                                                       {Role::kTrapdoor, trap}};
    for (const auto& [role, body] : files) {
      const auto path = (dir / keyfile::RoleName(role)).string();
      const Bytes framed = keyfile::Frame(role, id, body);
      WriteFile(path, framed);
      const Bytes back = ReadFile(path);
      Check(back == framed, "key file bytes changed on disk");
      const auto un = keyfile::Unframe(back, role);
      Check(un.body == body && un.backend == id, "key file body differs after reload");
      ++checks;
    }
    // Reloaded keys still work: same trapdoor, same search result.
    const auto msk_path = (dir / keyfile::RoleName(Role::kMasterSecret)).string();
    Check(backend->Trapdoor(keyfile::Unframe(ReadFile(msk_path)).body,
                            AsBytes("a")) == trap,
          "reloaded msk derives a different trapdoor");
    if (id == BackendId::kScratch) {
      Check(scratch::MasterPublicKey::Decode(keys.mpk).Encode() == keys.mpk, "mpk re-encode");
      Check(scratch::MasterSecretKey::Decode(keys.msk).Encode() == keys.msk, "msk re-encode");
      Check(scratch::Trapdoor::Decode(trap).Encode() == trap, "trapdoor re-encode");
      checks += 3;
    }

    const Bytes state = sender->SerializePrivate();
    const auto seal_key = vault::GenerateKey(rng);
    const Bytes sealed = vault::ExportPrivate(id, state, seal_key, rng);
    Check(vault::ImportPrivate(id, sealed, seal_key) == state, "private part round trip");
    Check(backend->RestoreStructure(keys.mpk, state)->SerializePrivate() == state,
          "private part canonical re-serialization");
    for (size_t pos = 0; pos < sealed.size(); ++pos) {
      Bytes bad = sealed;
      bad[pos] ^= 0x01;
      ExpectThrow([&] { vault::ImportPrivate(id, bad, seal_key); },
                  "tampered private part, byte " + std::to_string(pos));
    }
    for (size_t len = 0; len < sealed.size(); ++len) {
      ExpectThrow([&] { vault::ImportPrivate(id, BytesView(sealed).first(len), seal_key); },
                  "truncated private part, length " + std::to_string(len));
    }
    auto wrong = seal_key;
    wrong[31] ^= 0x02;
    ExpectThrow([&] { vault::ImportPrivate(id, sealed, wrong); }, "wrong seal key");
    checks += 2 * sealed.size() + 3;

    const auto store_path = (dir / "store.db").string();
    st.Persist(store_path);
    const Bytes file = ReadFile(store_path);
    const auto loaded = store::TagStore::Load(store_path);
    Check(loaded.records() == st.records() && loaded.Serialize() == file, "store round trip");
    Check(backend->Search(keys.mpk, sender->public_part(), loaded, trap).ordinals ==
              std::vector<uint64_t>({0, 2, 4}),
          "search over reloaded store");
    for (size_t len = 0; len < file.size(); ++len) {
      ExpectThrow([&] { store::TagStore::Deserialize(BytesView(file).first(len)); },
                  "truncated store, length " + std::to_string(len));
    }
    const Bytes empty = store::TagStore(id).Serialize();
    Check(empty.size() == store::TagStore::kHeaderBytes &&
              store::TagStore::Deserialize(empty).Serialize() == empty,
          "empty store is not a 16-byte round trip");
    checks += file.size() + 3;
    fs::remove_all(dir);
  }
  return std::to_string(checks) + " round-trip and rejection checks over both backends";
}

std::string Criterion7() {
  size_t cases = 0;
  auto bounded = [&](const std::string& what, std::function<void()> search) {
    auto fut = std::async(std::launch::async, [&] {
      try {
        search();
      } catch (const MalformedStoreError&) {
        return true;
      }
      return false;
    });
    if (fut.wait_for(std::chrono::seconds(120)) != std::future_status::ready) {
      std::cout << "FAIL criterion 7: " << what << " did not terminate" << std::endl;
      std::_Exit(1);
    }
    Check(fut.get(), what + ": no malformed-store error");
    ++cases;
  };

  group::Group grp;
  Rng rng = Rng::FromSeed(7);
  scratch::Scheme scheme(grp, rng);
  auto [mpk, msk] = scheme.SystemSetup();
  auto [pri, pub] = scheme.InitStructure(mpk);
  const auto trap = scheme.MakeTrapdoor(msk, AsBytes("w"));
  for (auto [length, padding] : std::vector<std::pair<size_t, size_t>>{{1, 0}, {2, 3}, {9, 20}}) {
    const auto st = testing::BuildCycleStore(grp, rng, msk, pub, AsBytes("w"), length, padding);
    grp.Reset();
    bounded("scratch cycle of " + std::to_string(length),
            [&] { scheme.Search(mpk, pub, st, trap); });
    // One anchor pairing, then one pointer disclosure per iteration.
    const uint64_t iterations = grp.Snapshot().pairings - 1;
    Check(iterations <= st.size(), "used " + std::to_string(iterations) + " iterations on " +
                                       std::to_string(st.size()) + " records");
  }

  group::Group ggrp;
  ibe::RoIbkem kem(ggrp, rng);
  ibe::HashMaskIbe ibe(ggrp, rng);
  generic::RoScheme gs(kem, ibe, rng);
  auto [gmpk, gmsk] = gs.SystemSetup();
  auto [gpri, gpub] = gs.InitStructure(gmpk);
  const auto gtrap = gs.MakeTrapdoor(gmsk, AsBytes("w"));
  std::vector<Digest> tags = {*kem.Decaps(gtrap.kem, gpub.head)};
  for (int i = 0; i < 5; ++i) {
    Digest d;
    rng.Fill(d);
    tags.push_back(d);
  }
  store::TagStore gst(BackendId::kGeneric);
  for (size_t i = 0; i < tags.size(); ++i) {
    generic::RoScheme::Ciphertext ct{tags[i],
                                     ibe.Encrypt(gmpk.ibe, AsBytes("w"), tags[(i + 1) % tags.size()])};
    gst.Insert(ct.ToRecord(gpub));
  }
  bounded("generic cycle of 6", [&] { gs.Search(gmpk, gpub, gst, gtrap); });
  return std::to_string(cases) + " cyclic stores rejected within store-size iterations";
}

}  // namespace
}  // namespace spchs::acceptance

int main() {
  using namespace spchs::acceptance;
  const std::vector<std::pair<const char*, std::function<std::string()>>> criteria = {
      {"1 scratch consistency on 50 seeded corpora", Criterion1},
      {"2 generic consistency on the same corpora", Criterion2},
      {"3 exact pairing counts", Criterion3},
      {"4 search time trend at n=10^4", Criterion4},
      {"5 full-identity malleability and collision freeness", Criterion5},
      {"6 file round trips and tamper rejection", Criterion6},
      {"7 pointer cycles terminate", Criterion7},
  };
  int failed = 0;
  for (const auto& [name, fn] : criteria) {
    const auto start = std::chrono::steady_clock::now();
    std::string detail;
    bool ok = false;
    try {
      detail = fn();
      ok = true;
    } catch (const std::exception& e) {
      detail = e.what();
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::cout << (ok ? "PASS" : "FAIL") << " criterion " << name << ": " << detail << " ["
              << static_cast<int>(secs) << " s]" << std::endl;
    failed += ok ? 0 : 1;
  }
  return failed == 0 ? 0 : 1;
}
