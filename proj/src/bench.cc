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

#include "spchs/bench.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <ostream>
#include <set>
#include <sstream>

#include "spchs/backend.h"
#include "spchs/peks.h"
#include "spchs/scratch.h"

namespace spchs::bench {
namespace {

using Clock = std::chrono::steady_clock;

double ElapsedMs(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

std::vector<size_t> DistinctProbes(const BenchConfig& cfg) {
  std::set<size_t> s(cfg.m_list.begin(), cfg.m_list.end());
  return {s.begin(), s.end()};
}

// Inverse-CDF sampler over ranks 1..universe with weight rank^-s.
class ZipfSampler {
 public:
  ZipfSampler(size_t universe, double s) : cdf_(universe) {
    double acc = 0;
    for (size_t k = 0; k < universe; ++k) {
      acc += 1.0 / std::pow(static_cast<double>(k + 1), s);
      cdf_[k] = acc;
    }
    for (auto& c : cdf_) c /= acc;
  }

  size_t Sample(Rng& rng) const {
    const double u = rng.NextDouble();
    auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
    return std::min<size_t>(static_cast<size_t>(it - cdf_.begin()), cdf_.size() - 1);
  }

 private:
  std::vector<double> cdf_;
};

}  // namespace

void Validate(const BenchConfig& cfg) {
  if (cfg.structures < 1) throw ConfigError("n_structures must be at least 1");
  if (cfg.n < cfg.structures) throw ConfigError("n must be at least n_structures");
  if (cfg.repetitions < 1) throw ConfigError("repetitions must be at least 1");
  if (cfg.m_list.empty()) throw ConfigError("m-list is empty");
  size_t probe_total = 0;
  for (size_t m : DistinctProbes(cfg)) {
    if (m > cfg.n) {
      throw ConfigError("m = " + std::to_string(m) + " exceeds n = " + std::to_string(cfg.n));
    }
    probe_total += m;
  }
  if (probe_total > cfg.n) {
    throw ConfigError("probe keywords need " + std::to_string(probe_total) +
                      " ciphertexts but n = " + std::to_string(cfg.n));
  }
  if (probe_total < cfg.n && cfg.keyword_universe == 0) {
    throw ConfigError("filler ciphertexts need a nonempty keyword universe");
  }
  if (cfg.distribution == Distribution::kZipf && !(cfg.zipf_exponent > 0)) {
    throw ConfigError("zipf exponent must be positive");
  }
  if (cfg.backend == BackendId::kPeks) {
    throw ConfigError("bench backend must be scratch or generic");
  }
}

Bytes ProbeKeyword(size_t m) { return ToBytes("probe-" + std::to_string(m)); }

std::vector<Bytes> GenerateKeywords(const BenchConfig& cfg, Rng& rng) {
  Validate(cfg);
  std::vector<Bytes> out;
  out.reserve(cfg.n);
  for (size_t m : DistinctProbes(cfg)) {
    for (size_t i = 0; i < m; ++i) out.push_back(ProbeKeyword(m));
  }
  const size_t filler = cfg.n - out.size();
  if (filler > 0) {
    if (cfg.distribution == Distribution::kZipf) {
      ZipfSampler zipf(cfg.keyword_universe, cfg.zipf_exponent);
      for (size_t i = 0; i < filler; ++i) {
        out.push_back(ToBytes("kw-" + std::to_string(zipf.Sample(rng))));
      }
    } else {
      for (size_t i = 0; i < filler; ++i) {
        out.push_back(ToBytes("kw-" + std::to_string(rng.Uniform(cfg.keyword_universe))));
      }
    }
  }
  std::shuffle(out.begin(), out.end(), rng);
  return out;
}

BenchResult RunBench(const BenchConfig& cfg, std::ostream* progress) {
  Validate(cfg);
  auto log = [&](const std::string& line) {
    if (progress) *progress << line << std::endl;
  };

  Rng rng = Rng::FromSeed(cfg.seed);
  const std::vector<Bytes> keywords = GenerateKeywords(cfg, rng);

  auto backend = MakeBackend(cfg.backend, rng);
  const EncodedMasterKeys keys = backend->Setup();
  std::vector<std::unique_ptr<Sender>> senders;
  for (size_t i = 0; i < cfg.structures; ++i) senders.push_back(backend->NewStructure(keys.mpk));
  store::TagStore store(backend->id());
  {
    const auto start = Clock::now();
    for (const auto& kw : keywords) {
      store.Insert(senders[rng.Uniform(cfg.structures)]->Encrypt(kw));
    }
    log("built " + BackendName(backend->id()) + " corpus of " + std::to_string(cfg.n) + " in " +
        std::to_string(ElapsedMs(start) / 1000.0) + " s");
  }

  // PEKS shares the receiver keys with the scratch backend; with the generic
  // backend it gets its own pairing-based key pair.
  group::Group peks_group;
  peks::Scheme peks_scheme(peks_group, rng);
  scratch::Scheme peks_keys_scheme(peks_group, rng);
  scratch::MasterPublicKey peks_mpk;
  scratch::MasterSecretKey peks_msk;
  if (cfg.backend == BackendId::kScratch) {
    peks_mpk = scratch::MasterPublicKey::Decode(keys.mpk);
    peks_msk = scratch::MasterSecretKey::Decode(keys.msk);
  } else {
    std::tie(peks_mpk, peks_msk) = peks_keys_scheme.SystemSetup();
  }
  std::vector<peks::Ciphertext> peks_corpus;
  if (cfg.include_peks) {
    const auto start = Clock::now();
    peks_corpus.reserve(cfg.n);
    for (const auto& kw : keywords) peks_corpus.push_back(peks_scheme.Encrypt(peks_mpk, kw));
    log("built peks corpus of " + std::to_string(cfg.n) + " in " +
        std::to_string(ElapsedMs(start) / 1000.0) + " s");
  }

  std::vector<Bytes> pubs;
  for (const auto& s : senders) pubs.push_back(s->public_part());

  struct Probe {
    Bytes trap;
    scratch::Trapdoor peks_trap;
    BenchRow row, prow;
    std::vector<double> times, peks_times;
  };
  std::vector<Probe> probes;
  for (size_t m : cfg.m_list) {
    const Bytes kw = ProbeKeyword(m);
    Probe p;
    p.trap = backend->Trapdoor(keys.msk, kw);
    if (cfg.include_peks) p.peks_trap = peks_keys_scheme.MakeTrapdoor(peks_msk, kw);
    p.row = {BackendName(cfg.backend), cfg.n, cfg.structures, m, 0, 0, 0, cfg.repetitions};
    p.prow = {"peks", cfg.n, cfg.structures, m, 0, 0, 0, cfg.repetitions};
    probes.push_back(std::move(p));
  }

  // Repetitions run round-robin over the probes so that slow phases of the
  // machine spread across all m values instead of landing on one.
  for (size_t rep = 0; rep < cfg.repetitions; ++rep) {
    for (auto& p : probes) {
      const size_t m = p.row.m;
      backend->group().Reset();
      size_t found = 0, comparisons = 0;
      auto start = Clock::now();
      for (const auto& pub : pubs) {
        auto r = backend->Search(keys.mpk, pub, store, p.trap);
        found += r.ordinals.size();
        comparisons += r.comparisons;
      }
      p.times.push_back(ElapsedMs(start));
      const uint64_t pairings = backend->group().Snapshot().pairings;
      if (found != m) {
        throw Error("structured search returned " + std::to_string(found) + " matches, expected " +
                    std::to_string(m));
      }
      if (rep > 0 && (pairings != p.row.pairings || comparisons != p.row.comparisons)) {
        throw Error("operation counts differ between repetitions");
      }
      p.row.pairings = pairings;
      p.row.comparisons = comparisons;

      if (!cfg.include_peks) continue;
      peks_group.Reset();
      start = Clock::now();
      const auto hits = peks_scheme.Search(peks_corpus, p.peks_trap);
      p.peks_times.push_back(ElapsedMs(start));
      if (hits.size() != m) {
        throw Error("PEKS search returned " + std::to_string(hits.size()) + " matches, expected " +
                    std::to_string(m));
      }
      p.prow.pairings = peks_group.Snapshot().pairings;
      p.prow.comparisons = peks_corpus.size();
    }
    log("repetition " + std::to_string(rep + 1) + "/" + std::to_string(cfg.repetitions) + " done");
  }

  BenchResult result;
  for (auto& p : probes) {
    p.row.median_ms = Median(p.times);
    result.rows.push_back(p.row);
    log(p.row.backend + " m=" + std::to_string(p.row.m) + " median_ms=" +
        std::to_string(p.row.median_ms) + " pairings=" + std::to_string(p.row.pairings));
    if (!cfg.include_peks) continue;
    p.prow.median_ms = Median(p.peks_times);
    result.rows.push_back(p.prow);
    log("peks m=" + std::to_string(p.prow.m) + " median_ms=" + std::to_string(p.prow.median_ms) +
        " pairings=" + std::to_string(p.prow.pairings));
  }
  return result;
}

std::string ToCsv(const BenchResult& result) {
  std::string out(kCsvHeader);
  out += '\n';
  char buf[64];
  for (const auto& r : result.rows) {
    std::snprintf(buf, sizeof(buf), "%.3f", r.median_ms);
    out += r.backend + ',' + std::to_string(r.n) + ',' + std::to_string(r.structures) + ',' +
           std::to_string(r.m) + ',' + buf + ',' + std::to_string(r.pairings) + ',' +
           std::to_string(r.comparisons) + ',' + std::to_string(r.repetitions) + '\n';
  }
  return out;
}

void EmitResults(const BenchResult& result, const std::string& path) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw IoError("cannot write results to " + path);
  out << ToCsv(result);
  if (!out) throw IoError("write failed for " + path);
}

std::vector<BenchRow> ParseCsv(std::string_view csv) {
  std::istringstream in{std::string(csv)};
  std::string line;
  if (!std::getline(in, line) || line != kCsvHeader) throw DecodeError("missing CSV header");
  std::vector<BenchRow> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> f;
    std::stringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) f.push_back(cell);
    if (f.size() != 8) throw DecodeError("CSV row must have 8 columns: " + line);
    try {
      rows.push_back({f[0], std::stoull(f[1]), std::stoull(f[2]), std::stoull(f[3]),
                      std::stod(f[4]), std::stoull(f[5]), std::stoull(f[6]), std::stoull(f[7])});
    } catch (const std::logic_error&) {
      throw DecodeError("malformed CSV row: " + line);
    }
  }
  return rows;
}

double Median(std::vector<double> values) {
  if (values.empty()) return 0;
  std::sort(values.begin(), values.end());
  const size_t mid = values.size() / 2;
  return values.size() % 2 ? values[mid] : (values[mid - 1] + values[mid]) / 2;
}

double LinearFitR2(const std::vector<double>& x, const std::vector<double>& y) {
  const size_t n = x.size();
  if (n < 2 || y.size() != n) throw std::invalid_argument("need at least two paired samples");
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
  double sxx = 0, sxy = 0, syy = 0;
  for (size_t i = 0; i < n; ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (sxx == 0) throw std::invalid_argument("x values are constant");
  if (syy == 0) return 1.0;
  return sxy * sxy / (sxx * syy);
}

}  // namespace spchs::bench
