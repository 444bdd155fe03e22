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

// Desk-scale reproduction of the SPCHS-versus-PEKS search comparison:
// synthetic corpora in which a probe keyword occurs exactly m times, timed
// searches for each m, and exact pairing counts per probe.

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "spchs/common.h"
#include "spchs/rng.h"
#include "spchs/tag_store.h"

namespace spchs::bench {

enum class Distribution { kUniform, kZipf };

struct BenchConfig {
  size_t n = 10000;            // total SPCHS ciphertexts (and PEKS ciphertexts)
  size_t structures = 4;       // n_S
  size_t keyword_universe = 1000;
  Distribution distribution = Distribution::kUniform;
  double zipf_exponent = 1.0;
  std::vector<size_t> m_list = {0};
  BackendId backend = BackendId::kScratch;
  size_t repetitions = 3;
  uint64_t seed = 1;
  bool include_peks = true;
};

// Throws ConfigError before any work: n >= n_S >= 1, every m <= n, the
// distinct probe counts fit in n, and filler keywords exist when needed.
void Validate(const BenchConfig& cfg);

struct BenchRow {
  std::string backend;
  size_t n = 0;
  size_t structures = 0;
  size_t m = 0;
  double median_ms = 0;
  uint64_t pairings = 0;
  uint64_t comparisons = 0;
  size_t repetitions = 0;

  bool operator==(const BenchRow&) const = default;
};

struct BenchResult {
  std::vector<BenchRow> rows;
};

inline constexpr std::string_view kCsvHeader =
    "backend,n,n_structures,m,median_ms,pairings,comparisons,reps";

// Keyword that the generated corpus contains exactly m times.
Bytes ProbeKeyword(size_t m);

// The n keywords of the corpus, in encryption order.
std::vector<Bytes> GenerateKeywords(const BenchConfig& cfg, Rng& rng);

BenchResult RunBench(const BenchConfig& cfg, std::ostream* progress = nullptr);

std::string ToCsv(const BenchResult& result);
// Throws IoError naming the path when it cannot be written.
void EmitResults(const BenchResult& result, const std::string& path);
std::vector<BenchRow> ParseCsv(std::string_view csv);

double Median(std::vector<double> values);
// Coefficient of determination of the least-squares line through (x, y).
double LinearFitR2(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace spchs::bench
