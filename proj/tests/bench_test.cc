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

#include <filesystem>
#include <map>

#include "gtest/gtest.h"

namespace spchs::bench {
namespace {

BenchConfig Small(size_t n, std::vector<size_t> m_list) {
  BenchConfig cfg;
  cfg.n = n;
  cfg.structures = 4;
  cfg.keyword_universe = 50;
  cfg.m_list = std::move(m_list);
  cfg.repetitions = 1;
  return cfg;
}

const BenchRow& Row(const BenchResult& r, std::string_view backend, size_t m) {
  for (const auto& row : r.rows) {
    if (row.backend == backend && row.m == m) return row;
  }
  throw std::out_of_range("no such row");
}

TEST(BenchTest, CounterLawsAtThousand) {
  const auto result = RunBench(Small(1000, {0, 50}));
  ASSERT_EQ(result.rows.size(), 4u);
  EXPECT_EQ(Row(result, "scratch", 0).pairings, 4u);
  EXPECT_EQ(Row(result, "peks", 0).pairings, 1000u);
  EXPECT_EQ(Row(result, "scratch", 50).pairings, 4u + 50u);
  EXPECT_EQ(Row(result, "peks", 50).pairings, 1000u);
}

TEST(BenchTest, CounterLawsGenericBackend) {
  BenchConfig cfg = Small(120, {0, 7, 30});
  cfg.backend = BackendId::kGeneric;
  cfg.structures = 3;
  cfg.repetitions = 2;
  const auto result = RunBench(cfg);
  for (const auto& row : result.rows) {
    if (row.backend == "peks") {
      EXPECT_EQ(row.pairings, 120u);
    } else {
      EXPECT_EQ(row.backend, "generic");
      EXPECT_EQ(row.pairings, 3u + row.m);
    }
  }
}

TEST(BenchTest, DeterministicApartFromTiming) {
  BenchConfig cfg = Small(80, {0, 5, 11});
  cfg.distribution = Distribution::kZipf;
  auto a = RunBench(cfg);
  auto b = RunBench(cfg);
  ASSERT_EQ(a.rows.size(), b.rows.size());
  for (auto* r : {&a, &b}) {
    for (auto& row : r->rows) row.median_ms = 0;
  }
  EXPECT_EQ(ToCsv(a), ToCsv(b));
  Rng r1 = Rng::FromSeed(5), r2 = Rng::FromSeed(5);
  EXPECT_EQ(GenerateKeywords(cfg, r1), GenerateKeywords(cfg, r2));
}

TEST(BenchTest, GeneratorPinsProbeCounts) {
  for (Distribution d : {Distribution::kUniform, Distribution::kZipf}) {
    BenchConfig cfg = Small(500, {0, 3, 40, 100});
    cfg.distribution = d;
    Rng rng = Rng::FromSeed(9);
    const auto kws = GenerateKeywords(cfg, rng);
    ASSERT_EQ(kws.size(), 500u);
    std::map<Bytes, size_t> counts;
    for (const auto& k : kws) ++counts[k];
    EXPECT_EQ(counts.count(ProbeKeyword(0)), 0u);
    EXPECT_EQ(counts[ProbeKeyword(3)], 3u);
    EXPECT_EQ(counts[ProbeKeyword(40)], 40u);
    EXPECT_EQ(counts[ProbeKeyword(100)], 100u);
  }
}

TEST(BenchTest, ZipfSkewsTowardLowRanks) {
  BenchConfig cfg = Small(4000, {0});
  cfg.distribution = Distribution::kZipf;
  cfg.zipf_exponent = 1.2;
  Rng rng = Rng::FromSeed(10);
  std::map<Bytes, size_t> counts;
  for (const auto& k : GenerateKeywords(cfg, rng)) ++counts[k];
  EXPECT_GT(counts[ToBytes("kw-0")], counts[ToBytes("kw-9")]);
  EXPECT_GT(counts[ToBytes("kw-0")], 4000u / 50u);
}

TEST(BenchTest, RejectsBadConfigs) {
  EXPECT_THROW(Validate(Small(10, {11})), ConfigError);
  EXPECT_THROW(Validate(Small(10, {6, 5})), ConfigError);
  BenchConfig cfg = Small(3, {0});
  EXPECT_THROW(Validate(cfg), ConfigError);  // n < n_structures
  cfg = Small(10, {0});
  cfg.structures = 0;
  EXPECT_THROW(Validate(cfg), ConfigError);
  cfg = Small(10, {});
  EXPECT_THROW(Validate(cfg), ConfigError);
  cfg = Small(10, {0});
  cfg.repetitions = 0;
  EXPECT_THROW(Validate(cfg), ConfigError);
  cfg = Small(10, {0});
  cfg.backend = BackendId::kPeks;
  EXPECT_THROW(Validate(cfg), ConfigError);
  EXPECT_NO_THROW(Validate(Small(10, {10})));
  EXPECT_NO_THROW(Validate(Small(10, {4, 4, 6})));
}

TEST(BenchTest, CsvRoundTrip) {
  BenchResult r;
  r.rows.push_back({"scratch", 1000, 4, 50, 12.5, 54, 400, 3});
  const std::string csv = ToCsv(r);
  EXPECT_EQ(csv, std::string(kCsvHeader) + "\nscratch,1000,4,50,12.500,54,400,3\n");
  EXPECT_EQ(ParseCsv(csv), r.rows);
  EXPECT_THROW(ParseCsv("nope\n"), DecodeError);
  EXPECT_THROW(ParseCsv(std::string(kCsvHeader) + "\nscratch,1,2\n"), DecodeError);
}

TEST(BenchTest, EmitResults) {
  BenchResult r;
  r.rows.push_back({"peks", 10, 1, 0, 1.0, 10, 10, 1});
  const auto path = (std::filesystem::temp_directory_path() / "spchs_bench_test.csv").string();
  EmitResults(r, path);
  const Bytes data = ReadFile(path);
  EXPECT_EQ(ParseCsv(ToString(data)), r.rows);
  std::filesystem::remove(path);
  try {
    EmitResults(r, "/nonexistent-dir/out.csv");
    FAIL() << "expected IoError";
  } catch (const IoError& e) {
    EXPECT_NE(std::string(e.what()).find("/nonexistent-dir/out.csv"), std::string::npos);
  }
}

TEST(BenchStatsTest, Median) {
  EXPECT_DOUBLE_EQ(Median({3, 1, 2}), 2);
  EXPECT_DOUBLE_EQ(Median({4, 1, 2, 3}), 2.5);
}

TEST(BenchStatsTest, LinearFit) {
  EXPECT_NEAR(LinearFitR2({0, 1, 2, 3}, {1, 3, 5, 7}), 1.0, 1e-12);
  // y = (0, 1, 0, 1) on x = (0, 1, 2, 3): slope 0.2, SSres 0.8, SStot 1.
  EXPECT_NEAR(LinearFitR2({0, 1, 2, 3}, {0, 1, 0, 1}), 0.2, 1e-12);
  EXPECT_THROW(LinearFitR2({1}, {1}), std::invalid_argument);
  EXPECT_THROW(LinearFitR2({2, 2}, {1, 3}), std::invalid_argument);
}

}  // namespace
}  // namespace spchs::bench
