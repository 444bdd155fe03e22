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

#include <filesystem>
#include <sstream>

#include "cli.h"
#include "gtest/gtest.h"
#include "spchs/common.h"
#include "spchs/key_file.h"
#include "spchs/tag_store.h"

namespace spchs::cli {
namespace {

namespace fs = std::filesystem;

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("spchs_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string P(const std::string& name) const { return (dir_ / name).string(); }

  Outcome Run(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = RunCommand(args, out, err);
    return {code, out.str(), err.str()};
  }

  void WriteText(const std::string& name, const std::string& text) {
    WriteFile(P(name), AsBytes(text));
  }

  // Ordinals printed by `search`, in order.
  static std::vector<uint64_t> Ordinals(const std::string& out) {
    std::vector<uint64_t> v;
    std::istringstream in(out);
    std::string line;
    while (std::getline(in, line)) {
      if (!line.empty() && line[0] != '#') v.push_back(std::stoull(line));
    }
    return v;
  }

  fs::path dir_;
};

TEST_F(CliTest, InvoiceReportFlow) {
  for (std::string backend : {"scratch", "generic"}) {
    ASSERT_EQ(Run({"--backend", backend, "setup", "--mpk", P("mpk"), "--msk", P("msk")}).code, 0);
    const auto mpk = keyfile::Unframe(ReadFile(P("mpk")), keyfile::Role::kMasterPublic);
    EXPECT_EQ(BackendName(mpk.backend), backend);
    keyfile::Unframe(ReadFile(P("msk")), keyfile::Role::kMasterSecret);

    ASSERT_EQ(Run({"struct-init", "--mpk", P("mpk"), "--pri", P("pri"), "--pub", P("pub")}).code, 0);
    WriteText("kw", "invoice\nreport\ninvoice\n\nreport\ninvoice\n");
    fs::remove(P("store"));
    const auto enc = Run({"encrypt", "--mpk", P("mpk"), "--pri", P("pri"), "--store", P("store"),
                          "--keyword", P("kw")});
    ASSERT_EQ(enc.code, 0) << enc.err;
    EXPECT_EQ(store::TagStore::Load(P("store")).size(), 5u);

    ASSERT_EQ(Run({"trapdoor", "--msk", P("msk"), "--keyword", "invoice", "--out", P("t")}).code,
              0);
    const auto found = Run({"search", "--mpk", P("mpk"), "--store", P("store"), "--trapdoor",
                            P("t"), "--pub", P("pub")});
    ASSERT_EQ(found.code, 0) << found.err;
    EXPECT_EQ(Ordinals(found.out), (std::vector<uint64_t>{0, 2, 4})) << found.out;
  }
}

TEST_F(CliTest, AppendsAcrossInvocationsAndStructures) {
  ASSERT_EQ(Run({"--seed", "3", "setup", "--mpk", P("mpk"), "--msk", P("msk")}).code, 0);
  ASSERT_EQ(Run({"struct-init", "--mpk", P("mpk"), "--pri", P("a.pri"), "--pub", P("a.pub"),
                 "--pri-key", P("a.key")})
                .code,
            0);
  ASSERT_EQ(Run({"struct-init", "--mpk", P("mpk"), "--pri", P("b.pri"), "--pub", P("b.pub")}).code,
            0);
  WriteText("kw", "w\nx\n");
  auto enc = [&](const std::string& who, bool sealed) {
    std::vector<std::string> args = {"encrypt", "--mpk", P("mpk"), "--pri", P(who + ".pri"),
                                     "--store", P("store"), "--keyword", P("kw")};
    if (sealed) {
      args.push_back("--pri-key");
      args.push_back(P(who + ".key"));
    }
    return Run(args);
  };
  ASSERT_EQ(enc("a", true).code, 0);   // ordinals 0,1
  ASSERT_EQ(enc("b", false).code, 0);  // 2,3
  ASSERT_EQ(enc("a", true).code, 0);   // 4,5
  const auto no_key = enc("a", false);
  EXPECT_EQ(no_key.code, 1);
  EXPECT_NE(no_key.err.find("--pri-key"), std::string::npos);

  ASSERT_EQ(Run({"trapdoor", "--msk", P("msk"), "--keyword", "w", "--out", P("t")}).code, 0);
  const auto all = Run({"search", "--mpk", P("mpk"), "--store", P("store"), "--trapdoor", P("t")});
  ASSERT_EQ(all.code, 0) << all.err;
  EXPECT_EQ(Ordinals(all.out), (std::vector<uint64_t>{0, 4, 2}));
  EXPECT_NE(all.out.find("matches=2"), std::string::npos);
  EXPECT_NE(all.out.find("matches=1"), std::string::npos);
  const auto only_b = Run({"search", "--mpk", P("mpk"), "--store", P("store"), "--trapdoor",
                           P("t"), "--pub", P("b.pub")});
  EXPECT_EQ(Ordinals(only_b.out), (std::vector<uint64_t>{2}));
}

TEST_F(CliTest, WrongKeyTrapdoorFindsNothing) {
  ASSERT_EQ(Run({"setup", "--mpk", P("mpk"), "--msk", P("msk")}).code, 0);
  ASSERT_EQ(Run({"setup", "--mpk", P("mpk2"), "--msk", P("msk2")}).code, 0);
  ASSERT_EQ(Run({"struct-init", "--mpk", P("mpk"), "--pri", P("pri"), "--pub", P("pub")}).code, 0);
  WriteText("kw", "invoice\ninvoice\ninvoice\n");
  ASSERT_EQ(Run({"encrypt", "--mpk", P("mpk"), "--pri", P("pri"), "--store", P("store"),
                 "--keyword", P("kw")})
                .code,
            0);
  ASSERT_EQ(Run({"trapdoor", "--msk", P("msk2"), "--keyword", "invoice", "--out", P("t")}).code, 0);
  const auto r = Run({"search", "--mpk", P("mpk"), "--store", P("store"), "--trapdoor", P("t")});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(Ordinals(r.out).empty());
}

TEST_F(CliTest, SeededRunsAreReproducible) {
  for (const char* tag : {"1", "2"}) {
    ASSERT_EQ(Run({"--seed", "9", "setup", "--mpk", P(std::string("mpk") + tag), "--msk",
                   P(std::string("msk") + tag)})
                  .code,
              0);
  }
  EXPECT_EQ(ReadFile(P("mpk1")), ReadFile(P("mpk2")));
  EXPECT_EQ(ReadFile(P("msk1")), ReadFile(P("msk2")));
  ASSERT_EQ(Run({"--seed", "10", "setup", "--mpk", P("mpk3"), "--msk", P("msk3")}).code, 0);
  EXPECT_NE(ReadFile(P("mpk1")), ReadFile(P("mpk3")));
}

TEST_F(CliTest, UsageErrors) {
  EXPECT_EQ(Run({"frobnicate"}).code, 2);
  const auto none = Run({});
  EXPECT_EQ(none.code, 2);
  EXPECT_NE(none.err.find("Usage"), std::string::npos);
  EXPECT_EQ(Run({"setup", "--mpk", P("x")}).code, 2);
  EXPECT_EQ(Run({"--help"}).code, 0);
}

TEST_F(CliTest, DiagnosticsNameTheFlag) {
  const auto missing = Run({"trapdoor", "--msk", P("absent"), "--keyword", "w", "--out", P("t")});
  EXPECT_EQ(missing.code, 1);
  EXPECT_NE(missing.err.find("--msk"), std::string::npos);

  ASSERT_EQ(Run({"setup", "--mpk", P("mpk"), "--msk", P("msk")}).code, 0);
  const auto wrong_role =
      Run({"trapdoor", "--msk", P("mpk"), "--keyword", "w", "--out", P("t")});
  EXPECT_EQ(wrong_role.code, 1);
  EXPECT_NE(wrong_role.err.find("--msk"), std::string::npos);

  WriteText("store", "not a store");
  ASSERT_EQ(Run({"trapdoor", "--msk", P("msk"), "--keyword", "w", "--out", P("t")}).code, 0);
  const auto bad_store =
      Run({"search", "--mpk", P("mpk"), "--store", P("store"), "--trapdoor", P("t")});
  EXPECT_EQ(bad_store.code, 1);
  EXPECT_NE(bad_store.err.find("--store"), std::string::npos);

  EXPECT_EQ(Run({"--backend", "quantum", "setup", "--mpk", P("a"), "--msk", P("b")}).code, 1);
  const auto bad_m = Run({"bench", "--m", "1,x"});
  EXPECT_EQ(bad_m.code, 1);
  EXPECT_NE(bad_m.err.find("--m"), std::string::npos);
  const auto too_big = Run({"bench", "--n", "10", "--m", "20"});
  EXPECT_EQ(too_big.code, 1);
}

TEST_F(CliTest, BenchWritesCsv) {
  const auto r = Run({"--seed", "4", "bench", "--n", "40", "--structures", "2", "--m", "0,6",
                      "--reps", "1", "--out", P("bench.csv")});
  ASSERT_EQ(r.code, 0) << r.err;
  const std::string csv = ToString(ReadFile(P("bench.csv")));
  EXPECT_EQ(csv.rfind("backend,n,n_structures,m,median_ms,pairings,comparisons,reps\n", 0), 0u);
  EXPECT_NE(csv.find("scratch,40,2,6,"), std::string::npos);
  EXPECT_NE(csv.find("peks,40,2,6,"), std::string::npos);
}

}  // namespace
}  // namespace spchs::cli
