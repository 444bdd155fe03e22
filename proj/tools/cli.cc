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

#include "cli.h"

#include <sodium.h>

#include <CLI11.hpp>
#include <cctype>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>

#include "spchs/backend.h"
#include "spchs/bench.h"
#include "spchs/common.h"
#include "spchs/key_file.h"
#include "spchs/rng.h"
#include "spchs/tag_store.h"

namespace spchs::cli {
namespace {

using keyfile::Role;

// Failure attributable to one command-line flag.
class FlagError : public Error {
 public:
  FlagError(const std::string& flag, const std::string& what) : Error(flag + ": " + what) {}
};

Bytes ReadFlagFile(const std::string& flag, const std::string& path) {
  try {
    return ReadFile(path);
  } catch (const IoError& e) {
    throw FlagError(flag, e.what());
  }
}

void WriteFlagFile(const std::string& flag, const std::string& path, BytesView data) {
  try {
    WriteFile(path, data);
  } catch (const IoError& e) {
    throw FlagError(flag, e.what());
  }
}

keyfile::Framed ReadKeyFile(const std::string& flag, const std::string& path, Role role) {
  const Bytes data = ReadFlagFile(flag, path);
  try {
    return keyfile::Unframe(data, role);
  } catch (const DecodeError& e) {
    throw FlagError(flag, path + ": " + e.what());
  }
}

// Per-invocation randomness. With --seed the stream is a function of the
// seed, the subcommand and the state it mutates, so repeated commands stay
// reproducible without reusing randomness.
Rng MakeRng(std::optional<uint64_t> seed, std::string_view command, BytesView context) {
  if (!seed) return Rng::FromOs();
  crypto_hash_sha256_state st;
  crypto_hash_sha256_init(&st);
  Bytes prefix = ToBytes("spchs-cli-v1");
  AppendU64(prefix, *seed);
  Append(prefix, AsBytes(command));
  prefix.push_back(0);
  crypto_hash_sha256_update(&st, prefix.data(), prefix.size());
  crypto_hash_sha256_update(&st, context.data(), context.size());
  Rng::Seed key;
  crypto_hash_sha256_final(&st, key.data());
  return Rng(key);
}

std::optional<vault::SealKey> LoadSealKey(const std::string& path, Rng* create_with) {
  if (path.empty()) return std::nullopt;
  if (!std::filesystem::exists(path)) {
    if (!create_with) throw FlagError("--pri-key", "cannot open " + path);
    const auto key = vault::GenerateKey(*create_with);
    WriteFlagFile("--pri-key", path, key);
    return key;
  }
  const Bytes raw = ReadFlagFile("--pri-key", path);
  try {
    if (raw.size() == vault::kKeyBytes) return vault::KeyFromBytes(raw);
    std::string hex(raw.begin(), raw.end());
    while (!hex.empty() && std::isspace(static_cast<unsigned char>(hex.back()))) hex.pop_back();
    return vault::KeyFromBytes(FromHex(hex));
  } catch (const DecodeError& e) {
    throw FlagError("--pri-key", path + ": " + e.what());
  }
}

Bytes WrapPrivate(BackendId backend, BytesView state, const std::optional<vault::SealKey>& key,
                  Rng& rng) {
  if (key) return vault::ExportPrivate(backend, state, *key, rng);
  return keyfile::Frame(Role::kStructurePrivatePlain, backend, state);
}

Bytes UnwrapPrivate(const std::string& path, const Bytes& file, BackendId backend,
                    const std::optional<vault::SealKey>& key) {
  keyfile::Framed framed;
  try {
    framed = keyfile::Unframe(file);
  } catch (const DecodeError& e) {
    throw FlagError("--pri", path + ": " + e.what());
  }
  if (framed.backend != backend) throw FlagError("--pri", path + ": belongs to another backend");
  if (framed.role == Role::kStructurePrivatePlain) return framed.body;
  if (framed.role != Role::kStructurePrivateSealed) {
    throw FlagError("--pri", path + ": not a structure private part");
  }
  if (!key) throw FlagError("--pri-key", "required to open sealed " + path);
  try {
    return vault::ImportPrivate(backend, file, *key);
  } catch (const Error& e) {
    throw FlagError("--pri", path + ": " + e.what());
  }
}

std::vector<Bytes> ReadKeywordList(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FlagError("--keyword", "cannot open " + path);
  std::vector<Bytes> out;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!line.empty()) out.push_back(ToBytes(line));
  }
  return out;
}

std::vector<size_t> ParseSizeList(const std::string& text) {
  std::vector<size_t> out;
  std::stringstream ss(text);
  std::string cell;
  while (std::getline(ss, cell, ',')) {
    try {
      size_t used = 0;
      out.push_back(std::stoull(cell, &used));
      if (used != cell.size()) throw std::invalid_argument(cell);
    } catch (const std::logic_error&) {
      throw FlagError("--m", "not a comma-separated list of integers: " + text);
    }
  }
  return out;
}

store::TagStore LoadStore(const std::string& path) {
  const Bytes data = ReadFlagFile("--store", path);
  try {
    return store::TagStore::Deserialize(data);
  } catch (const DecodeError& e) {
    throw FlagError("--store", path + ": " + e.what());
  }
}

BackendId ParseBackendFlag(const std::string& name) {
  try {
    return ParseBackendName(name);
  } catch (const ConfigError& e) {
    throw FlagError("--backend", e.what());
  }
}

struct Options {
  std::optional<uint64_t> seed;
  std::string backend = "scratch";
  std::string mpk, msk, pri, pri_key, pub_out, store, keyword, out, trapdoor;
  std::vector<std::string> pubs;
  size_t n = 10000, structures = 4, universe = 1000, reps = 3;
  std::string distribution = "uniform", m_list = "0";
  double zipf_s = 1.0;
  bool no_peks = false;
};

int CmdSetup(const Options& o, std::ostream& out) {
  const BackendId id = ParseBackendFlag(o.backend);
  Rng rng = MakeRng(o.seed, "setup", {});
  auto backend = MakeBackend(id, rng);
  const auto keys = backend->Setup();
  WriteFlagFile("--mpk", o.mpk, keyfile::Frame(Role::kMasterPublic, id, keys.mpk));
  WriteFlagFile("--msk", o.msk, keyfile::Frame(Role::kMasterSecret, id, keys.msk));
  out << "wrote " << BackendName(id) << " master keys to " << o.mpk << " and " << o.msk << "\n";
  return 0;
}

int CmdStructInit(const Options& o, std::ostream& out) {
  const auto mpk = ReadKeyFile("--mpk", o.mpk, Role::kMasterPublic);
  Bytes ctx = mpk.body;
  Append(ctx, AsBytes(o.pri));
  Rng rng = MakeRng(o.seed, "struct-init", ctx);
  auto backend = MakeBackend(mpk.backend, rng);
  auto sender = backend->NewStructure(mpk.body);
  const auto key = LoadSealKey(o.pri_key, &rng);
  WriteFlagFile("--pri", o.pri, WrapPrivate(mpk.backend, sender->SerializePrivate(), key, rng));
  WriteFlagFile("--pub", o.pub_out,
                keyfile::Frame(Role::kStructurePublic, mpk.backend, sender->public_part()));
  out << "initialized structure " << ToHex(BytesView(sender->public_part()).first(8)) << "\n";
  return 0;
}

int CmdEncrypt(const Options& o, std::ostream& out) {
  const auto mpk = ReadKeyFile("--mpk", o.mpk, Role::kMasterPublic);
  const Bytes pri_file = ReadFlagFile("--pri", o.pri);
  const auto keywords = ReadKeywordList(o.keyword);

  store::TagStore store(mpk.backend);
  if (std::filesystem::exists(o.store)) store = LoadStore(o.store);
  if (store.backend() != mpk.backend) {
    throw FlagError("--store", o.store + ": holds " + BackendName(store.backend()) +
                                   " ciphertexts, master key is " + BackendName(mpk.backend));
  }

  Bytes ctx = pri_file;
  AppendU64(ctx, store.size());
  Rng rng = MakeRng(o.seed, "encrypt", ctx);
  auto backend = MakeBackend(mpk.backend, rng);
  const auto key = LoadSealKey(o.pri_key, nullptr);
  std::unique_ptr<Sender> sender;
  try {
    sender = backend->RestoreStructure(mpk.body, UnwrapPrivate(o.pri, pri_file, mpk.backend, key));
  } catch (const DecodeError& e) {
    throw FlagError("--pri", o.pri + ": " + e.what());
  }

  const size_t first = store.size();
  for (const auto& kw : keywords) store.Insert(sender->Encrypt(kw));
  try {
    store.Persist(o.store);
  } catch (const IoError& e) {
    throw FlagError("--store", e.what());
  }
  WriteFlagFile("--pri", o.pri, WrapPrivate(mpk.backend, sender->SerializePrivate(), key, rng));
  out << "appended " << keywords.size() << " ciphertexts as ordinals " << first << ".."
      << (store.size() == first ? first : store.size() - 1) << "\n";
  return 0;
}

int CmdTrapdoor(const Options& o, std::ostream& out) {
  const auto msk = ReadKeyFile("--msk", o.msk, Role::kMasterSecret);
  Rng rng = MakeRng(o.seed, "trapdoor", {});
  auto backend = MakeBackend(msk.backend, rng);
  Bytes trap;
  try {
    trap = backend->Trapdoor(msk.body, AsBytes(o.keyword));
  } catch (const DecodeError& e) {
    throw FlagError("--msk", o.msk + ": " + e.what());
  }
  WriteFlagFile("--out", o.out, keyfile::Frame(Role::kTrapdoor, msk.backend, trap));
  out << "wrote trapdoor to " << o.out << "\n";
  return 0;
}

int CmdSearch(const Options& o, std::ostream& out) {
  const auto mpk = ReadKeyFile("--mpk", o.mpk, Role::kMasterPublic);
  const auto trap = ReadKeyFile("--trapdoor", o.trapdoor, Role::kTrapdoor);
  const auto store = LoadStore(o.store);
  if (trap.backend != mpk.backend) throw FlagError("--trapdoor", "backend differs from --mpk");
  if (store.backend() != mpk.backend) throw FlagError("--store", "backend differs from --mpk");

  std::vector<Bytes> labels;
  if (o.pubs.empty()) {
    labels = store.Labels();
  } else {
    for (const auto& p : o.pubs) {
      auto framed = ReadKeyFile("--pub", p, Role::kStructurePublic);
      if (framed.backend != mpk.backend) throw FlagError("--pub", p + ": backend differs from --mpk");
      labels.push_back(std::move(framed.body));
    }
  }

  Rng rng = MakeRng(o.seed, "search", {});
  auto backend = MakeBackend(mpk.backend, rng);
  size_t total = 0;
  for (const auto& label : labels) {
    SearchOutcome r;
    try {
      r = backend->Search(mpk.body, label, store, trap.body);
    } catch (const MalformedStoreError& e) {
      throw FlagError("--store", e.what());
    } catch (const DecodeError& e) {
      throw FlagError("--pub", e.what());
    }
    out << "# structure " << ToHex(BytesView(label).first(std::min<size_t>(8, label.size())))
        << " matches=" << r.ordinals.size() << "\n";
    for (uint64_t ord : r.ordinals) out << ord << "\n";
    total += r.ordinals.size();
  }
  out << "# total=" << total << "\n";
  return 0;
}

int CmdBench(const Options& o, std::ostream& out, std::ostream& err) {
  bench::BenchConfig cfg;
  cfg.n = o.n;
  cfg.structures = o.structures;
  cfg.keyword_universe = o.universe;
  cfg.repetitions = o.reps;
  cfg.m_list = ParseSizeList(o.m_list);
  cfg.backend = ParseBackendFlag(o.backend);
  cfg.seed = o.seed.value_or(1);
  cfg.include_peks = !o.no_peks;
  cfg.zipf_exponent = o.zipf_s;
  if (o.distribution == "uniform") {
    cfg.distribution = bench::Distribution::kUniform;
  } else if (o.distribution == "zipf") {
    cfg.distribution = bench::Distribution::kZipf;
  } else {
    throw FlagError("--dist", "expected uniform or zipf, got " + o.distribution);
  }
  const auto result = bench::RunBench(cfg, &err);
  if (o.out.empty()) {
    out << bench::ToCsv(result);
  } else {
    try {
      bench::EmitResults(result, o.out);
    } catch (const IoError& e) {
      throw FlagError("--out", e.what());
    }
    out << "wrote " << result.rows.size() << " rows to " << o.out << "\n";
  }
  return 0;
}

}  // namespace

int RunCommand(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Searchable public-key ciphertexts with hidden structures", "spchs"};
  app.require_subcommand(1);
  app.fallthrough();
  Options o;
  app.add_option("--seed", o.seed, "Derive all randomness deterministically from this seed");
  app.add_option("--backend", o.backend, "scratch | generic")->capture_default_str();

  auto* setup = app.add_subcommand("setup", "Generate master public/secret keys");
  setup->add_option("--mpk", o.mpk, "Output master public key file")->required();
  setup->add_option("--msk", o.msk, "Output master secret key file")->required();

  auto* init = app.add_subcommand("struct-init", "Initialize a sender's hidden structure");
  init->add_option("--mpk", o.mpk, "Master public key file")->required();
  init->add_option("--pri", o.pri, "Output private part")->required();
  init->add_option("--pub", o.pub_out, "Output public part")->required();
  init->add_option("--pri-key", o.pri_key, "Seal the private part with this key (created if absent)");

  auto* enc = app.add_subcommand("encrypt", "Encrypt a keyword list and append it to a store");
  enc->add_option("--mpk", o.mpk, "Master public key file")->required();
  enc->add_option("--pri", o.pri, "Private part (updated in place)")->required();
  enc->add_option("--pri-key", o.pri_key, "Key of a sealed private part");
  enc->add_option("--store", o.store, "Store file (created if absent)")->required();
  enc->add_option("--keyword", o.keyword, "File with one keyword per line")->required();

  auto* trap = app.add_subcommand("trapdoor", "Derive a keyword search trapdoor");
  trap->add_option("--msk", o.msk, "Master secret key file")->required();
  trap->add_option("--keyword", o.keyword, "Keyword")->required();
  trap->add_option("--out", o.out, "Output trapdoor file")->required();

  auto* search = app.add_subcommand("search", "Find a keyword's ciphertexts in a store");
  search->add_option("--mpk", o.mpk, "Master public key file")->required();
  search->add_option("--store", o.store, "Store file")->required();
  search->add_option("--trapdoor", o.trapdoor, "Trapdoor file")->required();
  search->add_option("--pub", o.pubs, "Structure public parts (default: all labels in the store)");

  auto* bench = app.add_subcommand("bench", "Time SPCHS and PEKS search on a synthetic corpus");
  bench->add_option("--n", o.n, "Total ciphertexts")->capture_default_str();
  bench->add_option("--structures", o.structures, "Number of hidden structures")
      ->capture_default_str();
  bench->add_option("--universe", o.universe, "Filler keyword universe size")
      ->capture_default_str();
  bench->add_option("--dist", o.distribution, "uniform | zipf")->capture_default_str();
  bench->add_option("--zipf-s", o.zipf_s, "Zipf exponent")->capture_default_str();
  bench->add_option("--m", o.m_list, "Comma-separated match counts to probe")
      ->capture_default_str();
  bench->add_option("--reps", o.reps, "Repetitions per probe")->capture_default_str();
  bench->add_option("--out", o.out, "CSV output path (default: stdout)");
  bench->add_flag("--no-peks", o.no_peks, "Skip the PEKS baseline");

  std::vector<std::string> argv_rev(args.rbegin(), args.rend());
  try {
    app.parse(argv_rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return 2;
  }

  try {
    if (setup->parsed()) return CmdSetup(o, out);
    if (init->parsed()) return CmdStructInit(o, out);
    if (enc->parsed()) return CmdEncrypt(o, out);
    if (trap->parsed()) return CmdTrapdoor(o, out);
    if (search->parsed()) return CmdSearch(o, out);
    if (bench->parsed()) return CmdBench(o, out, err);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  err << app.help();
  return 2;
}

}  // namespace spchs::cli
