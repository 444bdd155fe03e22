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

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace spchs {

using Bytes = std::vector<uint8_t>;
using BytesView = std::span<const uint8_t>;

// Output length of every key-derivation step (lambda = 256 bits).
inline constexpr size_t kDigestBytes = 32;
using Digest = std::array<uint8_t, kDigestBytes>;

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed, truncated or non-canonical encodings.
class DecodeError : public Error {
 public:
  using Error::Error;
};

// The store violates a structural assumption of the search (duplicate tags,
// pointer cycles, undecodable payloads).
class MalformedStoreError : public Error {
 public:
  using Error::Error;
};

class DuplicateTagError : public Error {
 public:
  using Error::Error;
};

class AuthenticationError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

inline BytesView AsBytes(std::string_view s) {
  return {reinterpret_cast<const uint8_t*>(s.data()), s.size()};
}

inline Bytes ToBytes(std::string_view s) {
  auto v = AsBytes(s);
  return {v.begin(), v.end()};
}

inline std::string ToString(BytesView b) {
  return {reinterpret_cast<const char*>(b.data()), b.size()};
}

std::string ToHex(BytesView b);
Bytes FromHex(std::string_view hex);

// Little-endian fixed-width integer helpers shared by the file formats.
void AppendU32(Bytes& out, uint32_t v);
void AppendU64(Bytes& out, uint64_t v);
void Append(Bytes& out, BytesView v);

// Sequential reader over a byte buffer; throws DecodeError on overrun.
class ByteReader {
 public:
  explicit ByteReader(BytesView data) : data_(data) {}

  BytesView Take(size_t n);
  uint8_t U8();
  uint32_t U32();
  uint64_t U64();
  size_t remaining() const { return data_.size() - pos_; }
  size_t position() const { return pos_; }
  void ExpectEnd() const;

 private:
  BytesView data_;
  size_t pos_ = 0;
};

Bytes ReadFile(const std::string& path);
void WriteFile(const std::string& path, BytesView data);

}  // namespace spchs
