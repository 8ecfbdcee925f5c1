// Copyright 2026 The JFSS Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef JFSS_CONTAINER_HPP_
#define JFSS_CONTAINER_HPP_

#include <array>
#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <utility>

#include "jfss/bytes.hpp"
#include "jfss/crypto.hpp"

namespace jfss::container {

// Byte layouts, all integers big-endian.
//
// Container (.jfss):
//   "JFSS" | version u16 = 1 | cipher u8 = 0x01 | file_id[16] | nonce[12]
//   | name_len u16 | name[name_len] | original_len u64 | sealed...
// The header (everything before `sealed`) is the AEAD associated data.
//
// Key file (.jfsk), exactly 54 octets:
//   "JFSK" | version u16 = 1 | file_id[16] | key[32]

inline constexpr std::array<std::uint8_t, 4> kContainerMagic = {'J', 'F', 'S',
                                                                'S'};
inline constexpr std::array<std::uint8_t, 4> kKeyFileMagic = {'J', 'F', 'S',
                                                              'K'};
inline constexpr std::uint16_t kVersion = 1;
inline constexpr std::uint8_t kCipherAes256Gcm = 0x01;
inline constexpr std::size_t kMaxNameLen = 4096;
inline constexpr std::size_t kFixedHeaderSize = 4 + 2 + 1 + 16 + 12 + 2 + 8;
inline constexpr std::size_t kKeyFileSize = 4 + 2 + 16 + crypto::kKeySize;
inline constexpr std::string_view kContainerExt = ".jfss";
inline constexpr std::string_view kKeyFileExt = ".jfsk";

struct FileId {
  std::array<std::uint8_t, 16> bytes{};

  // Random RFC 4122 version-4 UUID.
  static FileId generate();
  // 32 lower-case hex digits, no dashes.
  std::string hex() const;

  friend bool operator==(const FileId&, const FileId&) = default;
};

struct ContainerHeader {
  std::uint16_t version = kVersion;
  std::uint8_t cipher_id = kCipherAes256Gcm;
  FileId file_id;
  crypto::Nonce nonce;
  std::string original_name;
  std::uint64_t original_len = 0;

  friend bool operator==(const ContainerHeader&,
                         const ContainerHeader&) = default;
};

struct KeyFileRecord {
  std::uint16_t version = kVersion;
  FileId file_id;
  crypto::SymmetricKey key;

  friend bool operator==(const KeyFileRecord&, const KeyFileRecord&) = default;
};

struct DecodedContainer {
  ContainerHeader header;
  Bytes header_bytes;  // exact AAD as it appeared on disk
  Bytes sealed;
};

// True iff `name` is valid UTF-8, at most kMaxNameLen octets, and contains no
// '/', '\\' or NUL and is not "." or "..". The empty name is accepted.
bool is_valid_name(std::string_view name);

// Serialized header alone; this is the AAD used when sealing.
// Throws Error(kInvalidHeader).
Bytes encode_header(const ContainerHeader& header);

// header bytes || sealed. Throws Error(kInvalidHeader), or
// Error(kMalformedInput) when sealed is shorter than a tag.
Bytes encode_container(const ContainerHeader& header, ByteView sealed);

// Throws FormatError{kBadMagic, kBadVersion, kBadCipher, kTruncated,
// kBadName}. The returned sealed part is at least one tag long.
DecodedContainer decode_container(ByteView bytes);

// Throws Error(kInvalidRecord) on a bad version.
Bytes encode_keyfile(const KeyFileRecord& record);

// Throws FormatError{kBadLength, kBadMagic, kBadVersion}.
KeyFileRecord decode_keyfile(ByteView bytes);

}  // namespace jfss::container

#endif  // JFSS_CONTAINER_HPP_
