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

#include "jfss/container.hpp"

#include <algorithm>

namespace jfss::container {
namespace {

void put_u16(Bytes& out, std::uint16_t v) {
  out.push_back(static_cast<std::uint8_t>(v >> 8));
  out.push_back(static_cast<std::uint8_t>(v));
}

void put_u64(Bytes& out, std::uint64_t v) {
  for (int shift = 56; shift >= 0; shift -= 8) {
    out.push_back(static_cast<std::uint8_t>(v >> shift));
  }
}

template <std::size_t N>
void put_array(Bytes& out, const std::array<std::uint8_t, N>& a) {
  out.insert(out.end(), a.begin(), a.end());
}

// Bounds-checked big-endian cursor. Every read past the end is a
// FormatError(kTruncated).
class Reader {
 public:
  explicit Reader(ByteView bytes) : bytes_(bytes) {}

  ByteView take(std::size_t n) {
    if (bytes_.size() - pos_ < n) {
      throw FormatError(FormatFault::kTruncated, "input truncated");
    }
    ByteView out = bytes_.subspan(pos_, n);
    pos_ += n;
    return out;
  }

  std::uint8_t u8() { return take(1)[0]; }

  std::uint16_t u16() {
    ByteView b = take(2);
    return static_cast<std::uint16_t>((b[0] << 8) | b[1]);
  }

  std::uint64_t u64() {
    ByteView b = take(8);
    std::uint64_t v = 0;
    for (std::uint8_t x : b) v = (v << 8) | x;
    return v;
  }

  template <std::size_t N>
  std::array<std::uint8_t, N> array() {
    ByteView b = take(N);
    std::array<std::uint8_t, N> out{};
    std::copy(b.begin(), b.end(), out.begin());
    return out;
  }

  std::size_t pos() const { return pos_; }
  ByteView rest() const { return bytes_.subspan(pos_); }

 private:
  ByteView bytes_;
  std::size_t pos_ = 0;
};

bool valid_utf8(std::string_view s) {
  std::size_t i = 0;
  while (i < s.size()) {
    const auto c = static_cast<unsigned char>(s[i]);
    std::size_t len = 0;
    std::uint32_t cp = 0;
    if (c < 0x80) {
      ++i;
      continue;
    } else if ((c & 0xe0) == 0xc0) {
      len = 2;
      cp = c & 0x1f;
    } else if ((c & 0xf0) == 0xe0) {
      len = 3;
      cp = c & 0x0f;
    } else if ((c & 0xf8) == 0xf0) {
      len = 4;
      cp = c & 0x07;
    } else {
      return false;
    }
    if (s.size() - i < len) return false;
    for (std::size_t k = 1; k < len; ++k) {
      const auto cc = static_cast<unsigned char>(s[i + k]);
      if ((cc & 0xc0) != 0x80) return false;
      cp = (cp << 6) | (cc & 0x3f);
    }
    static constexpr std::uint32_t kMinForLen[] = {0, 0, 0x80, 0x800, 0x10000};
    if (cp < kMinForLen[len] || cp > 0x10ffff ||
        (cp >= 0xd800 && cp <= 0xdfff)) {
      return false;
    }
    i += len;
  }
  return true;
}

}  // namespace

FileId FileId::generate() {
  FileId id;
  crypto::random_bytes(id.bytes);
  id.bytes[6] = static_cast<std::uint8_t>((id.bytes[6] & 0x0f) | 0x40);
  id.bytes[8] = static_cast<std::uint8_t>((id.bytes[8] & 0x3f) | 0x80);
  return id;
}

std::string FileId::hex() const { return to_hex(bytes); }

bool is_valid_name(std::string_view name) {
  if (name.size() > kMaxNameLen) return false;
  if (name == "." || name == "..") return false;
  if (name.find_first_of(std::string_view("/\\\0", 3)) !=
      std::string_view::npos) {
    return false;
  }
  return valid_utf8(name);
}

Bytes encode_header(const ContainerHeader& header) {
  if (header.version != kVersion) {
    throw Error(Errc::kInvalidHeader, "unsupported container version");
  }
  if (header.cipher_id != kCipherAes256Gcm) {
    throw Error(Errc::kInvalidHeader, "unsupported cipher id");
  }
  if (!is_valid_name(header.original_name)) {
    throw Error(Errc::kInvalidHeader, "invalid original name");
  }
  Bytes out;
  out.reserve(kFixedHeaderSize + header.original_name.size());
  put_array(out, kContainerMagic);
  put_u16(out, header.version);
  out.push_back(header.cipher_id);
  put_array(out, header.file_id.bytes);
  put_array(out, header.nonce.bytes);
  put_u16(out, static_cast<std::uint16_t>(header.original_name.size()));
  out.insert(out.end(), header.original_name.begin(),
             header.original_name.end());
  put_u64(out, header.original_len);
  return out;
}

Bytes encode_container(const ContainerHeader& header, ByteView sealed) {
  if (sealed.size() < crypto::kTagSize) {
    throw Error(Errc::kMalformedInput, "sealed payload shorter than tag");
  }
  Bytes out = encode_header(header);
  out.insert(out.end(), sealed.begin(), sealed.end());
  return out;
}

DecodedContainer decode_container(ByteView bytes) {
  Reader in(bytes);
  if (bytes.size() >= kContainerMagic.size()) {
    if (!std::equal(kContainerMagic.begin(), kContainerMagic.end(),
                    bytes.begin())) {
      throw FormatError(FormatFault::kBadMagic, "not a JFSS container");
    }
  }
  in.take(kContainerMagic.size());

  DecodedContainer out;
  ContainerHeader& h = out.header;
  h.version = in.u16();
  if (h.version != kVersion) {
    throw FormatError(FormatFault::kBadVersion, "unsupported version");
  }
  h.cipher_id = in.u8();
  if (h.cipher_id != kCipherAes256Gcm) {
    throw FormatError(FormatFault::kBadCipher, "unsupported cipher id");
  }
  h.file_id.bytes = in.array<16>();
  h.nonce.bytes = in.array<crypto::kNonceSize>();
  const std::uint16_t name_len = in.u16();
  if (name_len > kMaxNameLen) {
    throw FormatError(FormatFault::kBadName, "name too long");
  }
  ByteView name = in.take(name_len);
  h.original_name.assign(name.begin(), name.end());
  if (!is_valid_name(h.original_name)) {
    throw FormatError(FormatFault::kBadName, "invalid original name");
  }
  h.original_len = in.u64();

  const std::size_t header_len = in.pos();
  ByteView sealed = in.rest();
  if (sealed.size() < crypto::kTagSize) {
    throw FormatError(FormatFault::kTruncated, "sealed payload truncated");
  }
  out.header_bytes.assign(bytes.begin(), bytes.begin() + header_len);
  out.sealed.assign(sealed.begin(), sealed.end());
  return out;
}

Bytes encode_keyfile(const KeyFileRecord& record) {
  if (record.version != kVersion) {
    throw Error(Errc::kInvalidRecord, "unsupported key file version");
  }
  Bytes out;
  out.reserve(kKeyFileSize);
  put_array(out, kKeyFileMagic);
  put_u16(out, record.version);
  put_array(out, record.file_id.bytes);
  out.insert(out.end(), record.key.view().begin(), record.key.view().end());
  return out;
}

KeyFileRecord decode_keyfile(ByteView bytes) {
  if (bytes.size() >= kKeyFileMagic.size() &&
      !std::equal(kKeyFileMagic.begin(), kKeyFileMagic.end(), bytes.begin())) {
    throw FormatError(FormatFault::kBadMagic, "not a JFSS key file");
  }
  if (bytes.size() != kKeyFileSize) {
    throw FormatError(FormatFault::kBadLength, "key file must be 54 octets");
  }
  Reader in(bytes);
  in.take(kKeyFileMagic.size());
  KeyFileRecord rec;
  rec.version = in.u16();
  if (rec.version != kVersion) {
    throw FormatError(FormatFault::kBadVersion, "unsupported key version");
  }
  rec.file_id.bytes = in.array<16>();
  rec.key = crypto::SymmetricKey::from(in.take(crypto::kKeySize));
  return rec;
}

}  // namespace jfss::container
