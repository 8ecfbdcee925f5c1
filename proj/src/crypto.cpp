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

#include "jfss/crypto.hpp"

#include <openssl/crypto.h>
#include <openssl/evp.h>
#include <openssl/rand.h>

#include <limits>
#include <memory>

namespace jfss {

std::string_view to_string(Errc code) {
  switch (code) {
    case Errc::kRandomnessUnavailable: return "randomness unavailable";
    case Errc::kMalformedInput: return "malformed input";
    case Errc::kIntegrity: return "integrity check failed";
    case Errc::kEmptyPassword: return "empty password";
    case Errc::kInvalidParams: return "invalid parameters";
    case Errc::kInvalidHeader: return "invalid header";
    case Errc::kInvalidRecord: return "invalid key record";
    case Errc::kFormat: return "format error";
    case Errc::kNoDestination: return "no key destination";
    case Errc::kKeyColocated: return "key colocated with container";
    case Errc::kInvalidConfig: return "invalid keystore config";
    case Errc::kIo: return "i/o error";
    case Errc::kKeyNotFound: return "key not found";
    case Errc::kKeyMismatch: return "key mismatch";
    case Errc::kAlreadyInitialized: return "already initialized";
    case Errc::kWeakPassword: return "weak password";
    case Errc::kInvalidUsername: return "invalid username";
    case Errc::kNotAdmin: return "not admin";
    case Errc::kDuplicateUser: return "duplicate user";
    case Errc::kAuthFailure: return "login failed";
    case Errc::kStoreCorrupt: return "credential store corrupt";
    case Errc::kSourceMissing: return "source missing";
    case Errc::kAlreadyEncrypted: return "already encrypted";
    case Errc::kNameCollision: return "name collision";
    case Errc::kInvalidSelection: return "invalid selection";
  }
  return "unknown";
}

std::string_view to_string(FormatFault fault) {
  switch (fault) {
    case FormatFault::kBadMagic: return "bad magic";
    case FormatFault::kBadVersion: return "bad version";
    case FormatFault::kBadCipher: return "bad cipher";
    case FormatFault::kTruncated: return "truncated";
    case FormatFault::kBadName: return "bad name";
    case FormatFault::kBadLength: return "bad length";
  }
  return "unknown";
}

std::string to_hex(ByteView bytes) {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string out;
  out.reserve(bytes.size() * 2);
  for (std::uint8_t b : bytes) {
    out.push_back(kDigits[b >> 4]);
    out.push_back(kDigits[b & 0x0f]);
  }
  return out;
}

std::optional<Bytes> from_hex(std::string_view hex) {
  if (hex.size() % 2 != 0) return std::nullopt;
  auto nibble = [](char c) -> int {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    return -1;
  };
  Bytes out;
  out.reserve(hex.size() / 2);
  for (std::size_t i = 0; i < hex.size(); i += 2) {
    int hi = nibble(hex[i]);
    int lo = nibble(hex[i + 1]);
    if (hi < 0 || lo < 0) return std::nullopt;
    out.push_back(static_cast<std::uint8_t>((hi << 4) | lo));
  }
  return out;
}

}  // namespace jfss

namespace jfss::crypto {
namespace {

struct CipherCtxDeleter {
  void operator()(EVP_CIPHER_CTX* ctx) const { EVP_CIPHER_CTX_free(ctx); }
};
using CipherCtx = std::unique_ptr<EVP_CIPHER_CTX, CipherCtxDeleter>;

CipherCtx new_ctx() {
  CipherCtx ctx(EVP_CIPHER_CTX_new());
  if (!ctx) throw Error(Errc::kIo, "EVP_CIPHER_CTX_new failed");
  return ctx;
}

// EVP lengths are int; the one-pass container cap keeps us far below this.
int checked_len(std::size_t n) {
  if (n > static_cast<std::size_t>(std::numeric_limits<int>::max())) {
    throw Error(Errc::kMalformedInput, "buffer too large for one-pass AEAD");
  }
  return static_cast<int>(n);
}

}  // namespace

void secure_wipe(std::span<std::uint8_t> bytes) {
  OPENSSL_cleanse(bytes.data(), bytes.size());
}

void random_bytes(std::span<std::uint8_t> out) {
  if (out.empty()) return;
  if (RAND_bytes(out.data(), checked_len(out.size())) != 1) {
    throw Error(Errc::kRandomnessUnavailable, "RAND_bytes failed");
  }
}

SymmetricKey generate_key() {
  SymmetricKey key;
  random_bytes({key.data(), key.size()});
  return key;
}

Nonce generate_nonce() {
  Nonce nonce;
  random_bytes(nonce.bytes);
  return nonce;
}

KdfParams generate_kdf_params(std::uint32_t iterations) {
  if (iterations < kMinIterations) {
    throw Error(Errc::kInvalidParams, "iterations below minimum");
  }
  KdfParams params;
  params.iterations = iterations;
  random_bytes(params.salt);
  return params;
}

Bytes aead_seal(const SymmetricKey& key, const Nonce& nonce, ByteView aad,
                ByteView plaintext) {
  CipherCtx ctx = new_ctx();
  if (EVP_EncryptInit_ex(ctx.get(), EVP_aes_256_gcm(), nullptr, nullptr,
                         nullptr) != 1 ||
      EVP_CIPHER_CTX_ctrl(ctx.get(), EVP_CTRL_GCM_SET_IVLEN, kNonceSize,
                          nullptr) != 1 ||
      EVP_EncryptInit_ex(ctx.get(), nullptr, nullptr, key.data(),
                         nonce.bytes.data()) != 1) {
    throw Error(Errc::kIo, "AES-256-GCM init failed");
  }

  int len = 0;
  if (!aad.empty() && EVP_EncryptUpdate(ctx.get(), nullptr, &len, aad.data(),
                                        checked_len(aad.size())) != 1) {
    throw Error(Errc::kIo, "AES-256-GCM aad failed");
  }

  Bytes out(plaintext.size() + kTagSize);
  int written = 0;
  if (!plaintext.empty()) {
    if (EVP_EncryptUpdate(ctx.get(), out.data(), &len, plaintext.data(),
                          checked_len(plaintext.size())) != 1) {
      throw Error(Errc::kIo, "AES-256-GCM encrypt failed");
    }
    written = len;
  }
  if (EVP_EncryptFinal_ex(ctx.get(), out.data() + written, &len) != 1) {
    throw Error(Errc::kIo, "AES-256-GCM final failed");
  }
  written += len;
  if (EVP_CIPHER_CTX_ctrl(ctx.get(), EVP_CTRL_GCM_GET_TAG, kTagSize,
                          out.data() + written) != 1) {
    throw Error(Errc::kIo, "AES-256-GCM tag failed");
  }
  return out;
}

Bytes aead_open(const SymmetricKey& key, const Nonce& nonce, ByteView aad,
                ByteView sealed) {
  if (sealed.size() < kTagSize) {
    throw Error(Errc::kMalformedInput, "sealed input shorter than tag");
  }
  const ByteView ciphertext = sealed.first(sealed.size() - kTagSize);
  std::array<std::uint8_t, kTagSize> tag{};
  std::copy(sealed.end() - kTagSize, sealed.end(), tag.begin());

  CipherCtx ctx = new_ctx();
  if (EVP_DecryptInit_ex(ctx.get(), EVP_aes_256_gcm(), nullptr, nullptr,
                         nullptr) != 1 ||
      EVP_CIPHER_CTX_ctrl(ctx.get(), EVP_CTRL_GCM_SET_IVLEN, kNonceSize,
                          nullptr) != 1 ||
      EVP_DecryptInit_ex(ctx.get(), nullptr, nullptr, key.data(),
                         nonce.bytes.data()) != 1) {
    throw Error(Errc::kIo, "AES-256-GCM init failed");
  }

  int len = 0;
  if (!aad.empty() && EVP_DecryptUpdate(ctx.get(), nullptr, &len, aad.data(),
                                        checked_len(aad.size())) != 1) {
    throw Error(Errc::kIo, "AES-256-GCM aad failed");
  }

  Bytes out(ciphertext.size());
  int written = 0;
  if (!ciphertext.empty()) {
    if (EVP_DecryptUpdate(ctx.get(), out.data(), &len, ciphertext.data(),
                          checked_len(ciphertext.size())) != 1) {
      throw Error(Errc::kIo, "AES-256-GCM decrypt failed");
    }
    written = len;
  }
  // OpenSSL compares the tag with CRYPTO_memcmp.
  if (EVP_CIPHER_CTX_ctrl(ctx.get(), EVP_CTRL_GCM_SET_TAG, kTagSize,
                          tag.data()) != 1 ||
      EVP_DecryptFinal_ex(ctx.get(), out.data() + written, &len) != 1) {
    secure_wipe(out);
    throw Error(Errc::kIntegrity, "authentication tag mismatch");
  }
  return out;
}

PasswordHash kdf_hash(std::string_view password, const KdfParams& params) {
  if (password.empty()) throw Error(Errc::kEmptyPassword, "empty password");
  if (params.iterations < kMinIterations) {
    throw Error(Errc::kInvalidParams, "iterations below minimum");
  }
  if (params.iterations >
      static_cast<std::uint32_t>(std::numeric_limits<int>::max())) {
    throw Error(Errc::kInvalidParams, "iterations too large");
  }
  PasswordHash out{};
  if (PKCS5_PBKDF2_HMAC(password.data(), checked_len(password.size()),
                        params.salt.data(), params.salt.size(),
                        static_cast<int>(params.iterations), EVP_sha256(),
                        out.size(), out.data()) != 1) {
    throw Error(Errc::kIo, "PBKDF2 failed");
  }
  return out;
}

bool constant_time_equal(ByteView a, ByteView b) {
  if (a.size() != b.size()) return false;
  if (a.empty()) return true;
  return CRYPTO_memcmp(a.data(), b.data(), a.size()) == 0;
}

}  // namespace jfss::crypto
