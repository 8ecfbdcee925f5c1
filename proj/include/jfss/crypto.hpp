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

#ifndef JFSS_CRYPTO_HPP_
#define JFSS_CRYPTO_HPP_

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>

#include "jfss/bytes.hpp"
#include "jfss/error.hpp"

namespace jfss::crypto {

inline constexpr std::size_t kKeySize = 32;
inline constexpr std::size_t kNonceSize = 12;
inline constexpr std::size_t kTagSize = 16;
inline constexpr std::size_t kSaltSize = 16;
inline constexpr std::size_t kHashSize = 32;
inline constexpr std::uint32_t kMinIterations = 100000;

// Zeroes memory in a way the optimizer may not elide.
void secure_wipe(std::span<std::uint8_t> bytes);

// Fixed-size secret octet string that is wiped when it goes out of scope.
template <std::size_t N>
class SecretBytes {
 public:
  static constexpr std::size_t kSize = N;

  SecretBytes() = default;
  explicit SecretBytes(const std::array<std::uint8_t, N>& bytes)
      : bytes_(bytes) {}
  SecretBytes(const SecretBytes&) = default;
  SecretBytes& operator=(const SecretBytes&) = default;
  ~SecretBytes() { wipe(); }

  // Throws Error(kMalformedInput) unless bytes.size() == N.
  static SecretBytes from(ByteView bytes) {
    if (bytes.size() != N) {
      throw Error(Errc::kMalformedInput, "secret has wrong length");
    }
    SecretBytes out;
    std::copy(bytes.begin(), bytes.end(), out.bytes_.begin());
    return out;
  }

  ByteView view() const { return bytes_; }
  const std::uint8_t* data() const { return bytes_.data(); }
  std::uint8_t* data() { return bytes_.data(); }
  constexpr std::size_t size() const { return N; }

  friend bool operator==(const SecretBytes& a, const SecretBytes& b) {
    return a.bytes_ == b.bytes_;
  }

 private:
  void wipe() { secure_wipe(bytes_); }

  std::array<std::uint8_t, N> bytes_{};
};

using SymmetricKey = SecretBytes<kKeySize>;

struct Nonce {
  std::array<std::uint8_t, kNonceSize> bytes{};

  ByteView view() const { return bytes; }
  friend bool operator==(const Nonce&, const Nonce&) = default;
};

struct KdfParams {
  std::array<std::uint8_t, kSaltSize> salt{};
  std::uint32_t iterations = kMinIterations;

  friend bool operator==(const KdfParams&, const KdfParams&) = default;
};

using PasswordHash = std::array<std::uint8_t, kHashSize>;

// Fills `out` from the OpenSSL CSPRNG. Throws Error(kRandomnessUnavailable).
void random_bytes(std::span<std::uint8_t> out);

SymmetricKey generate_key();
Nonce generate_nonce();
// Fresh random salt with kMinIterations unless `iterations` is given.
KdfParams generate_kdf_params(std::uint32_t iterations = kMinIterations);

// AES-256-GCM. Returns ciphertext || 16-byte tag.
Bytes aead_seal(const SymmetricKey& key, const Nonce& nonce, ByteView aad,
                ByteView plaintext);

// Throws Error(kMalformedInput) when sealed is shorter than the tag and
// Error(kIntegrity) when the tag does not verify.
Bytes aead_open(const SymmetricKey& key, const Nonce& nonce, ByteView aad,
                ByteView sealed);

// PBKDF2-HMAC-SHA-256 with a 32-byte output.
// Throws Error(kEmptyPassword) or Error(kInvalidParams) when
// params.iterations < kMinIterations.
PasswordHash kdf_hash(std::string_view password, const KdfParams& params);

// Constant-time equality for equal-length buffers; false on length mismatch.
bool constant_time_equal(ByteView a, ByteView b);

}  // namespace jfss::crypto

#endif  // JFSS_CRYPTO_HPP_
