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

#ifndef JFSS_VAULT_HPP_
#define JFSS_VAULT_HPP_

#include <filesystem>
#include <functional>
#include <optional>
#include <string>

#include "jfss/auth.hpp"
#include "jfss/container.hpp"
#include "jfss/keystore.hpp"

namespace jfss::vault {

namespace fs = std::filesystem;

// Points inside encrypt_file at which a fault can be injected. They are
// visited in this order.
enum class EncryptStep {
  kContainerStaged,     // container temp file durable, not yet renamed
  kContainerCommitted,  // container visible at <source>.jfss
  kKeyStaged,           // key temp file durable, not yet renamed
  kKeyCommitted,        // key file visible in the keystore
  kProtected,           // container marked read-only
  kSourceRemoved,       // plaintext unlinked
};

inline constexpr EncryptStep kAllEncryptSteps[] = {
    EncryptStep::kContainerStaged, EncryptStep::kContainerCommitted,
    EncryptStep::kKeyStaged,       EncryptStep::kKeyCommitted,
    EncryptStep::kProtected,       EncryptStep::kSourceRemoved,
};

std::string_view to_string(EncryptStep step);

struct EncryptOptions {
  std::optional<fs::path> key_dest;
  // Called at every EncryptStep. An exception thrown here is handled like
  // any other failure: partial outputs are rolled back and the source kept.
  std::function<void(EncryptStep)> step_hook;
};

struct EncryptOutcome {
  fs::path container_path;
  fs::path key_path;
  container::FileId file_id;
  bool immutable = false;  // whether the immutable inode flag took effect
};

// Seals `source` into "<source>.jfss" under a fresh key, nonce and file id,
// stores the key via the keystore, protects the container, then removes the
// source. On any failure the source is kept.
//
// Errors: kSourceMissing, kAlreadyEncrypted, kNameCollision, kNoDestination,
// kKeyColocated, kInvalidHeader, kIo.
EncryptOutcome encrypt_file(const auth::Session& session, const fs::path& source,
                            const keystore::KeystoreConfig& cfg,
                            const EncryptOptions& options = {});

struct DecryptOptions {
  std::optional<fs::path> key;
  std::optional<fs::path> out_dir;  // default: the container's directory
  bool remove_container = false;
};

// Restores the original file next to the container (or into out_dir) under
// its original name. Never overwrites an existing file.
//
// Errors: FormatError, kKeyNotFound, kKeyMismatch, kIntegrity,
// kNameCollision, kIo.
fs::path decrypt_file(const auth::Session& session, const fs::path& container,
                      const keystore::KeystoreConfig& cfg,
                      const DecryptOptions& options = {});

enum class VerifyStatus { kIntact, kTampered, kKeyMismatch };

std::string_view to_string(VerifyStatus status);

struct VerifyOutcome {
  VerifyStatus status = VerifyStatus::kTampered;
  std::string reason;  // empty when intact
};

// Full decode + AEAD open with the plaintext discarded. Never writes.
// A container that no longer parses counts as tampered.
//
// Errors: kKeyNotFound, FormatError (malformed key file), kIo.
VerifyOutcome verify_file(const fs::path& container,
                          const keystore::KeystoreConfig& cfg,
                          const std::optional<fs::path>& key = std::nullopt);

// Read-only attribute plus the immutable inode flag where permitted.
// Idempotent. Returns whether the immutable flag is set. Errors: kIo.
bool protect_file(const fs::path& container);

// Reverses protect_file. Errors: kIo.
void unprotect_file(const fs::path& container);

}  // namespace jfss::vault

#endif  // JFSS_VAULT_HPP_
