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

#include "jfss/vault.hpp"

#include <system_error>

#include "jfss/crypto.hpp"
#include "jfss/error.hpp"
#include "jfss/fsutil.hpp"

namespace jfss::vault {
namespace {

constexpr auto kContainerMode = fs::perms::owner_read | fs::perms::owner_write |
                                fs::perms::group_read | fs::perms::others_read;
constexpr auto kRestoredMode = fs::perms::owner_read | fs::perms::owner_write;

bool has_container_ext(const fs::path& p) {
  return p.extension() == container::kContainerExt;
}

fs::path container_path_for(const fs::path& source) {
  fs::path out = source;
  out += container::kContainerExt;
  return out;
}

void remove_quietly(const fs::path& p) {
  std::error_code ec;
  try {
    fsutil::make_writable(p);
  } catch (const Error&) {
  }
  fs::remove(p, ec);
}

Bytes read_container(const fs::path& container) {
  std::error_code ec;
  if (!fs::exists(container, ec)) {
    throw Error(Errc::kIo, container.string() + " does not exist");
  }
  return fsutil::read_file(container, fsutil::kMaxFileSize +
                                          container::kFixedHeaderSize +
                                          container::kMaxNameLen +
                                          crypto::kTagSize);
}

}  // namespace

std::string_view to_string(EncryptStep step) {
  switch (step) {
    case EncryptStep::kContainerStaged: return "container-staged";
    case EncryptStep::kContainerCommitted: return "container-committed";
    case EncryptStep::kKeyStaged: return "key-staged";
    case EncryptStep::kKeyCommitted: return "key-committed";
    case EncryptStep::kProtected: return "protected";
    case EncryptStep::kSourceRemoved: return "source-removed";
  }
  return "unknown";
}

std::string_view to_string(VerifyStatus status) {
  switch (status) {
    case VerifyStatus::kIntact: return "intact";
    case VerifyStatus::kTampered: return "tampered";
    case VerifyStatus::kKeyMismatch: return "key_mismatch";
  }
  return "unknown";
}

EncryptOutcome encrypt_file(const auth::Session& /*session*/,
                            const fs::path& source,
                            const keystore::KeystoreConfig& cfg,
                            const EncryptOptions& options) {
  std::error_code ec;
  if (has_container_ext(source)) {
    throw Error(Errc::kAlreadyEncrypted,
                source.string() + " is already an encrypted container");
  }
  if (!fs::is_regular_file(source, ec)) {
    throw Error(Errc::kSourceMissing,
                source.string() + " is not an existing regular file");
  }
  keystore::validate(cfg);

  const fs::path container_path = container_path_for(source);
  if (fs::exists(fs::symlink_status(container_path, ec))) {
    throw Error(Errc::kNameCollision, container_path.string() + " already exists");
  }
  const fs::path container_dir = container_path.parent_path();

  Bytes plaintext = fsutil::read_file(source);

  container::ContainerHeader header;
  header.file_id = container::FileId::generate();
  header.nonce = crypto::generate_nonce();
  header.original_name = source.filename().string();
  header.original_len = plaintext.size();
  const Bytes aad = container::encode_header(header);

  container::KeyFileRecord record;
  record.file_id = header.file_id;
  record.key = crypto::generate_key();

  Bytes sealed = crypto::aead_seal(record.key, header.nonce, aad, plaintext);
  crypto::secure_wipe(plaintext);
  Bytes encoded = container::encode_container(header, sealed);

  auto hook = [&](EncryptStep step) {
    if (options.step_hook) options.step_hook(step);
  };

  EncryptOutcome out;
  out.file_id = header.file_id;
  bool container_written = false;
  bool key_written = false;
  try {
    fsutil::WriteOptions wopts;
    wopts.mode = kContainerMode;
    wopts.overwrite = false;
    wopts.before_commit = [&] { hook(EncryptStep::kContainerStaged); };
    fsutil::atomic_write(container_path, encoded, wopts);
    container_written = true;
    out.container_path = container_path;
    hook(EncryptStep::kContainerCommitted);

    out.key_path = keystore::store_key(cfg, record, container_dir,
                                       options.key_dest,
                                       [&] { hook(EncryptStep::kKeyStaged); });
    key_written = true;
    hook(EncryptStep::kKeyCommitted);

    out.immutable = protect_file(container_path);
    hook(EncryptStep::kProtected);
  } catch (...) {
    if (key_written) remove_quietly(out.key_path);
    if (container_written) remove_quietly(container_path);
    throw;
  }

  // Past this point the (container, key) pair is complete; the source is
  // redundant and a failure to remove it is still an error worth reporting.
  if (!fs::remove(source, ec) || ec) {
    throw Error(Errc::kIo, "encrypted, but could not remove " +
                               source.string() + ": " + ec.message());
  }
  hook(EncryptStep::kSourceRemoved);
  return out;
}

fs::path decrypt_file(const auth::Session& /*session*/,
                      const fs::path& container,
                      const keystore::KeystoreConfig& cfg,
                      const DecryptOptions& options) {
  const Bytes raw = read_container(container);
  const container::DecodedContainer decoded = container::decode_container(raw);
  const container::ContainerHeader& header = decoded.header;
  if (header.original_name.empty()) {
    throw FormatError(FormatFault::kBadName, "container has no original name");
  }

  const container::KeyFileRecord record =
      keystore::locate_key(cfg, header.file_id, options.key);

  Bytes plaintext = crypto::aead_open(record.key, header.nonce,
                                      decoded.header_bytes, decoded.sealed);
  if (plaintext.size() != header.original_len) {
    crypto::secure_wipe(plaintext);
    throw Error(Errc::kIntegrity, "decrypted length disagrees with header");
  }

  const fs::path dir =
      options.out_dir ? *options.out_dir : container.parent_path();
  const fs::path target = dir / header.original_name;
  fsutil::WriteOptions wopts;
  wopts.mode = kRestoredMode;
  wopts.overwrite = false;
  try {
    fsutil::atomic_write(target, plaintext, wopts);
  } catch (...) {
    crypto::secure_wipe(plaintext);
    throw;
  }
  crypto::secure_wipe(plaintext);

  if (options.remove_container) {
    unprotect_file(container);
    std::error_code ec;
    fs::remove(container, ec);
    if (ec) {
      throw Error(Errc::kIo, "restored " + target.string() +
                                 " but could not remove container: " +
                                 ec.message());
    }
  }
  return target;
}

VerifyOutcome verify_file(const fs::path& container,
                          const keystore::KeystoreConfig& cfg,
                          const std::optional<fs::path>& key) {
  const Bytes raw = read_container(container);
  container::DecodedContainer decoded;
  try {
    decoded = container::decode_container(raw);
  } catch (const FormatError& e) {
    return {VerifyStatus::kTampered,
            "header does not parse: " + std::string(to_string(e.fault()))};
  }
  const container::ContainerHeader& header = decoded.header;

  container::KeyFileRecord record;
  if (key) {
    record = keystore::read_key_file(*key);
    if (record.file_id != header.file_id) {
      // A key that authenticates the container once its own file id is put
      // back into the header proves the header's id was altered.
      container::ContainerHeader restored = header;
      restored.file_id = record.file_id;
      try {
        crypto::aead_open(record.key, restored.nonce,
                          container::encode_header(restored), decoded.sealed);
        return {VerifyStatus::kTampered, "file id in header was altered"};
      } catch (const Error&) {
        return {VerifyStatus::kKeyMismatch,
                "key file belongs to a different encrypted file"};
      }
    }
  } else {
    record = keystore::locate_key(cfg, header.file_id);
  }

  try {
    Bytes plaintext = crypto::aead_open(record.key, header.nonce,
                                        decoded.header_bytes, decoded.sealed);
    const bool length_ok = plaintext.size() == header.original_len;
    crypto::secure_wipe(plaintext);
    if (!length_ok) {
      return {VerifyStatus::kTampered, "length disagrees with header"};
    }
  } catch (const Error& e) {
    if (e.code() != Errc::kIntegrity && e.code() != Errc::kMalformedInput) {
      throw;
    }
    return {VerifyStatus::kTampered, "authentication tag mismatch"};
  }
  return {VerifyStatus::kIntact, {}};
}

bool protect_file(const fs::path& container) {
  std::error_code ec;
  if (!fs::exists(container, ec)) {
    throw Error(Errc::kIo, container.string() + " does not exist");
  }
  return fsutil::make_read_only(container);
}

void unprotect_file(const fs::path& container) {
  fsutil::make_writable(container);
}

}  // namespace jfss::vault
