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

#ifndef JFSS_KEYSTORE_HPP_
#define JFSS_KEYSTORE_HPP_

#include <filesystem>
#include <functional>
#include <optional>

#include "jfss/container.hpp"

namespace jfss::keystore {

namespace fs = std::filesystem;

// The "card" is a removable directory (e.g. a mount point). When it is not
// available keys go to the fallback directory, if one is configured.
struct KeystoreConfig {
  fs::path card_path;
  std::optional<fs::path> fallback_path;
};

// Throws Error(kInvalidConfig) if card and fallback resolve to one directory.
void validate(const KeystoreConfig& cfg);

// True iff card_path is an existing directory with a write permission bit
// set, and a probe file can be created and removed in it.
bool card_available(const KeystoreConfig& cfg);

// "<32 hex digits>.jfsk"
fs::path key_file_name(const container::FileId& id);

// Destination precedence: explicit_dest > card (if available) > fallback.
// An explicit_dest naming an existing directory receives
// "<hex>.jfsk"; any other explicit_dest is used as the file path itself.
// The chosen directory must differ from `container_dir`.
//
// Errors: kNoDestination, kKeyColocated, kInvalidConfig, kIo.
fs::path store_key(const KeystoreConfig& cfg,
                   const container::KeyFileRecord& record,
                   const fs::path& container_dir,
                   const std::optional<fs::path>& explicit_dest = std::nullopt,
                   const std::function<void()>& before_commit = {});

// With explicit_key: decode it and require a matching file_id. Otherwise
// look for "<hex>.jfsk" on the card, then in the fallback directory.
//
// Errors: kKeyNotFound, kKeyMismatch, FormatError, kIo.
container::KeyFileRecord locate_key(
    const KeystoreConfig& cfg, const container::FileId& id,
    const std::optional<fs::path>& explicit_key = std::nullopt);

// Decodes a key file without any binding check.
container::KeyFileRecord read_key_file(const fs::path& path);

}  // namespace jfss::keystore

#endif  // JFSS_KEYSTORE_HPP_
