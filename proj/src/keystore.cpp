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

#include "jfss/keystore.hpp"

#include <unistd.h>

#include <cstdlib>
#include <fstream>
#include <string>
#include <system_error>

#include "jfss/error.hpp"
#include "jfss/fsutil.hpp"

namespace jfss::keystore {
namespace {

fs::path canonical_dir(const fs::path& dir) {
  std::error_code ec;
  fs::path base = dir.empty() ? fs::current_path(ec) : dir;
  fs::path out = fs::weakly_canonical(base, ec);
  return ec ? fs::absolute(base) : out;
}

bool same_dir(const fs::path& a, const fs::path& b) {
  return canonical_dir(a) == canonical_dir(b);
}

std::optional<fs::path> find_in(const fs::path& dir, const fs::path& name) {
  if (dir.empty()) return std::nullopt;
  std::error_code ec;
  fs::path candidate = dir / name;
  if (fs::is_regular_file(candidate, ec)) return candidate;
  return std::nullopt;
}

}  // namespace

void validate(const KeystoreConfig& cfg) {
  if (cfg.fallback_path && !cfg.card_path.empty() &&
      same_dir(cfg.card_path, *cfg.fallback_path)) {
    throw Error(Errc::kInvalidConfig,
                "card and fallback paths must be distinct");
  }
}

bool card_available(const KeystoreConfig& cfg) {
  if (cfg.card_path.empty()) return false;
  std::error_code ec;
  const auto st = fs::status(cfg.card_path, ec);
  if (ec || !fs::is_directory(st)) return false;
  const auto write_bits = fs::perms::owner_write | fs::perms::group_write |
                          fs::perms::others_write;
  if ((st.permissions() & write_bits) == fs::perms::none) return false;

  std::string probe = (cfg.card_path / ".jfss-probe-XXXXXX").string();
  int fd = ::mkstemp(probe.data());
  if (fd < 0) return false;
  ::close(fd);
  return ::unlink(probe.c_str()) == 0;
}

fs::path key_file_name(const container::FileId& id) {
  return fs::path(id.hex() + std::string(container::kKeyFileExt));
}

fs::path store_key(const KeystoreConfig& cfg,
                   const container::KeyFileRecord& record,
                   const fs::path& container_dir,
                   const std::optional<fs::path>& explicit_dest,
                   const std::function<void()>& before_commit) {
  validate(cfg);
  const fs::path name = key_file_name(record.file_id);

  fs::path target;
  std::error_code ec;
  if (explicit_dest) {
    target = fs::is_directory(*explicit_dest, ec) ? *explicit_dest / name
                                                  : *explicit_dest;
  } else if (card_available(cfg)) {
    target = cfg.card_path / name;
  } else if (cfg.fallback_path) {
    target = *cfg.fallback_path / name;
  } else {
    throw Error(Errc::kNoDestination,
                "card not available and no fallback or explicit destination");
  }

  if (same_dir(target.parent_path(), container_dir)) {
    throw Error(Errc::kKeyColocated,
                "key must be stored apart from the encrypted file");
  }
  if (!target.parent_path().empty() &&
      !fs::is_directory(target.parent_path(), ec)) {
    throw Error(Errc::kIo, "key destination directory " +
                               target.parent_path().string() +
                               " does not exist");
  }

  fsutil::WriteOptions opts;
  opts.before_commit = before_commit;
  Bytes encoded = container::encode_keyfile(record);
  try {
    fsutil::atomic_write(target, encoded, opts);
  } catch (...) {
    crypto::secure_wipe(encoded);
    throw;
  }
  crypto::secure_wipe(encoded);
  return target;
}

container::KeyFileRecord read_key_file(const fs::path& path) {
  std::error_code ec;
  if (!fs::exists(path, ec)) {
    throw Error(Errc::kKeyNotFound, "key file " + path.string() + " not found");
  }
  const auto size = fs::file_size(path, ec);
  if (!ec && size > container::kKeyFileSize) {
    // Only the prefix matters for classifying an oversized input.
    std::ifstream in(path, std::ios::binary);
    Bytes prefix(container::kKeyFileSize);
    in.read(reinterpret_cast<char*>(prefix.data()),
            static_cast<std::streamsize>(prefix.size()));
    prefix.push_back(0);
    container::decode_keyfile(prefix);  // always throws
  }
  Bytes raw = fsutil::read_file(path, container::kKeyFileSize);
  try {
    auto rec = container::decode_keyfile(raw);
    crypto::secure_wipe(raw);
    return rec;
  } catch (...) {
    crypto::secure_wipe(raw);
    throw;
  }
}

container::KeyFileRecord locate_key(const KeystoreConfig& cfg,
                                    const container::FileId& id,
                                    const std::optional<fs::path>& explicit_key) {
  if (explicit_key) {
    auto rec = read_key_file(*explicit_key);
    if (rec.file_id != id) {
      throw Error(Errc::kKeyMismatch,
                  "key file belongs to a different encrypted file");
    }
    return rec;
  }
  const fs::path name = key_file_name(id);
  for (const fs::path* dir :
       {&cfg.card_path, cfg.fallback_path ? &*cfg.fallback_path : nullptr}) {
    if (dir == nullptr) continue;
    if (auto found = find_in(*dir, name)) {
      auto rec = read_key_file(*found);
      if (rec.file_id != id) {
        throw Error(Errc::kKeyMismatch, "key file " + found->string() +
                                            " carries a different file id");
      }
      return rec;
    }
  }
  throw Error(Errc::kKeyNotFound, "no key for " + id.hex() +
                                      " on card or fallback location");
}

}  // namespace jfss::keystore
