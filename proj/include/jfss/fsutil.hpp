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

#ifndef JFSS_FSUTIL_HPP_
#define JFSS_FSUTIL_HPP_

#include <cstdint>
#include <filesystem>
#include <functional>

#include "jfss/bytes.hpp"

namespace jfss::fsutil {

namespace fs = std::filesystem;

// Largest file sealed in one pass.
inline constexpr std::uintmax_t kMaxFileSize = std::uintmax_t{1} << 30;

// Throws Error(kIo), including when the file exceeds `max_size`.
Bytes read_file(const fs::path& path, std::uintmax_t max_size = kMaxFileSize);

struct WriteOptions {
  fs::perms mode = fs::perms::owner_read | fs::perms::owner_write;
  // When false the final link fails with kNameCollision if `path` exists.
  bool overwrite = true;
  // Runs after the temp file is durable and before it becomes visible.
  std::function<void()> before_commit;
};

// Writes to a temp file next to `path`, fsyncs it, then renames (or links,
// when !overwrite) it into place and fsyncs the directory. A failure leaves
// any previous `path` untouched. Throws Error(kIo) / Error(kNameCollision).
void atomic_write(const fs::path& path, ByteView data,
                  const WriteOptions& options = {});

// Drops every write permission bit and, where the filesystem and privileges
// allow, sets the immutable inode flag. Returns true when the immutable flag
// is set afterwards. Throws Error(kIo) if the file cannot be chmod'ed.
bool make_read_only(const fs::path& path);

// Clears the immutable flag (if any) and restores owner write permission.
void make_writable(const fs::path& path);

bool is_immutable(const fs::path& path);

// make_writable on every entry, then remove_all. Missing paths are ignored.
void force_remove_all(const fs::path& path);

}  // namespace jfss::fsutil

#endif  // JFSS_FSUTIL_HPP_
