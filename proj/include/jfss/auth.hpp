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

#ifndef JFSS_AUTH_HPP_
#define JFSS_AUTH_HPP_

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "jfss/bytes.hpp"
#include "jfss/crypto.hpp"

namespace jfss::auth {

namespace fs = std::filesystem;

inline constexpr std::string_view kStoreFileName = "users.jfsu";
inline constexpr std::size_t kMinPasswordLen = 8;
inline constexpr std::size_t kMaxUsernameChars = 64;

enum class Role : std::uint8_t { kAdmin = 0x01, kUser = 0x02 };

std::string_view to_string(Role role);

struct UserRecord {
  std::string username;
  Role role = Role::kUser;
  crypto::KdfParams kdf;
  crypto::PasswordHash hash{};

  friend bool operator==(const UserRecord&, const UserRecord&) = default;
};

// Proof of a successful login. Only login() can create one, and it is never
// written to disk.
class Session {
 public:
  const std::string& username() const { return username_; }
  Role role() const { return role_; }
  std::chrono::system_clock::time_point authenticated_at() const {
    return authenticated_at_;
  }

 private:
  friend Session login(const fs::path&, std::string_view, std::string_view);
  Session(std::string username, Role role)
      : username_(std::move(username)),
        role_(role),
        authenticated_at_(std::chrono::system_clock::now()) {}

  std::string username_;
  Role role_;
  std::chrono::system_clock::time_point authenticated_at_;
};

// Credential store layout (big-endian):
//   "JFSU" | version u16 = 1 | count u32 | records...
//   record: name_len u16 | name | role u8 | salt[16] | iterations u32 |
//           hash[32]
Bytes encode_store(const std::vector<UserRecord>& users);
// Throws Error(kStoreCorrupt).
std::vector<UserRecord> decode_store(ByteView bytes);

// 1-64 code points of valid UTF-8 with no control characters.
bool is_valid_username(std::string_view name);

fs::path store_file(const fs::path& vault_dir);

// Creates `vault_dir` (if needed) and a store holding one admin record.
// Errors: kAlreadyInitialized, kWeakPassword, kInvalidUsername, kIo.
void init_vault(const fs::path& vault_dir, std::string_view admin_name,
                std::string_view admin_password,
                std::uint32_t iterations = crypto::kMinIterations);

// Adds a role=user record and rewrites the store atomically.
// Errors: kNotAdmin, kDuplicateUser, kWeakPassword, kInvalidUsername,
// kStoreCorrupt, kIo. `before_commit` is a test seam into the atomic write.
void add_user(const Session& session, const fs::path& vault_dir,
              std::string_view username, std::string_view password,
              const std::function<void()>& before_commit = {});

// Unknown user and wrong password both raise Error(kAuthFailure) with the
// same message, after the same amount of key-stretching work.
// Errors: kAuthFailure, kStoreCorrupt, kIo.
Session login(const fs::path& vault_dir, std::string_view username,
              std::string_view password);

std::vector<UserRecord> load_users(const fs::path& vault_dir);

}  // namespace jfss::auth

#endif  // JFSS_AUTH_HPP_
