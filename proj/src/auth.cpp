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

#include "jfss/auth.hpp"

#include <algorithm>
#include <array>
#include <system_error>

#include "jfss/error.hpp"
#include "jfss/fsutil.hpp"

namespace jfss::auth {
namespace {

constexpr std::array<std::uint8_t, 4> kStoreMagic = {'J', 'F', 'S', 'U'};
constexpr std::uint16_t kStoreVersion = 1;
// Upper bound accepted from disk so a corrupt store cannot stall login.
constexpr std::uint32_t kMaxIterations = 50'000'000;

[[noreturn]] void corrupt(const char* what) {
  throw Error(Errc::kStoreCorrupt, std::string("credential store: ") + what);
}

class StoreReader {
 public:
  explicit StoreReader(ByteView b) : b_(b) {}

  ByteView take(std::size_t n) {
    if (b_.size() - pos_ < n) corrupt("truncated");
    ByteView out = b_.subspan(pos_, n);
    pos_ += n;
    return out;
  }
  std::uint16_t u16() {
    ByteView x = take(2);
    return static_cast<std::uint16_t>((x[0] << 8) | x[1]);
  }
  std::uint32_t u32() {
    ByteView x = take(4);
    return (std::uint32_t{x[0]} << 24) | (std::uint32_t{x[1]} << 16) |
           (std::uint32_t{x[2]} << 8) | x[3];
  }
  bool done() const { return pos_ == b_.size(); }

 private:
  ByteView b_;
  std::size_t pos_ = 0;
};

void put_u16(Bytes& out, std::uint16_t v) {
  out.push_back(static_cast<std::uint8_t>(v >> 8));
  out.push_back(static_cast<std::uint8_t>(v));
}

void put_u32(Bytes& out, std::uint32_t v) {
  for (int shift = 24; shift >= 0; shift -= 8) {
    out.push_back(static_cast<std::uint8_t>(v >> shift));
  }
}

void check_password(std::string_view password) {
  if (password.size() < kMinPasswordLen) {
    throw Error(Errc::kWeakPassword, "password must be at least 8 characters");
  }
}

void check_username(std::string_view name) {
  if (!is_valid_username(name)) {
    throw Error(Errc::kInvalidUsername,
                "username must be 1-64 characters without control characters");
  }
}

UserRecord make_record(std::string_view name, Role role,
                       std::string_view password, std::uint32_t iterations) {
  UserRecord rec;
  rec.username = std::string(name);
  rec.role = role;
  rec.kdf = crypto::generate_kdf_params(iterations);
  rec.hash = crypto::kdf_hash(password, rec.kdf);
  return rec;
}

void write_store(const fs::path& vault_dir, const std::vector<UserRecord>& users,
                 const std::function<void()>& before_commit, bool overwrite) {
  fsutil::WriteOptions opts;
  opts.overwrite = overwrite;
  opts.before_commit = before_commit;
  fsutil::atomic_write(store_file(vault_dir), encode_store(users), opts);
}

}  // namespace

std::string_view to_string(Role role) {
  return role == Role::kAdmin ? "admin" : "user";
}

Bytes encode_store(const std::vector<UserRecord>& users) {
  Bytes out(kStoreMagic.begin(), kStoreMagic.end());
  put_u16(out, kStoreVersion);
  put_u32(out, static_cast<std::uint32_t>(users.size()));
  for (const UserRecord& u : users) {
    put_u16(out, static_cast<std::uint16_t>(u.username.size()));
    out.insert(out.end(), u.username.begin(), u.username.end());
    out.push_back(static_cast<std::uint8_t>(u.role));
    out.insert(out.end(), u.kdf.salt.begin(), u.kdf.salt.end());
    put_u32(out, u.kdf.iterations);
    out.insert(out.end(), u.hash.begin(), u.hash.end());
  }
  return out;
}

std::vector<UserRecord> decode_store(ByteView bytes) {
  StoreReader in(bytes);
  ByteView magic = in.take(kStoreMagic.size());
  if (!std::equal(magic.begin(), magic.end(), kStoreMagic.begin())) {
    corrupt("bad magic");
  }
  if (in.u16() != kStoreVersion) corrupt("unsupported version");
  const std::uint32_t count = in.u32();
  // Each record is at least 1 + 2 + 1 + 16 + 4 + 32 octets.
  if (count > bytes.size() / 56) corrupt("record count exceeds size");

  std::vector<UserRecord> users;
  users.reserve(count);
  for (std::uint32_t i = 0; i < count; ++i) {
    UserRecord u;
    ByteView name = in.take(in.u16());
    u.username.assign(name.begin(), name.end());
    if (!is_valid_username(u.username)) corrupt("invalid username");
    const std::uint8_t role = in.take(1)[0];
    if (role != static_cast<std::uint8_t>(Role::kAdmin) &&
        role != static_cast<std::uint8_t>(Role::kUser)) {
      corrupt("invalid role");
    }
    u.role = static_cast<Role>(role);
    ByteView salt = in.take(crypto::kSaltSize);
    std::copy(salt.begin(), salt.end(), u.kdf.salt.begin());
    u.kdf.iterations = in.u32();
    if (u.kdf.iterations < crypto::kMinIterations ||
        u.kdf.iterations > kMaxIterations) {
      corrupt("iteration count out of range");
    }
    ByteView hash = in.take(crypto::kHashSize);
    std::copy(hash.begin(), hash.end(), u.hash.begin());
    if (std::any_of(users.begin(), users.end(), [&](const UserRecord& o) {
          return o.username == u.username;
        })) {
      corrupt("duplicate username");
    }
    users.push_back(std::move(u));
  }
  if (!in.done()) corrupt("trailing bytes");
  return users;
}

bool is_valid_username(std::string_view name) {
  std::size_t chars = 0;
  for (std::size_t i = 0; i < name.size();) {
    const auto c = static_cast<unsigned char>(name[i]);
    std::size_t len = c < 0x80 ? 1 : (c & 0xe0) == 0xc0 ? 2
                                   : (c & 0xf0) == 0xe0 ? 3
                                   : (c & 0xf8) == 0xf0 ? 4 : 0;
    if (len == 0 || name.size() - i < len) return false;
    std::uint32_t cp = len == 1 ? c : c & (0x7f >> len);
    for (std::size_t k = 1; k < len; ++k) {
      const auto cc = static_cast<unsigned char>(name[i + k]);
      if ((cc & 0xc0) != 0x80) return false;
      cp = (cp << 6) | (cc & 0x3f);
    }
    static constexpr std::uint32_t kMin[] = {0, 0, 0x80, 0x800, 0x10000};
    if (cp < kMin[len] || cp > 0x10ffff || (cp >= 0xd800 && cp <= 0xdfff)) {
      return false;
    }
    if (cp < 0x20 || (cp >= 0x7f && cp < 0xa0)) return false;
    i += len;
    ++chars;
  }
  return chars >= 1 && chars <= kMaxUsernameChars;
}

fs::path store_file(const fs::path& vault_dir) {
  return vault_dir / kStoreFileName;
}

std::vector<UserRecord> load_users(const fs::path& vault_dir) {
  std::error_code ec;
  const fs::path path = store_file(vault_dir);
  if (!fs::exists(path, ec)) {
    throw Error(Errc::kIo, "no credential store at " + path.string() +
                               " (run init first)");
  }
  return decode_store(fsutil::read_file(path, std::uintmax_t{64} << 20));
}

void init_vault(const fs::path& vault_dir, std::string_view admin_name,
                std::string_view admin_password, std::uint32_t iterations) {
  std::error_code ec;
  if (fs::exists(store_file(vault_dir), ec)) {
    throw Error(Errc::kAlreadyInitialized,
                "vault " + vault_dir.string() + " is already initialized");
  }
  check_username(admin_name);
  check_password(admin_password);
  fs::create_directories(vault_dir, ec);
  if (ec) {
    throw Error(Errc::kIo, "create " + vault_dir.string() + ": " + ec.message());
  }
  std::vector<UserRecord> users{
      make_record(admin_name, Role::kAdmin, admin_password, iterations)};
  try {
    write_store(vault_dir, users, {}, /*overwrite=*/false);
  } catch (const Error& e) {
    if (e.code() == Errc::kNameCollision) {
      throw Error(Errc::kAlreadyInitialized,
                  "vault " + vault_dir.string() + " is already initialized");
    }
    throw;
  }
}

void add_user(const Session& session, const fs::path& vault_dir,
              std::string_view username, std::string_view password,
              const std::function<void()>& before_commit) {
  if (session.role() != Role::kAdmin) {
    throw Error(Errc::kNotAdmin, "only the administrator can add users");
  }
  check_username(username);
  check_password(password);
  std::vector<UserRecord> users = load_users(vault_dir);
  if (std::any_of(users.begin(), users.end(),
                  [&](const UserRecord& u) { return u.username == username; })) {
    throw Error(Errc::kDuplicateUser,
                "user '" + std::string(username) + "' already exists");
  }
  users.push_back(
      make_record(username, Role::kUser, password, crypto::kMinIterations));
  write_store(vault_dir, users, before_commit, /*overwrite=*/true);
}

Session login(const fs::path& vault_dir, std::string_view username,
              std::string_view password) {
  const std::vector<UserRecord> users = load_users(vault_dir);
  auto it = std::find_if(users.begin(), users.end(), [&](const UserRecord& u) {
    return u.username == username;
  });

  crypto::KdfParams params;
  if (it != users.end()) {
    params = it->kdf;
  } else if (!users.empty()) {
    params.iterations = users.front().kdf.iterations;
  }

  bool ok = false;
  if (!password.empty()) {
    const crypto::PasswordHash computed = crypto::kdf_hash(password, params);
    const crypto::PasswordHash& expected =
        it != users.end() ? it->hash : computed;
    ok = crypto::constant_time_equal(computed, expected) && it != users.end();
  }
  if (!ok) throw Error(Errc::kAuthFailure, "login failed");
  return Session(it->username, it->role);
}

}  // namespace jfss::auth
