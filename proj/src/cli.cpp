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

#include "jfss/cli.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <ostream>
#include <vector>

#include "jfss/auth.hpp"
#include "jfss/bench.hpp"
#include "jfss/keystore.hpp"
#include "jfss/vault.hpp"

namespace jfss::cli {
namespace {

namespace fs = std::filesystem;

// Raised for problems with the invocation itself (missing vault, no user).
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::optional<std::string> lookup(const Environment& env, const char* name) {
  auto it = env.find(name);
  if (it == env.end() || it->second.empty()) return std::nullopt;
  return it->second;
}

struct Globals {
  std::string vault;
  std::string card;
  std::string fallback;
  std::string user;
};

class Runner {
 public:
  Runner(const Environment& env, std::ostream& out, std::ostream& err,
         const PasswordPrompt& prompt, const Globals& g)
      : env_(env), out_(out), err_(err), prompt_(prompt), g_(g) {}

  fs::path vault_dir() const {
    if (!g_.vault.empty()) return g_.vault;
    if (auto v = lookup(env_, "JFSS_VAULT")) return *v;
    throw UsageError("no vault: pass --vault or set JFSS_VAULT");
  }

  keystore::KeystoreConfig keystore_config() const {
    keystore::KeystoreConfig cfg;
    if (!g_.card.empty()) {
      cfg.card_path = g_.card;
    } else if (auto v = lookup(env_, "JFSS_CARD")) {
      cfg.card_path = *v;
    }
    if (!g_.fallback.empty()) {
      cfg.fallback_path = fs::path(g_.fallback);
    } else if (auto v = lookup(env_, "JFSS_FALLBACK")) {
      cfg.fallback_path = fs::path(*v);
    }
    return cfg;
  }

  std::string secret(const char* env_name, std::string_view prompt) const {
    if (auto v = lookup(env_, env_name)) return *v;
    if (prompt_) {
      if (auto v = prompt_(prompt)) return *v;
    }
    throw UsageError(std::string("no password available: set ") + env_name +
                     " or run from a terminal");
  }

  auth::Session login() const {
    std::string user = g_.user;
    if (user.empty()) {
      if (auto v = lookup(env_, "JFSS_USER")) user = *v;
    }
    if (user.empty()) throw UsageError("no user: pass --user or set JFSS_USER");
    const fs::path vault = vault_dir();
    return auth::login(vault, user, secret("JFSS_PASSWORD", "Password: "));
  }

  std::ostream& out() const { return out_; }
  std::ostream& err() const { return err_; }

 private:
  const Environment& env_;
  std::ostream& out_;
  std::ostream& err_;
  const PasswordPrompt& prompt_;
  const Globals& g_;
};

std::optional<fs::path> opt_path(const std::string& s) {
  if (s.empty()) return std::nullopt;
  return fs::path(s);
}

}  // namespace

int exit_code_for(Errc code) {
  switch (code) {
    case Errc::kAuthFailure:
    case Errc::kNotAdmin:
      return kExitAuth;
    case Errc::kIntegrity:
      return kExitIntegrity;
    case Errc::kFormat:
    case Errc::kMalformedInput:
    case Errc::kInvalidHeader:
    case Errc::kInvalidRecord:
    case Errc::kStoreCorrupt:
      return kExitFormat;
    case Errc::kKeyNotFound:
    case Errc::kKeyMismatch:
      return kExitKey;
    case Errc::kIo:
    case Errc::kRandomnessUnavailable:
    case Errc::kNoDestination:
    case Errc::kSourceMissing:
    case Errc::kNameCollision:
      return kExitIo;
    case Errc::kEmptyPassword:
    case Errc::kWeakPassword:
    case Errc::kInvalidParams:
    case Errc::kInvalidUsername:
    case Errc::kInvalidConfig:
    case Errc::kKeyColocated:
    case Errc::kAlreadyInitialized:
    case Errc::kDuplicateUser:
    case Errc::kAlreadyEncrypted:
    case Errc::kInvalidSelection:
      return kExitUsage;
  }
  return kExitUsage;
}

int dispatch(std::span<const std::string> args, const Environment& env,
             std::ostream& out, std::ostream& err,
             const PasswordPrompt& prompt) {
  CLI::App app{"On-demand file encryption with detached per-file keys", "jfss"};
  app.require_subcommand(1);
  app.fallthrough();

  Globals g;
  app.add_option("--vault", g.vault, "Vault directory (env JFSS_VAULT)");
  app.add_option("--card", g.card, "Removable key directory (env JFSS_CARD)");
  app.add_option("--fallback", g.fallback,
                 "Key directory used when the card is absent (env "
                 "JFSS_FALLBACK)");
  app.add_option("--user", g.user, "Login name (env JFSS_USER)");

  std::string admin;
  auto* init = app.add_subcommand("init", "Create a vault with one admin");
  init->add_option("--admin", admin, "Administrator name")->required();

  std::string new_user;
  auto* user_add = app.add_subcommand("user-add", "Register a user (admin only)");
  user_add->add_option("name", new_user, "New user name")->required();

  std::string file, key_dest;
  auto* encrypt = app.add_subcommand("encrypt", "Encrypt one file in place");
  encrypt->add_option("file", file, "File to encrypt")->required();
  encrypt->add_option("--key-dest", key_dest,
                      "Where to store the key instead of the card");

  std::string key, out_dir;
  bool remove_container = false;
  auto* decrypt = app.add_subcommand("decrypt", "Restore an encrypted file");
  decrypt->add_option("file", file, "Container (.jfss)")->required();
  decrypt->add_option("--key", key, "Key file (.jfsk)");
  decrypt->add_option("--out", out_dir, "Output directory");
  decrypt->add_flag("--remove", remove_container,
                    "Delete the container after a successful restore");

  auto* verify = app.add_subcommand("verify", "Check container integrity");
  verify->add_option("file", file, "Container (.jfss)")->required();
  verify->add_option("--key", key, "Key file (.jfsk)");

  auto* protect = app.add_subcommand("protect", "Mark a container read-only");
  protect->add_option("file", file, "Container (.jfss)")->required();

  std::string bench_dir;
  std::size_t select_k = 0, repeats = 5, generate = 0;
  std::uintmax_t size_each = 256 * 1024;
  std::uint64_t seed = 1;
  bool raw = false;
  auto* bench_cmd =
      app.add_subcommand("bench", "Selective vs full encryption timing");
  bench_cmd->add_option("dir", bench_dir, "Workload directory")->required();
  bench_cmd->add_option("--select", select_k, "Files to encrypt selectively")
      ->required();
  bench_cmd->add_option("--repeats", repeats, "Trials per mode (>= 3)");
  bench_cmd->add_option("--generate", generate,
                        "Create this many files in an empty dir first");
  bench_cmd->add_option("--size", size_each, "Bytes per generated file");
  bench_cmd->add_option("--seed", seed, "Workload generator seed");
  bench_cmd->add_flag("--raw", raw, "Emit key=value lines");

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    if (!rev.empty()) rev.pop_back();
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "jfss: " << e.what() << '\n';
    return kExitUsage;
  }

  Runner run(env, out, err, prompt, g);
  try {
    if (init->parsed()) {
      const fs::path vault = run.vault_dir();
      auth::init_vault(vault, admin,
                       run.secret("JFSS_PASSWORD", "Admin password: "));
      out << "initialized vault " << vault.string() << " with admin '" << admin
          << "'\n";
      return kExitOk;
    }

    const auth::Session session = run.login();
    const keystore::KeystoreConfig cfg = run.keystore_config();

    if (user_add->parsed()) {
      auth::add_user(session, run.vault_dir(), new_user,
                     run.secret("JFSS_NEW_PASSWORD", "New user's password: "));
      out << "registered user '" << new_user << "'\n";
    } else if (encrypt->parsed()) {
      vault::EncryptOptions opts;
      opts.key_dest = opt_path(key_dest);
      const auto res = vault::encrypt_file(session, file, cfg, opts);
      out << "encrypted " << file << " -> " << res.container_path.string()
          << "; key saved to " << res.key_path.string() << '\n';
    } else if (decrypt->parsed()) {
      vault::DecryptOptions opts;
      opts.key = opt_path(key);
      opts.out_dir = opt_path(out_dir);
      opts.remove_container = remove_container;
      const fs::path restored = vault::decrypt_file(session, file, cfg, opts);
      out << "decryption successful: " << restored.string() << '\n';
    } else if (verify->parsed()) {
      const auto res = vault::verify_file(file, cfg, opt_path(key));
      if (res.status == vault::VerifyStatus::kIntact) {
        out << file << ": intact\n";
        return kExitOk;
      }
      err << file << ": " << vault::to_string(res.status) << " ("
          << res.reason << ")\n";
      return res.status == vault::VerifyStatus::kTampered ? kExitIntegrity
                                                          : kExitKey;
    } else if (protect->parsed()) {
      const bool immutable = vault::protect_file(file);
      out << "protected " << file
          << (immutable ? " (read-only, immutable)" : " (read-only)") << '\n';
    } else if (bench_cmd->parsed()) {
      if (generate > 0) bench::generate_workload(bench_dir, generate, size_each, seed);
      const auto report = bench::run_benchmark(session, bench_dir, select_k, repeats);
      if (raw) {
        bench::print_raw(out, report);
      } else {
        bench::print_report(out, report);
      }
    }
    return kExitOk;
  } catch (const UsageError& e) {
    err << "jfss: " << e.what() << '\n';
    return kExitUsage;
  } catch (const Error& e) {
    if (e.code() == Errc::kAuthFailure) {
      err << "login failed\n";
    } else if (decrypt->parsed()) {
      err << "decryption unsuccessful: " << e.what() << '\n';
    } else {
      err << "jfss: " << e.what() << '\n';
    }
    return exit_code_for(e.code());
  } catch (const std::filesystem::filesystem_error& e) {
    err << "jfss: " << e.what() << '\n';
    return kExitIo;
  }
}

}  // namespace jfss::cli
