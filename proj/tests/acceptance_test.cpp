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

// Acceptance suite: one line per criterion, non-zero exit if any fails.

#include <sys/wait.h>
#include <unistd.h>

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "jfss/auth.hpp"
#include "jfss/bench.hpp"
#include "jfss/container.hpp"
#include "jfss/crypto.hpp"
#include "jfss/keystore.hpp"
#include "jfss/vault.hpp"
#include "known_answers.hpp"
#include "test_util.hpp"

namespace {

namespace fs = std::filesystem;
using namespace jfss;
using jfss::testing::TempDir;

struct Outcome {
  bool pass = false;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(const char* f, double a) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), f, a);
  return buf;
}

Outcome within(Outcome o, double elapsed, double limit_s) {
  if (elapsed >= limit_s) {
    o.pass = false;
    o.detail += "; runtime " + fmt("%.2f", elapsed) + " s exceeds " +
                fmt("%.0f", limit_s) + " s";
  } else {
    o.detail += "; " + fmt("%.2f", elapsed) + " s";
  }
  return o;
}

// 1. Known-answer conformance, >= 5 vectors, exact bytes, < 1 s.
Outcome aead_known_answers() {
  const auto t0 = Clock::now();
  std::size_t ok = 0;
  for (const auto& v : jfss::testing::kGcmVectors) {
    const auto key = crypto::SymmetricKey::from(jfss::testing::hex(v.key));
    crypto::Nonce nonce;
    const Bytes iv = jfss::testing::hex(v.iv);
    std::copy(iv.begin(), iv.end(), nonce.bytes.begin());
    Bytes expected = jfss::testing::hex(v.ct);
    const Bytes tag = jfss::testing::hex(v.tag);
    expected.insert(expected.end(), tag.begin(), tag.end());
    const Bytes aad = jfss::testing::hex(v.aad);
    const Bytes pt = jfss::testing::hex(v.pt);
    if (crypto::aead_seal(key, nonce, aad, pt) == expected &&
        crypto::aead_open(key, nonce, aad, expected) == pt) {
      ++ok;
    }
  }
  const std::size_t n = jfss::testing::kGcmVectors.size();
  Outcome o{ok == n && n >= 5,
            std::to_string(ok) + "/" + std::to_string(n) + " vectors exact"};
  return within(o, seconds_since(t0), 1.0);
}

// 2. 200 random files, 0 B - 4 MiB, mixed names, byte-identical restore.
Outcome end_to_end_roundtrip() {
  const auto t0 = Clock::now();
  TempDir tmp;
  const fs::path docs = tmp.mkdir("docs");
  const fs::path out = tmp.mkdir("out");
  const keystore::KeystoreConfig cfg{tmp.mkdir("card"), std::nullopt};
  const auth::Session session = jfss::testing::admin_session(tmp / "vault");

  static const std::vector<std::string> kStems = {
      "report", "Budget 2026", "donn\xc3\xa9" "es", "\xe5\x9b\xbe\xe5\x83\x8f",
      "photo-raw", "notes_v2", "a", "archive.tar"};
  static const std::vector<std::string> kExts = {".txt", ".bin", ".docx", "",
                                                 ".csv", ".png", ".gz"};
  std::mt19937_64 rng(2026);
  std::size_t ok = 0;
  for (int i = 0; i < 200; ++i) {
    std::size_t size;
    if (i == 0) {
      size = 0;
    } else if (i == 1) {
      size = 4u << 20;
    } else {
      size = rng() % ((4u << 20) + 1);
    }
    Bytes content(size);
    if (i % 2 == 0) {
      for (auto& b : content) b = static_cast<std::uint8_t>(rng());
    } else {
      static constexpr std::string_view kText =
          "the quick brown fox jumps over the lazy dog\n";
      for (std::size_t k = 0; k < size; ++k) content[k] = kText[k % kText.size()];
    }
    const std::string name = kStems[rng() % kStems.size()] + " " +
                             std::to_string(i) + kExts[rng() % kExts.size()];
    const fs::path src = docs / name;
    jfss::testing::write_file(src, content);
    try {
      const auto enc = vault::encrypt_file(session, src, cfg);
      vault::DecryptOptions opts;
      opts.out_dir = out;
      const fs::path restored = vault::decrypt_file(session, enc.container_path, cfg, opts);
      if (restored.filename() == name && jfss::testing::read_file(restored) == content) {
        ++ok;
      }
      fs::remove(restored);
    } catch (const std::exception& e) {
      std::cerr << "  roundtrip " << name << ": " << e.what() << '\n';
    }
  }
  Outcome o{ok == 200, std::to_string(ok) + "/200 files restored identically"};
  return within(o, seconds_since(t0), 60.0);
}

// 3. Every single-bit flip of a 64-byte plaintext's container is rejected.
Outcome tamper_totality() {
  const auto t0 = Clock::now();
  TempDir tmp;
  const fs::path docs = tmp.mkdir("docs");
  const fs::path out = tmp.mkdir("out");
  const keystore::KeystoreConfig cfg{tmp.mkdir("card"), std::nullopt};
  const auth::Session session = jfss::testing::admin_session(tmp / "vault");

  std::mt19937_64 rng(64);
  const fs::path src = docs / "sixty-four.bin";
  jfss::testing::write_file(src, jfss::testing::random_bytes(rng, 64));
  const auto enc = vault::encrypt_file(session, src, cfg);
  vault::unprotect_file(enc.container_path);
  const Bytes pristine = jfss::testing::read_file(enc.container_path);

  std::size_t bits = pristine.size() * 8;
  std::size_t verify_accepts = 0, decrypt_accepts = 0;
  for (std::size_t bit = 0; bit < bits; ++bit) {
    Bytes m = pristine;
    m[bit / 8] ^= static_cast<std::uint8_t>(1u << (bit % 8));
    jfss::testing::write_file(enc.container_path, m);

    const auto res = vault::verify_file(enc.container_path, cfg, enc.key_path);
    if (res.status != vault::VerifyStatus::kTampered) ++verify_accepts;

    vault::DecryptOptions opts;
    opts.key = enc.key_path;
    opts.out_dir = out;
    try {
      const fs::path p = vault::decrypt_file(session, enc.container_path, cfg, opts);
      ++decrypt_accepts;
      fs::remove(p);
    } catch (const Error&) {
    }
  }
  jfss::testing::write_file(enc.container_path, pristine);
  const bool baseline =
      vault::verify_file(enc.container_path, cfg, enc.key_path).status ==
      vault::VerifyStatus::kIntact;
  Outcome o{baseline && verify_accepts == 0 && decrypt_accepts == 0,
            std::to_string(bits) + " flips over " + std::to_string(pristine.size()) +
                "-octet container, verify false accepts " +
                std::to_string(verify_accepts) + ", decrypt false accepts " +
                std::to_string(decrypt_accepts)};
  return within(o, seconds_since(t0), 30.0);
}

// 4. 100 wrong keys fail; wrong-UUID key files are KeyMismatch before crypto.
Outcome key_separation() {
  TempDir tmp;
  const fs::path docs = tmp.mkdir("docs");
  const fs::path keys = tmp.mkdir("keys");
  const fs::path out = tmp.mkdir("out");
  const keystore::KeystoreConfig cfg{tmp.mkdir("card"), std::nullopt};
  const auth::Session session = jfss::testing::admin_session(tmp / "vault");

  const fs::path src = docs / "ledger.xlsx";
  jfss::testing::write_file(src, "confidential ledger contents");
  const auto enc = vault::encrypt_file(session, src, cfg);

  std::size_t wrong_key_rejected = 0, uuid_rejected = 0;
  for (int i = 0; i < 100; ++i) {
    container::KeyFileRecord forged;
    forged.file_id = enc.file_id;
    forged.key = crypto::generate_key();
    const fs::path kf = keys / ("forged" + std::to_string(i) + ".jfsk");
    jfss::testing::write_file(kf, container::encode_keyfile(forged));
    vault::DecryptOptions opts;
    opts.key = kf;
    opts.out_dir = out;
    try {
      vault::decrypt_file(session, enc.container_path, cfg, opts);
    } catch (const Error& e) {
      if (e.code() == Errc::kIntegrity) ++wrong_key_rejected;
    }

    container::KeyFileRecord other = forged;
    other.file_id = container::FileId::generate();
    // The genuine key under a foreign id must still be refused by id alone.
    other.key = keystore::read_key_file(enc.key_path).key;
    const fs::path kf2 = keys / ("other" + std::to_string(i) + ".jfsk");
    jfss::testing::write_file(kf2, container::encode_keyfile(other));
    opts.key = kf2;
    try {
      vault::decrypt_file(session, enc.container_path, cfg, opts);
    } catch (const Error& e) {
      if (e.code() == Errc::kKeyMismatch) ++uuid_rejected;
    }
  }
  return {wrong_key_rejected == 100 && uuid_rejected == 100 &&
              fs::is_empty(out),
          "wrong keys rejected " + std::to_string(wrong_key_rejected) +
              "/100, wrong-UUID key files KeyMismatch " +
              std::to_string(uuid_rejected) + "/100"};
}

// 5. Randomized registry of >= 50 users.
Outcome auth_matrix() {
  TempDir tmp;
  const fs::path vault_dir = tmp / "vault";
  const auth::Session admin = jfss::testing::admin_session(vault_dir);
  std::mt19937_64 rng(5050);
  auto random_string = [&](std::size_t min_len, std::size_t max_len) {
    static constexpr std::string_view kChars =
        "abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ0123456789!#%&*+-=?@^_~";
    std::string s(min_len + rng() % (max_len - min_len + 1), ' ');
    for (auto& c : s) c = kChars[rng() % kChars.size()];
    return s;
  };

  struct Cred {
    std::string user, password;
  };
  std::vector<Cred> creds;
  std::set<std::string> names;
  while (creds.size() < 50) {
    std::string name = "u" + random_string(3, 12);
    if (!names.insert(name).second) continue;
    creds.push_back({name, random_string(8, 20)});
    auth::add_user(admin, vault_dir, creds.back().user, creds.back().password);
  }

  std::size_t failures = 0;
  std::string first_failure;
  auto fail = [&](const std::string& why) {
    if (failures++ == 0) first_failure = why;
  };
  auto try_login = [&](const std::string& u, const std::string& p) {
    try {
      return std::optional<auth::Session>(auth::login(vault_dir, u, p));
    } catch (const Error& e) {
      if (e.code() != Errc::kAuthFailure) fail("unexpected error " + std::string(e.what()));
      return std::optional<auth::Session>();
    }
  };

  for (std::size_t i = 0; i < creds.size(); ++i) {
    const Cred& c = creds[i];
    auto s = try_login(c.user, c.password);
    if (!s || s->role() != auth::Role::kUser) {
      fail("exact match rejected for " + c.user);
      continue;
    }
    const Cred& other = creds[(i + 1 + rng() % (creds.size() - 1)) % creds.size()];
    if (try_login(c.user, other.password)) fail("cross password accepted");
    std::string mutated = c.password;
    mutated[rng() % mutated.size()] ^= 0x01;
    if (try_login(c.user, mutated)) fail("mutated password accepted");
    if (try_login(c.user, c.password + "x")) fail("extended password accepted");
    if (try_login(c.user.substr(0, c.user.size() - 1), c.password)) {
      fail("truncated username accepted");
    }
    try {
      auth::add_user(*s, vault_dir, "intruder" + std::to_string(i), "intruder-pw");
      fail("non-admin add_user accepted");
    } catch (const Error& e) {
      if (e.code() != Errc::kNotAdmin) fail("non-admin add_user wrong error");
    }
  }
  for (int i = 0; i < 10; ++i) {
    if (try_login("ghost" + random_string(4, 8), creds[i].password)) {
      fail("unknown user accepted");
    }
  }
  if (!try_login(std::string(jfss::testing::kAdmin),
                 std::string(jfss::testing::kAdminPassword))) {
    fail("admin rejected");
  }

  const Bytes raw = jfss::testing::read_file(auth::store_file(vault_dir));
  const std::string haystack(raw.begin(), raw.end());
  std::size_t leaks = 0;
  for (const Cred& c : creds) leaks += haystack.find(c.password) != std::string::npos;
  leaks += haystack.find(jfss::testing::kAdminPassword) != std::string::npos;
  if (leaks) fail(std::to_string(leaks) + " passwords found in credential store");
  if (auth::load_users(vault_dir).size() != creds.size() + 1) {
    fail("registry size changed by rejected add_user");
  }

  return {failures == 0, std::to_string(creds.size()) + " users, " +
                             std::to_string(failures) + " violations" +
                             (failures ? " (first: " + first_failure + ")" : "")};
}

// 6. Crash at each commit point leaves source or a complete pair.
Outcome crash_safety() {
  TempDir tmp;
  const fs::path docs = tmp.mkdir("docs");
  const keystore::KeystoreConfig cfg{tmp.mkdir("card"), std::nullopt};
  const auth::Session session = jfss::testing::admin_session(tmp / "vault");
  std::mt19937_64 rng(6);

  std::size_t points = 0, ok = 0;
  std::string bad;
  int idx = 0;
  for (vault::EncryptStep step : vault::kAllEncryptSteps) {
    for (bool hard_crash : {true, false}) {
      ++points;
      const Bytes original = jfss::testing::random_bytes(rng, 10000);
      const fs::path src = docs / ("doc" + std::to_string(idx++) + ".pdf");
      jfss::testing::write_file(src, original);

      vault::EncryptOptions opts;
      if (hard_crash) {
        opts.step_hook = [step](vault::EncryptStep at) {
          if (at == step) ::_exit(42);
        };
        const pid_t pid = ::fork();
        if (pid == 0) {
          try {
            vault::encrypt_file(session, src, cfg, opts);
          } catch (...) {
          }
          ::_exit(1);
        }
        int status = 0;
        ::waitpid(pid, &status, 0);
        if (!WIFEXITED(status) || WEXITSTATUS(status) != 42) {
          bad += " " + std::string(vault::to_string(step)) + "(hook not reached)";
          continue;
        }
      } else {
        opts.step_hook = [step](vault::EncryptStep at) {
          if (at == step) throw Error(Errc::kIo, "injected fault");
        };
        try {
          vault::encrypt_file(session, src, cfg, opts);
        } catch (const Error&) {
        }
      }

      bool recoverable = false;
      if (fs::exists(src)) {
        recoverable = jfss::testing::read_file(src) == original;
      } else {
        fs::path c = src;
        c += ".jfss";
        try {
          const fs::path scratch = tmp.mkdir("restore" + std::to_string(idx));
          vault::DecryptOptions d;
          d.out_dir = scratch;
          recoverable = fs::exists(c) &&
                        jfss::testing::read_file(
                            vault::decrypt_file(session, c, cfg, d)) == original;
        } catch (const Error&) {
        }
      }
      if (recoverable) {
        ++ok;
      } else {
        bad += " " + std::string(vault::to_string(step)) +
               (hard_crash ? "(crash)" : "(fault)");
      }
    }
  }
  const std::size_t commit_points = std::size(vault::kAllEncryptSteps);
  return {ok == points && commit_points >= 4,
          std::to_string(commit_points) + " commit points, " + std::to_string(ok) +
              "/" + std::to_string(points) + " crash/fault injections recoverable" +
              (bad.empty() ? "" : "; failed:" + bad)};
}

// 7. Selective (1 of 100 x 256 KiB) vs full, median of 5.
Outcome on_demand_ratio() {
  const auto t0 = Clock::now();
  TempDir tmp;
  const auth::Session session = jfss::testing::admin_session(tmp / "vault");
  bench::generate_workload(tmp / "work", 100, 256 * 1024, 7);
  const bench::BenchReport r = bench::run_benchmark(session, tmp / "work", 1, 5);
  const double overhead = r.t_full > 0 ? r.t_fixed / r.t_full : 0;
  const double threshold = (0.05 + overhead) * 1.25;
  std::ostringstream d;
  d.precision(4);
  d << "ratio " << r.ratio << " <= (0.05 + fixed " << overhead
    << ") * 1.25 = " << threshold << "; predicted " << r.predicted_ratio
    << "; t_sel " << r.t_selective << " s, t_full " << r.t_full << " s";
  Outcome o{r.ratio > 0 && r.ratio <= threshold, d.str()};
  return within(o, seconds_since(t0), 120.0);
}

// 8. 10,000 random byte strings into both decoders: FormatError or success.
Outcome format_fuzz() {
  const pid_t pid = ::fork();
  if (pid == 0) {
    std::mt19937_64 rng(8);
    container::ContainerHeader h;
    h.original_name = "seed";
    const Bytes seed = container::encode_container(h, Bytes(20));
    int other = 0;
    for (int i = 0; i < 10000; ++i) {
      Bytes input;
      if (i % 4 == 3) {
        // Keep a valid magic/version some of the time to reach deeper fields.
        input = seed;
        for (int e = 0; e < 3; ++e) {
          input[7 + rng() % (input.size() - 7)] = static_cast<std::uint8_t>(rng());
        }
        input.resize(rng() % (input.size() + 1));
      } else {
        input = jfss::testing::random_bytes(rng, rng() % 160);
      }
      try {
        container::decode_container(input);
      } catch (const FormatError&) {
      } catch (...) {
        ++other;
      }
      try {
        container::decode_keyfile(input);
      } catch (const FormatError&) {
      } catch (...) {
        ++other;
      }
    }
    ::_exit(other == 0 ? 0 : 3);
  }
  int status = 0;
  ::waitpid(pid, &status, 0);
  if (WIFSIGNALED(status)) {
    return {false, "decoder crashed with signal " + std::to_string(WTERMSIG(status))};
  }
  const int code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return {code == 0, code == 0 ? "10000 inputs x 2 decoders, only FormatErrors"
                               : "non-FormatError exceptions observed"};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"AC1 AEAD known-answer conformance", aead_known_answers},
      {"AC2 end-to-end roundtrip", end_to_end_roundtrip},
      {"AC3 tamper totality", tamper_totality},
      {"AC4 key separation", key_separation},
      {"AC5 auth matrix", auth_matrix},
      {"AC6 crash safety", crash_safety},
      {"AC7 on-demand ratio", on_demand_ratio},
      {"AC8 format fuzz", format_fuzz},
  };
  int failed = 0;
  for (const auto& [name, run] : criteria) {
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failed += !o.pass;
    std::cout << (o.pass ? "[PASS] " : "[FAIL] ") << name << ": " << o.detail
              << std::endl;
  }
  std::cout << (failed ? "acceptance: FAILED (" + std::to_string(failed) + ")"
                       : std::string("acceptance: all criteria passed"))
            << std::endl;
  return failed ? 1 : 0;
}
