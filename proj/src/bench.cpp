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

#include "jfss/bench.hpp"

#include <stdlib.h>

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <iomanip>
#include <ostream>
#include <random>
#include <string>
#include <system_error>

#include "jfss/error.hpp"
#include "jfss/fsutil.hpp"
#include "jfss/vault.hpp"

namespace jfss::bench {
namespace {

using Clock = std::chrono::steady_clock;

constexpr double kMiB = 1024.0 * 1024.0;

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

class ScratchDir {
 public:
  ScratchDir() {
    std::string tmpl =
        (fs::temp_directory_path() / "jfss-bench-XXXXXX").string();
    if (::mkdtemp(tmpl.data()) == nullptr) {
      throw Error(Errc::kIo, "cannot create benchmark scratch directory");
    }
    path_ = tmpl;
  }
  ScratchDir(const ScratchDir&) = delete;
  ScratchDir& operator=(const ScratchDir&) = delete;
  ~ScratchDir() {
    try {
      fsutil::force_remove_all(path_);
    } catch (...) {
    }
  }
  const fs::path& path() const { return path_; }

 private:
  fs::path path_;
};

// Copies the workload (untimed), then times encrypting its first `count`
// files through the full vault pipeline.
double timed_trial(const auth::Session& session, const Manifest& workload,
                   std::size_t count, const fs::path& scratch) {
  const fs::path tree = scratch / "tree";
  const fs::path card = scratch / "card";
  fsutil::force_remove_all(tree);
  fsutil::force_remove_all(card);
  fs::create_directories(tree);
  fs::create_directories(card);

  std::vector<fs::path> targets;
  targets.reserve(workload.size());
  for (const WorkloadEntry& e : workload) {
    const fs::path dst = tree / e.path.filename();
    fs::copy_file(e.path, dst);
    targets.push_back(dst);
  }

  keystore::KeystoreConfig cfg{card, std::nullopt};
  const auto start = Clock::now();
  for (std::size_t i = 0; i < count; ++i) {
    vault::encrypt_file(session, targets[i], cfg);
  }
  const auto stop = Clock::now();

  fsutil::force_remove_all(tree);
  fsutil::force_remove_all(card);
  return std::chrono::duration<double>(stop - start).count();
}

}  // namespace

Manifest generate_workload(const fs::path& dir, std::size_t n_files,
                           std::uintmax_t size_each, std::uint64_t seed) {
  std::error_code ec;
  if (fs::exists(dir, ec) && !fs::is_empty(dir, ec)) {
    throw Error(Errc::kIo, dir.string() + " is not empty");
  }
  fs::create_directories(dir, ec);
  if (ec) throw Error(Errc::kIo, "create " + dir.string() + ": " + ec.message());

  std::mt19937_64 rng(seed);
  Manifest manifest;
  manifest.reserve(n_files);
  Bytes buf(static_cast<std::size_t>(size_each));
  for (std::size_t i = 0; i < n_files; ++i) {
    for (std::size_t off = 0; off < buf.size(); off += 8) {
      std::uint64_t word = rng();
      for (std::size_t b = 0; b < 8 && off + b < buf.size(); ++b) {
        buf[off + b] = static_cast<std::uint8_t>(word >> (8 * b));
      }
    }
    char name[32];
    std::snprintf(name, sizeof(name), "file_%05zu.bin", i);
    const fs::path path = dir / name;
    fsutil::WriteOptions opts;
    opts.mode |= fs::perms::group_read | fs::perms::others_read;
    fsutil::atomic_write(path, buf, opts);
    manifest.push_back({path, size_each});
  }
  return manifest;
}

Manifest scan_workload(const fs::path& dir) {
  std::error_code ec;
  if (!fs::is_directory(dir, ec)) {
    throw Error(Errc::kIo, dir.string() + " is not a directory");
  }
  Manifest manifest;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.is_regular_file()) {
      manifest.push_back({entry.path(), entry.file_size()});
    }
  }
  std::sort(manifest.begin(), manifest.end(),
            [](const WorkloadEntry& a, const WorkloadEntry& b) {
              return a.path.filename() < b.path.filename();
            });
  return manifest;
}

BenchReport run_benchmark(const auth::Session& session, const fs::path& dir,
                          std::size_t select_k, std::size_t repeats) {
  if (repeats < kMinRepeats) {
    throw Error(Errc::kInvalidSelection, "repeats must be at least 3");
  }
  const Manifest workload = scan_workload(dir);
  if (workload.empty()) {
    throw Error(Errc::kInvalidSelection, "workload directory has no files");
  }
  if (select_k == 0 || select_k > workload.size()) {
    throw Error(Errc::kInvalidSelection,
                "selection must be between 1 and the number of workload files");
  }

  BenchReport r;
  r.total_files = workload.size();
  r.selected_files = select_k;
  r.repeats = repeats;
  for (std::size_t i = 0; i < workload.size(); ++i) {
    r.total_bytes += workload[i].size;
    if (i < select_k) r.selected_bytes += workload[i].size;
  }

  ScratchDir scratch;
  const fs::path empty_dir = scratch.path() / "empty";
  fs::create_directories(empty_dir);
  fsutil::atomic_write(empty_dir / "empty.bin", ByteView{});
  const Manifest empty_workload = scan_workload(empty_dir);

  std::vector<double> selective, full, fixed;
  for (std::size_t rep = 0; rep < repeats; ++rep) {
    fixed.push_back(timed_trial(session, empty_workload, 1, scratch.path()));
    // Alternate the order so neither mode always runs on a warmer cache.
    if (rep % 2 == 0) {
      selective.push_back(
          timed_trial(session, workload, select_k, scratch.path()));
      full.push_back(
          timed_trial(session, workload, workload.size(), scratch.path()));
    } else {
      full.push_back(
          timed_trial(session, workload, workload.size(), scratch.path()));
      selective.push_back(
          timed_trial(session, workload, select_k, scratch.path()));
    }
  }

  r.t_selective = median(selective);
  r.t_full = median(full);
  r.t_fixed = median(fixed);
  r.ratio = r.t_selective / r.t_full;
  r.throughput_selective_mib_s =
      r.t_selective > 0 ? r.selected_bytes / kMiB / r.t_selective : 0;
  r.throughput_full_mib_s = r.t_full > 0 ? r.total_bytes / kMiB / r.t_full : 0;

  const double n = static_cast<double>(r.total_files);
  const double k = static_cast<double>(r.selected_files);
  const double per_byte =
      r.total_bytes > 0
          ? std::max(0.0, (r.t_full - n * r.t_fixed) / r.total_bytes)
          : 0.0;
  const double denom = n * r.t_fixed + per_byte * r.total_bytes;
  r.predicted_ratio =
      denom > 0 ? (k * r.t_fixed + per_byte * r.selected_bytes) / denom : k / n;
  return r;
}

void print_report(std::ostream& out, const BenchReport& r) {
  auto row = [&](const char* label, const auto& value) {
    out << std::left << std::setw(30) << label << std::right << std::setw(16)
        << value << '\n';
  };
  out << std::fixed << std::setprecision(6);
  row("total_files", r.total_files);
  row("total_bytes", r.total_bytes);
  row("selected_files", r.selected_files);
  row("selected_bytes", r.selected_bytes);
  row("repeats", r.repeats);
  row("t_selective_s", r.t_selective);
  row("t_full_s", r.t_full);
  row("t_fixed_s", r.t_fixed);
  row("throughput_selective_mib_s", r.throughput_selective_mib_s);
  row("throughput_full_mib_s", r.throughput_full_mib_s);
  row("ratio", r.ratio);
  row("predicted_ratio", r.predicted_ratio);
}

void print_raw(std::ostream& out, const BenchReport& r) {
  out << std::setprecision(9);
  out << "total_files=" << r.total_files << '\n'
      << "total_bytes=" << r.total_bytes << '\n'
      << "selected_files=" << r.selected_files << '\n'
      << "selected_bytes=" << r.selected_bytes << '\n'
      << "repeats=" << r.repeats << '\n'
      << "t_selective=" << r.t_selective << '\n'
      << "t_full=" << r.t_full << '\n'
      << "t_fixed=" << r.t_fixed << '\n'
      << "throughput_selective_mib_s=" << r.throughput_selective_mib_s << '\n'
      << "throughput_full_mib_s=" << r.throughput_full_mib_s << '\n'
      << "ratio=" << r.ratio << '\n'
      << "predicted_ratio=" << r.predicted_ratio << '\n';
}

}  // namespace jfss::bench
