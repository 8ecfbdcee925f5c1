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

#ifndef JFSS_BENCH_HPP_
#define JFSS_BENCH_HPP_

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <vector>

#include "jfss/auth.hpp"

namespace jfss::bench {

namespace fs = std::filesystem;

inline constexpr std::size_t kMinRepeats = 3;

struct WorkloadEntry {
  fs::path path;
  std::uintmax_t size = 0;
};

using Manifest = std::vector<WorkloadEntry>;

// Writes n_files files named file_00000.bin, ... each of size_each
// pseudo-random bytes. The same seed always yields byte-identical trees.
// Errors: kIo (including a non-empty target directory).
Manifest generate_workload(const fs::path& dir, std::size_t n_files,
                           std::uintmax_t size_each, std::uint64_t seed = 1);

// Regular files directly inside dir, sorted by name.
Manifest scan_workload(const fs::path& dir);

struct BenchReport {
  std::size_t total_files = 0;
  std::uintmax_t total_bytes = 0;
  std::size_t selected_files = 0;
  std::uintmax_t selected_bytes = 0;
  std::size_t repeats = 0;
  double t_selective = 0;   // seconds, median over repeats
  double t_full = 0;        // seconds, median over repeats
  double t_fixed = 0;       // seconds to encrypt one 0-byte file, median
  double throughput_selective_mib_s = 0;
  double throughput_full_mib_s = 0;
  double ratio = 0;            // t_selective / t_full
  double predicted_ratio = 0;  // fixed-overhead + per-byte model
};

// Times (a) encrypting the first select_k files of the workload and (b)
// encrypting all of them, each on a fresh copy of the tree, and reports the
// per-mode median over `repeats` trials. Trials run sequentially.
//
// Errors: kInvalidSelection (select_k outside [1, n], repeats < 3, empty workload), kIo.
BenchReport run_benchmark(const auth::Session& session, const fs::path& dir,
                          std::size_t select_k, std::size_t repeats = 5);

// Two-column aligned listing.
void print_report(std::ostream& out, const BenchReport& report);
// One key=value per line.
void print_raw(std::ostream& out, const BenchReport& report);

}  // namespace jfss::bench

#endif  // JFSS_BENCH_HPP_
