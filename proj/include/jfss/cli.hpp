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

#ifndef JFSS_CLI_HPP_
#define JFSS_CLI_HPP_

#include <functional>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>

#include "jfss/error.hpp"

namespace jfss::cli {

// Process exit statuses.
enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 1,
  kExitAuth = 2,
  kExitIntegrity = 3,
  kExitFormat = 4,
  kExitKey = 5,
  kExitIo = 6,
};

int exit_code_for(Errc code);

using Environment = std::map<std::string, std::string>;

// Asks the user for a secret; nullopt when no terminal is available.
using PasswordPrompt =
    std::function<std::optional<std::string>(std::string_view prompt)>;

// Runs one command. `args` is the full argument vector including the program
// name. Passwords come from JFSS_PASSWORD / JFSS_NEW_PASSWORD in `env` or
// from `prompt`, never from the argument list.
int dispatch(std::span<const std::string> args, const Environment& env,
             std::ostream& out, std::ostream& err,
             const PasswordPrompt& prompt = {});

}  // namespace jfss::cli

#endif  // JFSS_CLI_HPP_
