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

#ifndef JFSS_ERROR_HPP_
#define JFSS_ERROR_HPP_

#include <stdexcept>
#include <string>
#include <string_view>

namespace jfss {

// Every failure the toolkit reports carries one of these codes. The CLI maps
// each code to exactly one exit status (see cli.hpp).
enum class Errc {
  kRandomnessUnavailable,
  kMalformedInput,
  kIntegrity,
  kEmptyPassword,
  kInvalidParams,
  kInvalidHeader,
  kInvalidRecord,
  kFormat,
  kNoDestination,
  kKeyColocated,
  kInvalidConfig,
  kIo,
  kKeyNotFound,
  kKeyMismatch,
  kAlreadyInitialized,
  kWeakPassword,
  kInvalidUsername,
  kNotAdmin,
  kDuplicateUser,
  kAuthFailure,
  kStoreCorrupt,
  kSourceMissing,
  kAlreadyEncrypted,
  kNameCollision,
  kInvalidSelection,
};

std::string_view to_string(Errc code);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

enum class FormatFault {
  kBadMagic,
  kBadVersion,
  kBadCipher,
  kTruncated,
  kBadName,
  kBadLength,
};

std::string_view to_string(FormatFault fault);

class FormatError : public Error {
 public:
  FormatError(FormatFault fault, const std::string& what)
      : Error(Errc::kFormat, what), fault_(fault) {}

  FormatFault fault() const noexcept { return fault_; }

 private:
  FormatFault fault_;
};

}  // namespace jfss

#endif  // JFSS_ERROR_HPP_
