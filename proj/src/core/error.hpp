// Copyright 2026 The ect Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>

namespace ect {

// Error categories. Values are shared with the C API status codes
// (include/ect/ect.h), so keep the numbering in sync.
enum class ErrorCode {
  InvalidArgument = 1,
  Io = 2,
  Decode = 3,
  ImageTooSmall = 4,
  InsufficientImages = 5,
  DegenerateCorpus = 6,
  ConstantChannel = 7,
  IndexOutOfRange = 8,
  DimensionMismatch = 9,
  Internal = 10,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace ect
