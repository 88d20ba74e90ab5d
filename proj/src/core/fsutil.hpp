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

#include <cstdio>
#include <filesystem>
#include <string>
#include <utility>

#include "core/error.hpp"

namespace ect {

// Writes through a sibling temp file and renames into place, so readers
// never observe a half-written artifact. `writer(file, tmp_path)` fills the
// open stream; any exception removes the temp file and propagates.
template <typename Writer>
void atomic_file_write(const std::string& path, Writer&& writer) {
  const std::string tmp = path + ".tmp";
  std::FILE* f = std::fopen(tmp.c_str(), "wb");
  if (!f) fail(ErrorCode::Io, "cannot create '" + tmp + "'");
  try {
    writer(f, tmp);
  } catch (...) {
    std::fclose(f);
    std::error_code ec;
    std::filesystem::remove(tmp, ec);
    throw;
  }
  if (std::fclose(f) != 0) {
    std::error_code ec;
    std::filesystem::remove(tmp, ec);
    fail(ErrorCode::Io, "cannot flush '" + tmp + "'");
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    fail(ErrorCode::Io, "cannot rename '" + tmp + "' to '" + path + "'");
  }
}

}  // namespace ect
