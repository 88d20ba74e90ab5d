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

#include <string>
#include <vector>

namespace ect {

// Shortest decimal form that round-trips the exact double.
std::string format_double(double v);

// UTF-8, LF line endings, header first. Cells are written verbatim; none of
// our values contain commas or quotes.
class CsvWriter {
 public:
  explicit CsvWriter(std::vector<std::string> header);

  void add_row(std::vector<std::string> cells);
  const std::string& text() const { return text_; }

  // Atomic write (temp + rename).
  void save(const std::string& path) const;

 private:
  size_t columns_;
  std::string text_;
};

}  // namespace ect
