// Copyright 2026 The stabbreed Authors
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

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace stabbreed {

/// Malformed text input. `line()` is 1-based, 0 when not tied to a line.
class ParseError : public std::runtime_error {
   public:
    ParseError(size_t line, const std::string &what)
        : std::runtime_error(line ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}
    size_t line() const { return line_; }

   private:
    size_t line_;
};

/// Splits text into lines, dropping blank lines and '#' comments but keeping
/// the original 1-based line numbers.
struct TextLine {
    size_t number;
    std::string text;
};
std::vector<TextLine> significant_lines(std::string_view text);

}  // namespace stabbreed
