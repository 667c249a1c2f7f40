// Copyright 2026 The stmkg Authors.
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

#ifndef STMKG_PARSE_ERROR_HPP_
#define STMKG_PARSE_ERROR_HPP_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace stmkg {

// Malformed input. `line` is 1-based; 0 when the error is not tied to a line.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::string source, std::size_t line, const std::string& message)
      : std::runtime_error(format(source, line, message)),
        source_(std::move(source)),
        line_(line) {}

  const std::string& source() const { return source_; }
  std::size_t line() const { return line_; }

 private:
  static std::string format(const std::string& source, std::size_t line,
                            const std::string& message) {
    std::string out = source.empty() ? "<input>" : source;
    if (line > 0) out += ":" + std::to_string(line);
    return out + ": " + message;
  }

  std::string source_;
  std::size_t line_;
};

}  // namespace stmkg

#endif  // STMKG_PARSE_ERROR_HPP_
