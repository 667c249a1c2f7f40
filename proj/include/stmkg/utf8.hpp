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

#ifndef STMKG_UTF8_HPP_
#define STMKG_UTF8_HPP_

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

// Minimal UTF-8 helpers. Character offsets throughout the library count
// Unicode scalar values, so every text access goes through here.
namespace stmkg::utf8 {

// Length in bytes of the sequence introduced by `lead`. Malformed lead bytes
// count as a single byte so that every input has a well-defined length.
inline std::size_t sequence_length(unsigned char lead) {
  if (lead < 0x80) return 1;
  if ((lead >> 5) == 0x6) return 2;
  if ((lead >> 4) == 0xE) return 3;
  if ((lead >> 3) == 0x1E) return 4;
  return 1;
}

inline bool is_continuation(unsigned char c) { return (c & 0xC0) == 0x80; }

// Byte offset of every scalar boundary; result.size() == scalar count + 1.
inline std::vector<std::size_t> boundaries(std::string_view s) {
  std::vector<std::size_t> out;
  out.reserve(s.size() + 1);
  std::size_t i = 0;
  while (i < s.size()) {
    out.push_back(i);
    std::size_t n = sequence_length(static_cast<unsigned char>(s[i]));
    std::size_t j = 1;
    while (j < n && i + j < s.size() &&
           is_continuation(static_cast<unsigned char>(s[i + j]))) {
      ++j;
    }
    i += j;
  }
  out.push_back(s.size());
  return out;
}

inline std::size_t length(std::string_view s) {
  return boundaries(s).size() - 1;
}

// Precomputed scalar-to-byte index over a string that outlives it.
class TextIndex {
 public:
  explicit TextIndex(std::string_view text)
      : text_(text), bounds_(boundaries(text)) {}

  std::size_t size() const { return bounds_.size() - 1; }

  // Slice by scalar offsets [start, end).
  std::string_view slice(std::size_t start, std::size_t end) const {
    if (start > end || end > size()) {
      throw std::out_of_range("scalar range [" + std::to_string(start) + "," +
                              std::to_string(end) + ") outside text of " +
                              std::to_string(size()) + " characters");
    }
    return text_.substr(bounds_[start], bounds_[end] - bounds_[start]);
  }

  std::size_t byte_offset(std::size_t scalar) const { return bounds_.at(scalar); }

  // Scalar offset of a byte position that lies on a boundary.
  std::size_t scalar_offset(std::size_t byte) const {
    auto it = std::lower_bound(bounds_.begin(), bounds_.end(), byte);
    if (it == bounds_.end() || *it != byte) {
      throw std::out_of_range("byte offset not on a character boundary");
    }
    return static_cast<std::size_t>(it - bounds_.begin());
  }

 private:
  std::string_view text_;
  std::vector<std::size_t> bounds_;
};

inline std::u32string decode(std::string_view s) {
  std::u32string out;
  std::size_t i = 0;
  while (i < s.size()) {
    auto lead = static_cast<unsigned char>(s[i]);
    std::size_t n = sequence_length(lead);
    if (n == 1 || i + n > s.size()) {
      out.push_back(lead < 0x80 ? lead : 0xFFFD);
      ++i;
      continue;
    }
    char32_t cp = n == 2 ? (lead & 0x1F) : n == 3 ? (lead & 0x0F) : (lead & 0x07);
    bool ok = true;
    for (std::size_t j = 1; j < n; ++j) {
      auto c = static_cast<unsigned char>(s[i + j]);
      if (!is_continuation(c)) {
        ok = false;
        break;
      }
      cp = (cp << 6) | (c & 0x3F);
    }
    if (!ok) {
      out.push_back(0xFFFD);
      ++i;
      continue;
    }
    out.push_back(cp);
    i += n;
  }
  return out;
}

inline void append(std::string& out, char32_t cp) {
  if (cp < 0x80) {
    out.push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else if (cp < 0x10000) {
    out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else {
    out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  }
}

inline std::string encode(std::u32string_view s) {
  std::string out;
  out.reserve(s.size());
  for (char32_t cp : s) append(out, cp);
  return out;
}

// Simple case mapping for Latin, Latin-1, Greek and basic Cyrillic. Locale
// independent so labels are identical on every platform.
inline char32_t to_lower(char32_t c) {
  if (c >= U'A' && c <= U'Z') return c + 32;
  if (c < 0x80) return c;
  if ((c >= 0xC0 && c <= 0xDE) && c != 0xD7) return c + 32;
  if (c >= 0x391 && c <= 0x3A9 && c != 0x3A2) return c + 32;
  if (c >= 0x410 && c <= 0x42F) return c + 32;
  if (c >= 0x400 && c <= 0x40F) return c + 80;
  return c;
}

inline bool is_upper(char32_t c) { return to_lower(c) != c; }

inline std::string to_lower(std::string_view s) {
  bool ascii = true;
  for (char ch : s) {
    if (static_cast<unsigned char>(ch) >= 0x80) {
      ascii = false;
      break;
    }
  }
  if (ascii) {
    std::string out(s);
    for (char& ch : out) {
      if (ch >= 'A' && ch <= 'Z') ch = static_cast<char>(ch + 32);
    }
    return out;
  }
  std::u32string cps = decode(s);
  for (char32_t& c : cps) c = to_lower(c);
  return encode(cps);
}

inline bool has_upper(std::string_view s) {
  for (char32_t c : decode(s)) {
    if (is_upper(c)) return true;
  }
  return false;
}

inline bool is_space(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' ||
         c == '\v';
}

inline bool is_space(char32_t c) {
  return c == U' ' || c == U'\t' || c == U'\n' || c == U'\r' || c == U'\f' ||
         c == U'\v';
}

}  // namespace stmkg::utf8

#endif  // STMKG_UTF8_HPP_
