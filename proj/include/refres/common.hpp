// Copyright 2026 The refres Authors.
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

// Shared vocabulary types, error classes and small string helpers.

#pragma once

#include <cctype>
#include <charconv>
#include <cstdio>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

namespace refres {

// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input file; carries the 1-based line number of the offending line.
class ParseError : public Error {
 public:
  ParseError(std::string source, int line, const std::string &what)
      : Error(source + ":" + std::to_string(line) + ": " + what),
        source_(std::move(source)),
        line_(line) {}

  const std::string &source() const { return source_; }
  int line() const { return line_; }

 private:
  std::string source_;
  int line_;
};

enum class Pos {
  NOUN,
  PNOUN,
  DET,
  PRO_SUBJ,
  PRO_DOBJ,
  PRO_IOBJ,
  PRO_TONIC,
  AMB_LE,
  AMB_LUI,
  VERB,
  ADJ,
  PREP,
  OTHER,
};

enum class Gender { M, F, UNKNOWN };
enum class Number { SG, PL, UNKNOWN };
enum class Role { SUBJ, DOBJ, IOBJ, OTHER, NONE };
enum class Chunk { B_NP, I_NP, O };

enum class ReKind { NOMINAL_COMMON, NOMINAL_PROPER, PRONOMINAL };

inline constexpr std::string_view kPosNames[] = {
    "NOUN",     "PNOUN",     "DET",    "PRO_SUBJ", "PRO_DOBJ", "PRO_IOBJ", "PRO_TONIC",
    "AMB_LE",   "AMB_LUI",   "VERB",   "ADJ",      "PREP",     "OTHER"};

inline std::string_view to_string(Pos pos) { return kPosNames[static_cast<int>(pos)]; }

inline std::optional<Pos> parse_pos(std::string_view text) {
  for (std::size_t i = 0; i < std::size(kPosNames); ++i) {
    if (kPosNames[i] == text) return static_cast<Pos>(i);
  }
  return std::nullopt;
}

inline bool is_pronoun(Pos pos) {
  return pos == Pos::PRO_SUBJ || pos == Pos::PRO_DOBJ || pos == Pos::PRO_IOBJ ||
         pos == Pos::PRO_TONIC;
}

inline bool is_noun(Pos pos) { return pos == Pos::NOUN || pos == Pos::PNOUN; }

// Single-character codes used by every file format: m/f/-.
inline char gender_code(Gender g) {
  switch (g) {
    case Gender::M: return 'm';
    case Gender::F: return 'f';
    default: return '-';
  }
}

inline std::optional<Gender> parse_gender(std::string_view text) {
  if (text == "m") return Gender::M;
  if (text == "f") return Gender::F;
  if (text == "-") return Gender::UNKNOWN;
  return std::nullopt;
}

inline char number_code(Number n) {
  switch (n) {
    case Number::SG: return 's';
    case Number::PL: return 'p';
    default: return '-';
  }
}

inline std::optional<Number> parse_number(std::string_view text) {
  if (text == "s") return Number::SG;
  if (text == "p") return Number::PL;
  if (text == "-") return Number::UNKNOWN;
  return std::nullopt;
}

inline std::string_view role_code(Role r) {
  switch (r) {
    case Role::SUBJ: return "subj";
    case Role::DOBJ: return "dobj";
    case Role::IOBJ: return "iobj";
    case Role::OTHER: return "other";
    default: return "-";
  }
}

inline std::string_view to_string(Role r) {
  switch (r) {
    case Role::SUBJ: return "SUBJ";
    case Role::DOBJ: return "DOBJ";
    case Role::IOBJ: return "IOBJ";
    case Role::OTHER: return "OTHER";
    default: return "NONE";
  }
}

inline std::optional<Role> parse_role(std::string_view text) {
  if (text == "subj") return Role::SUBJ;
  if (text == "dobj") return Role::DOBJ;
  if (text == "iobj") return Role::IOBJ;
  if (text == "other") return Role::OTHER;
  if (text == "-") return Role::NONE;
  return std::nullopt;
}

inline std::string_view chunk_code(Chunk c) {
  switch (c) {
    case Chunk::B_NP: return "B-NP";
    case Chunk::I_NP: return "I-NP";
    default: return "O";
  }
}

inline std::optional<Chunk> parse_chunk(std::string_view text) {
  if (text == "B-NP") return Chunk::B_NP;
  if (text == "I-NP") return Chunk::I_NP;
  if (text == "O") return Chunk::O;
  return std::nullopt;
}

inline std::string_view to_string(ReKind kind) {
  switch (kind) {
    case ReKind::NOMINAL_COMMON: return "NOMINAL_COMMON";
    case ReKind::NOMINAL_PROPER: return "NOMINAL_PROPER";
    default: return "PRONOMINAL";
  }
}

inline bool is_nominal(ReKind kind) { return kind != ReKind::PRONOMINAL; }

// Known-vs-known equality; UNKNOWN is compatible with anything.
inline bool compatible(Gender a, Gender b) {
  return a == Gender::UNKNOWN || b == Gender::UNKNOWN || a == b;
}
inline bool compatible(Number a, Number b) {
  return a == Number::UNKNOWN || b == Number::UNKNOWN || a == b;
}

namespace text {

inline std::string_view trim(std::string_view s) {
  const char *ws = " \t\r\n";
  auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(ws);
  return s.substr(b, e - b + 1);
}

inline std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (;;) {
    auto pos = s.find(sep, start);
    if (pos == std::string_view::npos) {
      out.push_back(s.substr(start));
      return out;
    }
    out.push_back(s.substr(start, pos - start));
    start = pos + 1;
  }
}

// ASCII-only lowercasing; multi-byte UTF-8 sequences pass through untouched.
inline std::string to_lower(std::string_view s) {
  std::string out(s);
  for (char &c : out) {
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  }
  return out;
}

template <typename T>
std::optional<T> parse_number_value(std::string_view s) {
  T value{};
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
  return value;
}

// Fixed four-decimal rendering used for activations in every output.
inline std::string fixed4(double value) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.4f", value);
  return buf;
}

template <typename Range, typename Fn>
std::string join(const Range &range, std::string_view sep, Fn &&fn) {
  std::string out;
  bool first = true;
  for (const auto &item : range) {
    if (!first) out += sep;
    first = false;
    out += fn(item);
  }
  return out;
}

// True for '#' comment lines and blank lines.
inline bool is_skippable(std::string_view line) {
  auto t = trim(line);
  return t.empty() || line.front() == '#';
}

}  // namespace text
}  // namespace refres
