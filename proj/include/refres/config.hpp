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

// Resolution weights, M2 triggers and their `key = value` file format.

#pragma once

#include <array>
#include <functional>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <string>

#include "refres/common.hpp"

namespace refres {

enum class MergeActivation { MAX, SUM };
enum class TieBreak { MOST_RECENT_THEN_LOWEST_LABEL };

class ConfigError : public Error {
 public:
  using Error::Error;
};

struct ResolutionConfig {
  double decay_factor = 0.5;
  double base_increment = 20.0;
  // Indexed by Role (SUBJ, DOBJ, IOBJ, OTHER).
  std::array<double, 4> role_bonus = {80.0, 50.0, 40.0, 30.0};
  // Indexed by ReKind (NOMINAL_COMMON, NOMINAL_PROPER, PRONOMINAL).
  std::array<double, 3> kind_multiplier = {1.0, 1.5, 0.5};
  TieBreak tie_break = TieBreak::MOST_RECENT_THEN_LOWEST_LABEL;
  int merge_every_k_sentences = 5;
  int archive_after_sentences = 50;
  double archive_activation_floor = 1.0;
  MergeActivation merge_activation = MergeActivation::MAX;
  // Ablation switches: M1 nominal attachment and every M2 merge pass.
  bool attach_nominals = true;
  bool enable_merging = true;

  double bonus(Role role) const {
    return role_bonus[static_cast<int>(role == Role::NONE ? Role::OTHER : role)];
  }
  double multiplier(ReKind kind) const { return kind_multiplier[static_cast<int>(kind)]; }

  // Throws ConfigError on any violated constraint.
  void validate() const {
    auto require = [](bool ok, const char *what) {
      if (!ok) throw ConfigError(std::string("invalid configuration: ") + what);
    };
    require(decay_factor > 0.0 && decay_factor <= 1.0, "decay_factor must lie in (0, 1]");
    require(base_increment >= 0.0, "base_increment must be >= 0");
    for (double b : role_bonus) require(b >= 0.0, "role bonuses must be >= 0");
    for (double m : kind_multiplier) require(m >= 0.0, "kind multipliers must be >= 0");
    require(role_bonus[0] >= role_bonus[1] && role_bonus[1] >= role_bonus[2] &&
                role_bonus[2] >= role_bonus[3],
            "role bonuses must satisfy subj >= dobj >= iobj >= other");
    const double common = kind_multiplier[0], proper = kind_multiplier[1], pronoun = kind_multiplier[2];
    require(proper >= common && common >= pronoun,
            "kind multipliers must satisfy proper >= common >= pronominal");
    require(merge_every_k_sentences >= 0, "merge_every_k_sentences must be >= 0");
    require(archive_after_sentences >= 0, "archive_after_sentences must be >= 0");
    require(archive_activation_floor >= 0.0, "archive_activation_floor must be >= 0");
  }

  bool operator==(const ResolutionConfig &) const = default;
};

namespace detail {

inline std::optional<bool> parse_bool(std::string_view v) {
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  return std::nullopt;
}

}  // namespace detail

// Reads `key = value` lines over a default-initialized config. Unknown keys,
// unparsable values and constraint violations throw ConfigError.
inline ResolutionConfig parse_config(std::istream &in, const std::string &source = "<config>") {
  ResolutionConfig cfg;
  auto real = [](double &slot) {
    return [&slot](std::string_view v) {
      auto x = text::parse_number_value<double>(v);
      if (!x) return false;
      slot = *x;
      return true;
    };
  };
  auto integer = [](int &slot) {
    return [&slot](std::string_view v) {
      auto x = text::parse_number_value<int>(v);
      if (!x) return false;
      slot = *x;
      return true;
    };
  };
  auto boolean = [](bool &slot) {
    return [&slot](std::string_view v) {
      auto x = detail::parse_bool(v);
      if (!x) return false;
      slot = *x;
      return true;
    };
  };

  const std::map<std::string, std::function<bool(std::string_view)>, std::less<>> setters = {
      {"decay_factor", real(cfg.decay_factor)},
      {"base_increment", real(cfg.base_increment)},
      {"role_bonus.subj", real(cfg.role_bonus[0])},
      {"role_bonus.dobj", real(cfg.role_bonus[1])},
      {"role_bonus.iobj", real(cfg.role_bonus[2])},
      {"role_bonus.other", real(cfg.role_bonus[3])},
      {"kind_multiplier.common", real(cfg.kind_multiplier[0])},
      {"kind_multiplier.proper", real(cfg.kind_multiplier[1])},
      {"kind_multiplier.pronominal", real(cfg.kind_multiplier[2])},
      {"tie_break",
       [&cfg](std::string_view v) {
         if (v != "most_recent_then_lowest_label") return false;
         cfg.tie_break = TieBreak::MOST_RECENT_THEN_LOWEST_LABEL;
         return true;
       }},
      {"merge_every_k_sentences", integer(cfg.merge_every_k_sentences)},
      {"archive_after_sentences", integer(cfg.archive_after_sentences)},
      {"archive_activation_floor", real(cfg.archive_activation_floor)},
      {"merge_activation",
       [&cfg](std::string_view v) {
         if (v == "max") {
           cfg.merge_activation = MergeActivation::MAX;
         } else if (v == "sum") {
           cfg.merge_activation = MergeActivation::SUM;
         } else {
           return false;
         }
         return true;
       }},
      {"attach_nominals", boolean(cfg.attach_nominals)},
      {"enable_merging", boolean(cfg.enable_merging)},
  };

  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (text::is_skippable(line)) continue;
    auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError(source + ":" + std::to_string(line_no) + ": expected key = value");
    auto key = text::trim(std::string_view(line).substr(0, eq));
    auto value = text::trim(std::string_view(line).substr(eq + 1));
    auto it = setters.find(key);
    if (it == setters.end()) {
      throw ConfigError(source + ":" + std::to_string(line_no) + ": unknown key '" + std::string(key) + "'");
    }
    if (!it->second(value)) {
      throw ConfigError(source + ":" + std::to_string(line_no) + ": bad value '" + std::string(value) +
                        "' for " + std::string(key));
    }
  }
  cfg.validate();
  return cfg;
}

inline void write_config(std::ostream &out, const ResolutionConfig &cfg) {
  std::ostringstream os;
  os.precision(17);
  os << "decay_factor = " << cfg.decay_factor << '\n'
     << "base_increment = " << cfg.base_increment << '\n'
     << "role_bonus.subj = " << cfg.role_bonus[0] << '\n'
     << "role_bonus.dobj = " << cfg.role_bonus[1] << '\n'
     << "role_bonus.iobj = " << cfg.role_bonus[2] << '\n'
     << "role_bonus.other = " << cfg.role_bonus[3] << '\n'
     << "kind_multiplier.common = " << cfg.kind_multiplier[0] << '\n'
     << "kind_multiplier.proper = " << cfg.kind_multiplier[1] << '\n'
     << "kind_multiplier.pronominal = " << cfg.kind_multiplier[2] << '\n'
     << "tie_break = most_recent_then_lowest_label\n"
     << "merge_every_k_sentences = " << cfg.merge_every_k_sentences << '\n'
     << "archive_after_sentences = " << cfg.archive_after_sentences << '\n'
     << "archive_activation_floor = " << cfg.archive_activation_floor << '\n'
     << "merge_activation = " << (cfg.merge_activation == MergeActivation::MAX ? "max" : "sum") << '\n'
     << "attach_nominals = " << (cfg.attach_nominals ? "true" : "false") << '\n'
     << "enable_merging = " << (cfg.enable_merging ? "true" : "false") << '\n';
  out << os.str();
}

}  // namespace refres
