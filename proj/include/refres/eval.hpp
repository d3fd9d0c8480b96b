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

// Pronoun accuracy against gold chains, and the per-form ambiguity profile
// of a tagged corpus.

#pragma once

#include <cmath>
#include <cstdio>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "refres/characters.hpp"
#include "refres/preproc.hpp"
#include "refres/resolver.hpp"

namespace refres {

class EvalError : public Error {
 public:
  using Error::Error;
};

// re_id -> entity_id; REs sharing an entity_id corefer.
struct GoldChains {
  std::map<int, int> entity_of;

  bool operator==(const GoldChains &) const = default;
};

inline GoldChains parse_gold(std::istream &in, const std::string &source = "<gold>") {
  GoldChains gold;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (text::is_skippable(line)) continue;
    auto cols = text::split(line, '\t');
    if (cols.size() != 2) throw ParseError(source, line_no, "expected RE_ID<TAB>ENTITY_ID");
    auto re_id = text::parse_number_value<int>(text::trim(cols[0]));
    auto entity = text::parse_number_value<int>(text::trim(cols[1]));
    if (!re_id || !entity) throw ParseError(source, line_no, "RE_ID and ENTITY_ID must be integers");
    if (!gold.entity_of.emplace(*re_id, *entity).second) {
      throw ParseError(source, line_no, "duplicate RE_ID " + std::to_string(*re_id));
    }
  }
  return gold;
}

struct ScoreReport {
  int pronominal_total = 0;
  int pronominal_correct = 0;
  std::optional<double> accuracy;  // absent when there are no pronouns
  int nominal_re_count = 0;
  int character_count = 0;  // live plus archived
  int unresolved_count = 0;

  // Accuracy rounded to three decimals.
  std::optional<double> rounded_accuracy() const {
    if (!accuracy) return std::nullopt;
    return std::round(*accuracy * 1000.0) / 1000.0;
  }

  // Whole percentage, e.g. "62%", or "undefined".
  std::string percent_text() const {
    if (!accuracy) return "undefined";
    return std::to_string(std::lround(*accuracy * 100.0)) + "%";
  }

  std::string accuracy_text() const {
    if (!accuracy) return "undefined";
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.3f", *rounded_accuracy());
    return buf;
  }
};

// A pronoun is correct when the character that finally holds it also holds
// a nominal RE of the pronoun's gold entity. Placeholder outcomes are wrong.
inline ScoreReport score(const std::vector<Resolution> &resolutions,
                         const std::vector<ReferringExpression> &expressions, const CharacterSet &set,
                         const GoldChains &gold) {
  std::map<int, const ReferringExpression *> by_id;
  for (const auto &re : expressions) by_id[re.re_id] = &re;
  for (const auto &[re_id, entity] : gold.entity_of) {
    if (!by_id.count(re_id)) throw EvalError("gold annotates unknown RE " + std::to_string(re_id));
  }

  ScoreReport report;
  std::vector<int> missing;
  for (const auto &re : expressions) {
    if (is_nominal(re.kind)) {
      ++report.nominal_re_count;
    } else if (!gold.entity_of.count(re.re_id)) {
      missing.push_back(re.re_id);
    }
  }
  if (!missing.empty()) {
    throw EvalError("gold is missing pronominal REs: " +
                    text::join(missing, ",", [](int id) { return std::to_string(id); }));
  }

  for (const auto &r : resolutions) {
    auto it = by_id.find(r.re_id);
    if (it == by_id.end()) throw EvalError("resolution for unknown RE " + std::to_string(r.re_id));
    if (is_nominal(it->second->kind)) continue;
    ++report.pronominal_total;
    if (r.outcome == Outcome::UNRESOLVED_PLACEHOLDER) {
      ++report.unresolved_count;
      continue;
    }
    const Character *owner = set.owner_of(r.re_id);
    if (owner == nullptr) throw EvalError("RE " + std::to_string(r.re_id) + " belongs to no character");
    const int entity = gold.entity_of.at(r.re_id);
    for (int other : owner->mention_res) {
      auto o = by_id.find(other);
      if (o == by_id.end() || !is_nominal(o->second->kind)) continue;
      auto g = gold.entity_of.find(other);
      if (g != gold.entity_of.end() && g->second == entity) {
        ++report.pronominal_correct;
        break;
      }
    }
  }
  report.character_count = static_cast<int>(set.size());
  if (report.pronominal_total > 0) {
    report.accuracy = static_cast<double>(report.pronominal_correct) / report.pronominal_total;
  }
  return report;
}

inline ScoreReport score(const ResolutionResult &result, const GoldChains &gold) {
  return score(result.resolutions, result.expressions, result.characters, gold);
}

inline void write_score_report(std::ostream &out, const ScoreReport &r) {
  char buf[128];
  auto row = [&](const char *label, const std::string &value) {
    std::snprintf(buf, sizeof(buf), "%-30s%12s\n", label, value.c_str());
    out << buf;
  };
  row("Pronominal REs", std::to_string(r.pronominal_total));
  row("Pronouns correctly attached", std::to_string(r.pronominal_correct) + " (" + r.percent_text() + ")");
  row("Nominal REs", std::to_string(r.nominal_re_count));
  row("Characters found", std::to_string(r.character_count));
  row("Unresolved pronouns", std::to_string(r.unresolved_count));
  out << '\n';
  out << "pronominal_total=" << r.pronominal_total << '\n'
      << "pronominal_correct=" << r.pronominal_correct << '\n'
      << "accuracy=" << r.accuracy_text() << '\n'
      << "accuracy_pct=" << r.percent_text() << '\n'
      << "nominal_re_count=" << r.nominal_re_count << '\n'
      << "character_count=" << r.character_count << '\n'
      << "unresolved_count=" << r.unresolved_count << '\n';
}

struct StatsTable {
  int word_count = 0;
  int il_personal = 0;
  int il_impersonal = 0;
  int elle = 0;
  int le_article = 0;
  int le_pronoun = 0;
  int la_article = 0;
  int la_pronoun = 0;
  int l_article = 0;
  int l_pronoun_m = 0;
  int l_pronoun_f = 0;
  int l_pronoun_unknown = 0;
  int lui_iobj_m = 0;
  int lui_iobj_f = 0;
  int lui_iobj_unknown = 0;
  int lui_tonic = 0;
  int possessives = 0;

  StatsTable &operator+=(const StatsTable &o) {
    for (const auto &f : fields()) this->*f.member += o.*f.member;
    return *this;
  }

  bool operator==(const StatsTable &) const = default;

  struct Field {
    const char *key;
    const char *label;
    int StatsTable::*member;
  };

  // Row order and labels follow the usual corpus-profile table.
  static const std::vector<Field> &fields() {
    static const std::vector<Field> kFields = {
        {"word_count", "Word count", &StatsTable::word_count},
        {"il_personal", "/il/ personal (he,it)", &StatsTable::il_personal},
        {"il_impersonal", "/il/ impersonal (~it)", &StatsTable::il_impersonal},
        {"elle", "/elle/ (she,it)", &StatsTable::elle},
        {"le_article", "/le/ masc. art. (the)", &StatsTable::le_article},
        {"le_pronoun", "/le/ masc.pron.(him,it)", &StatsTable::le_pronoun},
        {"la_article", "/la/ fem. art. (the)", &StatsTable::la_article},
        {"la_pronoun", "/la/ fem. pron. (her,it)", &StatsTable::la_pronoun},
        {"l_article", "/l'/ article", &StatsTable::l_article},
        {"l_pronoun_m", "/l'/ masc. pron.", &StatsTable::l_pronoun_m},
        {"l_pronoun_f", "/l'/ fem. pron.", &StatsTable::l_pronoun_f},
        {"l_pronoun_unknown", "/l'/ pron. (gender unknown)", &StatsTable::l_pronoun_unknown},
        {"lui_iobj_m", "/lui/ masc. indirect obj.", &StatsTable::lui_iobj_m},
        {"lui_iobj_f", "/lui/ fem. indirect obj.", &StatsTable::lui_iobj_f},
        {"lui_iobj_unknown", "/lui/ indirect obj. (gender unknown)", &StatsTable::lui_iobj_unknown},
        {"lui_tonic", "/lui/ masc. tonic pron.", &StatsTable::lui_tonic},
        {"possessives", "/son/, /sa/, /ses/ poss.", &StatsTable::possessives},
    };
    return kFields;
  }
};

namespace detail {

// Words carry at least one alphanumeric or non-ASCII byte.
inline bool is_word(std::string_view surface) {
  for (unsigned char c : surface) {
    if (std::isalnum(c) || c >= 0x80) return true;
  }
  return false;
}

}  // namespace detail

// Counts each ambiguous form by its final tag. Expects a document whose
// clitics have been classified.
inline StatsTable corpus_stats(const Document &doc) {
  StatsTable t;
  for (const Token &tok : doc.tokens) {
    if (detail::is_word(tok.surface)) ++t.word_count;
    const std::string low = text::to_lower(tok.surface);
    const bool elided = detail::is_elided_article_form(tok.surface);
    if (low == "il") {
      if (tok.pos == Pos::PRO_SUBJ) ++t.il_personal;
      if (tok.pos == Pos::OTHER) ++t.il_impersonal;
    } else if (low == "elle") {
      if (is_pronoun(tok.pos)) ++t.elle;
    } else if (low == "le" || low == "la") {
      const bool le = low == "le";
      if (tok.pos == Pos::DET) ++(le ? t.le_article : t.la_article);
      if (tok.pos == Pos::PRO_DOBJ) ++(le ? t.le_pronoun : t.la_pronoun);
    } else if (elided) {
      if (tok.pos == Pos::DET) ++t.l_article;
      if (tok.pos == Pos::PRO_DOBJ) {
        ++(tok.gender == Gender::M   ? t.l_pronoun_m
           : tok.gender == Gender::F ? t.l_pronoun_f
                                     : t.l_pronoun_unknown);
      }
    } else if (low == "lui") {
      if (tok.pos == Pos::PRO_TONIC) ++t.lui_tonic;
      if (tok.pos == Pos::PRO_IOBJ) {
        ++(tok.gender == Gender::M   ? t.lui_iobj_m
           : tok.gender == Gender::F ? t.lui_iobj_f
                                     : t.lui_iobj_unknown);
      }
    } else if (low == "son" || low == "sa" || low == "ses") {
      ++t.possessives;
    }
  }
  return t;
}

inline void write_stats_table(std::ostream &out, const StatsTable &t) {
  char buf[128];
  for (const auto &f : StatsTable::fields()) {
    std::snprintf(buf, sizeof(buf), "%-36s%8d\n", f.label, t.*f.member);
    out << buf;
  }
  out << '\n';
  for (const auto &f : StatsTable::fields()) out << f.key << '=' << t.*f.member << '\n';
}

}  // namespace refres
