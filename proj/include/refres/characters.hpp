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

// Characters (discourse referents) and the set that owns them.

#pragma once

#include <algorithm>
#include <functional>
#include <optional>
#include <ostream>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "refres/common.hpp"
#include "refres/config.hpp"
#include "refres/preproc.hpp"

namespace refres {

class CharacterError : public Error {
 public:
  using Error::Error;
};

// What one mention said about a character and where.
struct VerbalDescription {
  std::vector<std::string> word_lemmas;
  int sentence_index = 0;
  Span span;
  std::optional<std::string> syntax;  // opaque parser output, when available

  // Document position; word lemmas only break ties between identical spans.
  auto position_key() const { return std::tie(sentence_index, span, word_lemmas); }

  bool operator==(const VerbalDescription &) const = default;
};

inline VerbalDescription describe(const ReferringExpression &re) {
  return VerbalDescription{re.word_lemmas, re.sentence_index, re.span, std::nullopt};
}

struct Character {
  int label = 0;
  std::vector<std::string> identifiers;
  std::vector<VerbalDescription> descriptions;  // sorted by document position
  double activation = 0.0;
  bool accessible = true;
  Gender gender = Gender::UNKNOWN;
  Number number = Number::UNKNOWN;
  int last_mention_sentence = 0;
  Role last_mention_role = Role::OTHER;
  std::vector<int> mention_res;  // ascending re_id
  // Created from a pronoun with no accessible referent. Placeholders carry
  // the pronoun lemma as identifier and never take part in merges.
  bool placeholder = false;

  bool operator==(const Character &) const = default;
};

class CharacterSet {
 public:
  const std::vector<Character> &live() const { return live_; }
  const std::vector<Character> &archive() const { return archive_; }
  int next_label() const { return next_label_; }

  bool is_live(int label) const { return find(label) != nullptr; }

  const Character &get(int label) const {
    const Character *c = find(label);
    if (c == nullptr) throw CharacterError("no live character with label " + std::to_string(label));
    return *c;
  }

  Character &get(int label) {
    return const_cast<Character &>(std::as_const(*this).get(label));
  }

  // New live character built from `re`; returns its fresh label.
  int create_character(const ReferringExpression &re, bool placeholder = false) {
    Character c;
    c.label = next_label_++;
    c.identifiers = {re.head_lemma};
    c.descriptions = {describe(re)};
    c.gender = re.gender;
    c.number = re.number;
    c.last_mention_sentence = re.sentence_index;
    c.last_mention_role = re.role;
    c.mention_res = {re.re_id};
    c.placeholder = placeholder;
    live_.push_back(std::move(c));
    return live_.back().label;
  }

  void attach_re(int label, const ReferringExpression &re) {
    Character *c = find(label);
    if (c == nullptr) {
      throw CharacterError("attach_re: label " + std::to_string(label) + " is not a live character");
    }
    VerbalDescription vd = describe(re);
    auto at = std::upper_bound(c->descriptions.begin(), c->descriptions.end(), vd,
                               [](const auto &a, const auto &b) { return a.position_key() < b.position_key(); });
    bool is_last = at == c->descriptions.end();
    c->descriptions.insert(at, std::move(vd));
    if (is_nominal(re.kind) &&
        std::find(c->identifiers.begin(), c->identifiers.end(), re.head_lemma) == c->identifiers.end()) {
      c->identifiers.push_back(re.head_lemma);
    }
    if (c->gender == Gender::UNKNOWN) c->gender = re.gender;
    if (c->number == Number::UNKNOWN) c->number = re.number;
    if (is_last) {
      c->last_mention_sentence = re.sentence_index;
      c->last_mention_role = re.role;
    }
    c->mention_res.insert(std::upper_bound(c->mention_res.begin(), c->mention_res.end(), re.re_id), re.re_id);
  }

  // Unifies two live characters into the smaller label and returns it.
  int merge_characters(int a, int b, MergeActivation policy = MergeActivation::MAX) {
    if (a == b) throw CharacterError("merge_characters: cannot merge label " + std::to_string(a) + " with itself");
    if (a > b) std::swap(a, b);
    Character *keep = find(a);
    Character *gone = find(b);
    if (keep == nullptr || gone == nullptr) {
      throw CharacterError("merge_characters: labels " + std::to_string(a) + " and " + std::to_string(b) +
                           " must both be live");
    }
    if (!compatible(keep->gender, gone->gender) || !compatible(keep->number, gone->number)) {
      throw CharacterError("merge_characters: labels " + std::to_string(a) + " and " + std::to_string(b) +
                           " disagree in gender or number");
    }

    Character merged = *keep;
    for (const auto &id : gone->identifiers) {
      if (std::find(merged.identifiers.begin(), merged.identifiers.end(), id) == merged.identifiers.end()) {
        merged.identifiers.push_back(id);
      }
    }
    if (gone->descriptions.back().position_key() > keep->descriptions.back().position_key()) {
      merged.last_mention_sentence = gone->last_mention_sentence;
      merged.last_mention_role = gone->last_mention_role;
    }
    merged.descriptions.insert(merged.descriptions.end(), gone->descriptions.begin(), gone->descriptions.end());
    std::stable_sort(merged.descriptions.begin(), merged.descriptions.end(),
                     [](const auto &x, const auto &y) { return x.position_key() < y.position_key(); });
    merged.activation = policy == MergeActivation::MAX ? std::max(keep->activation, gone->activation)
                                                       : keep->activation + gone->activation;
    merged.accessible = true;
    if (merged.gender == Gender::UNKNOWN) merged.gender = gone->gender;
    if (merged.number == Number::UNKNOWN) merged.number = gone->number;
    merged.mention_res.insert(merged.mention_res.end(), gone->mention_res.begin(), gone->mention_res.end());
    std::sort(merged.mention_res.begin(), merged.mention_res.end());
    merged.placeholder = keep->placeholder && gone->placeholder;

    *keep = std::move(merged);
    live_.erase(live_.begin() + (gone - live_.data()));
    return a;
  }

  // Moves to the archive every character unmentioned for more than
  // cfg.archive_after_sentences sentences whose activation fell below the
  // floor. Returns the archived labels.
  std::vector<int> archive_stale(int current_sentence, const ResolutionConfig &cfg) {
    std::vector<int> moved;
    std::vector<Character> keep;
    for (auto &c : live_) {
      if (current_sentence - c.last_mention_sentence > cfg.archive_after_sentences &&
          c.activation < cfg.archive_activation_floor) {
        moved.push_back(c.label);
        archive_.push_back(std::move(c));
      } else {
        keep.push_back(std::move(c));
      }
    }
    live_ = std::move(keep);
    return moved;
  }

  void set_accessibility(const std::function<bool(const Character &)> &predicate) {
    for (auto &c : live_) c.accessible = predicate(c);
  }

  void reset_accessibility() {
    for (auto &c : live_) c.accessible = true;
  }

  bool all_accessible() const {
    return std::all_of(live_.begin(), live_.end(), [](const auto &c) { return c.accessible; });
  }

  // Finds the character (live or archived) whose mentions include `re_id`.
  const Character *owner_of(int re_id) const {
    for (const auto *group : {&live_, &archive_}) {
      for (const auto &c : *group) {
        if (std::binary_search(c.mention_res.begin(), c.mention_res.end(), re_id)) return &c;
      }
    }
    return nullptr;
  }

  std::size_t size() const { return live_.size() + archive_.size(); }

 private:
  const Character *find(int label) const {
    for (const auto &c : live_) {
      if (c.label == label) return &c;
    }
    return nullptr;
  }
  Character *find(int label) { return const_cast<Character *>(std::as_const(*this).find(label)); }

  std::vector<Character> live_;     // ascending label
  std::vector<Character> archive_;  // archival order
  int next_label_ = 1;
};

// LABEL<TAB>ACTIVATION<TAB>GENDER<TAB>NUMBER<TAB>identifiers<TAB>re_ids
inline void write_character(std::ostream &out, const Character &c) {
  out << c.label << '\t' << text::fixed4(c.activation) << '\t' << gender_code(c.gender) << '\t'
      << number_code(c.number) << '\t' << text::join(c.identifiers, ",", [](const auto &s) { return s; }) << '\t'
      << text::join(c.mention_res, ",", [](int id) { return std::to_string(id); }) << '\n';
}

}  // namespace refres
