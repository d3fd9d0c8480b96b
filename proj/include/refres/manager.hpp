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

// Character-set manager: decides which characters denote the same referent
// and merges them, either periodically or after definite NPs created new
// characters.

#pragma once

#include <optional>
#include <set>
#include <vector>

#include "refres/characters.hpp"
#include "refres/lexicon.hpp"

namespace refres {

enum class MergeTrigger { PERIODIC, DEFINITE_DETERMINER };

inline std::string_view to_string(MergeTrigger t) {
  return t == MergeTrigger::PERIODIC ? "PERIODIC" : "DEFINITE_DETERMINER";
}

struct MergeAction {
  int surviving = 0;
  int absorbed = 0;  // always greater than surviving
  LexicalRelation justification = LexicalRelation::NONE;
  MergeTrigger trigger = MergeTrigger::PERIODIC;
  int sentence_index = 0;  // sentence after which the pass ran

  bool operator==(const MergeAction &) const = default;
};

// Strongest relation from an identifier of `earlier` to one of `later`, or
// nothing when agreement conflicts, either side is a placeholder, or both
// were mentioned in a common sentence.
inline std::optional<LexicalRelation> should_merge(const Character &earlier, const Character &later,
                                                   const LexicalResources &res) {
  if (earlier.placeholder || later.placeholder) return std::nullopt;
  if (!compatible(earlier.gender, later.gender) || !compatible(earlier.number, later.number)) {
    return std::nullopt;
  }
  std::set<int> sentences;
  for (const auto &vd : earlier.descriptions) sentences.insert(vd.sentence_index);
  for (const auto &vd : later.descriptions) {
    if (sentences.count(vd.sentence_index)) return std::nullopt;
  }
  LexicalRelation best = LexicalRelation::NONE;
  for (const auto &a : earlier.identifiers) {
    for (const auto &b : later.identifiers) {
      LexicalRelation r = res.lexical_relation(a, b);
      if (strength(r) > strength(best)) best = r;
    }
  }
  if (best == LexicalRelation::NONE) return std::nullopt;
  return best;
}

// Greedy lowest-label-first scan, restarted after every merge until a full
// scan merges nothing. With DEFINITE_DETERMINER only pairs touching
// `focus_labels` are examined; a survivor inherits its absorbed partner's
// focus.
inline std::vector<MergeAction> merge_pass(CharacterSet &set, const LexicalResources &res, MergeTrigger trigger,
                                           std::set<int> focus_labels = {},
                                           MergeActivation policy = MergeActivation::MAX,
                                           int sentence_index = 0) {
  std::vector<MergeAction> actions;
  const bool focused = trigger == MergeTrigger::DEFINITE_DETERMINER;
  for (;;) {
    std::optional<MergeAction> found;
    const auto &live = set.live();
    for (std::size_t i = 0; i < live.size() && !found; ++i) {
      for (std::size_t j = i + 1; j < live.size(); ++j) {
        const Character &a = live[i];
        const Character &b = live[j];
        if (focused && !focus_labels.count(a.label) && !focus_labels.count(b.label)) continue;
        if (auto rel = should_merge(a, b, res)) {
          found = MergeAction{a.label, b.label, *rel, trigger, sentence_index};
          break;
        }
      }
    }
    if (!found) return actions;
    set.merge_characters(found->surviving, found->absorbed, policy);
    if (focus_labels.erase(found->absorbed)) focus_labels.insert(found->surviving);
    actions.push_back(*found);
  }
}

}  // namespace refres
