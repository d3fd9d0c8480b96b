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

// Linear reference resolution over a preprocessed document.
//
// Nominal REs attach to the most activated character whose identifiers are
// identical, synonymous or more specific than the RE head, or create a new
// character. Pronominal REs pick the most activated accessible character;
// accessibility is set by agreement and by the rule that an object pronoun
// does not denote its own sentence's subject. Activations decay at every
// sentence boundary and grow with each mention, weighted by grammatical role
// and RE kind. The manager's merge pass runs every k sentences and after
// sentences that created characters from definite NPs.

#pragma once

#include <functional>
#include <optional>
#include <ostream>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "refres/characters.hpp"
#include "refres/config.hpp"
#include "refres/lexicon.hpp"
#include "refres/manager.hpp"
#include "refres/preproc.hpp"

namespace refres {

enum class Outcome { ATTACHED, CREATED, UNRESOLVED_PLACEHOLDER };

inline std::string_view to_string(Outcome o) {
  switch (o) {
    case Outcome::ATTACHED: return "ATTACHED";
    case Outcome::CREATED: return "CREATED";
    default: return "UNRESOLVED_PLACEHOLDER";
  }
}

struct Resolution {
  int re_id = 0;
  Outcome outcome = Outcome::CREATED;
  int label = 0;  // label at decision time
  int candidate_count_after_filter = 0;

  bool operator==(const Resolution &) const = default;
};

enum class Rule {
  NOMINAL_IDENTICAL,
  NOMINAL_SYNONYM,
  NOMINAL_HYPERONYM,
  NOMINAL_NEW,
  NOMINAL_ATTACH_DISABLED,
  PRONOUN_SALIENCE,
  PRONOUN_PLACEHOLDER,
};

inline std::string_view to_string(Rule r) {
  switch (r) {
    case Rule::NOMINAL_IDENTICAL: return "NOMINAL_IDENTICAL";
    case Rule::NOMINAL_SYNONYM: return "NOMINAL_SYNONYM";
    case Rule::NOMINAL_HYPERONYM: return "NOMINAL_HYPERONYM";
    case Rule::NOMINAL_NEW: return "NOMINAL_NEW";
    case Rule::NOMINAL_ATTACH_DISABLED: return "NOMINAL_ATTACH_DISABLED";
    case Rule::PRONOUN_SALIENCE: return "PRONOUN_SALIENCE";
    default: return "PRONOUN_PLACEHOLDER";
  }
}

// Why a character was not a candidate; a bit set, rendered in this order.
enum FilterReason : unsigned {
  kAgreement = 1u << 0,
  kLexical = 1u << 1,
  kGender = 1u << 2,
  kNumber = 1u << 3,
  kSubject = 1u << 4,
};

inline std::string reason_names(unsigned reasons) {
  static constexpr std::pair<unsigned, std::string_view> kNames[] = {
      {kAgreement, "agreement"}, {kLexical, "lexical"}, {kGender, "gender"},
      {kNumber, "number"},       {kSubject, "subject"}};
  std::string out;
  for (auto [bit, name] : kNames) {
    if (reasons & bit) {
      if (!out.empty()) out += '+';
      out += name;
    }
  }
  return out;
}

struct Candidate {
  int label = 0;
  double activation = 0.0;

  bool operator==(const Candidate &) const = default;
};

struct Exclusion {
  int label = 0;
  unsigned reasons = 0;

  bool operator==(const Exclusion &) const = default;
};

// Everything needed to re-derive one decision.
struct Decision {
  ReferringExpression re;
  std::vector<Candidate> candidates;  // ascending label
  std::vector<Exclusion> excluded;    // ascending label
  Rule rule = Rule::NOMINAL_NEW;
  Outcome outcome = Outcome::CREATED;
  int label = 0;
  double activation_after = 0.0;

  bool operator==(const Decision &) const = default;
};

struct SentenceStart {
  int sentence_index = 0;
  std::optional<double> decay;  // absent for the first sentence

  bool operator==(const SentenceStart &) const = default;
};

struct ArchiveEvent {
  int label = 0;

  bool operator==(const ArchiveEvent &) const = default;
};

using TraceEvent = std::variant<SentenceStart, Decision, MergeAction, ArchiveEvent>;

struct ResolutionTrace {
  std::vector<TraceEvent> events;
};

// Ranking: highest activation, then most recent mention, then lowest label.
inline bool outranks(const Character &a, const Character &b) {
  if (a.activation != b.activation) return a.activation > b.activation;
  if (a.last_mention_sentence != b.last_mention_sentence) {
    return a.last_mention_sentence > b.last_mention_sentence;
  }
  return a.label < b.label;
}

inline void update_activation(CharacterSet &set, int label, const ReferringExpression &re,
                              const ResolutionConfig &cfg) {
  set.get(label).activation += (cfg.base_increment + cfg.bonus(re.role)) * cfg.multiplier(re.kind);
}

inline void decay_activations(CharacterSet &set, const ResolutionConfig &cfg) {
  for (const auto &c : set.live()) set.get(c.label).activation *= cfg.decay_factor;
}

// Fills unknown gender/number of a nominal RE from the agreement table.
inline ReferringExpression with_lexical_agreement(ReferringExpression re, const LexicalResources &res) {
  if (!is_nominal(re.kind)) return re;
  Agreement a = res.agreement_of(re.head_lemma);
  if (re.gender == Gender::UNKNOWN) re.gender = a.gender;
  if (re.number == Number::UNKNOWN) {
    if (a.number == NumberCapability::SG) re.number = Number::SG;
    if (a.number == NumberCapability::PL) re.number = Number::PL;
  }
  return re;
}

// Sets every live accessibility mark for pronoun `re` and returns the
// excluded characters with their reasons.
inline std::vector<Exclusion> apply_accessibility_filter(const ReferringExpression &re, CharacterSet &set,
                                                         std::optional<int> subject_label) {
  std::vector<Exclusion> excluded;
  const bool object = re.role == Role::DOBJ || re.role == Role::IOBJ;
  for (const auto &c : set.live()) {
    unsigned why = 0;
    if (re.gender != Gender::UNKNOWN && !compatible(c.gender, re.gender)) why |= kGender;
    if (re.number != Number::UNKNOWN && !compatible(c.number, re.number)) why |= kNumber;
    if (object && subject_label == c.label) why |= kSubject;
    set.get(c.label).accessible = why == 0;
    if (why) excluded.push_back({c.label, why});
  }
  return excluded;
}

inline Resolution resolve_nominal(const ReferringExpression &re, CharacterSet &set, const LexicalResources &res,
                                  const ResolutionConfig &cfg, Decision *decision = nullptr) {
  Decision d;
  d.re = re;
  const Character *best = nullptr;
  LexicalRelation best_relation = LexicalRelation::NONE;
  if (cfg.attach_nominals) {
    for (const auto &c : set.live()) {
      unsigned why = 0;
      if (!compatible(c.gender, re.gender) || !compatible(c.number, re.number)) why |= kAgreement;
      LexicalRelation rel = LexicalRelation::NONE;
      for (const auto &id : c.identifiers) {
        LexicalRelation r = res.lexical_relation(id, re.head_lemma);
        if (strength(r) > strength(rel)) rel = r;
      }
      if (rel == LexicalRelation::NONE) why |= kLexical;
      if (why) {
        d.excluded.push_back({c.label, why});
        continue;
      }
      d.candidates.push_back({c.label, c.activation});
      if (best == nullptr || outranks(c, *best)) {
        best = &c;
        best_relation = rel;
      }
    }
  }

  Resolution out;
  out.re_id = re.re_id;
  out.candidate_count_after_filter = static_cast<int>(d.candidates.size());
  if (best != nullptr) {
    out.outcome = Outcome::ATTACHED;
    out.label = best->label;
    d.rule = best_relation == LexicalRelation::IDENTICAL ? Rule::NOMINAL_IDENTICAL
             : best_relation == LexicalRelation::SYNONYM ? Rule::NOMINAL_SYNONYM
                                                         : Rule::NOMINAL_HYPERONYM;
    set.attach_re(out.label, re);
  } else {
    out.outcome = Outcome::CREATED;
    out.label = set.create_character(re);
    d.rule = cfg.attach_nominals ? Rule::NOMINAL_NEW : Rule::NOMINAL_ATTACH_DISABLED;
  }
  d.outcome = out.outcome;
  d.label = out.label;
  if (decision != nullptr) *decision = std::move(d);
  return out;
}

inline Resolution resolve_pronominal(const ReferringExpression &re, CharacterSet &set,
                                     const ResolutionConfig & /*cfg*/, std::optional<int> subject_label = {},
                                     Decision *decision = nullptr) {
  Decision d;
  d.re = re;
  d.excluded = apply_accessibility_filter(re, set, subject_label);
  const Character *best = nullptr;
  for (const auto &c : set.live()) {
    if (!c.accessible) continue;
    d.candidates.push_back({c.label, c.activation});
    if (best == nullptr || outranks(c, *best)) best = &c;
  }

  Resolution out;
  out.re_id = re.re_id;
  out.candidate_count_after_filter = static_cast<int>(d.candidates.size());
  if (best != nullptr) {
    out.outcome = Outcome::ATTACHED;
    out.label = best->label;
    d.rule = Rule::PRONOUN_SALIENCE;
    set.reset_accessibility();
    set.attach_re(out.label, re);
  } else {
    set.reset_accessibility();
    out.outcome = Outcome::UNRESOLVED_PLACEHOLDER;
    out.label = set.create_character(re, /*placeholder=*/true);
    d.rule = Rule::PRONOUN_PLACEHOLDER;
  }
  d.outcome = out.outcome;
  d.label = out.label;
  if (decision != nullptr) *decision = std::move(d);
  return out;
}

struct ResolutionResult {
  CharacterSet characters;
  std::vector<ReferringExpression> expressions;  // after agreement fill-in
  std::vector<Resolution> resolutions;
  std::vector<MergeAction> merges;
  ResolutionTrace trace;
  std::vector<std::string> warnings;
};

// Observer hook for tests: called after every RE decision.
using DecisionObserver = std::function<void(const Decision &, const CharacterSet &)>;

inline ResolutionResult resolve_document(const Document &doc, const LexicalResources &res,
                                         const ResolutionConfig &cfg, const DecisionObserver &observer = {}) {
  ResolutionResult out;
  Extraction extraction = extract_referring_expressions(doc);
  out.warnings = std::move(extraction.warnings);
  auto &set = out.characters;
  auto &events = out.trace.events;

  std::size_t next = 0;
  const auto &all = extraction.expressions;
  for (int s = 1; s <= doc.sentence_count; ++s) {
    SentenceStart start{s, std::nullopt};
    if (s > 1) {
      decay_activations(set, cfg);
      start.decay = cfg.decay_factor;
    }
    events.emplace_back(start);

    std::optional<int> subject_label;
    std::set<int> definite_created;
    for (; next < all.size() && all[next].sentence_index == s; ++next) {
      ReferringExpression re = with_lexical_agreement(all[next], res);
      Decision d;
      Resolution r = is_nominal(re.kind) ? resolve_nominal(re, set, res, cfg, &d)
                                         : resolve_pronominal(re, set, cfg, subject_label, &d);
      update_activation(set, r.label, re, cfg);
      d.activation_after = set.get(r.label).activation;
      if (re.role == Role::SUBJ) subject_label = r.label;
      if (r.outcome == Outcome::CREATED && re.definite) definite_created.insert(r.label);
      if (observer) observer(d, set);
      out.resolutions.push_back(r);
      out.expressions.push_back(std::move(re));
      events.emplace_back(std::move(d));
    }

    auto record = [&](std::vector<MergeAction> actions) {
      for (auto &a : actions) {
        events.emplace_back(a);
        out.merges.push_back(a);
      }
    };
    if (cfg.enable_merging && !definite_created.empty()) {
      std::set<int> focus;
      for (int l : definite_created) {
        if (set.is_live(l)) focus.insert(l);
      }
      record(merge_pass(set, res, MergeTrigger::DEFINITE_DETERMINER, focus, cfg.merge_activation, s));
    }
    if (cfg.merge_every_k_sentences > 0 && s % cfg.merge_every_k_sentences == 0) {
      if (cfg.enable_merging) {
        record(merge_pass(set, res, MergeTrigger::PERIODIC, {}, cfg.merge_activation, s));
      }
      for (int label : set.archive_stale(s, cfg)) events.emplace_back(ArchiveEvent{label});
    }
  }
  return out;
}

inline void write_trace(std::ostream &out, const ResolutionTrace &trace) {
  for (const auto &event : trace.events) {
    if (const auto *s = std::get_if<SentenceStart>(&event)) {
      out << "sentence " << s->sentence_index << '\n';
      if (s->decay) out << "decay " << text::fixed4(*s->decay) << '\n';
    } else if (const auto *d = std::get_if<Decision>(&event)) {
      const auto &re = d->re;
      out << "re " << re.re_id << ' ' << to_string(re.kind) << ' ' << re.head_lemma << ' ' << gender_code(re.gender)
          << number_code(re.number) << ' ' << to_string(re.role) << " s" << re.sentence_index << ':'
          << re.span.first << '-' << re.span.last << '\n';
      out << "  candidates "
          << (d->candidates.empty() ? "-" : text::join(d->candidates, ",", [](const Candidate &c) {
                return std::to_string(c.label) + "=" + text::fixed4(c.activation);
              }))
          << '\n';
      out << "  excluded "
          << (d->excluded.empty() ? "-" : text::join(d->excluded, ",", [](const Exclusion &e) {
                return std::to_string(e.label) + ":" + reason_names(e.reasons);
              }))
          << '\n';
      out << "  rule " << to_string(d->rule) << '\n';
      out << "  outcome " << to_string(d->outcome) << ' ' << d->label
          << " activation=" << text::fixed4(d->activation_after) << '\n';
    } else if (const auto *m = std::get_if<MergeAction>(&event)) {
      out << "merge " << to_string(m->trigger) << ' ' << to_string(m->justification) << ' ' << m->surviving
          << " <- " << m->absorbed << '\n';
    } else if (const auto *a = std::get_if<ArchiveEvent>(&event)) {
      out << "archive " << a->label << '\n';
    }
  }
}

inline void write_resolutions(std::ostream &out, const std::vector<Resolution> &resolutions) {
  for (const auto &r : resolutions) out << r.re_id << '\t' << to_string(r.outcome) << '\t' << r.label << '\n';
}

// The `resolve` report: resolutions, live characters, archive, merges and
// optionally the trace, each under a '#' section header.
inline void write_resolution_output(std::ostream &out, const ResolutionResult &result, bool with_trace) {
  out << "# resolutions\n";
  write_resolutions(out, result.resolutions);
  out << "# characters\n";
  for (const auto &c : result.characters.live()) write_character(out, c);
  out << "# archive\n";
  for (const auto &c : result.characters.archive()) write_character(out, c);
  out << "# merges\n";
  for (const auto &m : result.merges) {
    out << m.sentence_index << '\t' << to_string(m.trigger) << '\t' << to_string(m.justification) << '\t'
        << m.surviving << '\t' << m.absorbed << '\n';
  }
  if (with_trace) {
    out << "# trace\n";
    write_trace(out, result.trace);
  }
}

}  // namespace refres
