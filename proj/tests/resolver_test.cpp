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

#include <gtest/gtest.h>

#include <algorithm>
#include <sstream>

#include "support/test_support.hpp"

namespace refres {
namespace {

using testing::DocBuilder;
using testing::nominal;
using testing::pronoun;

LexicalResources empty_lexicon() { return load_resources({}); }

// ------------------------------------------------------------------ config

TEST(ResolutionConfig, Defaults) {
  ResolutionConfig cfg;
  EXPECT_NO_THROW(cfg.validate());
  EXPECT_EQ(cfg.decay_factor, 0.5);
  EXPECT_EQ(cfg.base_increment, 20.0);
  EXPECT_EQ(cfg.bonus(Role::SUBJ), 80.0);
  EXPECT_EQ(cfg.bonus(Role::DOBJ), 50.0);
  EXPECT_EQ(cfg.bonus(Role::IOBJ), 40.0);
  EXPECT_EQ(cfg.bonus(Role::OTHER), 30.0);
  EXPECT_EQ(cfg.bonus(Role::NONE), 30.0);
  EXPECT_EQ(cfg.multiplier(ReKind::NOMINAL_PROPER), 1.5);
  EXPECT_EQ(cfg.multiplier(ReKind::NOMINAL_COMMON), 1.0);
  EXPECT_EQ(cfg.multiplier(ReKind::PRONOMINAL), 0.5);
  EXPECT_EQ(cfg.merge_every_k_sentences, 5);
  EXPECT_EQ(cfg.archive_after_sentences, 50);
  EXPECT_EQ(cfg.archive_activation_floor, 1.0);
  EXPECT_EQ(cfg.merge_activation, MergeActivation::MAX);
}

ResolutionConfig parse_cfg(const std::string &text) {
  std::istringstream in(text);
  return parse_config(in, "test.conf");
}

TEST(ParseConfig, ReadsEveryKey) {
  ResolutionConfig cfg = parse_cfg(
      "# weights\n"
      "decay_factor = 0.25\n"
      "base_increment = 10\n"
      "role_bonus.subj = 90\nrole_bonus.dobj = 60\nrole_bonus.iobj = 30\nrole_bonus.other = 5\n"
      "kind_multiplier.common = 1.2\nkind_multiplier.proper = 2\nkind_multiplier.pronominal = 0.1\n"
      "tie_break = most_recent_then_lowest_label\n"
      "merge_every_k_sentences = 3\narchive_after_sentences = 7\narchive_activation_floor = 0.5\n"
      "merge_activation = sum\nattach_nominals = false\nenable_merging = no\n");
  EXPECT_EQ(cfg.decay_factor, 0.25);
  EXPECT_EQ(cfg.bonus(Role::IOBJ), 30.0);
  EXPECT_EQ(cfg.multiplier(ReKind::NOMINAL_PROPER), 2.0);
  EXPECT_EQ(cfg.merge_every_k_sentences, 3);
  EXPECT_EQ(cfg.archive_after_sentences, 7);
  EXPECT_EQ(cfg.merge_activation, MergeActivation::SUM);
  EXPECT_FALSE(cfg.attach_nominals);
  EXPECT_FALSE(cfg.enable_merging);
}

TEST(ParseConfig, WriteThenParseRoundTrips) {
  testing::Rng rng(41);
  for (int i = 0; i < 100; ++i) {
    ResolutionConfig cfg = testing::random_config(rng);
    std::ostringstream os;
    write_config(os, cfg);
    EXPECT_EQ(parse_cfg(os.str()), cfg);
  }
}

TEST(ParseConfig, RejectsBadInput) {
  EXPECT_THROW(parse_cfg("decay_factor 0.5\n"), ConfigError);
  EXPECT_THROW(parse_cfg("decay = 0.5\n"), ConfigError);
  EXPECT_THROW(parse_cfg("decay_factor = half\n"), ConfigError);
  EXPECT_THROW(parse_cfg("tie_break = random\n"), ConfigError);
  EXPECT_THROW(parse_cfg("merge_activation = min\n"), ConfigError);
  EXPECT_THROW(parse_cfg("enable_merging = maybe\n"), ConfigError);
  EXPECT_THROW(parse_cfg("decay_factor = 0\n"), ConfigError);
  EXPECT_THROW(parse_cfg("decay_factor = 1.5\n"), ConfigError);
  EXPECT_THROW(parse_cfg("role_bonus.other = 99\n"), ConfigError);
  EXPECT_THROW(parse_cfg("kind_multiplier.pronominal = 3\n"), ConfigError);
  EXPECT_THROW(parse_cfg("merge_every_k_sentences = -1\n"), ConfigError);
  EXPECT_THROW(parse_cfg("base_increment = -1\n"), ConfigError);
  try {
    parse_cfg("\nbogus = 1\n");
  } catch (const ConfigError &e) {
    EXPECT_NE(std::string(e.what()).find("test.conf:2"), std::string::npos);
  }
}

// -------------------------------------------------------------- activation

TEST(UpdateActivation, ProperSubjectGainsOneFifty) {
  CharacterSet set;
  auto marie = testing::make_re(1, ReKind::NOMINAL_PROPER, "marie", Gender::F, Number::SG, Role::SUBJ, 1, 1);
  int l = set.create_character(marie);
  update_activation(set, l, marie, ResolutionConfig{});
  EXPECT_DOUBLE_EQ(set.get(l).activation, (20.0 + 80.0) * 1.5);
  EXPECT_THROW(update_activation(set, 99, marie, ResolutionConfig{}), CharacterError);
}

TEST(DecayActivations, HalvesAtBoundary) {
  CharacterSet set;
  int l = set.create_character(nominal(1, "roi", Gender::M, 1));
  set.get(l).activation = 100;
  decay_activations(set, ResolutionConfig{});
  EXPECT_DOUBLE_EQ(set.get(l).activation, 50.0);
}

TEST(DecayActivations, StrictlyDecreasingWithoutMentions) {
  testing::Rng rng(43);
  for (int i = 0; i < 100; ++i) {
    ResolutionConfig cfg;
    cfg.decay_factor = std::uniform_real_distribution<double>(0.01, 0.99)(rng);
    CharacterSet set;
    int l = set.create_character(nominal(1, "roi", Gender::M, 1));
    set.get(l).activation = std::uniform_real_distribution<double>(1.0, 500.0)(rng);
    for (int s = 0; s < 20; ++s) {
      double before = set.get(l).activation;
      decay_activations(set, cfg);
      EXPECT_LT(set.get(l).activation, before);
    }
  }
}

TEST(ResolveDocument, TwoMentionsInOneSentenceAccumulate) {
  // Marie (proper subject) then "elle" (pronoun subject) in sentence 1.
  Document doc = DocBuilder()
                     .np("Marie", Gender::F, Number::SG, Role::SUBJ, Pos::PNOUN)
                     .verb("dit")
                     .pro("elle", Pos::PRO_SUBJ, Gender::F, Number::SG, Role::SUBJ)
                     .verb("part")
                     .build();
  auto result = resolve_document(doc, empty_lexicon(), ResolutionConfig{});
  ASSERT_EQ(result.characters.live().size(), 1u);
  const double expected = (20.0 + 80.0) * 1.5 + (20.0 + 80.0) * 0.5;
  EXPECT_DOUBLE_EQ(result.characters.live()[0].activation, expected);
  EXPECT_DOUBLE_EQ(expected, 200.0);
}

// ----------------------------------------------------------------- nominal

TEST(ResolveNominal, RepeatedDefiniteNpAttaches) {
  CharacterSet set;
  auto res = empty_lexicon();
  ResolutionConfig cfg;
  auto first = resolve_nominal(nominal(1, "roi", Gender::M, 1), set, res, cfg);
  Decision d;
  auto second = resolve_nominal(nominal(2, "roi", Gender::M, 3), set, res, cfg, &d);
  EXPECT_EQ(first.outcome, Outcome::CREATED);
  EXPECT_EQ(second.outcome, Outcome::ATTACHED);
  EXPECT_EQ(second.label, first.label);
  EXPECT_EQ(d.rule, Rule::NOMINAL_IDENTICAL);
  EXPECT_EQ(second.candidate_count_after_filter, 1);
}

TEST(ResolveNominal, HyperonymLaterMentionAttaches) {
  LexicalResources res;
  res.add_hyperonym("chien", "animal");
  res.finalize();
  CharacterSet set;
  ResolutionConfig cfg;
  resolve_nominal(nominal(1, "chien", Gender::M, 1), set, res, cfg);
  Decision d;
  auto r = resolve_nominal(nominal(2, "animal", Gender::M, 2), set, res, cfg, &d);
  EXPECT_EQ(r.outcome, Outcome::ATTACHED);
  EXPECT_EQ(d.rule, Rule::NOMINAL_HYPERONYM);
  // Reverse order does not attach.
  CharacterSet other;
  resolve_nominal(nominal(1, "animal", Gender::M, 1), other, res, cfg);
  EXPECT_EQ(resolve_nominal(nominal(2, "chien", Gender::M, 2), other, res, cfg).outcome, Outcome::CREATED);
}

TEST(ResolveNominal, EmptySetCreates) {
  CharacterSet set;
  Decision d;
  auto marie = testing::make_re(1, ReKind::NOMINAL_PROPER, "marie", Gender::F, Number::SG, Role::SUBJ, 1, 1);
  auto r = resolve_nominal(marie, set, empty_lexicon(), ResolutionConfig{}, &d);
  EXPECT_EQ(r.outcome, Outcome::CREATED);
  EXPECT_EQ(r.label, 1);
  EXPECT_EQ(d.rule, Rule::NOMINAL_NEW);
}

TEST(ResolveNominal, AgreementAndLexicalExclusions) {
  CharacterSet set;
  ResolutionConfig cfg;
  auto res = empty_lexicon();
  resolve_nominal(nominal(1, "enfant", Gender::M, 1), set, res, cfg);
  resolve_nominal(nominal(2, "roi", Gender::M, 1, 3), set, res, cfg);
  Decision d;
  auto r = resolve_nominal(nominal(3, "enfant", Gender::F, 2), set, res, cfg, &d);
  EXPECT_EQ(r.outcome, Outcome::CREATED);
  ASSERT_EQ(d.excluded.size(), 2u);
  EXPECT_EQ(d.excluded[0].reasons, unsigned{kAgreement});
  EXPECT_EQ(d.excluded[1].reasons, unsigned{kAgreement | kLexical});
  EXPECT_EQ(reason_names(d.excluded[1].reasons), "agreement+lexical");
}

TEST(ResolveNominal, HighestActivationCandidateWins) {
  LexicalResources res;
  res.add_synonym_set({"roi", "souverain", "monarque"});
  res.finalize();
  CharacterSet set;
  set.create_character(nominal(1, "roi", Gender::M, 1));
  set.create_character(nominal(2, "souverain", Gender::M, 2));
  set.get(1).activation = 10;
  set.get(2).activation = 30;
  auto r = resolve_nominal(nominal(3, "monarque", Gender::M, 3), set, res, ResolutionConfig{});
  EXPECT_EQ(r.label, 2);
  EXPECT_EQ(r.candidate_count_after_filter, 2);
}

TEST(ResolveNominal, AttachDisabledAlwaysCreates) {
  CharacterSet set;
  ResolutionConfig cfg;
  cfg.attach_nominals = false;
  resolve_nominal(nominal(1, "roi", Gender::M, 1), set, empty_lexicon(), cfg);
  Decision d;
  auto r = resolve_nominal(nominal(2, "roi", Gender::M, 2), set, empty_lexicon(), cfg, &d);
  EXPECT_EQ(r.outcome, Outcome::CREATED);
  EXPECT_EQ(d.rule, Rule::NOMINAL_ATTACH_DISABLED);
}

TEST(Outranks, TieBreakOrder) {
  Character a, b;
  a.label = 1;
  b.label = 2;
  a.activation = b.activation = 10;
  a.last_mention_sentence = 3;
  b.last_mention_sentence = 4;
  EXPECT_TRUE(outranks(b, a));
  b.last_mention_sentence = 3;
  EXPECT_TRUE(outranks(a, b));
  b.activation = 11;
  EXPECT_TRUE(outranks(b, a));
}

// --------------------------------------------------------------- pronouns

TEST(AccessibilityFilter, GenderFilter) {
  CharacterSet set;
  set.create_character(nominal(1, "jean", Gender::M, 1));
  set.create_character(nominal(2, "marie", Gender::F, 1, 2));
  auto excluded = apply_accessibility_filter(pronoun(3, "elle", Gender::F, Role::SUBJ, 2), set, std::nullopt);
  EXPECT_FALSE(set.get(1).accessible);
  EXPECT_TRUE(set.get(2).accessible);
  ASSERT_EQ(excluded.size(), 1u);
  EXPECT_EQ(excluded[0], (Exclusion{1, kGender}));
}

TEST(AccessibilityFilter, GenderlessElidedPronounKeepsBoth) {
  CharacterSet set;
  set.create_character(nominal(1, "jean", Gender::M, 1));
  set.create_character(nominal(2, "marie", Gender::F, 1, 2));
  apply_accessibility_filter(pronoun(3, "le", Gender::UNKNOWN, Role::DOBJ, 2), set, std::nullopt);
  EXPECT_TRUE(set.all_accessible());
}

TEST(AccessibilityFilter, ObjectPronounExcludesSubject) {
  CharacterSet set;
  set.create_character(nominal(1, "jean", Gender::M, 1));
  set.create_character(nominal(2, "pierre", Gender::M, 1, 3));
  auto excluded = apply_accessibility_filter(pronoun(3, "le", Gender::M, Role::DOBJ, 1, 4), set, 1);
  EXPECT_FALSE(set.get(1).accessible);
  EXPECT_EQ(excluded.at(0), (Exclusion{1, kSubject}));
  // A subject pronoun is not restricted.
  apply_accessibility_filter(pronoun(4, "il", Gender::M, Role::SUBJ, 1, 5), set, 1);
  EXPECT_TRUE(set.all_accessible());
}

TEST(ResolvePronominal, NoCompatibleCharacterGivesPlaceholder) {
  CharacterSet set;
  set.create_character(nominal(1, "jean", Gender::M, 1));
  Decision d;
  auto r = resolve_pronominal(pronoun(2, "elle", Gender::F, Role::SUBJ, 2), set, ResolutionConfig{}, {}, &d);
  EXPECT_EQ(r.outcome, Outcome::UNRESOLVED_PLACEHOLDER);
  EXPECT_EQ(r.label, 2);
  EXPECT_TRUE(set.get(2).placeholder);
  EXPECT_EQ(d.rule, Rule::PRONOUN_PLACEHOLDER);
  EXPECT_TRUE(set.all_accessible());
}

TEST(ResolvePronominal, HigherActivationWins) {
  CharacterSet set;
  set.create_character(nominal(1, "marie", Gender::F, 1));
  set.create_character(nominal(2, "jeanne", Gender::F, 1, 3));
  set.get(1).activation = 150;  // proper subject: (20 + 80) * 1.5
  set.get(2).activation = 75;   // proper other: (20 + 30) * 1.5
  auto r = resolve_pronominal(pronoun(3, "elle", Gender::F, Role::SUBJ, 2), set, ResolutionConfig{});
  EXPECT_EQ(r.outcome, Outcome::ATTACHED);
  EXPECT_EQ(r.label, 1);
  EXPECT_EQ(r.candidate_count_after_filter, 2);
  EXPECT_TRUE(set.all_accessible());
}

TEST(ResolveDocument, ObjectPronounSkipsSentenceSubject) {
  // S1: Pierre dort. S2: Jean le voit.
  Document doc = DocBuilder()
                     .np("Pierre", Gender::M, Number::SG, Role::SUBJ, Pos::PNOUN)
                     .verb("dort")
                     .sentence()
                     .np("Jean", Gender::M, Number::SG, Role::SUBJ, Pos::PNOUN)
                     .pro("le", Pos::PRO_DOBJ, Gender::M, Number::SG, Role::DOBJ)
                     .verb()
                     .build();
  auto result = resolve_document(doc, empty_lexicon(), ResolutionConfig{});
  ASSERT_EQ(result.resolutions.size(), 3u);
  // Jean has 150 against Pierre's 75, yet "le" goes to Pierre.
  EXPECT_EQ(result.resolutions[2].outcome, Outcome::ATTACHED);
  EXPECT_EQ(result.resolutions[2].label, 1);
}

TEST(ResolveDocument, MarieEntraElleSourit) {
  Document doc = DocBuilder()
                     .np("Marie", Gender::F, Number::SG, Role::SUBJ, Pos::PNOUN)
                     .verb("entra")
                     .punct()
                     .sentence()
                     .pro("Elle", Pos::PRO_SUBJ, Gender::F, Number::SG, Role::SUBJ)
                     .verb("sourit")
                     .punct()
                     .build();
  auto result = resolve_document(doc, empty_lexicon(), ResolutionConfig{});
  ASSERT_EQ(result.characters.size(), 1u);
  ASSERT_EQ(result.resolutions.size(), 2u);
  EXPECT_EQ(result.resolutions[1].outcome, Outcome::ATTACHED);
  EXPECT_EQ(result.resolutions[1].label, 1);
  // 150 decayed to 75, plus a pronoun subject mention of 50.
  EXPECT_DOUBLE_EQ(result.characters.get(1).activation, 125.0);
}

TEST(ResolveDocument, NoReferringExpressions) {
  Document doc = DocBuilder().verb("pleut").punct().build();
  auto result = resolve_document(doc, empty_lexicon(), ResolutionConfig{});
  EXPECT_EQ(result.characters.size(), 0u);
  EXPECT_TRUE(result.resolutions.empty());
  auto empty = resolve_document(Document{}, empty_lexicon(), ResolutionConfig{});
  EXPECT_TRUE(empty.trace.events.empty());
}

TEST(ResolveDocument, AgreementTableFillsUnknownFeatures) {
  LexicalResources res;
  res.add_agreement("epee", {Gender::F, NumberCapability::SG});
  res.finalize();
  Document doc = DocBuilder()
                     .np("epee", Gender::UNKNOWN, Number::UNKNOWN, Role::DOBJ)
                     .sentence()
                     .pro("il", Pos::PRO_SUBJ, Gender::M, Number::SG, Role::SUBJ)
                     .build();
  auto result = resolve_document(doc, res, ResolutionConfig{});
  EXPECT_EQ(result.expressions[0].gender, Gender::F);
  EXPECT_EQ(result.expressions[0].number, Number::SG);
  EXPECT_EQ(result.resolutions[1].outcome, Outcome::UNRESOLVED_PLACEHOLDER);
}

TEST(ResolveDocument, DefiniteTriggerWhenAttachmentIsOff) {
  LexicalResources res;
  res.add_synonym_set({"roi", "souverain"});
  res.finalize();
  ResolutionConfig cfg;
  cfg.attach_nominals = false;
  Document doc = DocBuilder()
                     .det_np("le", "roi", Gender::M, Number::SG, Role::SUBJ)
                     .verb()
                     .sentence()
                     .det_np("le", "souverain", Gender::M, Number::SG, Role::SUBJ)
                     .verb()
                     .build();
  auto result = resolve_document(doc, res, cfg);
  ASSERT_EQ(result.merges.size(), 1u);
  EXPECT_EQ(result.merges[0], (MergeAction{1, 2, LexicalRelation::SYNONYM, MergeTrigger::DEFINITE_DETERMINER, 2}));
  EXPECT_EQ(result.characters.live().size(), 1u);

  // Indefinite second mention waits for the periodic pass.
  Document indefinite = DocBuilder()
                            .det_np("le", "roi", Gender::M, Number::SG, Role::SUBJ)
                            .sentence()
                            .det_np("un", "souverain", Gender::M, Number::SG, Role::SUBJ)
                            .build();
  cfg.merge_every_k_sentences = 2;
  auto later = resolve_document(indefinite, res, cfg);
  ASSERT_EQ(later.merges.size(), 1u);
  EXPECT_EQ(later.merges[0].trigger, MergeTrigger::PERIODIC);
}

TEST(ResolveDocument, ArchiveRunsOnTickEvenWithoutMerging) {
  ResolutionConfig cfg;
  cfg.merge_every_k_sentences = 2;
  cfg.archive_after_sentences = 1;
  cfg.archive_activation_floor = 1000;
  cfg.enable_merging = false;
  Document doc = DocBuilder()
                     .np("roi", Gender::M, Number::SG, Role::SUBJ)
                     .sentence()
                     .verb()
                     .sentence()
                     .verb()
                     .sentence()
                     .verb()
                     .build();
  auto result = resolve_document(doc, empty_lexicon(), cfg);
  EXPECT_TRUE(result.characters.live().empty());
  ASSERT_EQ(result.characters.archive().size(), 1u);
  bool seen = std::any_of(result.trace.events.begin(), result.trace.events.end(), [](const TraceEvent &e) {
    return std::holds_alternative<ArchiveEvent>(e);
  });
  EXPECT_TRUE(seen);
}

TEST(ResolveDocument, PlaceholdersAreNotMerged) {
  ResolutionConfig cfg;
  cfg.merge_every_k_sentences = 1;
  cfg.attach_nominals = false;
  Document doc = DocBuilder()
                     .pro("il", Pos::PRO_SUBJ, Gender::M, Number::SG, Role::SUBJ)
                     .sentence()
                     .np("il", Gender::M, Number::SG, Role::SUBJ)
                     .build();
  auto result = resolve_document(doc, empty_lexicon(), cfg);
  EXPECT_TRUE(result.merges.empty());
  EXPECT_EQ(result.characters.live().size(), 2u);
}

TEST(ResolveDocument, WarningsArePropagated) {
  Document doc = DocBuilder().tok("le", Pos::DET, Gender::M, Number::SG, Role::NONE, Chunk::B_NP).build();
  EXPECT_EQ(resolve_document(doc, empty_lexicon(), ResolutionConfig{}).warnings.size(), 1u);
}

// ------------------------------------------------------- random documents

TEST(ResolveDocument, AblationCharacterCountOverRandomDocuments) {
  testing::Rng rng(47);
  ResolutionConfig cfg;
  cfg.attach_nominals = false;
  cfg.enable_merging = false;
  for (int i = 0; i < 200; ++i) {
    LexicalResources res = testing::random_lexicon(rng);
    auto result = resolve_document(testing::random_document(rng, 1 + i % 12), res, cfg);
    std::size_t nominals = 0, placeholders = 0;
    for (const auto &re : result.expressions) nominals += is_nominal(re.kind);
    for (const auto &r : result.resolutions) placeholders += r.outcome == Outcome::UNRESOLVED_PLACEHOLDER;
    EXPECT_EQ(result.characters.size(), nominals + placeholders);
  }
}

TEST(ResolveDocument, TraceDecisionsReplayAgainstCandidates) {
  testing::Rng rng(53);
  for (int i = 0; i < 200; ++i) {
    LexicalResources res = testing::random_lexicon(rng);
    ResolutionConfig cfg = testing::random_config(rng);
    auto result = resolve_document(testing::random_document(rng, 1 + i % 10), res, cfg);
    for (const auto &event : result.trace.events) {
      const auto *d = std::get_if<Decision>(&event);
      if (d == nullptr) continue;
      if (d->outcome != Outcome::ATTACHED) {
        EXPECT_TRUE(d->candidates.empty());
        continue;
      }
      ASSERT_FALSE(d->candidates.empty());
      double best = 0;
      for (const auto &c : d->candidates) best = std::max(best, c.activation);
      auto chosen = std::find_if(d->candidates.begin(), d->candidates.end(),
                                 [&](const Candidate &c) { return c.label == d->label; });
      ASSERT_NE(chosen, d->candidates.end());
      EXPECT_EQ(chosen->activation, best);
      for (const auto &x : d->excluded) {
        EXPECT_NE(x.reasons, 0u);
        EXPECT_NE(x.label, d->label);
      }
    }
  }
}

TEST(ResolveDocument, DeterministicOutput) {
  testing::Rng rng(59);
  for (int i = 0; i < 100; ++i) {
    LexicalResources res = testing::random_lexicon(rng);
    ResolutionConfig cfg = testing::random_config(rng);
    Document doc = testing::random_document(rng, 1 + i % 15);
    EXPECT_EQ(testing::resolve_text(resolve_document(doc, res, cfg)),
              testing::resolve_text(resolve_document(doc, res, cfg)));
  }
}

}  // namespace
}  // namespace refres
