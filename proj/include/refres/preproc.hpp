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

// Tagged-token documents: reading, writing, clitic disambiguation and
// referring-expression extraction.

#pragma once

#include <algorithm>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "refres/common.hpp"

namespace refres {

struct Token {
  int sentence_index = 0;
  int token_index = 0;
  std::string surface;
  std::string lemma;
  Pos pos = Pos::OTHER;
  Gender gender = Gender::UNKNOWN;
  Number number = Number::UNKNOWN;
  Role role = Role::NONE;
  Chunk chunk = Chunk::O;

  bool operator==(const Token &) const = default;
};

struct Document {
  std::vector<Token> tokens;
  int sentence_count = 0;

  bool operator==(const Document &) const = default;
};

// Inclusive token range within one sentence.
struct Span {
  int first = 0;
  int last = 0;

  auto operator<=>(const Span &) const = default;
};

struct ReferringExpression {
  int re_id = 0;
  ReKind kind = ReKind::NOMINAL_COMMON;
  std::string head_lemma;
  std::vector<std::string> word_lemmas;
  Gender gender = Gender::UNKNOWN;
  Number number = Number::UNKNOWN;
  Role role = Role::OTHER;  // never NONE
  int sentence_index = 0;
  Span span;
  bool definite = false;

  bool operator==(const ReferringExpression &) const = default;
};

// Reads the 9-column token format. Throws ParseError naming the line.
inline Document parse_tagged_document(std::istream &in, const std::string &source = "<input>") {
  Document doc;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (text::is_skippable(line)) continue;

    auto fail = [&](const std::string &what) { throw ParseError(source, line_no, what); };
    auto cols = text::split(line, '\t');
    if (cols.size() != 9) {
      fail("expected 9 tab-separated columns, found " + std::to_string(cols.size()));
    }

    Token tok;
    auto sent = text::parse_number_value<int>(cols[0]);
    auto index = text::parse_number_value<int>(cols[1]);
    if (!sent || *sent < 1) fail("bad sentence index '" + std::string(cols[0]) + "'");
    if (!index || *index < 1) fail("bad token index '" + std::string(cols[1]) + "'");
    tok.sentence_index = *sent;
    tok.token_index = *index;
    tok.surface = cols[2];
    tok.lemma = cols[3];
    if (tok.surface.empty() || tok.lemma.empty()) fail("empty surface or lemma");

    auto pos = parse_pos(cols[4]);
    auto gender = parse_gender(cols[5]);
    auto number = parse_number(cols[6]);
    auto role = parse_role(cols[7]);
    auto chunk = parse_chunk(cols[8]);
    if (!pos) fail("unknown POS '" + std::string(cols[4]) + "'");
    if (!gender) fail("unknown gender '" + std::string(cols[5]) + "'");
    if (!number) fail("unknown number '" + std::string(cols[6]) + "'");
    if (!role) fail("unknown role '" + std::string(cols[7]) + "'");
    if (!chunk) fail("unknown chunk tag '" + std::string(cols[8]) + "'");
    tok.pos = *pos;
    tok.gender = *gender;
    tok.number = *number;
    tok.role = *role;
    tok.chunk = *chunk;

    const Token *prev = doc.tokens.empty() ? nullptr : &doc.tokens.back();
    if (prev == nullptr || tok.sentence_index != prev->sentence_index) {
      int expected = prev == nullptr ? 1 : prev->sentence_index + 1;
      if (tok.sentence_index != expected) {
        fail("sentence index " + std::to_string(tok.sentence_index) + " where " +
             std::to_string(expected) + " was expected");
      }
      if (tok.token_index != 1) fail("sentence must start at token index 1");
      if (tok.chunk == Chunk::I_NP) fail("I-NP at the start of a sentence");
    } else {
      if (tok.token_index != prev->token_index + 1) {
        fail("token index " + std::to_string(tok.token_index) + " where " +
             std::to_string(prev->token_index + 1) + " was expected");
      }
      if (tok.chunk == Chunk::I_NP && prev->chunk == Chunk::O) fail("I-NP not preceded by B-NP or I-NP");
    }
    doc.sentence_count = tok.sentence_index;
    doc.tokens.push_back(std::move(tok));
  }
  return doc;
}

inline Document parse_tagged_document(std::string_view input) {
  std::istringstream in{std::string(input)};
  return parse_tagged_document(in);
}

inline void write_tagged_document(std::ostream &out, const Document &doc) {
  for (const Token &t : doc.tokens) {
    out << t.sentence_index << '\t' << t.token_index << '\t' << t.surface << '\t' << t.lemma << '\t'
        << to_string(t.pos) << '\t' << gender_code(t.gender) << '\t' << number_code(t.number) << '\t'
        << role_code(t.role) << '\t' << chunk_code(t.chunk) << '\n';
  }
}

namespace detail {

inline bool is_elided_article_form(std::string_view surface) {
  std::string low = text::to_lower(surface);
  return low == "l'" || low == "l\xE2\x80\x99";  // l' or l’
}

}  // namespace detail

// Rewrites AMB_LE to DET/PRO_DOBJ and AMB_LUI to PRO_IOBJ/PRO_TONIC.
// Decisions look only at the input tags, so the pass is idempotent.
inline Document classify_ambiguous_clitics(Document doc) {
  const std::vector<Token> &in = doc.tokens;
  std::vector<Token> out = in;
  auto pos_at = [&](std::size_t i, std::size_t j) -> std::optional<Pos> {
    if (j >= in.size() || in[j].sentence_index != in[i].sentence_index) return std::nullopt;
    return in[j].pos;
  };

  for (std::size_t i = 0; i < in.size(); ++i) {
    Token &tok = out[i];
    if (in[i].pos == Pos::AMB_LE) {
      // Article only before a noun or adjective. A following verb, a clitic
      // cluster ending in a verb, and every inconclusive context give a pronoun.
      auto next = pos_at(i, i + 1);
      bool article = next == Pos::NOUN || next == Pos::PNOUN || next == Pos::ADJ;
      if (!article) {
        tok.pos = Pos::PRO_DOBJ;
        if (detail::is_elided_article_form(tok.surface)) tok.gender = Gender::UNKNOWN;
        if (tok.role == Role::NONE) tok.role = Role::DOBJ;
      } else {
        tok.pos = Pos::DET;
      }
    } else if (in[i].pos == Pos::AMB_LUI) {
      bool after_prep = i > 0 && in[i - 1].sentence_index == in[i].sentence_index &&
                        in[i - 1].pos == Pos::PREP;
      if (after_prep) {
        tok.pos = Pos::PRO_TONIC;
        tok.gender = Gender::M;
      } else {
        tok.pos = Pos::PRO_IOBJ;
        tok.gender = Gender::UNKNOWN;
        if (tok.role == Role::NONE) tok.role = Role::IOBJ;
      }
    }
  }
  doc.tokens = std::move(out);
  return doc;
}

struct Extraction {
  std::vector<ReferringExpression> expressions;
  std::vector<std::string> warnings;
};

// One nominal RE per NP chunk holding a noun, one pronominal RE per pronoun
// token, in document order.
inline Extraction extract_referring_expressions(const Document &doc) {
  Extraction result;
  auto &res = result.expressions;
  const auto &toks = doc.tokens;

  auto pronoun_re = [](const Token &t) {
    ReferringExpression re;
    re.kind = ReKind::PRONOMINAL;
    re.head_lemma = text::to_lower(t.lemma);
    re.word_lemmas = {re.head_lemma};
    re.gender = t.gender;
    re.number = t.number;
    re.role = t.role == Role::NONE ? Role::OTHER : t.role;
    re.sentence_index = t.sentence_index;
    re.span = {t.token_index, t.token_index};
    return re;
  };

  for (const Token &t : toks) {
    if (t.pos == Pos::AMB_LE || t.pos == Pos::AMB_LUI) {
      throw Error("extract_referring_expressions: unresolved " + std::string(to_string(t.pos)) +
                  " at sentence " + std::to_string(t.sentence_index) + " token " +
                  std::to_string(t.token_index));
    }
  }

  std::size_t i = 0;
  while (i < toks.size()) {
    const Token &first = toks[i];
    if (first.chunk != Chunk::B_NP) {
      if (is_pronoun(first.pos)) res.push_back(pronoun_re(first));
      ++i;
      continue;
    }
    std::size_t end = i + 1;
    while (end < toks.size() && toks[end].chunk == Chunk::I_NP &&
           toks[end].sentence_index == first.sentence_index) {
      ++end;
    }
    const Token *head = nullptr;
    for (std::size_t j = i; j < end; ++j) {
      if (is_noun(toks[j].pos)) head = &toks[j];
    }
    if (head == nullptr) {
      result.warnings.push_back("sentence " + std::to_string(first.sentence_index) + " tokens " +
                                std::to_string(first.token_index) + "-" +
                                std::to_string(toks[end - 1].token_index) +
                                ": NP chunk without a noun skipped");
    } else {
      ReferringExpression re;
      re.kind = head->pos == Pos::PNOUN ? ReKind::NOMINAL_PROPER : ReKind::NOMINAL_COMMON;
      re.head_lemma = text::to_lower(head->lemma);
      for (std::size_t j = i; j < end; ++j) re.word_lemmas.push_back(text::to_lower(toks[j].lemma));
      re.gender = head->gender;
      re.number = head->number;
      re.role = head->role == Role::NONE ? Role::OTHER : head->role;
      re.sentence_index = first.sentence_index;
      re.span = {first.token_index, toks[end - 1].token_index};
      std::string det = text::to_lower(first.lemma);
      re.definite = first.pos == Pos::DET && (det == "le" || det == "la" || det == "les");
      res.push_back(std::move(re));
    }
    for (std::size_t j = i; j < end; ++j) {
      if (is_pronoun(toks[j].pos)) res.push_back(pronoun_re(toks[j]));
    }
    i = end;
  }

  std::stable_sort(res.begin(), res.end(), [](const auto &a, const auto &b) {
    return std::pair(a.sentence_index, a.span.first) < std::pair(b.sentence_index, b.span.first);
  });
  for (std::size_t k = 0; k < res.size(); ++k) res[k].re_id = static_cast<int>(k) + 1;
  return result;
}

}  // namespace refres
