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

// Lexical resources: agreement table, synonym sets and hyperonym hierarchy.

#pragma once

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <istream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "refres/common.hpp"

namespace refres {

enum class LexicalRelation { IDENTICAL, SYNONYM, HYPERONYM_OF_FIRST, NONE };

inline std::string_view to_string(LexicalRelation r) {
  switch (r) {
    case LexicalRelation::IDENTICAL: return "IDENTICAL";
    case LexicalRelation::SYNONYM: return "SYNONYM";
    case LexicalRelation::HYPERONYM_OF_FIRST: return "HYPERONYM_OF_FIRST";
    default: return "NONE";
  }
}

// Higher is stronger evidence; NONE is 0.
inline int strength(LexicalRelation r) {
  switch (r) {
    case LexicalRelation::IDENTICAL: return 3;
    case LexicalRelation::SYNONYM: return 2;
    case LexicalRelation::HYPERONYM_OF_FIRST: return 1;
    default: return 0;
  }
}

enum class NumberCapability { SG, PL, SG_PL, UNKNOWN };

struct Agreement {
  Gender gender = Gender::UNKNOWN;
  NumberCapability number = NumberCapability::UNKNOWN;

  bool operator==(const Agreement &) const = default;
};

// Hierarchy contains a cycle; cycle() lists it as [a, b, ..., a].
class CycleError : public Error {
 public:
  explicit CycleError(std::vector<std::string> cycle)
      : Error("hyperonym hierarchy contains a cycle: " + text::join(cycle, " < ", [](const auto &s) {
                return s;
              })),
        cycle_(std::move(cycle)) {}

  const std::vector<std::string> &cycle() const { return cycle_; }

 private:
  std::vector<std::string> cycle_;
};

// Immutable after finalize(); all lemmas are stored lowercased.
class LexicalResources {
 public:
  void add_agreement(std::string_view lemma, Agreement agreement) {
    agreement_[text::to_lower(lemma)] = agreement;
  }

  void add_synonym_set(const std::vector<std::string> &lemmas) {
    std::size_t id = synonym_sets_.size();
    std::set<std::string> set;
    for (const auto &l : lemmas) set.insert(text::to_lower(l));
    for (const auto &l : set) membership_[l].push_back(id);
    synonym_sets_.push_back(std::move(set));
  }

  void add_hyperonym(std::string_view specific, std::string_view general) {
    edges_[text::to_lower(specific)].insert(text::to_lower(general));
    closure_.clear();
  }

  // Checks acyclicity and computes the transitive closure. Throws CycleError.
  void finalize() {
    closure_.clear();
    enum class Mark { kOpen, kDone };
    std::map<std::string, Mark> marks;
    std::vector<std::string> path;

    // Iterative DFS keeps the current path for cycle reporting.
    for (const auto &[root, unused] : edges_) {
      if (marks.count(root)) continue;
      struct Frame {
        std::string node;
        std::vector<std::string> children;
        std::size_t next = 0;
      };
      std::vector<Frame> stack;
      auto push = [&](const std::string &node) {
        marks[node] = Mark::kOpen;
        path.push_back(node);
        Frame f{node, {}, 0};
        auto it = edges_.find(node);
        if (it != edges_.end()) f.children.assign(it->second.begin(), it->second.end());
        stack.push_back(std::move(f));
      };
      push(root);
      while (!stack.empty()) {
        Frame &top = stack.back();
        if (top.next < top.children.size()) {
          std::string child = top.children[top.next++];
          auto m = marks.find(child);
          if (m == marks.end()) {
            push(child);
          } else if (m->second == Mark::kOpen) {
            auto start = std::find(path.begin(), path.end(), child);
            std::vector<std::string> cycle(start, path.end());
            cycle.push_back(child);
            throw CycleError(std::move(cycle));
          }
          continue;
        }
        // All children done: ancestors = children plus their ancestors.
        std::set<std::string> ancestors;
        for (const auto &c : top.children) {
          ancestors.insert(c);
          auto it = closure_.find(c);
          if (it != closure_.end()) ancestors.insert(it->second.begin(), it->second.end());
        }
        closure_[top.node] = std::move(ancestors);
        marks[top.node] = Mark::kDone;
        path.pop_back();
        stack.pop_back();
      }
    }
  }

  // Precedence IDENTICAL > SYNONYM > HYPERONYM_OF_FIRST > NONE. The hyperonym
  // case holds when `later` is a (transitive) generalization of `earlier`.
  LexicalRelation lexical_relation(std::string_view earlier, std::string_view later) const {
    std::string a = text::to_lower(earlier);
    std::string b = text::to_lower(later);
    if (a == b) return LexicalRelation::IDENTICAL;
    auto ia = membership_.find(a);
    auto ib = membership_.find(b);
    if (ia != membership_.end() && ib != membership_.end()) {
      for (std::size_t id : ia->second) {
        if (std::find(ib->second.begin(), ib->second.end(), id) != ib->second.end()) {
          return LexicalRelation::SYNONYM;
        }
      }
    }
    auto ic = closure_.find(a);
    if (ic != closure_.end() && ic->second.count(b)) return LexicalRelation::HYPERONYM_OF_FIRST;
    return LexicalRelation::NONE;
  }

  Agreement agreement_of(std::string_view lemma) const {
    auto it = agreement_.find(text::to_lower(lemma));
    return it == agreement_.end() ? Agreement{} : it->second;
  }

  std::size_t synonym_set_count() const { return synonym_sets_.size(); }
  std::size_t hyperonym_edge_count() const {
    std::size_t n = 0;
    for (const auto &[k, v] : edges_) n += v.size();
    return n;
  }
  std::size_t agreement_entry_count() const { return agreement_.size(); }

 private:
  std::map<std::string, Agreement> agreement_;
  std::vector<std::set<std::string>> synonym_sets_;
  std::map<std::string, std::vector<std::size_t>> membership_;
  std::map<std::string, std::set<std::string>> edges_;
  std::map<std::string, std::set<std::string>> closure_;
};

// Line readers for the three resource formats. `source` names the input in
// error messages.

inline void read_agreement(std::istream &in, LexicalResources &res, const std::string &source) {
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (text::is_skippable(line)) continue;
    auto cols = text::split(line, '\t');
    if (cols.size() != 3) throw ParseError(source, line_no, "expected lemma<TAB>gender<TAB>number");
    auto lemma = text::trim(cols[0]);
    auto gender = text::trim(cols[1]);
    auto number = text::trim(cols[2]);
    if (lemma.empty()) throw ParseError(source, line_no, "empty lemma");
    Agreement a;
    if (gender == "m") {
      a.gender = Gender::M;
    } else if (gender == "f") {
      a.gender = Gender::F;
    } else {
      throw ParseError(source, line_no, "gender must be m or f");
    }
    if (number == "s") {
      a.number = NumberCapability::SG;
    } else if (number == "p") {
      a.number = NumberCapability::PL;
    } else if (number == "sp") {
      a.number = NumberCapability::SG_PL;
    } else {
      throw ParseError(source, line_no, "number must be s, p or sp");
    }
    res.add_agreement(lemma, a);
  }
}

inline void read_synonyms(std::istream &in, LexicalResources &res, const std::string &source) {
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (text::is_skippable(line)) continue;
    auto colon = line.find(':');
    if (colon == std::string::npos) throw ParseError(source, line_no, "expected 'lemma: syn1, syn2, ...'");
    auto head = text::trim(std::string_view(line).substr(0, colon));
    if (head.empty()) throw ParseError(source, line_no, "empty head lemma");
    std::vector<std::string> set{std::string(head)};
    for (auto part : text::split(std::string_view(line).substr(colon + 1), ',')) {
      auto word = text::trim(part);
      if (!word.empty()) set.emplace_back(word);
    }
    res.add_synonym_set(set);
  }
}

inline void read_hierarchy(std::istream &in, LexicalResources &res, const std::string &source) {
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (text::is_skippable(line)) continue;
    auto parts = text::split(line, '<');
    if (parts.size() != 2) throw ParseError(source, line_no, "expected 'specific < general'");
    auto specific = text::trim(parts[0]);
    auto general = text::trim(parts[1]);
    if (specific.empty() || general.empty()) throw ParseError(source, line_no, "empty side in hierarchy edge");
    res.add_hyperonym(specific, general);
  }
}

struct ResourcePaths {
  std::optional<std::filesystem::path> agreement;
  std::optional<std::filesystem::path> synonyms;
  std::optional<std::filesystem::path> hierarchy;
};

// Absent paths (or paths to missing files) give empty resources.
inline LexicalResources load_resources(const ResourcePaths &paths) {
  LexicalResources res;
  auto read = [&](const std::optional<std::filesystem::path> &p, auto reader) {
    if (!p || !std::filesystem::exists(*p)) return;
    std::ifstream in(*p);
    if (!in) throw Error("cannot open " + p->string());
    reader(in, res, p->string());
  };
  read(paths.agreement, read_agreement);
  read(paths.synonyms, read_synonyms);
  read(paths.hierarchy, read_hierarchy);
  res.finalize();
  return res;
}

inline constexpr const char *kAgreementFile = "agreement.tsv";
inline constexpr const char *kSynonymFile = "synonyms.txt";
inline constexpr const char *kHierarchyFile = "hierarchy.txt";

// Loads agreement.tsv, synonyms.txt and hierarchy.txt from a directory.
inline LexicalResources load_resource_dir(const std::filesystem::path &dir) {
  if (!std::filesystem::is_directory(dir)) throw Error("lexicon directory not found: " + dir.string());
  return load_resources({dir / kAgreementFile, dir / kSynonymFile, dir / kHierarchyFile});
}

}  // namespace refres
