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

// refres: resolve, evaluate and profile tagged French text.
//
//   refres resolve  <tokens> [--lexicon DIR] [--config FILE] [--trace]
//   refres evaluate <tokens> <gold> [--lexicon DIR] [--config FILE]
//   refres stats    <tokens>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "refres/refres.hpp"

namespace {

std::ifstream open_input(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw refres::Error("cannot open " + path);
  return in;
}

refres::Document load_document(const std::string &path) {
  auto in = open_input(path);
  return refres::classify_ambiguous_clitics(refres::parse_tagged_document(in, path));
}

refres::LexicalResources load_lexicon(const std::string &dir) {
  if (dir.empty()) return refres::load_resources({});
  return refres::load_resource_dir(dir);
}

refres::ResolutionConfig load_config(const std::string &path) {
  if (path.empty()) return {};
  auto in = open_input(path);
  return refres::parse_config(in, path);
}

refres::ResolutionResult run_resolution(const std::string &tokens, const std::string &lexicon,
                                        const std::string &config) {
  auto doc = load_document(tokens);
  auto res = load_lexicon(lexicon);
  auto cfg = load_config(config);
  auto result = refres::resolve_document(doc, res, cfg);
  for (const auto &w : result.warnings) std::cerr << "warning: " << w << '\n';
  return result;
}

}  // namespace

int main(int argc, char **argv) {
  CLI::App app{"Rule-based reference resolution for tagged French text"};
  app.require_subcommand(1);

  std::string tokens, gold, lexicon, config;
  bool trace = false;

  auto *resolve = app.add_subcommand("resolve", "Resolve every referring expression of a token file");
  resolve->add_option("tokens", tokens, "Token file")->required();
  resolve->add_option("--lexicon", lexicon, "Directory with agreement.tsv, synonyms.txt, hierarchy.txt");
  resolve->add_option("--config", config, "key = value configuration file");
  resolve->add_flag("--trace", trace, "Append the decision trace");

  auto *evaluate = app.add_subcommand("evaluate", "Score pronoun resolution against gold chains");
  evaluate->add_option("tokens", tokens, "Token file")->required();
  evaluate->add_option("gold", gold, "Gold file (RE_ID<TAB>ENTITY_ID)")->required();
  evaluate->add_option("--lexicon", lexicon, "Lexicon directory");
  evaluate->add_option("--config", config, "key = value configuration file");

  auto *stats = app.add_subcommand("stats", "Count pronoun and article forms");
  stats->add_option("tokens", tokens, "Token file")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (resolve->parsed()) {
      auto result = run_resolution(tokens, lexicon, config);
      refres::write_resolution_output(std::cout, result, trace);
    } else if (evaluate->parsed()) {
      auto result = run_resolution(tokens, lexicon, config);
      auto gold_in = open_input(gold);
      auto chains = refres::parse_gold(gold_in, gold);
      refres::write_score_report(std::cout, refres::score(result, chains));
    } else if (stats->parsed()) {
      refres::write_stats_table(std::cout, refres::corpus_stats(load_document(tokens)));
    }
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
