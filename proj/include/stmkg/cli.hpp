// Copyright 2026 The stmkg Authors.
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

#ifndef STMKG_CLI_HPP_
#define STMKG_CLI_HPP_

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include "CLI11.hpp"
#include "stmkg/baseline.hpp"
#include "stmkg/corefdoc.hpp"
#include "stmkg/corpus_io.hpp"
#include "stmkg/goldkg.hpp"
#include "stmkg/kgpop.hpp"
#include "stmkg/metrics.hpp"
#include "stmkg/normalize.hpp"
#include "stmkg/parse_error.hpp"
#include "stmkg/synth.hpp"

// Command-line front end. Exit codes: 0 success, 1 usage error (bad flags,
// missing files), 2 invalid data.
namespace stmkg::cli {

namespace detail {

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline void emit(const std::string& path, std::string_view content, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << content;
  } else {
    write_file(path, content);
  }
}

inline std::optional<CorpusFormat> corpus_format_flag(const std::string& name) {
  if (name.empty()) return std::nullopt;
  auto f = parse_corpus_format(name);
  if (!f) throw UsageError("'" + name + "' is not a corpus format (jsonl, brat, conll)");
  return f;
}

// Explicit flag, else the output path's extension, else `fallback`.
inline CorpusFormat output_format(const std::string& flag, const std::string& path,
                                  std::optional<CorpusFormat> fallback) {
  if (auto f = corpus_format_flag(flag)) return *f;
  if (std::filesystem::is_directory(path)) return CorpusFormat::Brat;
  if (auto f = detect_corpus_format(path)) return *f;
  if (fallback) return *fallback;
  throw UsageError("cannot tell the output format of " + path + "; pass --format");
}

inline CollapseScope scope_flag(const std::string& s) {
  auto scope = parse_collapse_scope(s);
  if (!scope) throw UsageError("unknown strategy '" + s + "' (cross, in)");
  return *scope;
}

inline std::string format_corpus_stats(const StatsTable& t) {
  std::string out;
  for (const auto& g : t.groups) out += "\t" + g;
  out += "\tTotal\n";
  auto row = [&](const char* name, std::size_t (*get)(const ClusterCounts&)) {
    out += name;
    for (const auto& g : t.groups) out += "\t" + std::to_string(get(t.rows.at(g)));
    out += "\t" + std::to_string(get(t.total)) + "\n";
  };
  row("# mentions", [](const ClusterCounts& c) { return c.mentions; });
  row("# coref-only mentions", [](const ClusterCounts& c) { return c.coref_only_mentions; });
  row("# coreferent mentions", [](const ClusterCounts& c) { return c.coreferent_mentions; });
  row("# coreference clusters", [](const ClusterCounts& c) { return c.coreference_clusters; });
  row("# singleton clusters", [](const ClusterCounts& c) { return c.singleton_clusters; });
  row("# overall clusters", [](const ClusterCounts& c) { return c.overall_clusters(); });
  return out;
}

using Span = std::tuple<std::string, std::size_t, std::size_t>;

// Coreference scoring identifies mentions by span alone so that corpora
// without types (column files) can be compared with typed ones.
inline Partition<Span> span_partition(const Corpus& corpus) {
  Partition<Span> out;
  for (const Document& doc : corpus.documents) {
    for (const auto& c : all_clusters(doc)) {
      std::vector<Span> part;
      for (std::size_t i : c.members) {
        const Mention& m = doc.mentions[i];
        part.emplace_back(doc.doc_id, m.start, m.end);
      }
      out.push_back(std::move(part));
    }
  }
  return out;
}

inline std::string percent(const Rational& r) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", 100.0 * to_double(r));
  return buf;
}

inline std::string eval_header() {
  return "strategy\tMUC_P\tMUC_R\tMUC_F1\tB3_P\tB3_R\tB3_F1\tCEAFe_P\tCEAFe_R\tCEAFe_F1"
         "\tCoNLL_P\tCoNLL_R\tCoNLL_F1\tconcepts\ttyped_concepts\n";
}

inline std::string eval_row(const CollapseStrategy& s, const PopulationEval& e) {
  std::string out = describe(s);
  for (const PRF* prf : {&e.report.muc, &e.report.b_cubed, &e.report.ceaf_e, &e.report.conll}) {
    out += "\t" + percent(prf->precision) + "\t" + percent(prf->recall) + "\t" +
           percent(prf->f1);
  }
  return out + "\t" + std::to_string(e.concepts) + "\t" + std::to_string(e.typed_concepts) +
         "\n";
}

}  // namespace detail

inline int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Coreference metrics and research knowledge graph population.", "stmkg"};
  app.require_subcommand(1);
  app.set_config("--config", "",
                 "TOML/INI file of option values; command-line flags take precedence");

  std::string format;
  int jobs = 1;
  std::uint64_t seed = 1;
  std::string domain;
  std::string lemma_path;
  std::vector<std::string> coref_only_labels;
  app.add_option("--format", format,
                 "Output format: jsonl, brat or conll for corpora; jsonl or ntriples for "
                 "graphs");
  app.add_option("--jobs", jobs, "Worker threads for per-document work")
      ->check(CLI::PositiveNumber);
  app.add_option("--seed", seed, "Seed for generated test data");
  app.add_option("--domain", domain, "Domain of documents whose format stores none");
  app.add_option("--lemma-exceptions", lemma_path,
                 "Plural/singular TSV replacing the built-in exception table")
      ->check(CLI::ExistingFile);
  app.add_option("--coref-only-label", coref_only_labels,
                 "BRAT entity label(s) of coreference-only mentions (default None)");

  struct CommandFlags {
    std::string in, in_format, out, stats, links, gold, key, key_format, response,
        response_format, strategy, by = "both";
    bool no_coref = false, gold_clusters = false;
    std::size_t documents = 20;
  };
  CommandFlags cv, st, sc, bl, pp, cg, ev, gn;
  pp.strategy = "cross";
  ev.strategy = "all";

  auto input = [](CLI::App* cmd, CommandFlags& f, const char* what) {
    cmd->add_option("--in", f.in, what)->required()->check(CLI::ExistingPath);
    cmd->add_option("--in-format", f.in_format, "Input format (default: from the path)");
  };

  auto* convert = app.add_subcommand("convert", "Convert a corpus between formats");
  input(convert, cv, "Input corpus");
  convert->add_option("--out", cv.out, "Output path")->required();

  auto* stats = app.add_subcommand("stats", "Mention and cluster statistics of a corpus");
  input(stats, st, "Input corpus");
  stats->add_option("--by", st.by, "Grouping: type, domain or both")
      ->check(CLI::IsMember({"type", "domain", "both"}));
  stats->add_option("--out", st.out, "Output TSV (default stdout)");

  auto* score_cmd = app.add_subcommand("score", "Score a response corpus against a key");
  score_cmd->add_option("--key", sc.key, "Key corpus")->required()->check(CLI::ExistingPath);
  score_cmd->add_option("--response", sc.response, "Response corpus")
      ->required()
      ->check(CLI::ExistingPath);
  score_cmd->add_option("--key-format", sc.key_format, "Key format (default: from the path)");
  score_cmd->add_option("--response-format", sc.response_format,
                        "Response format (default: from the path)");
  score_cmd->add_option("--out", sc.out, "Output TSV (default stdout)");

  auto* baseline_cmd = app.add_subcommand("baseline", "String-match coreference baseline");
  input(baseline_cmd, bl, "Input corpus");
  baseline_cmd->add_option("--out", bl.out, "Output corpus")->required();

  auto* populate_cmd = app.add_subcommand("populate", "Populate a knowledge graph");
  input(populate_cmd, pp, "Input corpus");
  populate_cmd->add_option("--strategy", pp.strategy, "Collapsing: cross or in");
  populate_cmd->add_flag("--no-coref", pp.no_coref, "Treat every mention as its own cluster");
  populate_cmd->add_flag("--gold", pp.gold_clusters,
                         "Clusters are gold annotations: keep coreference-only mentions");
  populate_cmd->add_option("--out", pp.out, "Graph output (default stdout)");
  populate_cmd->add_option("--stats", pp.stats, "Write per-domain statistics TSV here");

  auto* compile_cmd = app.add_subcommand("compile-gold", "Compile the gold knowledge graph");
  input(compile_cmd, cg, "Annotated corpus");
  compile_cmd->add_option("--links", cg.links, "Entity links TSV")->check(CLI::ExistingFile);
  compile_cmd->add_option("--out", cg.out, "Gold graph JSONL (default stdout)");
  compile_cmd->add_option("--stats", cg.stats, "Write concept statistics TSV here");

  auto* eval_cmd = app.add_subcommand("eval-kg", "Evaluate population strategies");
  input(eval_cmd, ev, "Annotated corpus");
  eval_cmd->add_option("--gold", ev.gold, "Gold graph JSONL")
      ->required()
      ->check(CLI::ExistingFile);
  eval_cmd->add_option("--strategy", ev.strategy, "cross, in or all (all four variants)");
  eval_cmd->add_flag("--no-coref", ev.no_coref, "Treat every mention as its own cluster");
  eval_cmd->add_option("--out", ev.out, "Output TSV (default stdout)");

  auto* generate_cmd = app.add_subcommand("generate", "Write a synthetic corpus");
  generate_cmd->add_option("--out", gn.out, "Output corpus")->required();
  generate_cmd->add_option("--docs", gn.documents, "Number of documents");

  for (auto* sub : app.get_subcommands({})) sub->fallthrough();

  try {
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? 0 : 1;
  }

  try {
    CorpusIoOptions io;
    io.domain = domain;
    if (!coref_only_labels.empty()) {
      io.brat.coref_only_labels = {coref_only_labels.begin(), coref_only_labels.end()};
    }
    std::optional<Singularizer> custom;
    if (!lemma_path.empty()) {
      custom = Singularizer::from_tsv(read_file(lemma_path), lemma_path);
    }
    const Singularizer& sing = custom ? *custom : Singularizer::builtin();
    auto load = [&](const std::string& path, const std::string& fmt) {
      Corpus c = read_corpus(path, detail::corpus_format_flag(fmt), io);
      ensure_valid(c);
      return c;
    };

    if (*convert) {
      Corpus c = load(cv.in, cv.in_format);
      write_corpus(c, cv.out, detail::output_format(format, cv.out, std::nullopt), io);
    } else if (*stats) {
      Corpus c = load(st.in, st.in_format);
      std::string text;
      if (st.by != "domain") {
        text += detail::format_corpus_stats(corpus_stats(c, GroupBy::ConceptType));
      }
      if (st.by == "both") text += "\n";
      if (st.by != "type") text += detail::format_corpus_stats(corpus_stats(c, GroupBy::Domain));
      detail::emit(st.out, text, out);
    } else if (*score_cmd) {
      Corpus key = load(sc.key, sc.key_format);
      Corpus response = load(sc.response, sc.response_format);
      ScoreReport r = score(detail::span_partition(key), detail::span_partition(response));
      detail::emit(sc.out, format_report(r), out);
    } else if (*baseline_cmd) {
      Corpus c = load(bl.in, bl.in_format);
      auto fallback = detail::corpus_format_flag(bl.in_format);
      if (!fallback) fallback = detect_corpus_format(bl.in);
      write_corpus(apply_baseline(c, jobs, sing), bl.out,
                   detail::output_format(format, bl.out, fallback), io);
    } else if (*populate_cmd) {
      Corpus c = load(pp.in, pp.in_format);
      PopulateOptions options;
      options.strategy = {detail::scope_flag(pp.strategy), !pp.no_coref};
      options.filter =
          pp.gold_clusters ? ClusterFilter::DropUntyped : ClusterFilter::DropCorefOnly;
      options.jobs = jobs;
      options.singularizer = &sing;
      KnowledgeGraph kg = populate(c, options);
      if (format.empty() || format == "jsonl") {
        detail::emit(pp.out, write_kg_jsonl(kg), out);
      } else if (format == "ntriples") {
        detail::emit(pp.out, write_ntriples(kg), out);
      } else {
        throw detail::UsageError("graphs are written as jsonl or ntriples");
      }
      if (!pp.stats.empty()) detail::emit(pp.stats, format_kg_stats(kg_stats(kg, c)), out);
    } else if (*compile_cmd) {
      Corpus c = load(cg.in, cg.in_format);
      if (!cg.links.empty()) apply_links(c, read_file(cg.links), cg.links);
      GoldKG g = compile_gold(c);
      detail::emit(cg.out, write_gold_jsonl(g), out);
      if (!cg.stats.empty()) {
        GoldStats s = gold_stats(g, c);
        std::string text = "kept clusters\t" + std::to_string(s.kept_clusters) +
                           "\nsingleton clusters\t" + std::to_string(s.singleton_clusters) +
                           "\nconcepts\t" + std::to_string(s.concepts) + "\nMIX concepts\t" +
                           std::to_string(s.mix) + "\n\n" + format_gold_stats(s);
        detail::emit(cg.stats, text, out);
      }
    } else if (*eval_cmd) {
      Corpus c = load(ev.in, ev.in_format);
      GoldKG g = read_gold_jsonl(read_file(ev.gold), ev.gold);
      Partition<MentionKey> key = to_partition(g);
      std::vector<CollapseStrategy> strategies;
      if (ev.strategy == "all") {
        strategies = {{CollapseScope::InDomain, true},
                      {CollapseScope::CrossDomain, true},
                      {CollapseScope::InDomain, false},
                      {CollapseScope::CrossDomain, false}};
      } else {
        strategies = {{detail::scope_flag(ev.strategy), !ev.no_coref}};
      }
      std::string text = detail::eval_header();
      for (const auto& s : strategies) {
        text += detail::eval_row(s, evaluate_population(key, c, s, jobs, &sing));
      }
      detail::emit(ev.out, text, out);
    } else if (*generate_cmd) {
      SynthOptions options;
      options.documents = gn.documents;
      write_corpus(generate_corpus(seed, options), gn.out,
                   detail::output_format(format, gn.out, CorpusFormat::Jsonl), io);
    }
  } catch (const detail::UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return 1;
  } catch (const IoError& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const ValidationError& e) {
    err << "invalid corpus: " << e.violations().size() << " violation(s)\n";
    for (const auto& v : e.violations()) err << "  " << v.describe() << "\n";
    return 2;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << "invalid data: " << e.what() << "\n";
    return 2;
  }
  return 0;
}

inline int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run(std::move(args), std::cout, std::cerr);
}

}  // namespace stmkg::cli

#endif  // STMKG_CLI_HPP_
