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


// Acceptance checks. Each criterion prints one line:
//
//   [PASS] criterion N <name>: <details>
//
// Usage: acceptance [--criterion N] [--work DIR]. Exit status is 0 when every
// selected criterion passes, 77 when all of them were skipped for lack of
// data, 1 otherwise.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <iostream>
#include <numeric>
#include <set>
#include <string>
#include <vector>

#include "json.hpp"
#include "stmkg/stmkg.hpp"
#include "test_support.hpp"

namespace stmkg::acceptance {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

enum class Status { Pass, Fail, Skip };

struct Outcome {
  Status status;
  std::string detail;
};

Outcome pass(std::string d) { return {Status::Pass, std::move(d)}; }
Outcome fail(std::string d) { return {Status::Fail, std::move(d)}; }
Outcome skip(std::string d) { return {Status::Skip, std::move(d)}; }

std::string fmt(const char* f, double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, x);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// ---------------------------------------------------------------------------
// Column files for the reference scorer

std::string column_doc(const std::vector<std::string>& chain_column) {
  std::string s = "#begin document (d); part 000\n";
  for (std::size_t i = 0; i < chain_column.size(); ++i) {
    s += "d\t0\t" + std::to_string(i) + "\tw" + std::to_string(i) + "\t" + chain_column[i] +
         "\n";
  }
  return s + "\n#end document\n";
}

// One-token mentions: token i carries the cluster of mention i.
std::string single_token_columns(const Partition<std::size_t>& p, std::size_t n) {
  std::vector<std::string> column(n, "-");
  for (std::size_t k = 0; k < p.size(); ++k) {
    for (std::size_t i : p[k]) column[i] = "(" + std::to_string(k) + ")";
  }
  return column_doc(column);
}

Partition<std::size_t> random_partition(Rng& rng, std::size_t n, std::size_t max_parts) {
  std::size_t k = rng.between(1, std::min(n, max_parts));
  Partition<std::size_t> parts(k);
  for (std::size_t i = 0; i < n; ++i) parts[rng.index(k)].push_back(i);
  std::erase_if(parts, [](const auto& p) { return p.empty(); });
  return parts;
}

Rational brute_force_ceaf(const Partition<std::size_t>& key,
                          const Partition<std::size_t>& response) {
  const auto& small = key.size() <= response.size() ? key : response;
  const auto& large = key.size() <= response.size() ? response : key;
  auto phi4 = [](const std::vector<std::size_t>& a, const std::vector<std::size_t>& b) {
    std::set<std::size_t> sa(a.begin(), a.end());
    std::size_t common = 0;
    for (auto x : b) common += sa.count(x);
    return Rational(2 * common) / Rational(a.size() + b.size());
  };
  std::vector<std::size_t> perm(large.size());
  std::iota(perm.begin(), perm.end(), 0);
  Rational best(0);
  do {
    Rational total(0);
    for (std::size_t i = 0; i < small.size(); ++i) total += phi4(small[i], large[perm[i]]);
    best = std::max(best, total);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

double max_component_diff(const ScoreReport& r, const json& ref) {
  double worst = 0.0;
  auto cmp = [&](const PRF& ours, const json& triple) {
    worst = std::max(worst, std::fabs(ours.r() - triple[0].get<double>()));
    worst = std::max(worst, std::fabs(ours.p() - triple[1].get<double>()));
    worst = std::max(worst, std::fabs(ours.f() - triple[2].get<double>()));
  };
  cmp(r.muc, ref["muc"]);
  cmp(r.b_cubed, ref["b_cubed"]);
  cmp(r.ceaf_e, ref["ceaf_e"]);
  worst = std::max(worst, std::fabs(to_double(r.conll.f1) - ref["conll"].get<double>()));
  return worst;
}

// ---------------------------------------------------------------------------
// Criteria

Outcome metric_conformance(const fs::path& work) {
  auto t0 = std::chrono::steady_clock::now();
  Rng rng(20210);
  constexpr int kPairs = 150;
  json manifest = json::array();
  std::vector<ScoreReport> ours;
  std::size_t brute_forced = 0, ceaf_mismatches = 0;
  for (int i = 0; i < kPairs; ++i) {
    std::size_t n = rng.between(1, 30);
    auto key = random_partition(rng, n, 10);
    auto response = random_partition(rng, n, 10);
    auto kp = work / ("key" + std::to_string(i) + ".conll");
    auto rp = work / ("response" + std::to_string(i) + ".conll");
    testing::write_text(kp, single_token_columns(key, n));
    testing::write_text(rp, single_token_columns(response, n));
    manifest.push_back({{"key", kp.string()}, {"response", rp.string()}});
    ours.push_back(score(key, response));
    if (key.size() <= 6 && response.size() <= 6) {
      ++brute_forced;
      if (ceaf_e_similarity(key, response) != brute_force_ceaf(key, response)) ++ceaf_mismatches;
    }
  }
  json ref = testing::run_oracle("reference_scores.py", manifest, work);
  double worst = 0.0;
  for (int i = 0; i < kPairs; ++i) worst = std::max(worst, max_component_diff(ours[i], ref[i]));
  double secs = seconds_since(t0);
  std::string detail = std::to_string(kPairs) + " pairs, max |diff| vs reference scorer " +
                       fmt("%.2e", worst) + "; CEAFe brute force exact on " +
                       std::to_string(brute_forced - ceaf_mismatches) + "/" +
                       std::to_string(brute_forced) + " pairs with <= 6 clusters; " +
                       fmt("%.1f s", secs);
  bool ok = worst <= 1e-6 && ceaf_mismatches == 0 && brute_forced >= 20 && secs < 60.0;
  return ok ? pass(detail) : fail(detail);
}

Outcome worked_example(const fs::path& work) {
  Partition<char> key = {{'a', 'b', 'c'}};
  Partition<char> response = {{'a', 'b'}, {'c'}};
  ScoreReport r = score(key, response);
  auto q = [](int n, int d) { return Rational(n) / Rational(d); };
  bool exact = r.muc.f1 == q(2, 3) && r.b_cubed.f1 == q(5, 7) && r.ceaf_e.f1 == q(8, 15) &&
               r.conll.f1 == q(67, 105);
  testing::write_text(work / "key.conll", column_doc({"(0)", "(0)", "(0)"}));
  testing::write_text(work / "response.conll", column_doc({"(0)", "(0)", "(1)"}));
  json ref = testing::run_oracle(
      "reference_scores.py",
      json::array({{{"key", (work / "key.conll").string()},
                    {"response", (work / "response.conll").string()}}}),
      work);
  double diff = max_component_diff(r, ref[0]);
  std::string detail = "MUC F1 " + r.muc.f1.str() + ", B3 F1 " + r.b_cubed.f1.str() +
                       ", CEAFe F1 " + r.ceaf_e.f1.str() + ", CoNLL F1 " + r.conll.f1.str() +
                       " (" + fmt("%.4f", to_double(r.conll.f1)) + "); reference scorer diff " +
                       fmt("%.1e", diff);
  return exact && diff <= 1e-9 ? pass(detail) : fail(detail);
}

fs::path data_dir() {
  const char* env = std::getenv("STMKG_DATA");
  return env && *env ? fs::path(env) : fs::path(STMKG_DATA_DIR);
}

std::optional<Corpus> load_stm(std::string& why) {
  fs::path dir = data_dir() / "stm-coref";
  if (!fs::is_directory(dir)) {
    why = "annotated corpus not found at " + dir.string() +
          " (BRAT files in one subdirectory per domain; set STMKG_DATA)";
    return std::nullopt;
  }
  Corpus c = read_corpus(dir, CorpusFormat::Brat);
  ensure_valid(c);
  return c;
}

std::optional<Corpus> load_linked_stm(std::string& why) {
  auto corpus = load_stm(why);
  if (!corpus) return corpus;
  fs::path links = data_dir() / "stem-ecr-links.tsv";
  if (!fs::exists(links)) {
    why = "entity links not found at " + links.string() + " (set STMKG_DATA)";
    return std::nullopt;
  }
  apply_links(*corpus, read_file(links), links.string());
  return corpus;
}

struct Row {
  std::size_t mentions, coreferent, clusters, singletons, overall;
};

Row row_of(const ClusterCounts& c) {
  return {c.mentions, c.coreferent_mentions, c.coreference_clusters, c.singleton_clusters,
          c.overall_clusters()};
}

std::string row_str(const Row& r) {
  return std::to_string(r.mentions) + "/" + std::to_string(r.coreferent) + "/" +
         std::to_string(r.clusters) + "/" + std::to_string(r.singletons) + "/" +
         std::to_string(r.overall);
}

Outcome corpus_statistics(const fs::path&) {
  std::string why;
  auto corpus = load_stm(why);
  if (!corpus) return skip(why);
  const std::map<std::string, Row> by_type = {
      {"Data", {1658, 351, 153, 1307, 1460}},   {"Material", {2099, 910, 339, 1189, 1528}},
      {"Method", {258, 101, 30, 157, 187}},     {"Process", {2112, 510, 198, 1602, 1800}},
      {"MIXED", {0, 0, 50, 0, 50}},             {"NONE", {0, 705, 138, 0, 138}},
      {"Total", {6127, 2577, 908, 4255, 5163}}};
  const std::map<std::string, Row> by_domain = {
      {"Agr", {741, 276, 106, 520, 626}}, {"Ast", {791, 365, 120, 549, 669}},
      {"Bio", {649, 275, 98, 443, 541}},  {"Che", {553, 282, 90, 384, 474}},
      {"CS", {483, 181, 67, 339, 406}},   {"ES", {698, 241, 93, 525, 618}},
      {"Eng", {741, 318, 117, 503, 620}}, {"MS", {574, 256, 87, 371, 458}},
      {"Mat", {297, 124, 48, 210, 258}},  {"Med", {600, 259, 82, 411, 493}},
      {"Total", {6127, 2577, 908, 4255, 5163}}};
  std::vector<std::string> diffs;
  auto check = [&](const StatsTable& t, const std::map<std::string, Row>& expected) {
    for (const auto& [name, want] : expected) {
      ClusterCounts got_counts;
      if (name == "Total") {
        got_counts = t.total;
      } else if (auto it = t.rows.find(name); it != t.rows.end()) {
        got_counts = it->second;
      }
      Row got = row_of(got_counts);
      if (row_str(got) != row_str(want)) {
        diffs.push_back(name + " " + row_str(got) + " (want " + row_str(want) + ")");
      }
    }
  };
  check(corpus_stats(*corpus, GroupBy::ConceptType), by_type);
  check(corpus_stats(*corpus, GroupBy::Domain), by_domain);
  if (diffs.empty()) {
    return pass("per-type and per-domain tables match exactly: " +
                row_str(row_of(corpus_stats(*corpus, GroupBy::Domain).total)));
  }
  return fail(strings::join(diffs, "; "));
}

Outcome gold_kg(const fs::path&) {
  std::string why;
  auto corpus = load_linked_stm(why);
  if (!corpus) return skip(why);
  GoldKG gold = compile_gold(*corpus);
  GoldStats s = gold_stats(gold, *corpus);
  std::string detail = "kept " + std::to_string(s.kept_clusters) + " (want 920), singleton " +
                       std::to_string(s.singleton_clusters) + " (want 711), concepts " +
                       std::to_string(s.concepts) + " (want 762), MIX " +
                       std::to_string(s.mix) + " (want 31)";
  bool ok = s.kept_clusters == 920 && s.singleton_clusters == 711 && s.concepts == 762 &&
            s.mix == 31;
  return ok ? pass(detail) : fail(detail);
}

Outcome population_evaluation(const fs::path&) {
  std::string why;
  auto corpus = load_linked_stm(why);
  if (!corpus) return skip(why);
  auto gold = to_partition(compile_gold(*corpus));
  struct Expected {
    CollapseStrategy strategy;
    double f1;
    std::size_t concepts;
  };
  const std::vector<Expected> table = {{{CollapseScope::InDomain, true}, 63.5, 859},
                                       {{CollapseScope::CrossDomain, true}, 64.8, 837},
                                       {{CollapseScope::InDomain, false}, 41.7, 900},
                                       {{CollapseScope::CrossDomain, false}, 43.5, 876}};
  std::vector<PopulationEval> got;
  std::vector<std::string> parts;
  bool ok = true;
  for (const auto& e : table) {
    got.push_back(evaluate_population(gold, *corpus, e.strategy));
    double f1 = 100.0 * to_double(got.back().report.conll.f1);
    std::size_t n = got.back().concepts;
    bool row_ok = std::fabs(f1 - e.f1) <= 2.0 &&
                  (n > e.concepts ? n - e.concepts : e.concepts - n) <= 15;
    ok = ok && row_ok;
    parts.push_back(describe(e.strategy) + " F1 " + fmt("%.1f", f1) + " (want " +
                    fmt("%.1f", e.f1) + "), concepts " + std::to_string(n) + " (want " +
                    std::to_string(e.concepts) + ")");
  }
  bool coref_helps = got[0].report.conll.f1 > got[2].report.conll.f1 &&
                     got[1].report.conll.f1 > got[3].report.conll.f1;
  bool in_more_precise = got[0].report.conll.precision > got[1].report.conll.precision;
  parts.push_back(std::string("with-coref > without: ") + (coref_helps ? "yes" : "no"));
  parts.push_back(std::string("in-domain P > cross-domain P: ") +
                  (in_more_precise ? "yes" : "no"));
  std::string detail = strings::join(parts, "; ");
  return ok && coref_helps && in_more_precise ? pass(detail) : fail(detail);
}

// Mentions of clusters that take part in population.
std::size_t kept_mentions(const Corpus& corpus, bool use_coreference) {
  std::size_t n = 0;
  for (const Document& d : corpus.documents) {
    std::vector<CoreferenceCluster> clusters;
    if (use_coreference) {
      clusters = all_clusters(d);
    } else {
      for (std::size_t i = 0; i < d.mentions.size(); ++i) clusters.push_back({{i}});
    }
    for (const auto& c : clusters) {
      bool extractor = false;
      for (auto i : c.members) extractor |= d.mentions[i].source == MentionSource::ConceptExtractor;
      if (extractor) n += c.size();
    }
  }
  return n;
}

Outcome synthetic_population(const fs::path&) {
  auto t0 = std::chrono::steady_clock::now();
  SynthOptions o;
  o.documents = 60;
  std::vector<std::string> problems;
  constexpr int kCorpora = 20;
  for (std::uint64_t seed = 1; seed <= kCorpora; ++seed) {
    Corpus corpus = generate_corpus(seed, o);
    std::map<std::pair<CollapseScope, bool>, std::size_t> concepts;
    for (auto scope : {CollapseScope::CrossDomain, CollapseScope::InDomain}) {
      for (bool coref : {true, false}) {
        PopulateOptions po;
        po.strategy = {scope, coref};
        KnowledgeGraph kg = populate(corpus, po);
        concepts[{scope, coref}] = kg.concepts.size();
        std::string tag = "seed " + std::to_string(seed) + " " + describe(po.strategy);
        if (kg.edges.size() != kept_mentions(corpus, coref)) {
          problems.push_back(tag + ": edge count differs from kept mentions");
        }
        KgStats st = kg_stats(kg, corpus);
        std::size_t sum = 0;
        for (const auto& [_, col] : st.by_column) sum += col.concepts;
        if (sum != st.total.concepts || st.total.concepts != kg.concepts.size()) {
          problems.push_back(tag + ": column concepts do not sum to the total");
        }
        double expect = 1.0 - static_cast<double>(kg.concepts.size()) /
                                  static_cast<double>(st.total.mentions);
        std::string cell = fmt("%.1f%%", 100.0 * expect);
        std::string table = format_kg_stats(st);
        std::string last = std::string(strings::lines(table).back());
        if (std::fabs(st.total.reduction() - expect) > 1e-12 ||
            !strings::ends_with(last, "\t" + cell)) {
          problems.push_back(tag + ": reduction " + last + " vs " + cell);
        }
        po.jobs = 4;
        KnowledgeGraph again = populate(corpus, po);
        if (write_ntriples(again) != write_ntriples(kg) ||
            write_kg_jsonl(again) != write_kg_jsonl(kg) ||
            format_kg_stats(kg_stats(again, corpus)) != table) {
          problems.push_back(tag + ": re-run output differs");
        }
      }
    }
    for (bool coref : {true, false}) {
      if (concepts[{CollapseScope::InDomain, coref}] <
          concepts[{CollapseScope::CrossDomain, coref}]) {
        problems.push_back("seed " + std::to_string(seed) + ": in-domain < cross-domain");
      }
    }
    for (auto scope : {CollapseScope::CrossDomain, CollapseScope::InDomain}) {
      if (concepts[{scope, true}] > concepts[{scope, false}]) {
        problems.push_back("seed " + std::to_string(seed) + ": with coref > without");
      }
    }
  }
  double secs = seconds_since(t0);
  if (secs >= 60.0) problems.push_back(fmt("took %.1f s", secs));
  std::string detail = std::to_string(kCorpora) + " corpora x 4 strategies, " +
                       fmt("%.1f s", secs);
  if (problems.empty()) return pass(detail);
  if (problems.size() > 5) problems.resize(5);
  return fail(detail + ": " + strings::join(problems, "; "));
}

// Per token: closes (innermost first), one-token mentions, opens (outermost
// first).
std::string layout_columns(std::size_t n,
                           const std::vector<std::vector<std::pair<std::size_t, std::size_t>>>& chains) {
  std::vector<std::string> column;
  for (std::size_t t = 0; t < n; ++t) {
    std::vector<std::tuple<std::size_t, std::size_t, std::size_t>> closes, singles, opens;
    for (std::size_t k = 0; k < chains.size(); ++k) {
      for (auto [a, b] : chains[k]) {
        if (a == t && b == t) singles.emplace_back(k, a, b);
        else if (b == t) closes.emplace_back(k, a, b);
        else if (a == t) opens.emplace_back(k, a, b);
      }
    }
    std::sort(closes.begin(), closes.end(),
              [](auto& x, auto& y) { return std::get<1>(x) > std::get<1>(y); });
    std::sort(opens.begin(), opens.end(),
              [](auto& x, auto& y) { return std::get<2>(x) > std::get<2>(y); });
    std::vector<std::string> cell;
    for (auto& e : closes) cell.push_back(std::to_string(std::get<0>(e)) + ")");
    for (auto& e : singles) cell.push_back("(" + std::to_string(std::get<0>(e)) + ")");
    for (auto& e : opens) cell.push_back("(" + std::to_string(std::get<0>(e)));
    column.push_back(cell.empty() ? "-" : strings::join(cell, "|"));
  }
  return column_doc(column);
}

using TokenPartition = std::set<std::set<std::pair<std::size_t, std::size_t>>>;

// Tokens of the rebuilt text are "w0 w1 ...".
TokenPartition token_partition(const Document& doc) {
  std::map<std::size_t, std::size_t> start_tok, end_tok;
  std::size_t offset = 0, i = 0;
  for (auto w : strings::split(doc.text, ' ')) {
    start_tok[offset] = i;
    end_tok[offset + w.size()] = i;
    offset += w.size() + 1;
    ++i;
  }
  TokenPartition out;
  for (const auto& c : all_clusters(doc)) {
    std::set<std::pair<std::size_t, std::size_t>> cl;
    for (auto m : c.members) {
      cl.insert({start_tok.at(doc.mentions[m].start), end_tok.at(doc.mentions[m].end)});
    }
    out.insert(cl);
  }
  return out;
}

Outcome round_trips(const fs::path& work) {
  std::size_t brat_fail = 0, jsonl_fail = 0, documents = 0;
  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    Corpus corpus = generate_corpus(seed, {});
    documents += corpus.documents.size();
    Corpus unlinked = corpus;
    for (auto& d : unlinked.documents) d.entity_links.clear();
    for (const Document& d : unlinked.documents) {
      BratFiles f = write_brat(d);
      Document once = parse_brat(d.doc_id, f.text, f.ann, d.domain);
      BratFiles g = write_brat(once);
      Document twice = parse_brat(d.doc_id, g.text, g.ann, d.domain);
      if (canonical(once) != canonical(d) || canonical(twice) != canonical(once) ||
          g.ann != f.ann) {
        ++brat_fail;
      }
    }
    std::string text = write_jsonl(corpus);
    Corpus back = read_jsonl(text);
    if (back != corpus || write_jsonl(back) != text) ++jsonl_fail;
  }

  Rng rng(77);
  json manifest = json::array();
  std::vector<TokenPartition> ours;
  std::vector<std::string> cases = {column_doc({"(0)|(1", "1)"}), column_doc({"(0", "0)"}),
                                    column_doc({"-", "-", "-"}),
                                    column_doc({"(0|(1)", "(1", "1)|0)"})};
  for (int trial = 0; trial < 100; ++trial) {
    std::size_t n = rng.between(3, 14);
    std::vector<std::vector<std::pair<std::size_t, std::size_t>>> chains(rng.between(1, 4));
    std::set<std::pair<std::size_t, std::size_t>> used;
    for (int tries = 0; tries < 14; ++tries) {
      std::size_t a = rng.index(n);
      std::pair<std::size_t, std::size_t> span{a, std::min(n - 1, a + rng.index(4))};
      auto& chain = chains[rng.index(chains.size())];
      bool ok = !used.count(span);
      for (auto& o : chain) {
        bool cross = (span.first < o.first && o.first <= span.second && span.second < o.second) ||
                     (o.first < span.first && span.first <= o.second && o.second < span.second);
        ok = ok && !cross;
      }
      if (!ok) continue;
      used.insert(span);
      chain.push_back(span);
    }
    std::erase_if(chains, [](auto& c) { return c.empty(); });
    cases.push_back(layout_columns(n, chains));
  }
  for (std::size_t i = 0; i < cases.size(); ++i) {
    auto path = work / ("nested" + std::to_string(i) + ".conll");
    testing::write_text(path, cases[i]);
    manifest.push_back({{"key", path.string()}, {"response", path.string()}});
    ours.push_back(token_partition(read_coref_columns(cases[i]).documents.at(0)));
  }
  json ref = testing::run_oracle("reference_scores.py", manifest, work);
  std::size_t column_fail = 0;
  for (std::size_t i = 0; i < cases.size(); ++i) {
    TokenPartition theirs;
    for (const auto& cluster : ref[i]["key_partition"]) {
      std::set<std::pair<std::size_t, std::size_t>> cl;
      for (const auto& m : cluster) cl.insert({m[1].get<std::size_t>(), m[2].get<std::size_t>()});
      theirs.insert(cl);
    }
    if (theirs != ours[i]) ++column_fail;
  }
  std::string detail = "BRAT " + std::to_string(documents - brat_fail) + "/" +
                       std::to_string(documents) + " documents, JSONL " +
                       std::to_string(50 - jsonl_fail) + "/50 corpora, column partitions " +
                       std::to_string(cases.size() - column_fail) + "/" +
                       std::to_string(cases.size()) + " equal to the reference reader";
  return brat_fail + jsonl_fail + column_fail == 0 ? pass(detail) : fail(detail);
}

struct Criterion {
  int number;
  const char* name;
  std::function<Outcome(const fs::path&)> run;
};

const std::vector<Criterion>& criteria() {
  static const std::vector<Criterion> all = {
      {1, "metric conformance", metric_conformance},
      {2, "worked example", worked_example},
      {3, "corpus statistics", corpus_statistics},
      {4, "gold KG compilation", gold_kg},
      {5, "population strategy evaluation", population_evaluation},
      {6, "synthetic population properties", synthetic_population},
      {7, "round trips", round_trips},
  };
  return all;
}

int main(int argc, char** argv) {
  int only = 0;
  fs::path work = fs::temp_directory_path() / "stmkg_acceptance";
  for (int i = 1; i < argc; ++i) {
    std::string a = argv[i];
    if (a == "--criterion" && i + 1 < argc) {
      only = std::atoi(argv[++i]);
    } else if (a == "--work" && i + 1 < argc) {
      work = argv[++i];
    } else {
      std::cerr << "usage: acceptance [--criterion N] [--work DIR]\n";
      return 1;
    }
  }
  int passed = 0, failed = 0, skipped = 0;
  for (const auto& c : criteria()) {
    if (only && c.number != only) continue;
    fs::path dir = work / ("criterion_" + std::to_string(c.number));
    fs::remove_all(dir);
    fs::create_directories(dir);
    Outcome o;
    try {
      o = c.run(dir);
    } catch (const std::exception& e) {
      o = fail(std::string("error: ") + e.what());
    }
    const char* tag = o.status == Status::Pass ? "PASS" : o.status == Status::Fail ? "FAIL" : "SKIP";
    std::cout << "[" << tag << "] criterion " << c.number << " " << c.name << ": " << o.detail
              << std::endl;
    (o.status == Status::Pass ? passed : o.status == Status::Fail ? failed : skipped)++;
  }
  if (failed) return 1;
  if (skipped && !passed) return 77;
  return 0;
}

}  // namespace
}  // namespace stmkg::acceptance

int main(int argc, char** argv) { return stmkg::acceptance::main(argc, argv); }
