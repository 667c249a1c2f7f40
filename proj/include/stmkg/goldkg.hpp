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

#ifndef STMKG_GOLDKG_HPP_
#define STMKG_GOLDKG_HPP_

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "stmkg/corefdoc.hpp"
#include "stmkg/jsonl.hpp"
#include "stmkg/kgpop.hpp"
#include "stmkg/metrics.hpp"
#include "stmkg/parse_error.hpp"
#include "stmkg/strings.hpp"

// Gold knowledge graph compiled from entity-linked mentions, and evaluation
// of population strategies against it.
namespace stmkg {

struct GoldConcept {
  std::string entity;
  std::vector<MentionKey> mentions;  // sorted

  bool operator==(const GoldConcept&) const = default;
};

struct GoldKG {
  std::vector<GoldConcept> concepts;  // ordered by entity
  std::size_t kept_clusters = 0;
  std::size_t singleton_clusters = 0;  // among the kept ones

  bool operator==(const GoldKG&) const = default;
};

// Keeps clusters (singletons included) whose mentions are all linked to one
// and the same entity, then merges kept clusters by entity.
inline GoldKG compile_gold(const Corpus& corpus) {
  ensure_valid(corpus);
  GoldKG gold;
  std::map<std::string, std::vector<MentionKey>> by_entity;
  for (const Document& doc : corpus.documents) {
    for (const auto& c : all_clusters(doc)) {
      std::set<std::string> entities;
      bool all_linked = true;
      for (std::size_t i : c.members) {
        auto it = doc.entity_links.find(i);
        if (it == doc.entity_links.end()) {
          all_linked = false;
          break;
        }
        entities.insert(it->second);
      }
      if (!all_linked || entities.size() != 1) continue;
      ++gold.kept_clusters;
      if (c.is_singleton()) ++gold.singleton_clusters;
      auto& bucket = by_entity[*entities.begin()];
      for (std::size_t i : c.members) bucket.push_back(doc.mentions[i].key());
    }
  }
  for (auto& [entity, mentions] : by_entity) {
    std::sort(mentions.begin(), mentions.end());
    gold.concepts.push_back({entity, std::move(mentions)});
  }
  return gold;
}

inline Partition<MentionKey> to_partition(const GoldKG& gold) {
  Partition<MentionKey> out;
  for (const auto& c : gold.concepts) out.push_back(c.mentions);
  return out;
}

inline ConceptType concept_type(const GoldConcept& c) {
  std::vector<ConceptType> types;
  for (const auto& m : c.mentions) types.push_back(m.type);
  return assign_type(types);
}

// ---------------------------------------------------------------------------
// Statistics: concepts per type and domain, cross-domain concepts under MIX
// only.

struct GoldStats {
  std::vector<std::string> columns;  // domains, then MIX
  std::map<std::string, std::map<ConceptType, std::size_t>> cells;
  std::map<std::string, std::size_t> column_totals;
  std::map<ConceptType, std::size_t> type_totals;
  std::size_t concepts = 0;
  std::size_t mix = 0;
  std::size_t kept_clusters = 0;
  std::size_t singleton_clusters = 0;
};

inline GoldStats gold_stats(const GoldKG& gold, const Corpus& corpus) {
  std::map<std::string, std::string> domain_of;
  for (const Document& d : corpus.documents) domain_of[d.doc_id] = d.domain;
  GoldStats s;
  s.kept_clusters = gold.kept_clusters;
  s.singleton_clusters = gold.singleton_clusters;
  std::set<std::string> domains;
  for (const Document& d : corpus.documents) domains.insert(d.domain);
  s.columns.assign(domains.begin(), domains.end());
  s.columns.emplace_back(kMixColumn);
  for (const auto& c : gold.concepts) {
    std::set<std::string> spanned;
    for (const auto& m : c.mentions) {
      auto it = domain_of.find(m.doc_id);
      if (it == domain_of.end()) {
        throw std::invalid_argument("gold mention " + to_string(m) +
                                    " refers to a document outside the corpus");
      }
      spanned.insert(it->second);
    }
    std::string column = spanned.size() == 1 ? *spanned.begin() : std::string(kMixColumn);
    ConceptType t = concept_type(c);
    ++s.cells[column][t];
    ++s.column_totals[column];
    ++s.type_totals[t];
    ++s.concepts;
    if (column == kMixColumn) ++s.mix;
  }
  return s;
}

inline std::string format_gold_stats(const GoldStats& s) {
  std::string out;
  for (const auto& c : s.columns) out += "\t" + c;
  out += "\tTotal\n";
  auto lookup = [](const auto& map, const auto& key) -> std::size_t {
    auto it = map.find(key);
    return it == map.end() ? 0 : it->second;
  };
  bool untyped = lookup(s.type_totals, ConceptType::None) > 0;
  for (ConceptType t : {ConceptType::Data, ConceptType::Material, ConceptType::Method,
                        ConceptType::Process, ConceptType::None}) {
    if (t == ConceptType::None && !untyped) continue;
    out += to_string(t);
    for (const auto& c : s.columns) {
      auto it = s.cells.find(c);
      out += "\t" + std::to_string(it == s.cells.end() ? 0 : lookup(it->second, t));
    }
    out += "\t" + std::to_string(lookup(s.type_totals, t)) + "\n";
  }
  out += "Total";
  for (const auto& c : s.columns) out += "\t" + std::to_string(lookup(s.column_totals, c));
  out += "\t" + std::to_string(s.concepts) + "\n";
  return out;
}

// ---------------------------------------------------------------------------
// Files

// One concept per line: {"entity": ..., "mentions": [{doc_id, start, end, type}]}.
inline std::string write_gold_jsonl(const GoldKG& gold) {
  std::string out;
  for (const auto& c : gold.concepts) {
    nlohmann::ordered_json j;
    j["entity"] = c.entity;
    j["mentions"] = nlohmann::ordered_json::array();
    for (const auto& m : c.mentions) j["mentions"].push_back(mention_key_to_json(m));
    out += j.dump(-1, ' ', false, nlohmann::json::error_handler_t::replace) + "\n";
  }
  return out;
}

// Cluster counts are not stored in the file and read back as zero.
inline GoldKG read_gold_jsonl(std::string_view data, const std::string& source = "") {
  GoldKG gold;
  std::set<std::string> entities;
  std::set<MentionKey> seen;
  auto all_lines = strings::lines(data);
  for (std::size_t ln = 1; ln <= all_lines.size(); ++ln) {
    std::string_view line = all_lines[ln - 1];
    if (strings::trim(line).empty()) continue;
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(line);
    } catch (const nlohmann::json::parse_error& e) {
      throw ParseError(source, ln, std::string("invalid JSON: ") + e.what());
    }
    GoldConcept c;
    c.entity = detail::require_string(detail::require(j, "entity", "gold concept", source, ln),
                                      "entity", source, ln);
    const auto& ms = detail::require(j, "mentions", "gold concept", source, ln);
    if (!ms.is_array() || ms.empty()) {
      throw ParseError(source, ln, "mentions must be a non-empty array");
    }
    for (const auto& jm : ms) {
      MentionKey k = mention_key_from_json(jm, source, ln);
      if (!seen.insert(k).second) {
        throw ParseError(source, ln, "mention " + to_string(k) + " appears twice");
      }
      c.mentions.push_back(std::move(k));
    }
    if (!entities.insert(c.entity).second) {
      throw ParseError(source, ln, "entity '" + c.entity + "' appears twice");
    }
    std::sort(c.mentions.begin(), c.mentions.end());
    gold.concepts.push_back(std::move(c));
  }
  std::sort(gold.concepts.begin(), gold.concepts.end(),
            [](const auto& a, const auto& b) { return a.entity < b.entity; });
  return gold;
}

// Entity links as TSV rows `doc_id  start  end  type  entity`; a type of `*`
// matches a mention of any type at that span when the span is unambiguous.
inline void apply_links(Corpus& corpus, std::string_view tsv,
                        const std::string& source = "links") {
  std::map<std::string, Document*> docs;
  for (Document& d : corpus.documents) docs[d.doc_id] = &d;
  auto all_lines = strings::lines(tsv);
  for (std::size_t ln = 1; ln <= all_lines.size(); ++ln) {
    std::string_view line = all_lines[ln - 1];
    if (strings::trim(line).empty() || line.front() == '#') continue;
    auto f = strings::split(line, '\t');
    if (f.size() != 5) {
      throw ParseError(source, ln, "expected 5 tab-separated fields, got " +
                                       std::to_string(f.size()));
    }
    auto doc_it = docs.find(std::string(f[0]));
    if (doc_it == docs.end()) {
      throw ParseError(source, ln, "unknown document '" + std::string(f[0]) + "'");
    }
    auto start = strings::parse_size(f[1]);
    auto end = strings::parse_size(f[2]);
    if (!start || !end) throw ParseError(source, ln, "offsets must be non-negative integers");
    std::optional<ConceptType> type;
    if (f[3] != "*") {
      type = parse_concept_type(f[3]);
      if (!type) throw ParseError(source, ln, "unknown type '" + std::string(f[3]) + "'");
    }
    std::string entity(strings::trim(f[4]));
    if (entity.empty()) throw ParseError(source, ln, "empty entity");
    Document& doc = *doc_it->second;
    std::vector<std::size_t> matches;
    for (std::size_t i = 0; i < doc.mentions.size(); ++i) {
      const Mention& m = doc.mentions[i];
      if (m.start == *start && m.end == *end && (!type || m.concept_type == *type)) {
        matches.push_back(i);
      }
    }
    if (matches.empty()) throw ParseError(source, ln, "no mention at this span");
    if (matches.size() > 1) throw ParseError(source, ln, "span matches several mentions");
    auto [it, inserted] = doc.entity_links.emplace(matches[0], entity);
    if (!inserted && it->second != entity) {
      throw ParseError(source, ln, "mention already linked to '" + it->second + "'");
    }
  }
}

inline std::string write_links(const Corpus& corpus) {
  std::string out;
  for (const Document& d : corpus.documents) {
    for (const auto& [i, entity] : d.entity_links) {
      const Mention& m = d.mentions.at(i);
      out += d.doc_id + "\t" + std::to_string(m.start) + "\t" + std::to_string(m.end) + "\t" +
             std::string(to_string(m.concept_type)) + "\t" + entity + "\n";
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Evaluation

class UniverseMismatch : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct PopulationEval {
  ScoreReport report;
  std::size_t concepts = 0;
  std::size_t typed_concepts = 0;  // concepts with a type other than None
};

// The corpus restricted to `universe`: other mentions are removed, clusters
// shrink accordingly. Throws UniverseMismatch when a universe mention is not
// in the corpus.
inline Corpus restrict_to(const Corpus& corpus, const std::set<MentionKey>& universe) {
  Corpus out;
  std::set<MentionKey> found;
  for (const Document& doc : corpus.documents) {
    Document d;
    d.doc_id = doc.doc_id;
    d.domain = doc.domain;
    d.text = doc.text;
    std::vector<long> remap(doc.mentions.size(), -1);
    for (std::size_t i = 0; i < doc.mentions.size(); ++i) {
      MentionKey k = doc.mentions[i].key();
      if (!universe.count(k)) continue;
      found.insert(k);
      remap[i] = static_cast<long>(d.mentions.size());
      d.mentions.push_back(doc.mentions[i]);
    }
    for (const auto& c : doc.clusters) {
      CoreferenceCluster nc;
      for (std::size_t i : c.members) {
        if (remap[i] >= 0) nc.members.push_back(static_cast<std::size_t>(remap[i]));
      }
      if (nc.size() >= 2) d.clusters.push_back(std::move(nc));
    }
    for (const auto& [i, entity] : doc.entity_links) {
      if (remap[i] >= 0) d.entity_links[static_cast<std::size_t>(remap[i])] = entity;
    }
    out.documents.push_back(std::move(d));
  }
  if (found.size() != universe.size()) {
    std::string msg = std::to_string(universe.size() - found.size()) +
                      " gold mention(s) missing from the corpus:";
    std::size_t shown = 0;
    for (const auto& k : universe) {
      if (found.count(k)) continue;
      msg += " " + to_string(k);
      if (++shown == 5) {
        msg += " ...";
        break;
      }
    }
    throw UniverseMismatch(msg);
  }
  return out;
}

inline Partition<MentionKey> concept_partition(const KnowledgeGraph& kg) {
  Partition<MentionKey> out;
  for (const Concept& c : kg.concepts) {
    std::vector<MentionKey> part;
    for (const auto& cl : c.member_clusters) {
      part.insert(part.end(), cl.mentions.begin(), cl.mentions.end());
    }
    std::sort(part.begin(), part.end());
    out.push_back(std::move(part));
  }
  return out;
}

// Populates from the gold mentions only, using the corpus clusters, and scores
// the resulting concepts against the gold partition.
inline PopulationEval evaluate_population(const Partition<MentionKey>& gold,
                                          const Corpus& corpus,
                                          const CollapseStrategy& strategy, int jobs = 1,
                                          const Singularizer* singularizer = nullptr) {
  check_partition(gold, "gold");
  std::set<MentionKey> universe;
  for (const auto& part : gold) universe.insert(part.begin(), part.end());
  Corpus restricted = restrict_to(corpus, universe);

  PopulateOptions options;
  options.strategy = strategy;
  options.filter = ClusterFilter::KeepAll;
  options.jobs = jobs;
  options.singularizer = singularizer;
  KnowledgeGraph kg = populate(restricted, options);
  Partition<MentionKey> predicted = concept_partition(kg);

  std::set<MentionKey> predicted_universe;
  for (const auto& part : predicted) predicted_universe.insert(part.begin(), part.end());
  if (predicted_universe != universe) {
    throw UniverseMismatch("predicted concepts do not cover the gold mentions");
  }
  PopulationEval eval;
  eval.report = score(gold, predicted);
  eval.concepts = kg.concepts.size();
  eval.typed_concepts = static_cast<std::size_t>(
      std::count_if(kg.concepts.begin(), kg.concepts.end(),
                    [](const Concept& c) { return c.concept_type != ConceptType::None; }));
  return eval;
}

}  // namespace stmkg

#endif  // STMKG_GOLDKG_HPP_
