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

#ifndef STMKG_KGPOP_HPP_
#define STMKG_KGPOP_HPP_

#include <algorithm>
#include <array>
#include <cstdint>
#include <cstdio>
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
#include "stmkg/normalize.hpp"
#include "stmkg/parallel.hpp"
#include "stmkg/parse_error.hpp"
#include "stmkg/strings.hpp"

// Knowledge graph population. Clusters are collapsed into concepts, the
// equivalence classes of the relation "same label (and same domain when
// collapsing in-domain)", and every kept mention yields a `mentions` edge
// from its paper to the concept.
namespace stmkg {

enum class CollapseScope { CrossDomain, InDomain };

inline std::string_view to_string(CollapseScope s) {
  return s == CollapseScope::InDomain ? "in" : "cross";
}

inline std::optional<CollapseScope> parse_collapse_scope(std::string_view s) {
  if (s == "cross" || s == "cross_domain" || s == "cross-domain") {
    return CollapseScope::CrossDomain;
  }
  if (s == "in" || s == "in_domain" || s == "in-domain") return CollapseScope::InDomain;
  return std::nullopt;
}

struct CollapseStrategy {
  CollapseScope scope = CollapseScope::CrossDomain;
  bool use_coreference = true;  // false: every mention is its own cluster

  bool operator==(const CollapseStrategy&) const = default;
};

inline std::string describe(const CollapseStrategy& s) {
  std::string out = s.scope == CollapseScope::InDomain ? "in-domain" : "cross-domain";
  if (!s.use_coreference) out += " without coreference";
  return out;
}

inline constexpr std::string_view kAllDomains = "ALL";

// A cluster as it enters the collapse step.
struct ClusterRef {
  std::string doc_id;
  std::string domain;
  std::vector<MentionKey> mentions;  // sorted
  Label label;

  auto operator<=>(const ClusterRef&) const = default;
  bool operator==(const ClusterRef&) const = default;
};

struct Concept {
  std::string concept_id;
  Label label;
  std::string domain_scope;  // a domain, or ALL
  ConceptType concept_type = ConceptType::None;
  std::vector<ClusterRef> member_clusters;  // sorted

  std::set<std::string> domains() const {
    std::set<std::string> out;
    for (const auto& c : member_clusters) out.insert(c.domain);
    return out;
  }
  bool cross_domain() const { return domains().size() >= 2; }
  std::size_t mention_count() const {
    std::size_t n = 0;
    for (const auto& c : member_clusters) n += c.mentions.size();
    return n;
  }

  bool operator==(const Concept&) const = default;
};

struct Edge {
  std::string doc_id;
  std::string concept_id;
  MentionKey mention;

  auto operator<=>(const Edge&) const = default;
  bool operator==(const Edge&) const = default;
};

struct KnowledgeGraph {
  std::map<std::string, std::string> papers;  // doc_id -> domain
  std::vector<Concept> concepts;              // ordered by concept_id
  std::vector<Edge> edges;                    // ordered

  const Concept* find(std::string_view concept_id) const {
    auto it = std::lower_bound(
        concepts.begin(), concepts.end(), concept_id,
        [](const Concept& c, std::string_view id) { return c.concept_id < id; });
    return it != concepts.end() && it->concept_id == concept_id ? &*it : nullptr;
  }

  bool operator==(const KnowledgeGraph&) const = default;
};

// ---------------------------------------------------------------------------
// Concept identity

inline std::uint64_t fnv1a64(std::string_view data) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : data) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

inline std::string concept_id(std::string_view label, std::string_view scope) {
  std::string key(label);
  key += '\x1f';
  key += scope;
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx",
                static_cast<unsigned long long>(fnv1a64(key)));
  return buf;
}

// ---------------------------------------------------------------------------
// Cluster selection and labeling

// Drops clusters made only of coreference-only mentions; those carry no
// concept type.
inline std::vector<CoreferenceCluster> filter_clusters(
    const Document& doc, const std::vector<CoreferenceCluster>& clusters) {
  std::vector<CoreferenceCluster> out;
  for (const auto& c : clusters) {
    bool typed = std::any_of(c.members.begin(), c.members.end(), [&](std::size_t i) {
      return doc.mentions.at(i).source == MentionSource::ConceptExtractor;
    });
    if (typed) out.push_back(c);
  }
  return out;
}

inline std::vector<CoreferenceCluster> filter_clusters(const Document& doc) {
  return filter_clusters(doc, doc.clusters);
}

// Which clusters take part in population.
enum class ClusterFilter {
  DropCorefOnly,  // predicted clusters: need one extractor mention
  DropUntyped,    // gold clusters: need one typed mention
  KeepAll,
};

struct PopulateOptions {
  CollapseStrategy strategy;
  ClusterFilter filter = ClusterFilter::DropCorefOnly;
  int jobs = 1;
  const Singularizer* singularizer = nullptr;  // built-in table when null
};

inline std::vector<ClusterRef> label_document(const Document& doc,
                                              const PopulateOptions& options) {
  ensure_valid(doc);
  const Singularizer& sing =
      options.singularizer ? *options.singularizer : Singularizer::builtin();
  AcronymMap acronyms = build_acronym_map(doc.text);

  std::vector<CoreferenceCluster> clusters;
  if (options.strategy.use_coreference) {
    clusters = all_clusters(doc);
  } else {
    for (std::size_t i = 0; i < doc.mentions.size(); ++i) clusters.push_back({{i}});
  }
  if (options.filter == ClusterFilter::DropUntyped) {
    std::erase_if(clusters, [&](const CoreferenceCluster& c) {
      return cluster_type(doc, c) == ConceptType::None;
    });
  } else if (options.filter == ClusterFilter::DropCorefOnly) {
    clusters = filter_clusters(doc, clusters);
  }

  std::vector<ClusterRef> out;
  out.reserve(clusters.size());
  for (const auto& c : clusters) {
    ClusterRef ref;
    ref.doc_id = doc.doc_id;
    ref.domain = doc.domain;
    for (std::size_t i : c.members) ref.mentions.push_back(doc.mentions[i].key());
    std::sort(ref.mentions.begin(), ref.mentions.end());
    ref.label = cluster_label(doc, c, acronyms, sing);
    out.push_back(std::move(ref));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Collapse

// Majority over typed votes; ties go to Process, Method, Material, Data in
// that order. No typed vote gives None.
inline ConceptType assign_type(const std::vector<ConceptType>& types) {
  std::map<ConceptType, std::size_t> votes;
  for (ConceptType t : types) {
    if (t != ConceptType::None && t != ConceptType::Mixed) ++votes[t];
  }
  ConceptType best = ConceptType::None;
  std::size_t best_votes = 0;
  for (ConceptType t : kConceptTypes) {  // priority order
    auto it = votes.find(t);
    if (it != votes.end() && it->second > best_votes) {
      best = t;
      best_votes = it->second;
    }
  }
  return best;
}

inline ConceptType assign_type(const Concept& c) {
  std::vector<ConceptType> types;
  for (const auto& cluster : c.member_clusters) {
    for (const auto& m : cluster.mentions) types.push_back(m.type);
  }
  return assign_type(types);
}

// Quotient of `clusters` under label equality (plus domain equality when
// collapsing in-domain). Clusters with an empty label stay on their own.
inline std::vector<Concept> collapse(std::vector<ClusterRef> clusters,
                                     CollapseScope scope) {
  std::sort(clusters.begin(), clusters.end());
  std::map<std::string, Concept> by_id;
  for (auto& c : clusters) {
    std::string domain_scope =
        scope == CollapseScope::InDomain ? c.domain : std::string(kAllDomains);
    std::string id;
    if (c.label.empty()) {
      // Unique per cluster; the first mention identifies it.
      std::string unique = "\x1e" + c.doc_id;
      if (!c.mentions.empty()) unique += "\x1e" + to_string(c.mentions.front());
      id = concept_id(unique, domain_scope);
    } else {
      id = concept_id(c.label, domain_scope);
    }
    auto [it, inserted] = by_id.try_emplace(id);
    Concept& entry = it->second;
    if (inserted) {
      entry.concept_id = id;
      entry.label = c.label;
      entry.domain_scope = domain_scope;
    } else if (entry.label != c.label || entry.domain_scope != domain_scope ||
               c.label.empty()) {
      throw std::logic_error("concept id collision between '" + entry.label +
                             "' and '" + c.label + "'");
    }
    entry.member_clusters.push_back(std::move(c));
  }
  std::vector<Concept> out;
  out.reserve(by_id.size());
  for (auto& [id, entry] : by_id) {
    entry.concept_type = assign_type(entry);
    out.push_back(std::move(entry));
  }
  return out;
}

inline std::vector<Edge> mention_edges(const std::vector<Concept>& concepts) {
  std::vector<Edge> edges;
  for (const Concept& c : concepts) {
    for (const auto& cluster : c.member_clusters) {
      for (const auto& m : cluster.mentions) {
        edges.push_back({cluster.doc_id, c.concept_id, m});
      }
    }
  }
  std::sort(edges.begin(), edges.end());
  return edges;
}

inline KnowledgeGraph populate(const Corpus& corpus, const PopulateOptions& options = {}) {
  ensure_valid(corpus);
  auto labeled = parallel_map(corpus.documents, options.jobs, [&](const Document& d) {
    return label_document(d, options);
  });
  std::vector<ClusterRef> clusters;
  for (auto& batch : labeled) {
    for (auto& c : batch) clusters.push_back(std::move(c));
  }
  KnowledgeGraph kg;
  for (const Document& d : corpus.documents) kg.papers[d.doc_id] = d.domain;
  kg.concepts = collapse(std::move(clusters), options.strategy.scope);
  kg.edges = mention_edges(kg.concepts);
  return kg;
}

// ---------------------------------------------------------------------------
// Statistics

inline constexpr std::string_view kMixColumn = "MIX";

struct KgColumnStats {
  std::size_t abstracts = 0;
  std::size_t mentions = 0;  // extractor mentions
  std::size_t coreferent_mentions = 0;
  std::size_t concepts = 0;
  std::map<ConceptType, std::size_t> concepts_by_type;

  // Fraction of mentions saved by collapsing: 1 - concepts / mentions.
  double reduction() const {
    if (mentions == 0) return 0.0;
    return 1.0 - static_cast<double>(concepts) / static_cast<double>(mentions);
  }
  bool operator==(const KgColumnStats&) const = default;
};

struct KgStats {
  std::vector<std::string> columns;  // domains in order, then MIX
  std::map<std::string, KgColumnStats> by_column;
  KgColumnStats total;
  std::size_t edges = 0;
};

// Concepts whose clusters span several domains are counted only under MIX.
inline KgStats kg_stats(const KnowledgeGraph& kg, const Corpus& corpus) {
  KgStats s;
  for (const Document& d : corpus.documents) {
    KgColumnStats& col = s.by_column[d.domain];
    ++col.abstracts;
    std::vector<bool> coreferent(d.mentions.size(), false);
    for (const auto& c : d.clusters) {
      if (c.size() < 2) continue;
      for (std::size_t i : c.members) coreferent[i] = true;
    }
    for (std::size_t i = 0; i < d.mentions.size(); ++i) {
      if (d.mentions[i].source == MentionSource::ConceptExtractor) ++col.mentions;
      if (coreferent[i]) ++col.coreferent_mentions;
    }
  }
  for (const auto& [doc, domain] : kg.papers) s.by_column[domain];
  for (const auto& [name, _] : s.by_column) s.columns.push_back(name);
  s.columns.emplace_back(kMixColumn);
  s.by_column[std::string(kMixColumn)];

  for (const Concept& c : kg.concepts) {
    auto domains = c.domains();
    std::string column =
        domains.size() == 1 ? *domains.begin() : std::string(kMixColumn);
    KgColumnStats& col = s.by_column[column];
    ++col.concepts;
    ++col.concepts_by_type[c.concept_type];
  }
  for (const auto& [name, col] : s.by_column) {
    s.total.abstracts += col.abstracts;
    s.total.mentions += col.mentions;
    s.total.coreferent_mentions += col.coreferent_mentions;
    s.total.concepts += col.concepts;
    for (const auto& [t, n] : col.concepts_by_type) s.total.concepts_by_type[t] += n;
  }
  s.edges = kg.edges.size();
  return s;
}

inline std::string format_kg_stats(const KgStats& s) {
  std::string out;
  auto row = [&](std::string_view name, auto cell) {
    out += name;
    for (const auto& c : s.columns) out += "\t" + cell(s.by_column.at(c), c == kMixColumn);
    out += "\t" + cell(s.total, false) + "\n";
  };
  auto count = [](std::size_t n) { return std::to_string(n); };
  for (const auto& c : s.columns) out += "\t" + c;
  out += "\tTotal\n";
  row("# abstracts", [&](const KgColumnStats& c, bool mix) {
    return mix ? std::string("-") : count(c.abstracts);
  });
  row("# mentions", [&](const KgColumnStats& c, bool mix) {
    return mix ? std::string("-") : count(c.mentions);
  });
  row("# coref. men.", [&](const KgColumnStats& c, bool mix) {
    return mix ? std::string("-") : count(c.coreferent_mentions);
  });
  row("KG concepts", [&](const KgColumnStats& c, bool) { return count(c.concepts); });
  bool untyped = s.total.concepts_by_type.count(ConceptType::None) > 0;
  for (ConceptType t : {ConceptType::Data, ConceptType::Material, ConceptType::Method,
                        ConceptType::Process, ConceptType::None}) {
    if (t == ConceptType::None && !untyped) continue;
    row("- " + std::string(to_string(t)), [&](const KgColumnStats& c, bool) {
      auto it = c.concepts_by_type.find(t);
      return count(it == c.concepts_by_type.end() ? 0 : it->second);
    });
  }
  row("reduction", [&](const KgColumnStats& c, bool mix) {
    if (mix) return std::string("-");
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.1f%%", 100.0 * c.reduction());
    return std::string(buf);
  });
  return out;
}

// ---------------------------------------------------------------------------
// Export

namespace detail {

inline std::string iri_escape(std::string_view s) {
  static constexpr std::string_view kReserved = "<>\"{}|^`\\%";
  std::string out;
  for (unsigned char c : s) {
    if (c <= 0x20 || c == 0x7F || kReserved.find(static_cast<char>(c)) != std::string_view::npos) {
      char buf[4];
      std::snprintf(buf, sizeof buf, "%%%02X", c);
      out += buf;
    } else {
      out += static_cast<char>(c);
    }
  }
  return out;
}

inline std::string literal_escape(std::string_view s) {
  std::string out = "\"";
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      case '\t': out += "\\t"; break;
      default: out += c;
    }
  }
  return out + "\"";
}

}  // namespace detail

// One triple per line in byte order: a `mentions` triple per edge (repeated
// mentions of a concept in one paper repeat the triple) plus label and type
// triples per concept.
inline std::string write_ntriples(const KnowledgeGraph& kg) {
  std::vector<std::string> lines;
  for (const Edge& e : kg.edges) {
    lines.push_back("<paper:" + detail::iri_escape(e.doc_id) + "> <rel:mentions> <concept:" +
                    e.concept_id + "> .");
  }
  for (const Concept& c : kg.concepts) {
    std::string subject = "<concept:" + c.concept_id + ">";
    lines.push_back(subject + " <rel:label> " + detail::literal_escape(c.label) + " .");
    lines.push_back(subject + " <rel:type> " +
                    detail::literal_escape(to_string(c.concept_type)) + " .");
  }
  std::sort(lines.begin(), lines.end());
  std::string out;
  for (const auto& l : lines) out += l + "\n";
  return out;
}

inline nlohmann::ordered_json mention_key_to_json(const MentionKey& k) {
  nlohmann::ordered_json j;
  j["doc_id"] = k.doc_id;
  j["start"] = k.start;
  j["end"] = k.end;
  j["type"] = std::string(to_string(k.type));
  return j;
}

inline MentionKey mention_key_from_json(const nlohmann::json& j, const std::string& source,
                                        std::size_t line) {
  MentionKey k;
  k.doc_id = detail::require_string(detail::require(j, "doc_id", "mention", source, line),
                                    "doc_id", source, line);
  k.start = detail::require_index(detail::require(j, "start", "mention", source, line),
                                  "start", source, line);
  k.end = detail::require_index(detail::require(j, "end", "mention", source, line), "end",
                                source, line);
  std::string type = detail::require_string(
      detail::require(j, "type", "mention", source, line), "type", source, line);
  auto t = parse_concept_type(type);
  if (!t || *t == ConceptType::Mixed) {
    throw ParseError(source, line, "unknown mention type '" + type + "'");
  }
  if (k.start >= k.end) throw ParseError(source, line, "mention has start >= end");
  k.type = *t;
  return k;
}

// Records: papers, then concepts (with their clusters), then edges.
inline std::string write_kg_jsonl(const KnowledgeGraph& kg) {
  using nlohmann::ordered_json;
  std::string out;
  auto emit = [&](const ordered_json& j) {
    out += j.dump(-1, ' ', false, nlohmann::json::error_handler_t::replace);
    out += '\n';
  };
  for (const auto& [doc, domain] : kg.papers) {
    ordered_json j;
    j["kind"] = "paper";
    j["doc_id"] = doc;
    j["domain"] = domain;
    emit(j);
  }
  for (const Concept& c : kg.concepts) {
    ordered_json j;
    j["kind"] = "concept";
    j["id"] = c.concept_id;
    j["label"] = c.label;
    j["scope"] = c.domain_scope;
    j["type"] = std::string(to_string(c.concept_type));
    j["clusters"] = ordered_json::array();
    for (const auto& cl : c.member_clusters) {
      ordered_json jc;
      jc["doc_id"] = cl.doc_id;
      jc["domain"] = cl.domain;
      jc["label"] = cl.label;
      jc["mentions"] = ordered_json::array();
      for (const auto& m : cl.mentions) jc["mentions"].push_back(mention_key_to_json(m));
      j["clusters"].push_back(std::move(jc));
    }
    emit(j);
  }
  for (const Edge& e : kg.edges) {
    ordered_json j;
    j["kind"] = "edge";
    j["paper"] = e.doc_id;
    j["concept"] = e.concept_id;
    j["mention"] = mention_key_to_json(e.mention);
    emit(j);
  }
  return out;
}

inline KnowledgeGraph read_kg_jsonl(std::string_view data, const std::string& source = "") {
  KnowledgeGraph kg;
  std::set<std::string> concept_ids;
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
    using detail::require;
    using detail::require_string;
    std::string kind = require_string(require(j, "kind", "record", source, ln), "kind",
                                      source, ln);
    if (kind == "paper") {
      kg.papers[require_string(require(j, "doc_id", "paper", source, ln), "doc_id", source,
                               ln)] =
          require_string(require(j, "domain", "paper", source, ln), "domain", source, ln);
    } else if (kind == "concept") {
      Concept c;
      c.concept_id = require_string(require(j, "id", "concept", source, ln), "id", source, ln);
      c.label = require_string(require(j, "label", "concept", source, ln), "label", source, ln);
      c.domain_scope =
          require_string(require(j, "scope", "concept", source, ln), "scope", source, ln);
      std::string type =
          require_string(require(j, "type", "concept", source, ln), "type", source, ln);
      auto t = parse_concept_type(type);
      if (!t) throw ParseError(source, ln, "unknown concept type '" + type + "'");
      c.concept_type = *t;
      const auto& clusters = require(j, "clusters", "concept", source, ln);
      if (!clusters.is_array()) throw ParseError(source, ln, "clusters must be an array");
      for (const auto& jc : clusters) {
        ClusterRef ref;
        ref.doc_id =
            require_string(require(jc, "doc_id", "cluster", source, ln), "doc_id", source, ln);
        ref.domain =
            require_string(require(jc, "domain", "cluster", source, ln), "domain", source, ln);
        ref.label =
            require_string(require(jc, "label", "cluster", source, ln), "label", source, ln);
        const auto& ms = require(jc, "mentions", "cluster", source, ln);
        if (!ms.is_array()) throw ParseError(source, ln, "mentions must be an array");
        for (const auto& jm : ms) ref.mentions.push_back(mention_key_from_json(jm, source, ln));
        c.member_clusters.push_back(std::move(ref));
      }
      if (!concept_ids.insert(c.concept_id).second) {
        throw ParseError(source, ln, "duplicate concept id " + c.concept_id);
      }
      kg.concepts.push_back(std::move(c));
    } else if (kind == "edge") {
      Edge e;
      e.doc_id = require_string(require(j, "paper", "edge", source, ln), "paper", source, ln);
      e.concept_id =
          require_string(require(j, "concept", "edge", source, ln), "concept", source, ln);
      e.mention = mention_key_from_json(require(j, "mention", "edge", source, ln), source, ln);
      kg.edges.push_back(std::move(e));
    } else {
      throw ParseError(source, ln, "unknown record kind '" + kind + "'");
    }
  }
  std::sort(kg.concepts.begin(), kg.concepts.end(),
            [](const Concept& a, const Concept& b) { return a.concept_id < b.concept_id; });
  std::sort(kg.edges.begin(), kg.edges.end());
  for (const Edge& e : kg.edges) {
    if (!kg.papers.count(e.doc_id) || !kg.find(e.concept_id)) {
      throw ParseError(source, 0, "edge " + e.doc_id + " -> " + e.concept_id +
                                      " references an unknown endpoint");
    }
  }
  return kg;
}

}  // namespace stmkg

#endif  // STMKG_KGPOP_HPP_
