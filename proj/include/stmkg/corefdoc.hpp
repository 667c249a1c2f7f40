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

#ifndef STMKG_COREFDOC_HPP_
#define STMKG_COREFDOC_HPP_

#include <algorithm>
#include <compare>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <tuple>
#include <utility>
#include <vector>

#include "stmkg/utf8.hpp"

// Data model: documents, typed mentions, coreference clusters and corpora.
namespace stmkg {

enum class ConceptType { Process, Method, Material, Data, None, Mixed };

inline constexpr ConceptType kConceptTypes[] = {
    ConceptType::Process, ConceptType::Method, ConceptType::Material,
    ConceptType::Data};

inline std::string_view to_string(ConceptType t) {
  switch (t) {
    case ConceptType::Process: return "Process";
    case ConceptType::Method: return "Method";
    case ConceptType::Material: return "Material";
    case ConceptType::Data: return "Data";
    case ConceptType::None: return "None";
    case ConceptType::Mixed: return "Mixed";
  }
  return "None";
}

// Case-insensitive.
inline std::optional<ConceptType> parse_concept_type(std::string_view s) {
  std::string lower = utf8::to_lower(s);
  if (lower == "process") return ConceptType::Process;
  if (lower == "method") return ConceptType::Method;
  if (lower == "material") return ConceptType::Material;
  if (lower == "data") return ConceptType::Data;
  if (lower == "none") return ConceptType::None;
  if (lower == "mixed") return ConceptType::Mixed;
  return std::nullopt;
}

enum class MentionSource { ConceptExtractor, CorefOnly };

inline std::string_view to_string(MentionSource s) {
  return s == MentionSource::CorefOnly ? "coref_only" : "concept_extractor";
}

inline std::optional<MentionSource> parse_mention_source(std::string_view s) {
  if (s == "concept_extractor") return MentionSource::ConceptExtractor;
  if (s == "coref_only") return MentionSource::CorefOnly;
  return std::nullopt;
}

// Identity of a mention within a corpus.
struct MentionKey {
  std::string doc_id;
  std::size_t start = 0;
  std::size_t end = 0;
  ConceptType type = ConceptType::None;

  auto operator<=>(const MentionKey&) const = default;
  bool operator==(const MentionKey&) const = default;
};

inline std::string to_string(const MentionKey& k) {
  return k.doc_id + "[" + std::to_string(k.start) + "," + std::to_string(k.end) +
         ")/" + std::string(to_string(k.type));
}

struct Mention {
  std::string doc_id;
  std::size_t start = 0;  // inclusive, in Unicode scalar values
  std::size_t end = 0;    // exclusive
  ConceptType concept_type = ConceptType::None;
  std::string surface;
  MentionSource source = MentionSource::ConceptExtractor;

  MentionKey key() const { return {doc_id, start, end, concept_type}; }
  bool operator==(const Mention&) const = default;
};

// Members are indices into the owning Document's mention list.
struct CoreferenceCluster {
  std::vector<std::size_t> members;

  std::size_t size() const { return members.size(); }
  bool is_singleton() const { return members.size() == 1; }
  bool operator==(const CoreferenceCluster&) const = default;
};

struct Document {
  std::string doc_id;
  std::string domain;
  std::string text;
  std::vector<Mention> mentions;
  std::vector<CoreferenceCluster> clusters;
  // Mention index -> entity identifier (e.g. a Wikipedia page title).
  std::map<std::size_t, std::string> entity_links;

  bool operator==(const Document&) const = default;
};

struct Corpus {
  std::vector<Document> documents;

  bool operator==(const Corpus&) const = default;
};

// Builds a mention whose surface is sliced from `text`.
inline Mention make_mention(const Document& doc, std::size_t start,
                            std::size_t end, ConceptType type,
                            MentionSource source = MentionSource::ConceptExtractor) {
  utf8::TextIndex index(doc.text);
  Mention m;
  m.doc_id = doc.doc_id;
  m.start = start;
  m.end = end;
  m.concept_type = type;
  m.surface = std::string(index.slice(start, end));
  m.source = source;
  return m;
}

// ---------------------------------------------------------------------------
// Validation

struct Violation {
  std::string doc_id;
  std::optional<std::pair<std::size_t, std::size_t>> span;
  std::string rule;

  std::string describe() const {
    std::string out = rule + " @ " + doc_id;
    if (span) {
      out += "[" + std::to_string(span->first) + "," +
             std::to_string(span->second) + ")";
    }
    return out;
  }
  bool operator==(const Violation&) const = default;
};

class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(std::vector<Violation> violations)
      : std::runtime_error(summarize(violations)),
        violations_(std::move(violations)) {}

  const std::vector<Violation>& violations() const { return violations_; }

 private:
  static std::string summarize(const std::vector<Violation>& v) {
    std::string out = std::to_string(v.size()) + " validation violation(s)";
    if (!v.empty()) out += ": " + v.front().describe();
    return out;
  }
  std::vector<Violation> violations_;
};

inline std::vector<Violation> validate(const Document& doc) {
  std::vector<Violation> out;
  utf8::TextIndex index(doc.text);
  auto span_of = [](const Mention& m) {
    return std::make_optional(std::make_pair(m.start, m.end));
  };

  std::set<MentionKey> keys;
  for (const Mention& m : doc.mentions) {
    if (m.doc_id != doc.doc_id) {
      out.push_back({doc.doc_id, span_of(m), "mention doc_id mismatch"});
    }
    if (m.end <= m.start) {
      out.push_back({doc.doc_id, span_of(m), "offset order violated"});
    } else if (m.end > index.size()) {
      out.push_back({doc.doc_id, span_of(m), "offset out of range"});
    } else if (index.slice(m.start, m.end) != m.surface) {
      out.push_back({doc.doc_id, span_of(m), "surface mismatch"});
    }
    if (m.concept_type == ConceptType::Mixed) {
      out.push_back({doc.doc_id, span_of(m), "mixed type on mention"});
    } else if ((m.concept_type == ConceptType::None) !=
               (m.source == MentionSource::CorefOnly)) {
      out.push_back({doc.doc_id, span_of(m), "type/source mismatch"});
    }
    if (!keys.insert(m.key()).second) {
      out.push_back({doc.doc_id, span_of(m), "duplicate mention"});
    }
  }

  std::vector<int> owner(doc.mentions.size(), -1);
  for (std::size_t c = 0; c < doc.clusters.size(); ++c) {
    const auto& cluster = doc.clusters[c];
    if (cluster.members.empty()) {
      out.push_back({doc.doc_id, std::nullopt,
                     "empty cluster #" + std::to_string(c)});
    }
    std::set<std::size_t> seen;
    for (std::size_t idx : cluster.members) {
      if (idx >= doc.mentions.size()) {
        out.push_back({doc.doc_id, std::nullopt,
                       "cluster #" + std::to_string(c) +
                           " references unknown mention " + std::to_string(idx)});
        continue;
      }
      if (!seen.insert(idx).second) {
        out.push_back({doc.doc_id, span_of(doc.mentions[idx]),
                       "repeated cluster member"});
        continue;
      }
      if (owner[idx] >= 0) {
        out.push_back({doc.doc_id, span_of(doc.mentions[idx]),
                       "overlapping clusters"});
      } else {
        owner[idx] = static_cast<int>(c);
      }
    }
  }

  for (const auto& [idx, entity] : doc.entity_links) {
    if (idx >= doc.mentions.size()) {
      out.push_back({doc.doc_id, std::nullopt,
                     "entity link references unknown mention " +
                         std::to_string(idx)});
    } else if (entity.empty()) {
      out.push_back({doc.doc_id, span_of(doc.mentions[idx]), "empty entity link"});
    }
  }
  return out;
}

inline std::vector<Violation> validate(const Corpus& corpus) {
  std::vector<Violation> out;
  std::set<std::string> ids;
  for (const Document& doc : corpus.documents) {
    if (!ids.insert(doc.doc_id).second) {
      out.push_back({doc.doc_id, std::nullopt, "duplicate doc_id"});
    }
    auto v = validate(doc);
    out.insert(out.end(), v.begin(), v.end());
  }
  return out;
}

template <class T>
void ensure_valid(const T& value) {
  auto v = validate(value);
  if (!v.empty()) throw ValidationError(std::move(v));
}

// ---------------------------------------------------------------------------
// Clusters

// Annotated clusters followed by one singleton per uncovered mention, in
// mention order. The result partitions doc.mentions.
inline std::vector<CoreferenceCluster> all_clusters(const Document& doc) {
  ensure_valid(doc);
  std::vector<CoreferenceCluster> out;
  std::vector<bool> covered(doc.mentions.size(), false);
  for (const auto& c : doc.clusters) {
    out.push_back(c);
    for (std::size_t idx : c.members) covered[idx] = true;
  }
  for (std::size_t i = 0; i < doc.mentions.size(); ++i) {
    if (!covered[i]) out.push_back({{i}});
  }
  return out;
}

// Unanimous non-None type, Mixed on disagreement, None if no member is typed.
inline ConceptType cluster_type(const Document& doc,
                                const CoreferenceCluster& cluster) {
  std::optional<ConceptType> seen;
  for (std::size_t idx : cluster.members) {
    ConceptType t = doc.mentions.at(idx).concept_type;
    if (t == ConceptType::None) continue;
    if (!seen) {
      seen = t;
    } else if (*seen != t) {
      return ConceptType::Mixed;
    }
  }
  return seen.value_or(ConceptType::None);
}

// Mentions sorted by key, clusters re-indexed with members ascending, size-1
// clusters dropped (they are implied) and clusters ordered by first member.
// Two documents are equal "up to record ordering" iff their canonical forms are.
inline Document canonical(const Document& doc) {
  std::vector<std::size_t> order(doc.mentions.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return doc.mentions[a].key() < doc.mentions[b].key();
  });
  std::vector<std::size_t> new_index(order.size());
  Document out;
  out.doc_id = doc.doc_id;
  out.domain = doc.domain;
  out.text = doc.text;
  for (std::size_t i = 0; i < order.size(); ++i) {
    new_index[order[i]] = i;
    out.mentions.push_back(doc.mentions[order[i]]);
  }
  for (const auto& c : doc.clusters) {
    if (c.members.size() < 2) continue;
    CoreferenceCluster nc;
    for (std::size_t idx : c.members) nc.members.push_back(new_index.at(idx));
    std::sort(nc.members.begin(), nc.members.end());
    out.clusters.push_back(std::move(nc));
  }
  std::sort(out.clusters.begin(), out.clusters.end(),
            [](const auto& a, const auto& b) { return a.members < b.members; });
  for (const auto& [idx, entity] : doc.entity_links) {
    out.entity_links[new_index.at(idx)] = entity;
  }
  return out;
}

inline Corpus canonical(const Corpus& corpus) {
  Corpus out;
  for (const auto& d : corpus.documents) out.documents.push_back(canonical(d));
  std::sort(out.documents.begin(), out.documents.end(),
            [](const auto& a, const auto& b) { return a.doc_id < b.doc_id; });
  return out;
}

// ---------------------------------------------------------------------------
// Corpus statistics

enum class GroupBy { ConceptType, Domain };

struct ClusterCounts {
  // Mentions found by the concept extractor; coref-only mentions are tallied
  // separately so that `mentions` matches the usual corpus figures.
  std::size_t mentions = 0;
  std::size_t coref_only_mentions = 0;
  std::size_t coreferent_mentions = 0;  // members of clusters of size >= 2
  std::size_t coreference_clusters = 0;
  std::size_t singleton_clusters = 0;

  std::size_t overall_clusters() const {
    return coreference_clusters + singleton_clusters;
  }
  std::size_t all_mentions() const { return mentions + coref_only_mentions; }

  ClusterCounts& operator+=(const ClusterCounts& o) {
    mentions += o.mentions;
    coref_only_mentions += o.coref_only_mentions;
    coreferent_mentions += o.coreferent_mentions;
    coreference_clusters += o.coreference_clusters;
    singleton_clusters += o.singleton_clusters;
    return *this;
  }
  bool operator==(const ClusterCounts&) const = default;
};

struct StatsTable {
  GroupBy group_by = GroupBy::Domain;
  std::vector<std::string> groups;  // column order
  std::map<std::string, ClusterCounts> rows;
  ClusterCounts total;
};

// Per-group counts. Under concept-type grouping mentions are counted by their
// own type and clusters by cluster_type(); under domain grouping both follow
// the document's domain.
inline StatsTable corpus_stats(const Corpus& corpus, GroupBy group_by) {
  StatsTable table;
  table.group_by = group_by;
  if (group_by == GroupBy::ConceptType) {
    for (auto t : {ConceptType::Data, ConceptType::Material, ConceptType::Method,
                   ConceptType::Process, ConceptType::Mixed, ConceptType::None}) {
      table.groups.emplace_back(t == ConceptType::Mixed  ? "MIXED"
                                : t == ConceptType::None ? "NONE"
                                                         : to_string(t));
      table.rows[table.groups.back()];
    }
  }
  auto type_group = [](ConceptType t) -> std::string {
    if (t == ConceptType::Mixed) return "MIXED";
    if (t == ConceptType::None) return "NONE";
    return std::string(to_string(t));
  };

  for (const Document& doc : corpus.documents) {
    auto clusters = all_clusters(doc);
    std::vector<bool> coreferent(doc.mentions.size(), false);
    for (const auto& c : clusters) {
      if (c.size() >= 2) {
        for (std::size_t idx : c.members) coreferent[idx] = true;
      }
    }
    for (std::size_t i = 0; i < doc.mentions.size(); ++i) {
      const Mention& m = doc.mentions[i];
      ClusterCounts& row = table.rows[group_by == GroupBy::Domain
                                          ? doc.domain
                                          : type_group(m.concept_type)];
      if (m.source == MentionSource::CorefOnly) {
        ++row.coref_only_mentions;
      } else {
        ++row.mentions;
      }
      if (coreferent[i]) ++row.coreferent_mentions;
    }
    if (group_by == GroupBy::Domain) table.rows[doc.domain];
    for (const auto& c : clusters) {
      ClusterCounts& row = table.rows[group_by == GroupBy::Domain
                                          ? doc.domain
                                          : type_group(cluster_type(doc, c))];
      if (c.size() >= 2) {
        ++row.coreference_clusters;
      } else {
        ++row.singleton_clusters;
      }
    }
  }
  if (group_by == GroupBy::Domain) {
    for (const auto& [g, _] : table.rows) table.groups.push_back(g);
  }
  for (const auto& [_, row] : table.rows) table.total += row;
  return table;
}

}  // namespace stmkg

#endif  // STMKG_COREFDOC_HPP_
