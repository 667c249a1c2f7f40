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

#ifndef STMKG_BASELINE_HPP_
#define STMKG_BASELINE_HPP_

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "stmkg/corefdoc.hpp"
#include "stmkg/normalize.hpp"
#include "stmkg/parallel.hpp"
#include "stmkg/strings.hpp"
#include "stmkg/utf8.hpp"

// String-match coreference: mentions of one document with equal normalized
// labels form a cluster. Pronouns are never clustered.
namespace stmkg {

inline const std::set<std::string, std::less<>>& baseline_pronouns() {
  static const std::set<std::string, std::less<>> words = {
      "it", "they", "them", "this", "that", "these", "those", "its", "their"};
  return words;
}

inline bool is_pronoun(std::string_view surface) {
  return baseline_pronouns().count(utf8::to_lower(strings::trim(surface))) > 0;
}

// Partition of the document's non-pronoun mentions (singletons included),
// ordered by first member.
inline std::vector<CoreferenceCluster> resolve(
    const Document& doc, const Singularizer& singularizer = Singularizer::builtin()) {
  AcronymMap acronyms = build_acronym_map(doc.text);
  std::map<Label, std::vector<std::size_t>> by_label;
  std::vector<CoreferenceCluster> out;
  std::vector<Label> labels(doc.mentions.size());
  for (std::size_t i = 0; i < doc.mentions.size(); ++i) {
    if (is_pronoun(doc.mentions[i].surface)) continue;
    labels[i] = normalize_mention(doc.mentions[i].surface, acronyms, singularizer);
    if (labels[i].empty()) {
      out.push_back({{i}});
    } else {
      by_label[labels[i]].push_back(i);
    }
  }
  for (auto& [label, members] : by_label) out.push_back({std::move(members)});
  // Mentions are not necessarily stored in text order.
  auto first = [&](const CoreferenceCluster& c) {
    std::size_t best = c.members.front();
    for (std::size_t i : c.members) {
      if (doc.mentions[i].key() < doc.mentions[best].key()) best = i;
    }
    return doc.mentions[best].key();
  };
  std::sort(out.begin(), out.end(), [&](const auto& a, const auto& b) {
    return first(a) < first(b);
  });
  return out;
}

// The document with its clusters replaced by the baseline's multi-mention
// clusters.
inline Document apply_baseline(const Document& doc,
                               const Singularizer& singularizer = Singularizer::builtin()) {
  Document out = doc;
  out.clusters.clear();
  for (auto& c : resolve(doc, singularizer)) {
    if (c.size() >= 2) out.clusters.push_back(std::move(c));
  }
  return out;
}

inline Corpus apply_baseline(const Corpus& corpus, int jobs = 1,
                             const Singularizer& singularizer = Singularizer::builtin()) {
  Corpus out;
  out.documents = parallel_map(corpus.documents, jobs, [&](const Document& d) {
    return apply_baseline(d, singularizer);
  });
  return out;
}

}  // namespace stmkg

#endif  // STMKG_BASELINE_HPP_
