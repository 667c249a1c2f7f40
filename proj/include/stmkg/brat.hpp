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

#ifndef STMKG_BRAT_HPP_
#define STMKG_BRAT_HPP_

#include <map>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "stmkg/corefdoc.hpp"
#include "stmkg/parse_error.hpp"
#include "stmkg/strings.hpp"
#include "stmkg/union_find.hpp"
#include "stmkg/utf8.hpp"

// BRAT standoff (.txt/.ann) reading and writing.
//
// Accepted records:
//   T<id>\t<Type> <start> <end>\t<surface>
//   R<id>\t<label> Arg1:T<i> Arg2:T<j>
//   *\t<label> T<i> T<j> ...
//   #<id>\t...                      (annotator notes, ignored)
// Coreference relations and equivalence sets are unioned into clusters.
namespace stmkg {

struct BratOptions {
  std::string relation_label = "Coreference";
  // Entity labels that denote mentions added only by coreference annotation.
  std::set<std::string> coref_only_labels = {"None"};
};

namespace detail {

// BRAT stores surfaces on one line; newlines inside a span become spaces.
inline std::string flatten_surface(std::string_view s) {
  std::string out(s);
  for (char& c : out) {
    if (c == '\n' || c == '\r' || c == '\t') c = ' ';
  }
  return out;
}

}  // namespace detail

inline Document parse_brat(std::string_view doc_id, std::string_view text,
                           std::string_view ann, std::string_view domain,
                           const BratOptions& options = {},
                           const std::string& source_name = "") {
  Document doc;
  doc.doc_id = std::string(doc_id);
  doc.domain = std::string(domain);
  doc.text = std::string(text);
  utf8::TextIndex index(doc.text);

  auto fail = [&](std::size_t line, const std::string& msg) -> ParseError {
    return ParseError(source_name.empty() ? std::string(doc_id) + ".ann"
                                          : source_name,
                      line, msg);
  };

  std::map<std::string, std::size_t, std::less<>> by_id;
  std::set<MentionKey> keys;
  struct Link {
    std::size_t line;
    std::vector<std::string> ids;
  };
  std::vector<Link> links;

  auto all_lines = strings::lines(ann);
  for (std::size_t ln = 0; ln < all_lines.size(); ++ln) {
    std::size_t line_no = ln + 1;
    std::string_view line = all_lines[ln];
    if (strings::trim(line).empty()) continue;
    auto fields = strings::split(line, '\t');
    std::string_view id = fields[0];

    if (id.empty()) throw fail(line_no, "missing record id");
    switch (id.front()) {
      case '#':
        continue;
      case 'T': {
        if (fields.size() != 3) {
          throw fail(line_no, "entity record needs 3 tab-separated fields");
        }
        std::string_view spec = fields[1];
        if (spec.find(';') != std::string_view::npos) {
          throw fail(line_no, "discontinuous span not supported: '" +
                                  std::string(spec) + "'");
        }
        auto parts = strings::split_ws(spec);
        if (parts.size() != 3) {
          throw fail(line_no, "entity record must be '<Type> <start> <end>'");
        }
        auto start = strings::parse_size(parts[1]);
        auto end = strings::parse_size(parts[2]);
        if (!start || !end) throw fail(line_no, "offsets must be integers");
        if (*end <= *start) throw fail(line_no, "offset order violated");
        if (*end > index.size()) {
          throw fail(line_no, "offset out of range: " + std::to_string(*end) +
                                  " > " + std::to_string(index.size()));
        }
        Mention m;
        m.doc_id = doc.doc_id;
        m.start = *start;
        m.end = *end;
        std::string label(parts[0]);
        if (options.coref_only_labels.count(label)) {
          m.concept_type = ConceptType::None;
          m.source = MentionSource::CorefOnly;
        } else {
          auto type = parse_concept_type(label);
          if (!type || *type == ConceptType::None || *type == ConceptType::Mixed) {
            throw fail(line_no, "unknown entity type '" + label + "'");
          }
          m.concept_type = *type;
          m.source = MentionSource::ConceptExtractor;
        }
        m.surface = std::string(index.slice(m.start, m.end));
        if (detail::flatten_surface(m.surface) != fields[2]) {
          throw fail(line_no, "surface mismatch: ann has '" +
                                  std::string(fields[2]) + "', text has '" +
                                  detail::flatten_surface(m.surface) + "'");
        }
        if (!keys.insert(m.key()).second) {
          throw fail(line_no, "duplicate mention " + to_string(m.key()));
        }
        if (!by_id.emplace(std::string(id), doc.mentions.size()).second) {
          throw fail(line_no, "duplicate record id '" + std::string(id) + "'");
        }
        doc.mentions.push_back(std::move(m));
        break;
      }
      case 'R': {
        if (fields.size() < 2 || fields.size() > 3) {
          throw fail(line_no, "relation record needs 2 tab-separated fields");
        }
        auto parts = strings::split_ws(fields[1]);
        if (parts.size() != 3) {
          throw fail(line_no, "relation record must be '<label> Arg1:<id> Arg2:<id>'");
        }
        if (parts[0] != options.relation_label) {
          throw fail(line_no, "unsupported relation label '" +
                                  std::string(parts[0]) + "'");
        }
        Link link{line_no, {}};
        for (std::size_t i = 1; i < 3; ++i) {
          auto colon = parts[i].find(':');
          if (colon == std::string_view::npos) {
            throw fail(line_no, "relation argument without role: '" +
                                    std::string(parts[i]) + "'");
          }
          link.ids.emplace_back(parts[i].substr(colon + 1));
        }
        links.push_back(std::move(link));
        break;
      }
      case '*': {
        if (fields.size() != 2) {
          throw fail(line_no, "equivalence record needs 2 tab-separated fields");
        }
        auto parts = strings::split_ws(fields[1]);
        if (parts.size() < 3) {
          throw fail(line_no, "equivalence record needs a label and >= 2 members");
        }
        if (parts[0] != options.relation_label) {
          throw fail(line_no, "unsupported equivalence label '" +
                                  std::string(parts[0]) + "'");
        }
        Link link{line_no, {}};
        for (std::size_t i = 1; i < parts.size(); ++i) {
          link.ids.emplace_back(parts[i]);
        }
        links.push_back(std::move(link));
        break;
      }
      default:
        throw fail(line_no, "unsupported record type '" + std::string(id) + "'");
    }
  }

  UnionFind uf(doc.mentions.size());
  for (const Link& link : links) {
    std::vector<std::size_t> members;
    for (const std::string& ref : link.ids) {
      auto it = by_id.find(ref);
      if (it == by_id.end()) {
        throw fail(link.line, "reference to unknown entity '" + ref + "'");
      }
      members.push_back(it->second);
    }
    for (std::size_t i = 1; i < members.size(); ++i) uf.unite(members[0], members[i]);
  }
  for (auto& group : uf.groups()) {
    if (group.size() >= 2) {
      doc.clusters.push_back({std::move(group)});
    }
  }
  return doc;
}

struct BratFiles {
  std::string text;
  std::string ann;
};

// Entities as T1..Tn in mention order; clusters of size >= 2 as equivalence
// records. Singleton clusters are implied and not written.
inline BratFiles write_brat(const Document& doc, const BratOptions& options = {}) {
  ensure_valid(doc);
  BratFiles out;
  out.text = doc.text;
  std::string coref_only_label = options.coref_only_labels.empty()
                                     ? std::string("None")
                                     : *options.coref_only_labels.begin();
  for (std::size_t i = 0; i < doc.mentions.size(); ++i) {
    const Mention& m = doc.mentions[i];
    std::string label = m.source == MentionSource::CorefOnly
                            ? coref_only_label
                            : std::string(to_string(m.concept_type));
    out.ann += "T" + std::to_string(i + 1) + "\t" + label + " " +
               std::to_string(m.start) + " " + std::to_string(m.end) + "\t" +
               detail::flatten_surface(m.surface) + "\n";
  }
  for (const auto& c : doc.clusters) {
    if (c.members.size() < 2) continue;
    std::vector<std::size_t> members = c.members;
    std::sort(members.begin(), members.end());
    out.ann += "*\t" + options.relation_label;
    for (std::size_t idx : members) out.ann += " T" + std::to_string(idx + 1);
    out.ann += "\n";
  }
  return out;
}

}  // namespace stmkg

#endif  // STMKG_BRAT_HPP_
