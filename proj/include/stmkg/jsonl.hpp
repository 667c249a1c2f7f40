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

#ifndef STMKG_JSONL_HPP_
#define STMKG_JSONL_HPP_

#include <string>
#include <string_view>
#include <utility>

#include "json.hpp"

#include "stmkg/corefdoc.hpp"
#include "stmkg/parse_error.hpp"
#include "stmkg/strings.hpp"
#include "stmkg/utf8.hpp"

// JSONL corpus interchange, one document per line:
//   {"doc_id": ..., "domain": ..., "text": ...,
//    "mentions": [{"start", "end", "type", "source"}],
//    "clusters": [[mention index, ...]],
//    "entity_links": [{"mention": index, "entity": ...}]}   (optional)
namespace stmkg {

namespace detail {

using ojson = nlohmann::ordered_json;

template <class Json>
const Json& require(const Json& obj, const char* field, const char* what,
                    const std::string& source, std::size_t line) {
  if (!obj.is_object() || !obj.contains(field)) {
    throw ParseError(source, line, std::string(what) + " is missing field '" +
                                       field + "'");
  }
  return obj.at(field);
}

template <class Json>
std::size_t require_index(const Json& v, const char* what,
                          const std::string& source, std::size_t line) {
  if (!v.is_number_unsigned()) {
    throw ParseError(source, line, std::string(what) +
                                       " must be a non-negative integer, got " +
                                       v.dump());
  }
  return v.template get<std::size_t>();
}

template <class Json>
std::string require_string(const Json& v, const char* what,
                           const std::string& source, std::size_t line) {
  if (!v.is_string()) {
    throw ParseError(source, line, std::string(what) + " must be a string");
  }
  return v.template get<std::string>();
}

}  // namespace detail

inline nlohmann::ordered_json document_to_json(const Document& doc) {
  detail::ojson j;
  j["doc_id"] = doc.doc_id;
  j["domain"] = doc.domain;
  j["text"] = doc.text;
  j["mentions"] = detail::ojson::array();
  for (const Mention& m : doc.mentions) {
    detail::ojson jm;
    jm["start"] = m.start;
    jm["end"] = m.end;
    jm["type"] = std::string(to_string(m.concept_type));
    jm["source"] = std::string(to_string(m.source));
    j["mentions"].push_back(std::move(jm));
  }
  j["clusters"] = detail::ojson::array();
  for (const auto& c : doc.clusters) j["clusters"].push_back(c.members);
  if (!doc.entity_links.empty()) {
    j["entity_links"] = detail::ojson::array();
    for (const auto& [idx, entity] : doc.entity_links) {
      j["entity_links"].push_back({{"mention", idx}, {"entity", entity}});
    }
  }
  return j;
}

inline Document document_from_json(const nlohmann::json& j,
                                   const std::string& source = "",
                                   std::size_t line = 0) {
  using detail::require;
  using detail::require_index;
  using detail::require_string;
  if (!j.is_object()) throw ParseError(source, line, "document must be a JSON object");
  Document doc;
  doc.doc_id = require_string(require(j, "doc_id", "document", source, line),
                              "doc_id", source, line);
  if (j.contains("domain")) {
    doc.domain = require_string(j.at("domain"), "domain", source, line);
  }
  doc.text = require_string(require(j, "text", "document", source, line), "text",
                            source, line);
  utf8::TextIndex index(doc.text);

  const auto& mentions = require(j, "mentions", "document", source, line);
  if (!mentions.is_array()) throw ParseError(source, line, "mentions must be an array");
  for (const auto& jm : mentions) {
    Mention m;
    m.doc_id = doc.doc_id;
    m.start = require_index(require(jm, "start", "mention", source, line),
                            "mention start", source, line);
    m.end = require_index(require(jm, "end", "mention", source, line),
                          "mention end", source, line);
    std::string type = require_string(require(jm, "type", "mention", source, line),
                                      "mention type", source, line);
    auto parsed = parse_concept_type(type);
    if (!parsed || *parsed == ConceptType::Mixed) {
      throw ParseError(source, line, "unknown concept type '" + type + "'");
    }
    m.concept_type = *parsed;
    if (jm.contains("source")) {
      std::string src = require_string(jm.at("source"), "mention source", source, line);
      auto ps = parse_mention_source(src);
      if (!ps) throw ParseError(source, line, "unknown mention source '" + src + "'");
      m.source = *ps;
    } else {
      m.source = m.concept_type == ConceptType::None ? MentionSource::CorefOnly
                                                     : MentionSource::ConceptExtractor;
    }
    if (m.end <= m.start || m.end > index.size()) {
      throw ParseError(source, line,
                       "mention offsets [" + std::to_string(m.start) + "," +
                           std::to_string(m.end) + ") invalid for text of " +
                           std::to_string(index.size()) + " characters");
    }
    m.surface = std::string(index.slice(m.start, m.end));
    doc.mentions.push_back(std::move(m));
  }

  const auto& clusters = require(j, "clusters", "document", source, line);
  if (!clusters.is_array()) throw ParseError(source, line, "clusters must be an array");
  for (const auto& jc : clusters) {
    if (!jc.is_array()) throw ParseError(source, line, "cluster must be an array");
    CoreferenceCluster c;
    for (const auto& v : jc) {
      std::size_t idx = require_index(v, "cluster member", source, line);
      if (idx >= doc.mentions.size()) {
        throw ParseError(source, line, "cluster member " + std::to_string(idx) +
                                           " out of range (" +
                                           std::to_string(doc.mentions.size()) +
                                           " mentions)");
      }
      c.members.push_back(idx);
    }
    doc.clusters.push_back(std::move(c));
  }

  if (j.contains("entity_links")) {
    const auto& links = j.at("entity_links");
    if (!links.is_array()) throw ParseError(source, line, "entity_links must be an array");
    for (const auto& jl : links) {
      std::size_t idx = require_index(require(jl, "mention", "entity link", source, line),
                                      "entity link mention", source, line);
      if (idx >= doc.mentions.size()) {
        throw ParseError(source, line, "entity link mention " + std::to_string(idx) +
                                           " out of range");
      }
      doc.entity_links[idx] = require_string(
          require(jl, "entity", "entity link", source, line), "entity", source, line);
    }
  }
  return doc;
}

inline std::string write_jsonl(const Corpus& corpus) {
  std::string out;
  for (const Document& doc : corpus.documents) {
    out += document_to_json(doc).dump(-1, ' ', false,
                                      nlohmann::json::error_handler_t::replace);
    out += '\n';
  }
  return out;
}

inline Corpus read_jsonl(std::string_view data, const std::string& source = "") {
  Corpus corpus;
  auto all_lines = strings::lines(data);
  for (std::size_t ln = 0; ln < all_lines.size(); ++ln) {
    std::string_view line = all_lines[ln];
    if (strings::trim(line).empty()) continue;
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(line);
    } catch (const nlohmann::json::parse_error& e) {
      throw ParseError(source, ln + 1, std::string("invalid JSON: ") + e.what());
    }
    corpus.documents.push_back(document_from_json(j, source, ln + 1));
  }
  return corpus;
}

}  // namespace stmkg

#endif  // STMKG_JSONL_HPP_
