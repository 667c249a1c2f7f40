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

#ifndef STMKG_COREF_COLUMNS_HPP_
#define STMKG_COREF_COLUMNS_HPP_

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "stmkg/corefdoc.hpp"
#include "stmkg/parse_error.hpp"
#include "stmkg/strings.hpp"
#include "stmkg/utf8.hpp"

// CoNLL-style coreference column files, the interchange format of the
// reference coreference scorer:
//
//   #begin document (<id>); part 000
//   <id>  0  <token index>  <token>  <chains>
//   ...
//   #end document
//
// The last column holds chain brackets: "(k" opens chain k, "k)" closes it,
// "(k)" marks a one-token mention, "-" means none; several entries on one
// token are joined with '|'. Column files are token-indexed, so the writer
// also emits a token table (doc_id, token, start, end) mapping tokens back to
// character offsets.
namespace stmkg {

struct TokenSpan {
  std::size_t start = 0;
  std::size_t end = 0;
  bool operator==(const TokenSpan&) const = default;
};

struct ColumnFiles {
  std::string columns;
  std::string token_table;
};

namespace detail {

// Whitespace tokenization that also cuts at every mention boundary, so every
// mention covers whole tokens.
inline std::vector<TokenSpan> tokenize_for_mentions(const Document& doc) {
  std::u32string text = utf8::decode(doc.text);
  std::set<std::size_t> cuts = {0, text.size()};
  std::set<std::size_t> starts, ends;
  for (const Mention& m : doc.mentions) {
    cuts.insert(m.start);
    cuts.insert(m.end);
    starts.insert(m.start);
    ends.insert(m.end);
  }
  for (std::size_t i = 1; i < text.size(); ++i) {
    if (utf8::is_space(text[i]) != utf8::is_space(text[i - 1])) cuts.insert(i);
  }
  std::vector<TokenSpan> tokens;
  std::vector<std::size_t> points(cuts.begin(), cuts.end());
  for (std::size_t i = 0; i + 1 < points.size(); ++i) {
    std::size_t a = points[i], b = points[i + 1];
    bool has_text = false;
    for (std::size_t j = a; j < b; ++j) {
      if (!utf8::is_space(text[j])) {
        has_text = true;
        break;
      }
    }
    if (has_text || starts.count(a) || ends.count(b)) tokens.push_back({a, b});
  }
  return tokens;
}

inline std::string column_safe(std::string_view s) {
  std::string out;
  for (char c : s) out.push_back(utf8::is_space(c) ? '_' : c);
  if (out.empty()) out = "_";
  return out;
}

struct ChainMark {
  std::size_t chain;
  std::size_t start_token;
  std::size_t end_token;
};

}  // namespace detail

inline ColumnFiles write_coref_columns(const Corpus& corpus) {
  ColumnFiles out;
  out.token_table = "#doc_id\ttoken\tstart\tend\n";
  for (const Document& doc : corpus.documents) {
    auto tokens = detail::tokenize_for_mentions(doc);
    std::map<std::size_t, std::size_t> token_at_start, token_at_end;
    for (std::size_t i = 0; i < tokens.size(); ++i) {
      token_at_start[tokens[i].start] = i;
      token_at_end[tokens[i].end] = i;
    }
    auto clusters = all_clusters(doc);
    std::vector<std::vector<std::string>> opens(tokens.size()),
        singles(tokens.size()), closes(tokens.size());
    std::vector<detail::ChainMark> marks;
    std::set<std::pair<std::size_t, std::size_t>> used_spans;
    for (std::size_t chain = 0; chain < clusters.size(); ++chain) {
      for (std::size_t idx : clusters[chain].members) {
        const Mention& m = doc.mentions[idx];
        std::size_t a = token_at_start.at(m.start);
        std::size_t b = token_at_end.at(m.end);
        if (!used_spans.insert({a, b}).second) {
          throw std::invalid_argument(
              "column format cannot hold two mentions with the same span: " +
              to_string(m.key()));
        }
        marks.push_back({chain, a, b});
      }
    }
    // Within one chain, brackets must nest; crossing spans cannot be encoded.
    for (const auto& x : marks) {
      for (const auto& y : marks) {
        if (x.chain == y.chain && x.start_token < y.start_token &&
            y.start_token <= x.end_token && x.end_token < y.end_token) {
          throw std::invalid_argument("crossing mentions in chain " +
                                      std::to_string(x.chain) + " of " +
                                      doc.doc_id);
        }
      }
    }
    // Opens: outer (longer) first. Closes: inner (later start) first.
    std::sort(marks.begin(), marks.end(), [](const auto& x, const auto& y) {
      if (x.start_token != y.start_token) return x.start_token < y.start_token;
      if (x.end_token != y.end_token) return x.end_token > y.end_token;
      return x.chain < y.chain;
    });
    for (const auto& mk : marks) {
      std::string id = std::to_string(mk.chain);
      if (mk.start_token == mk.end_token) {
        singles[mk.start_token].push_back("(" + id + ")");
      } else {
        opens[mk.start_token].push_back("(" + id);
      }
    }
    std::vector<detail::ChainMark> by_close = marks;
    std::sort(by_close.begin(), by_close.end(), [](const auto& x, const auto& y) {
      if (x.end_token != y.end_token) return x.end_token < y.end_token;
      if (x.start_token != y.start_token) return x.start_token > y.start_token;
      return x.chain < y.chain;
    });
    for (const auto& mk : by_close) {
      if (mk.start_token != mk.end_token) {
        closes[mk.end_token].push_back(std::to_string(mk.chain) + ")");
      }
    }

    utf8::TextIndex index(doc.text);
    std::string id_col = detail::column_safe(doc.doc_id);
    out.columns += "#begin document (" + doc.doc_id + "); part 000\n";
    for (std::size_t i = 0; i < tokens.size(); ++i) {
      std::vector<std::string> pieces = opens[i];
      pieces.insert(pieces.end(), singles[i].begin(), singles[i].end());
      pieces.insert(pieces.end(), closes[i].begin(), closes[i].end());
      std::string chains = pieces.empty() ? "-" : strings::join(pieces, "|");
      out.columns += id_col + "\t0\t" + std::to_string(i) + "\t" +
                     detail::column_safe(index.slice(tokens[i].start, tokens[i].end)) +
                     "\t" + chains + "\n";
      out.token_table += doc.doc_id + "\t" + std::to_string(i) + "\t" +
                         std::to_string(tokens[i].start) + "\t" +
                         std::to_string(tokens[i].end) + "\n";
    }
    out.columns += "\n#end document\n";
  }
  return out;
}

using TokenTable = std::map<std::string, std::vector<TokenSpan>>;

inline TokenTable read_token_table(std::string_view table,
                                   const std::string& source_name = "tokens") {
  TokenTable out;
  auto all_lines = strings::lines(table);
  for (std::size_t ln = 0; ln < all_lines.size(); ++ln) {
    std::string_view line = all_lines[ln];
    if (line.empty() || line.front() == '#') continue;
    auto fields = strings::split(line, '\t');
    if (fields.size() != 4) {
      throw ParseError(source_name, ln + 1, "token table rows need 4 fields");
    }
    auto token = strings::parse_size(fields[1]);
    auto start = strings::parse_size(fields[2]);
    auto end = strings::parse_size(fields[3]);
    if (!token || !start || !end || *end < *start) {
      throw ParseError(source_name, ln + 1, "malformed token table row");
    }
    auto& spans = out[std::string(fields[0])];
    if (*token != spans.size()) {
      throw ParseError(source_name, ln + 1, "token indices must be consecutive");
    }
    spans.push_back({*start, *end});
  }
  return out;
}

namespace detail {

inline std::string parse_document_id(std::string_view rest) {
  rest = strings::trim(rest);
  std::string part;
  auto semi = rest.rfind(';');
  if (semi != std::string_view::npos) {
    auto tail = strings::split_ws(rest.substr(semi + 1));
    if (tail.size() == 2 && tail[0] == "part") part = std::string(tail[1]);
    rest = strings::trim(rest.substr(0, semi));
  }
  if (rest.size() >= 2 && rest.front() == '(' && rest.back() == ')') {
    rest = rest.substr(1, rest.size() - 2);
  }
  std::string id(rest);
  if (!part.empty() && strings::parse_size(part).value_or(1) != 0) {
    id += "-" + part;
  }
  return id;
}

}  // namespace detail

// Mentions read from columns carry no concept type: they are typed None and
// tagged coref_only. Without a token table the text is rebuilt from the
// tokens joined by single spaces.
inline Corpus read_coref_columns(std::string_view columns,
                                 const TokenTable* token_table = nullptr,
                                 const std::string& source_name = "columns") {
  Corpus corpus;
  auto all_lines = strings::lines(columns);

  struct Open {
    std::size_t chain;
    std::size_t token;
  };
  bool in_doc = false;
  std::size_t begin_line = 0;
  std::string doc_id;
  std::vector<std::string> tokens;
  std::map<std::size_t, std::vector<std::size_t>> stacks;  // chain -> opens
  std::map<std::size_t, std::vector<std::pair<std::size_t, std::size_t>>> chains;

  auto fail = [&](std::size_t line, const std::string& msg) {
    return ParseError(source_name, line, msg);
  };

  auto finish = [&](std::size_t line_no) {
    for (const auto& [chain, stack] : stacks) {
      if (!stack.empty()) {
        throw fail(line_no, "unbalanced brackets: chain " + std::to_string(chain) +
                                " opened at token " + std::to_string(stack.back()) +
                                " is never closed");
      }
    }
    Document doc;
    doc.doc_id = doc_id;
    std::vector<TokenSpan> spans;
    if (token_table) {
      auto it = token_table->find(doc_id);
      if (it == token_table->end() || it->second.size() != tokens.size()) {
        throw fail(line_no, "token table does not match document '" + doc_id + "'");
      }
      spans = it->second;
      std::size_t length = 0;
      for (const auto& s : spans) length = std::max(length, s.end);
      std::u32string text(length, U' ');
      for (std::size_t i = 0; i < tokens.size(); ++i) {
        std::u32string form = utf8::decode(tokens[i]);
        for (std::size_t j = 0; j < form.size() && spans[i].start + j < spans[i].end;
             ++j) {
          text[spans[i].start + j] = form[j];
        }
      }
      doc.text = utf8::encode(text);
    } else {
      std::size_t offset = 0;
      for (std::size_t i = 0; i < tokens.size(); ++i) {
        if (i) {
          doc.text += ' ';
          ++offset;
        }
        std::size_t len = utf8::length(tokens[i]);
        spans.push_back({offset, offset + len});
        doc.text += tokens[i];
        offset += len;
      }
    }
    utf8::TextIndex index(doc.text);
    std::map<std::pair<std::size_t, std::size_t>, std::size_t> mention_of;
    std::set<std::pair<std::size_t, std::size_t>> all_spans;
    for (const auto& [chain, members] : chains) {
      for (const auto& [a, b] : members) {
        if (!all_spans.insert({a, b}).second) {
          throw fail(line_no, "tokens " + std::to_string(a) + "-" +
                                  std::to_string(b) + " belong to two chains");
        }
      }
    }
    for (const auto& [a, b] : all_spans) {
      Mention m;
      m.doc_id = doc.doc_id;
      m.start = spans[a].start;
      m.end = spans[b].end;
      m.concept_type = ConceptType::None;
      m.source = MentionSource::CorefOnly;
      m.surface = std::string(index.slice(m.start, m.end));
      mention_of[{a, b}] = doc.mentions.size();
      doc.mentions.push_back(std::move(m));
    }
    for (const auto& [chain, members] : chains) {
      CoreferenceCluster c;
      for (const auto& span : members) c.members.push_back(mention_of.at(span));
      std::sort(c.members.begin(), c.members.end());
      doc.clusters.push_back(std::move(c));
    }
    corpus.documents.push_back(std::move(doc));
    tokens.clear();
    stacks.clear();
    chains.clear();
    in_doc = false;
  };

  for (std::size_t ln = 0; ln < all_lines.size(); ++ln) {
    std::size_t line_no = ln + 1;
    std::string_view line = all_lines[ln];
    if (strings::starts_with(line, "#begin document")) {
      if (in_doc) throw fail(line_no, "missing end-of-document sentinel before new document");
      in_doc = true;
      begin_line = line_no;
      doc_id = detail::parse_document_id(line.substr(15));
      continue;
    }
    if (strings::starts_with(line, "#end document")) {
      if (!in_doc) throw fail(line_no, "#end document without #begin document");
      finish(line_no);
      continue;
    }
    if (!line.empty() && line.front() == '#') continue;
    auto cols = strings::split_ws(line);
    if (cols.empty()) continue;
    if (!in_doc) throw fail(line_no, "token line outside of a document");
    if (cols.size() < 2) throw fail(line_no, "token line needs at least 2 columns");
    std::size_t token = tokens.size();
    tokens.emplace_back(cols.size() >= 4 ? cols[3] : cols[0]);
    std::string_view chain_col = cols.back();
    if (chain_col == "-") continue;
    for (std::string_view piece : strings::split(chain_col, '|')) {
      bool open = !piece.empty() && piece.front() == '(';
      if (open) piece.remove_prefix(1);
      bool close = !piece.empty() && piece.back() == ')';
      if (close) piece.remove_suffix(1);
      auto chain = strings::parse_size(piece);
      if (!chain || (!open && !close)) {
        throw fail(line_no, "malformed chain entry '" + std::string(chain_col) + "'");
      }
      if (open && close) {
        chains[*chain].push_back({token, token});
      } else if (open) {
        stacks[*chain].push_back(token);
      } else {
        auto& stack = stacks[*chain];
        if (stack.empty()) {
          throw fail(line_no, "chain " + std::to_string(*chain) +
                                  " closed before opened");
        }
        chains[*chain].push_back({stack.back(), token});
        stack.pop_back();
      }
    }
  }
  if (in_doc) {
    throw fail(begin_line, "missing end-of-document sentinel for '" + doc_id + "'");
  }
  return corpus;
}

}  // namespace stmkg

#endif  // STMKG_COREF_COLUMNS_HPP_
