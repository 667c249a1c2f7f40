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

#ifndef STMKG_CORPUS_IO_HPP_
#define STMKG_CORPUS_IO_HPP_

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "stmkg/brat.hpp"
#include "stmkg/coref_columns.hpp"
#include "stmkg/corefdoc.hpp"
#include "stmkg/jsonl.hpp"
#include "stmkg/strings.hpp"

// Reading and writing corpora on disk:
//   jsonl  one document per line
//   brat   a directory of <id>.txt / <id>.ann pairs; a first-level
//          subdirectory names the domain of the documents below it
//   conll  a column file plus a `<file>.tokens` table of character offsets
namespace stmkg {

enum class CorpusFormat { Jsonl, Brat, Conll };

inline std::optional<CorpusFormat> parse_corpus_format(std::string_view s) {
  if (s == "jsonl") return CorpusFormat::Jsonl;
  if (s == "brat") return CorpusFormat::Brat;
  if (s == "conll") return CorpusFormat::Conll;
  return std::nullopt;
}

// Missing or unreadable files; distinct from malformed content.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

inline void write_file(const std::filesystem::path& path, std::string_view content) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  out << content;
  if (!out) throw IoError("write failed: " + path.string());
}

inline std::optional<CorpusFormat> detect_corpus_format(const std::filesystem::path& path) {
  if (std::filesystem::is_directory(path)) return CorpusFormat::Brat;
  std::string name = path.filename().string();
  if (strings::ends_with(name, ".jsonl") || strings::ends_with(name, ".json")) {
    return CorpusFormat::Jsonl;
  }
  if (strings::ends_with(name, "conll")) return CorpusFormat::Conll;
  return std::nullopt;
}

struct CorpusIoOptions {
  std::string domain;  // for formats that do not store one
  BratOptions brat;
  std::optional<std::filesystem::path> token_table;  // conll; default <file>.tokens
};

inline Corpus read_brat_dir(const std::filesystem::path& root, const CorpusIoOptions& options) {
  namespace fs = std::filesystem;
  if (!fs::is_directory(root)) throw IoError("not a directory: " + root.string());
  std::vector<fs::path> anns;
  for (const auto& e : fs::recursive_directory_iterator(root)) {
    if (e.is_regular_file() && e.path().extension() == ".ann") anns.push_back(e.path());
  }
  std::sort(anns.begin(), anns.end());
  Corpus corpus;
  for (const auto& ann : anns) {
    fs::path txt = ann;
    txt.replace_extension(".txt");
    fs::path rel = fs::relative(ann.parent_path(), root);
    std::string domain = rel.empty() || rel == "." ? options.domain
                                                   : rel.begin()->string();
    corpus.documents.push_back(parse_brat(ann.stem().string(), read_file(txt),
                                          read_file(ann), domain, options.brat,
                                          ann.string()));
  }
  return corpus;
}

inline void write_brat_dir(const Corpus& corpus, const std::filesystem::path& root,
                           const BratOptions& options = {}) {
  for (const Document& doc : corpus.documents) {
    auto dir = doc.domain.empty() ? root : root / doc.domain;
    BratFiles files = write_brat(doc, options);
    write_file(dir / (doc.doc_id + ".txt"), files.text);
    write_file(dir / (doc.doc_id + ".ann"), files.ann);
  }
}

inline Corpus read_corpus(const std::filesystem::path& path,
                          std::optional<CorpusFormat> format = std::nullopt,
                          const CorpusIoOptions& options = {}) {
  if (!std::filesystem::exists(path)) throw IoError("no such file: " + path.string());
  if (!format) format = detect_corpus_format(path);
  if (!format) {
    throw IoError("cannot tell the corpus format of " + path.string() +
                  "; pass it explicitly");
  }
  switch (*format) {
    case CorpusFormat::Jsonl:
      return read_jsonl(read_file(path), path.string());
    case CorpusFormat::Brat:
      return read_brat_dir(path, options);
    case CorpusFormat::Conll: {
      auto table_path = options.token_table.value_or(path.string() + ".tokens");
      std::optional<TokenTable> table;
      if (std::filesystem::exists(table_path)) {
        table = read_token_table(read_file(table_path), table_path.string());
      } else if (options.token_table) {
        throw IoError("no such file: " + table_path.string());
      }
      Corpus corpus = read_coref_columns(read_file(path), table ? &*table : nullptr,
                                         path.string());
      for (Document& d : corpus.documents) d.domain = options.domain;
      return corpus;
    }
  }
  return {};
}

inline void write_corpus(const Corpus& corpus, const std::filesystem::path& path,
                         CorpusFormat format, const CorpusIoOptions& options = {}) {
  switch (format) {
    case CorpusFormat::Jsonl:
      write_file(path, write_jsonl(corpus));
      break;
    case CorpusFormat::Brat:
      write_brat_dir(corpus, path, options.brat);
      break;
    case CorpusFormat::Conll: {
      ColumnFiles files = write_coref_columns(corpus);
      write_file(path, files.columns);
      write_file(options.token_table.value_or(path.string() + ".tokens"), files.token_table);
      break;
    }
  }
}

}  // namespace stmkg

#endif  // STMKG_CORPUS_IO_HPP_
