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

#ifndef STMKG_NORMALIZE_HPP_
#define STMKG_NORMALIZE_HPP_

#include <algorithm>
#include <cstddef>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "stmkg/corefdoc.hpp"
#include "stmkg/parse_error.hpp"
#include "stmkg/strings.hpp"
#include "stmkg/utf8.hpp"

// Cluster labels: acronym resolution, surface normalization and
// singularization. Two clusters denote the same concept when their labels
// are equal.
namespace stmkg {

using Label = std::string;

// Short form -> long form, built per document.
using AcronymMap = std::map<std::string, std::string>;

namespace detail {

inline bool is_alnum32(char32_t c) {
  if ((c >= U'a' && c <= U'z') || (c >= U'A' && c <= U'Z') ||
      (c >= U'0' && c <= U'9')) {
    return true;
  }
  // Non-ASCII letters (Latin-1 and above) count as letters.
  return c >= 0xC0 && c != 0xD7 && c != 0xF7;
}

inline bool is_letter32(char32_t c) {
  return is_alnum32(c) && !(c >= U'0' && c <= U'9');
}

inline std::u32string lower32(std::u32string s) {
  for (char32_t& c : s) c = utf8::to_lower(c);
  return s;
}

inline std::vector<std::u32string> words32(std::u32string_view s) {
  std::vector<std::u32string> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && utf8::is_space(s[i])) ++i;
    std::size_t j = i;
    while (j < s.size() && !utf8::is_space(s[j])) ++j;
    if (j > i) out.emplace_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

// Candidate test for the parenthesized short form.
inline bool valid_short_form(std::u32string_view s) {
  if (s.size() < 2 || s.size() > 10) return false;
  if (!is_alnum32(s.front())) return false;
  if (words32(s).size() > 2) return false;
  bool letter = false, upper = false;
  for (char32_t c : s) {
    letter = letter || is_letter32(c);
    upper = upper || utf8::is_upper(c);
  }
  return letter && upper;
}

// Matches the short form's characters right to left inside the long form;
// the first short-form character must start a word. Returns the matched
// suffix of `long_form` (starting at a word boundary) or empty on failure.
inline std::u32string best_long_form(std::u32string_view short_form,
                                     std::u32string_view long_form) {
  std::u32string s = lower32(std::u32string(short_form));
  std::u32string l = lower32(std::u32string(long_form));
  long si = static_cast<long>(s.size()) - 1;
  long li = static_cast<long>(l.size()) - 1;
  for (; si >= 0; --si) {
    char32_t c = s[static_cast<std::size_t>(si)];
    if (!is_alnum32(c)) continue;
    while ((li >= 0 && l[static_cast<std::size_t>(li)] != c) ||
           (si == 0 && li > 0 && is_alnum32(l[static_cast<std::size_t>(li - 1)]))) {
      --li;
    }
    if (li < 0) return {};
    --li;
  }
  std::size_t start = 0;
  if (li >= 0) {
    auto pos = long_form.rfind(U' ', static_cast<std::size_t>(li));
    start = pos == std::u32string_view::npos ? 0 : pos + 1;
  }
  return std::u32string(long_form.substr(start));
}

inline bool ends_sentence(std::u32string_view text, std::size_t i) {
  char32_t c = text[i];
  if (c == U'\n') return true;
  if (c == U'.' || c == U'!' || c == U'?') {
    return i + 1 < text.size() && utf8::is_space(text[i + 1]);
  }
  return false;
}

}  // namespace detail

// Detects "<long form> (<SHORT>)" definitions: the short form has 2-10
// characters, at most two words, starts with a letter or digit and contains
// an uppercase letter; each of its characters must be matched inside the last
// min(|S| + 5, 2|S|) words preceding the parenthesis. The first definition of
// a short form wins.
inline AcronymMap build_acronym_map(std::string_view doc_text) {
  AcronymMap out;
  std::u32string text = utf8::decode(doc_text);
  std::size_t sentence_start = 0;
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] != U'(') {
      if (detail::ends_sentence(text, i)) sentence_start = i + 1;
      continue;
    }
    std::size_t close = text.find(U')', i + 1);
    std::size_t nested = text.find(U'(', i + 1);
    if (close == std::u32string::npos || (nested != std::u32string::npos && nested < close)) {
      continue;
    }
    std::u32string inside = text.substr(i + 1, close - i - 1);
    for (std::u32string_view cut : {std::u32string_view(U", "), std::u32string_view(U"; ")}) {
      auto pos = inside.find(cut);
      if (pos != std::u32string::npos) inside = inside.substr(0, pos);
    }
    // Trim.
    while (!inside.empty() && utf8::is_space(inside.front())) inside.erase(0, 1);
    while (!inside.empty() && utf8::is_space(inside.back())) inside.pop_back();
    if (!detail::valid_short_form(inside)) continue;

    auto words = detail::words32(std::u32string_view(text).substr(
        sentence_start, i - sentence_start));
    std::size_t window = std::min(inside.size() + 5, inside.size() * 2);
    std::size_t first = words.size() > window ? words.size() - window : 0;
    std::u32string long_window;
    for (std::size_t w = first; w < words.size(); ++w) {
      if (!long_window.empty()) long_window += U' ';
      long_window += words[w];
    }
    std::u32string best = detail::best_long_form(inside, long_window);
    if (best.empty() || best.size() <= inside.size()) continue;
    if (best.find(inside + U" ") != std::u32string::npos) continue;
    if (best.size() >= inside.size() &&
        best.compare(best.size() - inside.size(), inside.size(), inside) == 0) {
      continue;
    }
    std::string short_form = utf8::encode(inside);
    std::string long_form = utf8::encode(best);
    if (short_form == long_form) continue;
    out.emplace(std::move(short_form), std::move(long_form));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Singularization

// Built-in exception table; must match data/lemma_exceptions.tsv.
inline constexpr std::string_view kBuiltinLemmaExceptions =
// BEGIN LEMMA EXCEPTIONS
R"tsv(# plural	singular
# Irregular plurals and words ending in -s that are already singular.
# Lines starting with '#' are comments. Identical columns mean "leave as is".
addenda	addendum
afterwards	afterwards
algae	alga
alias	alias
aliases	alias
alumni	alumnus
analyses	analysis
antennae	antenna
apices	apex
apparatuses	apparatus
appendices	appendix
atlas	atlas
atlases	atlas
automata	automaton
axes	axis
bacilli	bacillus
bacteria	bacterium
bias	bias
biases	bias
bonuses	bonus
buses	bus
caches	cache
campuses	campus
canvas	canvas
canvases	canvas
censuses	census
chaos	chaos
children	child
consensuses	consensus
corpora	corpus
cortices	cortex
cosmos	cosmos
crises	crisis
criteria	criterion
curricula	curriculum
diabetes	diabetes
diagnoses	diagnosis
dialyses	dialysis
does	does
dynamics	dynamics
echoes	echo
economics	economics
electronics	electronics
emphases	emphasis
errata	erratum
ethics	ethics
ethos	ethos
feet	foot
fetuses	fetus
foci	focus
formulae	formula
fungi	fungus
ganglia	ganglion
gases	gas
geese	goose
genera	genus
genetics	genetics
genomics	genomics
halves	half
headaches	headache
helices	helix
heroes	hero
herpes	herpes
hydrodynamics	hydrodynamics
hyphae	hypha
hypotheses	hypothesis
indices	index
informatics	informatics
kinetics	kinetics
knives	knife
larvae	larva
leaves	leaf
lens	lens
lenses	lens
lice	louse
linguistics	linguistics
lives	life
loci	locus
mathematics	mathematics
matrices	matrix
maxima	maximum
measles	measles
mechanics	mechanics
media	medium
men	man
metabolomics	metabolomics
metastases	metastasis
mice	mouse
minima	minimum
mitochondria	mitochondrion
mosquitoes	mosquito
nebulae	nebula
news	news
nexuses	nexus
niches	niche
nuclei	nucleus
octahedra	octahedron
optics	optics
optima	optimum
oxen	ox
pancreas	pancreas
paralyses	paralysis
parentheses	parenthesis
perhaps	perhaps
phenomena	phenomenon
physics	physics
politics	politics
polyhedra	polyhedron
potatoes	potato
prostheses	prosthesis
proteomics	proteomics
quanta	quantum
rabies	rabies
radii	radius
robotics	robotics
schemata	schema
selves	self
series	series
shelves	shelf
sinuses	sinus
species	species
spectra	spectrum
statistics	statistics
statuses	status
stimuli	stimulus
stomata	stoma
strata	stratum
supernovae	supernova
syntheses	synthesis
taxa	taxon
teeth	tooth
termini	terminus
tetrahedra	tetrahedron
thermodynamics	thermodynamics
theses	thesis
tomatoes	tomato
torpedoes	torpedo
towards	towards
vertebrae	vertebra
vertices	vertex
vetoes	veto
viruses	virus
volcanoes	volcano
whereas	whereas
wives	wife
wolves	wolf
women	woman
)tsv"
// END LEMMA EXCEPTIONS
    ;

// Rule-based plural -> singular for nouns with an exception table for
// irregular forms. Tokens that are not plural come back unchanged.
class Singularizer {
 public:
  Singularizer() = default;
  explicit Singularizer(std::map<std::string, std::string> exceptions)
      : exceptions_(std::move(exceptions)) {}

  // Two-column TSV (plural, singular); '#' starts a comment line.
  static Singularizer from_tsv(std::string_view tsv,
                               const std::string& source_name = "lemma exceptions") {
    std::map<std::string, std::string> table;
    auto all_lines = strings::lines(tsv);
    for (std::size_t ln = 0; ln < all_lines.size(); ++ln) {
      std::string_view line = all_lines[ln];
      if (strings::trim(line).empty() || line.front() == '#') continue;
      auto fields = strings::split(line, '\t');
      if (fields.size() != 2 || fields[0].empty() || fields[1].empty()) {
        throw ParseError(source_name, ln + 1,
                         "expected two tab-separated columns (plural, singular)");
      }
      table[utf8::to_lower(fields[0])] = utf8::to_lower(fields[1]);
    }
    return Singularizer(std::move(table));
  }

  static const Singularizer& builtin() {
    static const Singularizer instance = from_tsv(kBuiltinLemmaExceptions);
    return instance;
  }

  const std::map<std::string, std::string>& exceptions() const { return exceptions_; }

  std::string operator()(std::string_view token) const {
    // Only the segment after the last hyphen inflects ("sub-matrices").
    std::size_t hyphen = token.rfind('-');
    if (hyphen != std::string_view::npos && hyphen + 1 < token.size()) {
      return std::string(token.substr(0, hyphen + 1)) +
             singular_word(token.substr(hyphen + 1));
    }
    return singular_word(token);
  }

 private:
  std::string singular_word(std::string_view word) const {
    std::string lower = utf8::to_lower(word);
    if (auto it = exceptions_.find(lower); it != exceptions_.end()) {
      return it->second;
    }
    for (char c : lower) {
      if (c >= '0' && c <= '9') return std::string(word);
    }
    if (utf8::length(lower) <= 3) return std::string(word);
    auto strip = [&](std::size_t n, std::string_view add = {}) {
      return std::string(word.substr(0, word.size() - n)) + std::string(add);
    };
    using strings::ends_with;
    if (ends_with(lower, "ss") || ends_with(lower, "us") || ends_with(lower, "is")) {
      return std::string(word);
    }
    if (ends_with(lower, "ies") && lower.size() > 4) return strip(3, "y");
    if (ends_with(lower, "sses") || ends_with(lower, "ches") ||
        ends_with(lower, "shes") || ends_with(lower, "xes") || ends_with(lower, "zzes")) {
      return strip(2);
    }
    if (ends_with(lower, "s")) return strip(1);
    return std::string(word);
  }

  std::map<std::string, std::string> exceptions_;
};

inline std::string singularize(std::string_view token) {
  return Singularizer::builtin()(token);
}

// ---------------------------------------------------------------------------
// Mention normalization

inline const std::set<std::string, std::less<>>& stripped_determiners() {
  static const std::set<std::string, std::less<>> words = {
      "a",    "an",    "the",                       // articles
      "this", "that",  "these", "those",            // demonstratives
      "its",  "their", "our",   "his",   "her"};    // possessives
  return words;
}

namespace detail {

inline std::string strip_possessive(std::string token) {
  while (true) {
    if (strings::ends_with(token, "'s")) {
      token.resize(token.size() - 2);
    } else if (strings::ends_with(token, "\xE2\x80\x99s")) {  // ’s
      token.resize(token.size() - 4);
    } else if (token.size() > 1 && strings::ends_with(token, "'")) {
      token.pop_back();
    } else {
      return token;
    }
  }
}

inline void strip_leading_determiners(std::vector<std::string>& tokens) {
  std::size_t n = 0;
  while (n < tokens.size() && stripped_determiners().count(tokens[n])) ++n;
  tokens.erase(tokens.begin(), tokens.begin() + static_cast<long>(n));
}

inline const std::string* lookup_acronym(const AcronymMap& acronyms,
                                         std::string_view token) {
  if (auto it = acronyms.find(std::string(token)); it != acronyms.end()) {
    return &it->second;
  }
  for (std::string_view suffix : {"'s", "\xE2\x80\x99s", "s"}) {
    if (strings::ends_with(token, suffix) && token.size() > suffix.size()) {
      auto stem = token.substr(0, token.size() - suffix.size());
      if (auto it = acronyms.find(std::string(stem)); it != acronyms.end()) {
        return &it->second;
      }
    }
  }
  return nullptr;
}

}  // namespace detail

// Replaces the whole surface, or individual tokens, that are known short forms.
inline std::string expand_acronyms(std::string_view surface, const AcronymMap& acronyms) {
  if (acronyms.empty()) return std::string(surface);
  std::string_view trimmed = strings::trim(surface);
  if (auto it = acronyms.find(std::string(trimmed)); it != acronyms.end()) {
    return it->second;
  }
  auto tokens = strings::split_ws(surface);
  bool changed = false;
  std::vector<std::string> out;
  for (std::string_view t : tokens) {
    if (const std::string* long_form = detail::lookup_acronym(acronyms, t)) {
      out.push_back(*long_form);
      changed = true;
    } else {
      out.emplace_back(t);
    }
  }
  return changed ? strings::join(out, " ") : std::string(surface);
}

// Pipeline: expand acronyms, lowercase, strip leading articles /
// demonstratives / possessives and trailing 's, collapse whitespace,
// singularize every token.
inline Label normalize_mention(std::string_view surface, const AcronymMap& acronyms,
                               const Singularizer& singularizer = Singularizer::builtin()) {
  std::string lowered = utf8::to_lower(expand_acronyms(surface, acronyms));
  std::vector<std::string> tokens;
  for (std::string_view t : strings::split_ws(lowered)) {
    std::string token = detail::strip_possessive(std::string(t));
    if (!token.empty()) tokens.push_back(std::move(token));
  }
  detail::strip_leading_determiners(tokens);
  for (std::string& t : tokens) t = singularizer(t);
  // Singular forms can themselves be determiners ("thes" -> "the").
  detail::strip_leading_determiners(tokens);
  return strings::join(tokens, " ");
}

// Label of the longest member surface after acronym expansion (character
// count; ties go to the earliest start offset).
inline Label cluster_label(const Document& doc, const CoreferenceCluster& cluster,
                           const AcronymMap& acronyms,
                           const Singularizer& singularizer = Singularizer::builtin()) {
  if (cluster.members.empty()) return {};
  const Mention* best = nullptr;
  std::string best_surface;
  std::size_t best_len = 0;
  for (std::size_t idx : cluster.members) {
    const Mention& m = doc.mentions.at(idx);
    std::string expanded = expand_acronyms(m.surface, acronyms);
    std::size_t len = utf8::length(expanded);
    bool better = best == nullptr || len > best_len ||
                  (len == best_len && std::tie(m.start, m.end, m.concept_type) <
                                          std::tie(best->start, best->end,
                                                   best->concept_type));
    if (better) {
      best = &m;
      best_len = len;
      best_surface = m.surface;
    }
  }
  return normalize_mention(best_surface, acronyms, singularizer);
}

}  // namespace stmkg

#endif  // STMKG_NORMALIZE_HPP_
