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

#ifndef STMKG_SYNTH_HPP_
#define STMKG_SYNTH_HPP_

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <cstdio>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "stmkg/corefdoc.hpp"
#include "stmkg/utf8.hpp"

// Deterministic synthetic corpora for tests, demos and the `generate`
// command. Output depends only on the seed and options.
namespace stmkg {

// Portable draws from the raw 64-bit engine output; the standard
// distributions are implementation-defined.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  // Uniform in [0, n); n > 0.
  std::uint64_t below(std::uint64_t n) {
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t x;
    do {
      x = engine_();
    } while (x >= limit);
    return x % n;
  }

  std::size_t index(std::size_t n) { return static_cast<std::size_t>(below(n)); }

  // Inclusive range.
  std::size_t between(std::size_t lo, std::size_t hi) { return lo + index(hi - lo + 1); }

  bool chance(double p) {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53 < p;
  }

  template <class T>
  const T& pick(const std::vector<T>& v) {
    return v[index(v.size())];
  }

  template <class T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[index(i)]);
  }

 private:
  std::mt19937_64 engine_;
};

struct SynthOptions {
  std::size_t documents = 20;
  std::vector<std::string> domains = {"Agr", "Ast", "Bio", "CS",  "Che",
                                      "ES",  "Eng", "MS",  "Mat", "Med"};
  std::size_t min_concepts = 2;  // per document
  std::size_t max_concepts = 6;
  double pronoun_rate = 0.3;      // chance of an extra "it" in a chain
  double link_rate = 0.7;         // chance a chain is entity linked
  double type_noise = 0.05;       // chance a mention gets a different type
};

namespace detail {

struct SynthTerm {
  std::string singular;
  std::string plural;
  std::string acronym;  // may be empty
  ConceptType type;
  std::string entity;
  int domain_group;  // -1: shared across domains
};

inline const std::vector<SynthTerm>& synth_terms() {
  static const std::vector<SynthTerm> terms = {
      {"neural network", "neural networks", "NN", ConceptType::Method, "Neural_network", -1},
      {"support vector machine", "support vector machines", "SVM", ConceptType::Method,
       "Support_vector_machine", 3},
      {"convolutional neural network", "convolutional neural networks", "CNN",
       ConceptType::Method, "Convolutional_neural_network", 3},
      {"soil sample", "soil samples", "", ConceptType::Material, "Soil", 0},
      {"crop yield", "crop yields", "", ConceptType::Data, "Crop_yield", 0},
      {"wheat cultivar", "wheat cultivars", "", ConceptType::Material, "Wheat", 0},
      {"red giant", "red giants", "", ConceptType::Material, "Red_giant", 1},
      {"light curve", "light curves", "", ConceptType::Data, "Light_curve", 1},
      {"spectrum", "spectra", "", ConceptType::Data, "Spectrum", -1},
      {"protein", "proteins", "", ConceptType::Material, "Protein", 2},
      {"α-helix", "α-helices", "", ConceptType::Material, "Alpha_helix", 2},
      {"gene expression", "gene expressions", "", ConceptType::Process, "Gene_expression", 2},
      {"catalyst", "catalysts", "", ConceptType::Material, "Catalysis", 4},
      {"Schrödinger equation", "Schrödinger equations", "", ConceptType::Method,
       "Schrödinger_equation", 4},
      {"carbon dioxide emission", "carbon dioxide emissions", "", ConceptType::Process,
       "Greenhouse_gas", 5},
      {"river basin", "river basins", "", ConceptType::Material, "Drainage_basin", 5},
      {"finite element method", "finite element methods", "FEM", ConceptType::Method,
       "Finite_element_method", 6},
      {"tensile strength", "tensile strengths", "", ConceptType::Data,
       "Ultimate_tensile_strength", 7},
      {"grain boundary", "grain boundaries", "", ConceptType::Material, "Grain_boundary", 7},
      {"matrix", "matrices", "", ConceptType::Data, "Matrix", 8},
      {"hypothesis", "hypotheses", "", ConceptType::Process, "Hypothesis", -1},
      {"temperature", "temperatures", "", ConceptType::Data, "Temperature", -1},
      {"patient", "patients", "", ConceptType::Material, "Patient", 9},
      {"tumour growth", "tumour growths", "", ConceptType::Process, "Neoplasm", 9},
      {"magnetic resonance imaging", "magnetic resonance images", "MRI", ConceptType::Method,
       "Magnetic_resonance_imaging", 9},
      {"measurement", "measurements", "", ConceptType::Process, "Measurement", -1},
      {"simulation", "simulations", "", ConceptType::Method, "Simulation", -1},
      {"water", "water", "", ConceptType::Material, "Water", -1},
  };
  return terms;
}

class TextBuilder {
 public:
  explicit TextBuilder(Document& doc) : doc_(doc) {}

  void add(std::string_view s) {
    doc_.text += s;
    length_ += utf8::length(s);
  }

  // Appends `s` as a mention and returns its index.
  std::size_t mention(std::string_view s, ConceptType type, MentionSource source) {
    Mention m;
    m.doc_id = doc_.doc_id;
    m.start = length_;
    add(s);
    m.end = length_;
    m.concept_type = type;
    m.surface = std::string(s);
    m.source = source;
    doc_.mentions.push_back(std::move(m));
    return doc_.mentions.size() - 1;
  }

 private:
  Document& doc_;
  std::size_t length_ = 0;
};

inline std::string capitalized(std::string s) {
  if (!s.empty() && s[0] >= 'a' && s[0] <= 'z') s[0] = static_cast<char>(s[0] - 32);
  return s;
}

}  // namespace detail

inline Document generate_document(Rng& rng, const std::string& doc_id,
                                  const std::string& domain, int domain_group,
                                  const SynthOptions& options) {
  using detail::capitalized;
  Document doc;
  doc.doc_id = doc_id;
  doc.domain = domain;
  detail::TextBuilder tb(doc);

  std::vector<const detail::SynthTerm*> pool;
  for (const auto& t : detail::synth_terms()) {
    if (t.domain_group < 0 || t.domain_group == domain_group || rng.chance(0.1)) {
      pool.push_back(&t);
    }
  }
  rng.shuffle(pool);
  std::size_t n = std::min(pool.size(), rng.between(options.min_concepts, options.max_concepts));

  auto noisy = [&](ConceptType t) {
    return rng.chance(options.type_noise) ? kConceptTypes[rng.index(4)] : t;
  };

  for (std::size_t c = 0; c < n; ++c) {
    const detail::SynthTerm& term = *pool[c];
    std::vector<std::size_t> chain;
    bool defined = !term.acronym.empty() && rng.chance(0.6);

    // First mention, possibly defining an acronym.
    switch (rng.index(3)) {
      case 0: tb.add("We study the "); break;
      case 1: tb.add("This work considers "); break;
      default: tb.add("In this paper, "); break;
    }
    chain.push_back(tb.mention(rng.chance(0.5) ? term.singular : term.plural,
                               noisy(term.type), MentionSource::ConceptExtractor));
    if (defined) {
      tb.add(" (");
      chain.push_back(tb.mention(term.acronym, noisy(term.type),
                                 MentionSource::ConceptExtractor));
      tb.add(")");
    }
    tb.add(". ");

    std::size_t repeats = rng.between(0, 2);
    for (std::size_t r = 0; r < repeats; ++r) {
      switch (rng.index(4)) {
        case 0:
          chain.push_back(tb.mention(capitalized(term.plural), noisy(term.type),
                                     MentionSource::ConceptExtractor));
          tb.add(" were measured twice. ");
          break;
        case 1:
          tb.add("Results for the ");
          chain.push_back(tb.mention(defined ? term.acronym : term.singular,
                                     noisy(term.type), MentionSource::ConceptExtractor));
          tb.add(" are reported. ");
          break;
        case 2:
          chain.push_back(tb.mention("The " + term.singular, noisy(term.type),
                                     MentionSource::ConceptExtractor));
          tb.add(" improves accuracy. ");
          break;
        default:
          tb.add("We compare ");
          chain.push_back(tb.mention("these " + term.plural, noisy(term.type),
                                     MentionSource::ConceptExtractor));
          tb.add(" across sites. ");
          break;
      }
    }
    if (rng.chance(options.pronoun_rate)) {
      chain.push_back(tb.mention("It", ConceptType::None, MentionSource::CorefOnly));
      tb.add(" is robust. ");
    }

    bool split = chain.size() >= 3 && rng.chance(0.15);
    std::size_t cut = split ? rng.between(1, chain.size() - 1) : chain.size();
    std::vector<std::vector<std::size_t>> groups = {
        {chain.begin(), chain.begin() + static_cast<long>(cut)}};
    if (split) groups.push_back({chain.begin() + static_cast<long>(cut), chain.end()});
    for (auto& g : groups) {
      if (g.size() >= 2) doc.clusters.push_back({g});
    }

    if (rng.chance(options.link_rate)) {
      bool conflicting = rng.chance(0.1);
      for (std::size_t k = 0; k < chain.size(); ++k) {
        if (conflicting && k == chain.size() - 1) {
          doc.entity_links[chain[k]] = term.entity + "_(disambiguation)";
        } else if (rng.chance(0.95)) {
          doc.entity_links[chain[k]] = term.entity;
        }
      }
    }
  }

  // An untyped chain now and then.
  if (rng.chance(0.1)) {
    tb.add("We revisit ");
    std::size_t a = tb.mention("this approach", ConceptType::None, MentionSource::CorefOnly);
    tb.add(" later, and ");
    std::size_t b = tb.mention("it", ConceptType::None, MentionSource::CorefOnly);
    tb.add(" holds.");
    doc.clusters.push_back({{a, b}});
  }
  if (!doc.text.empty() && doc.text.back() == ' ') doc.text.pop_back();
  return doc;
}

inline Corpus generate_corpus(std::uint64_t seed, const SynthOptions& options = {}) {
  Rng rng(seed);
  Corpus corpus;
  for (std::size_t i = 0; i < options.documents; ++i) {
    std::size_t d = rng.index(options.domains.size());
    char id[32];
    std::snprintf(id, sizeof id, "S%05zu", i + 1);
    corpus.documents.push_back(
        generate_document(rng, id, options.domains[d], static_cast<int>(d % 10), options));
  }
  return corpus;
}

}  // namespace stmkg

#endif  // STMKG_SYNTH_HPP_
