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

#ifndef STMKG_METRICS_HPP_
#define STMKG_METRICS_HPP_

#include <cstddef>
#include <cstdio>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "stmkg/assignment.hpp"
#include "stmkg/union_find.hpp"

// Coreference scores over key/response partitions: MUC, B-cubed, CEAFe (phi4)
// and the CoNLL average. All counting is exact; the only floating-point step
// is choosing the CEAFe alignment, whose value is then re-summed exactly.
namespace stmkg {

using Rational = boost::multiprecision::cpp_rational;

// A partition is a list of disjoint, non-empty parts.
template <class Id>
using Partition = std::vector<std::vector<Id>>;

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

struct PRF {
  Rational precision{0};
  Rational recall{0};
  Rational f1{0};

  // F1 is the harmonic mean, or 0 when P + R = 0.
  static PRF make(Rational p, Rational r) {
    PRF out;
    out.precision = std::move(p);
    out.recall = std::move(r);
    Rational sum = out.precision + out.recall;
    out.f1 = sum == 0 ? Rational(0) : Rational(2 * out.precision * out.recall / sum);
    return out;
  }

  double p() const { return to_double(precision); }
  double r() const { return to_double(recall); }
  double f() const { return to_double(f1); }

  bool operator==(const PRF&) const = default;
};

struct ScoreReport {
  PRF muc;
  PRF b_cubed;
  PRF ceaf_e;
  // Component-wise means; conll.f1 is the mean of the three F1 values.
  PRF conll;
  // Harmonic mean of conll.precision and conll.recall, for diagnosis.
  Rational conll_f1_of_means{0};
};

template <class Id>
void check_partition(const Partition<Id>& p, const char* name = "partition") {
  std::set<Id> seen;
  for (const auto& part : p) {
    if (part.empty()) {
      throw std::invalid_argument(std::string(name) + " has an empty part");
    }
    for (const Id& id : part) {
      if (!seen.insert(id).second) {
        throw std::invalid_argument(std::string(name) +
                                    " parts are not pairwise disjoint");
      }
    }
  }
}

// Mentions present on only one side are added to the other as singletons.
template <class Id>
std::pair<Partition<Id>, Partition<Id>> align_mentions(const Partition<Id>& key,
                                                       const Partition<Id>& response) {
  check_partition(key, "key");
  check_partition(response, "response");
  std::set<Id> in_key, in_response;
  for (const auto& part : key) in_key.insert(part.begin(), part.end());
  for (const auto& part : response) in_response.insert(part.begin(), part.end());
  std::pair<Partition<Id>, Partition<Id>> out{key, response};
  for (const Id& id : in_response) {
    if (!in_key.count(id)) out.first.push_back({id});
  }
  for (const Id& id : in_key) {
    if (!in_response.count(id)) out.second.push_back({id});
  }
  return out;
}

namespace detail {

// Aligned partitions over dense mention ids 0..n-1.
struct DensePair {
  std::size_t mentions = 0;
  std::vector<std::vector<std::size_t>> key;
  std::vector<std::vector<std::size_t>> response;
  std::vector<std::size_t> key_of;       // mention -> key part
  std::vector<std::size_t> response_of;  // mention -> response part
};

template <class Id>
DensePair densify(const Partition<Id>& key, const Partition<Id>& response) {
  auto [k, r] = align_mentions(key, response);
  std::map<Id, std::size_t> ids;
  for (const auto& part : k) {
    for (const Id& id : part) ids.emplace(id, ids.size());
  }
  DensePair d;
  d.mentions = ids.size();
  d.key_of.resize(d.mentions);
  d.response_of.resize(d.mentions);
  for (const auto& part : k) {
    d.key.emplace_back();
    for (const Id& id : part) {
      std::size_t x = ids.at(id);
      d.key.back().push_back(x);
      d.key_of[x] = d.key.size() - 1;
    }
  }
  for (const auto& part : r) {
    d.response.emplace_back();
    for (const Id& id : part) {
      std::size_t x = ids.at(id);
      d.response.back().push_back(x);
      d.response_of[x] = d.response.size() - 1;
    }
  }
  return d;
}

inline Rational ratio(const Rational& num, const Rational& den) {
  return den == 0 ? Rational(0) : Rational(num / den);
}

// Sum over parts P of (|P| - number of other-side parts P intersects),
// and of (|P| - 1).
inline std::pair<long long, long long> muc_counts(
    const std::vector<std::vector<std::size_t>>& parts,
    const std::vector<std::size_t>& other_of) {
  long long num = 0, den = 0;
  for (const auto& part : parts) {
    std::set<std::size_t> touched;
    for (std::size_t x : part) touched.insert(other_of[x]);
    num += static_cast<long long>(part.size()) - static_cast<long long>(touched.size());
    den += static_cast<long long>(part.size()) - 1;
  }
  return {num, den};
}

inline PRF muc(const DensePair& d) {
  auto [rn, rd] = muc_counts(d.key, d.response_of);
  auto [pn, pd] = muc_counts(d.response, d.key_of);
  return PRF::make(ratio(pn, pd), ratio(rn, rd));
}

// Overlap counts |K_i ∩ R_j| for every intersecting pair.
inline std::map<std::pair<std::size_t, std::size_t>, std::size_t> overlaps(
    const DensePair& d) {
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> out;
  for (std::size_t x = 0; x < d.mentions; ++x) ++out[{d.key_of[x], d.response_of[x]}];
  return out;
}

inline PRF b_cubed(const DensePair& d) {
  if (d.mentions == 0) return PRF::make(0, 0);
  auto ov = overlaps(d);
  // Sum over mentions m of |K(m) ∩ R(m)| / |K(m)| equals
  // sum over pairs (K, R) of |K ∩ R|^2 / |K|.
  std::vector<Rational> key_sq(d.key.size()), resp_sq(d.response.size());
  for (const auto& [kr, c] : ov) {
    key_sq[kr.first] += Rational(c * c);
    resp_sq[kr.second] += Rational(c * c);
  }
  Rational recall = 0, precision = 0;
  for (std::size_t i = 0; i < d.key.size(); ++i) {
    recall += key_sq[i] / Rational(d.key[i].size());
  }
  for (std::size_t j = 0; j < d.response.size(); ++j) {
    precision += resp_sq[j] / Rational(d.response[j].size());
  }
  Rational n(d.mentions);
  return PRF::make(precision / n, recall / n);
}

inline Rational phi4(std::size_t overlap, std::size_t key_size, std::size_t resp_size) {
  return Rational(2 * overlap) / Rational(key_size + resp_size);
}

// Total phi4 similarity of an optimal one-to-one alignment of key and
// response parts. Parts only interact through overlaps, so each connected
// component of the overlap graph is solved independently.
inline Rational ceaf_e_total(const DensePair& d) {
  auto ov = overlaps(d);
  const std::size_t nk = d.key.size();
  UnionFind uf(nk + d.response.size());
  for (const auto& [kr, c] : ov) uf.unite(kr.first, nk + kr.second);
  std::map<std::size_t, std::pair<std::vector<std::size_t>, std::vector<std::size_t>>>
      components;
  for (std::size_t i = 0; i < nk; ++i) components[uf.find(i)].first.push_back(i);
  for (std::size_t j = 0; j < d.response.size(); ++j) {
    components[uf.find(nk + j)].second.push_back(j);
  }
  Rational total = 0;
  for (const auto& [root, parts] : components) {
    const auto& [ks, rs] = parts;
    if (ks.empty() || rs.empty()) continue;
    if (ks.size() == 1 && rs.size() == 1) {
      auto it = ov.find({ks[0], rs[0]});
      if (it != ov.end()) {
        total += phi4(it->second, d.key[ks[0]].size(), d.response[rs[0]].size());
      }
      continue;
    }
    std::vector<std::vector<double>> w(ks.size(), std::vector<double>(rs.size(), 0.0));
    for (std::size_t a = 0; a < ks.size(); ++a) {
      for (std::size_t b = 0; b < rs.size(); ++b) {
        auto it = ov.find({ks[a], rs[b]});
        if (it == ov.end()) continue;
        w[a][b] = 2.0 * static_cast<double>(it->second) /
                  static_cast<double>(d.key[ks[a]].size() + d.response[rs[b]].size());
      }
    }
    Assignment best = optimal_assignment(w);
    for (std::size_t a = 0; a < ks.size(); ++a) {
      long b = best.row_to_col[a];
      if (b < 0) continue;
      auto it = ov.find({ks[a], rs[static_cast<std::size_t>(b)]});
      if (it == ov.end()) continue;
      total += phi4(it->second, d.key[ks[a]].size(),
                    d.response[rs[static_cast<std::size_t>(b)]].size());
    }
  }
  return total;
}

inline PRF ceaf_e(const DensePair& d) {
  Rational total = ceaf_e_total(d);
  return PRF::make(ratio(total, Rational(d.response.size())),
                   ratio(total, Rational(d.key.size())));
}

}  // namespace detail

template <class Id>
PRF muc(const Partition<Id>& key, const Partition<Id>& response) {
  return detail::muc(detail::densify(key, response));
}

template <class Id>
PRF b_cubed(const Partition<Id>& key, const Partition<Id>& response) {
  return detail::b_cubed(detail::densify(key, response));
}

template <class Id>
PRF ceaf_e(const Partition<Id>& key, const Partition<Id>& response) {
  return detail::ceaf_e(detail::densify(key, response));
}

template <class Id>
Rational ceaf_e_similarity(const Partition<Id>& key, const Partition<Id>& response) {
  return detail::ceaf_e_total(detail::densify(key, response));
}

template <class Id>
ScoreReport score(const Partition<Id>& key, const Partition<Id>& response) {
  detail::DensePair d = detail::densify(key, response);
  ScoreReport r;
  r.muc = detail::muc(d);
  r.b_cubed = detail::b_cubed(d);
  r.ceaf_e = detail::ceaf_e(d);
  const Rational three(3);
  r.conll.precision = (r.muc.precision + r.b_cubed.precision + r.ceaf_e.precision) / three;
  r.conll.recall = (r.muc.recall + r.b_cubed.recall + r.ceaf_e.recall) / three;
  r.conll.f1 = (r.muc.f1 + r.b_cubed.f1 + r.ceaf_e.f1) / three;
  r.conll_f1_of_means = PRF::make(r.conll.precision, r.conll.recall).f1;
  return r;
}

// Fixed-order text table, percentages with two decimals.
inline std::string format_report(const ScoreReport& r) {
  std::string out = "metric\tP\tR\tF1\n";
  auto row = [&](const char* name, const PRF& prf) {
    char buf[128];
    std::snprintf(buf, sizeof buf, "%s\t%.2f\t%.2f\t%.2f\n", name, 100.0 * prf.p(),
                  100.0 * prf.r(), 100.0 * prf.f());
    out += buf;
  };
  row("MUC", r.muc);
  row("B3", r.b_cubed);
  row("CEAFe", r.ceaf_e);
  row("CoNLL", r.conll);
  return out;
}

}  // namespace stmkg

#endif  // STMKG_METRICS_HPP_
