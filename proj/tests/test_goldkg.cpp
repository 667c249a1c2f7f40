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


#include "stmkg/goldkg.hpp"

#include <gtest/gtest.h>

#include "stmkg/synth.hpp"
#include "test_support.hpp"

namespace stmkg {
namespace {

using testing::DocBuilder;

// Doc a (CS): "CNN ... It" clustered and both linked to CNN; "RNN" linked to
// RNN. Doc b (Med): "CNNs" linked to CNN; "model"/"It" clustered with
// conflicting links; "tool" unlinked.
Corpus linked_corpus() {
  DocBuilder a("a", "CS", "CNN is fast. It wins. RNN is slow.");
  std::size_t cnn = a.mention("CNN", ConceptType::Method);
  std::size_t it = a.mention("It", ConceptType::None);
  std::size_t rnn = a.mention("RNN", ConceptType::Method);
  a.cluster({cnn, it});
  a.link(cnn, "Convolutional_neural_network").link(it, "Convolutional_neural_network");
  a.link(rnn, "Recurrent_neural_network");
  DocBuilder b("b", "Med", "CNNs segment scans. The model helps. It uses a tool.");
  std::size_t cnns = b.mention("CNNs", ConceptType::Method);
  std::size_t model = b.mention("model", ConceptType::Method);
  std::size_t it2 = b.mention("It", ConceptType::None);
  b.mention("tool", ConceptType::Material);
  b.cluster({model, it2});
  b.link(cnns, "Convolutional_neural_network");
  b.link(model, "Statistical_model").link(it2, "Mathematical_model");
  return Corpus{{a.build(), b.build()}};
}

TEST(CompileGold, KeepsUniquelyLinkedClustersAndMergesByEntity) {
  Corpus corpus = linked_corpus();
  GoldKG gold = compile_gold(corpus);
  // Kept: {CNN, It}, {RNN}, {CNNs}. Excluded: conflicting {model, It}, unlinked {tool}.
  EXPECT_EQ(gold.kept_clusters, 3u);
  EXPECT_EQ(gold.singleton_clusters, 2u);
  ASSERT_EQ(gold.concepts.size(), 2u);
  EXPECT_EQ(gold.concepts[0].entity, "Convolutional_neural_network");
  EXPECT_EQ(gold.concepts[0].mentions.size(), 3u);
  EXPECT_EQ(gold.concepts[1].entity, "Recurrent_neural_network");
  EXPECT_EQ(concept_type(gold.concepts[0]), ConceptType::Method);
  check_partition(to_partition(gold));

  GoldStats st = gold_stats(gold, corpus);
  EXPECT_EQ(st.mix, 1u);
  EXPECT_EQ(st.concepts, 2u);
  EXPECT_EQ(format_gold_stats(st),
            "\tCS\tMed\tMIX\tTotal\n"
            "Data\t0\t0\t0\t0\n"
            "Material\t0\t0\t0\t0\n"
            "Method\t1\t0\t1\t2\n"
            "Process\t0\t0\t0\t0\n"
            "Total\t1\t0\t1\t2\n");
}

TEST(CompileGold, PartiallyLinkedClusterIsExcluded) {
  DocBuilder a("a", "CS", "CNN is fast. It wins.");
  std::size_t cnn = a.mention("CNN", ConceptType::Method);
  std::size_t it = a.mention("It", ConceptType::None);
  a.cluster({cnn, it});
  a.link(cnn, "Q1");
  EXPECT_TRUE(compile_gold(Corpus{{a.build()}}).concepts.empty());
}

// Direct restatement of the construction over synthetic corpora.
TEST(CompileGold, MatchesDirectConstruction) {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    Corpus corpus = generate_corpus(seed, {});
    GoldKG gold = compile_gold(corpus);
    std::map<std::string, std::set<MentionKey>> expected;
    std::size_t kept = 0;
    for (const Document& d : corpus.documents) {
      std::vector<bool> in_cluster(d.mentions.size(), false);
      std::vector<std::vector<std::size_t>> groups;
      for (const auto& c : d.clusters) {
        groups.push_back(c.members);
        for (auto i : c.members) in_cluster[i] = true;
      }
      for (std::size_t i = 0; i < d.mentions.size(); ++i) {
        if (!in_cluster[i]) groups.push_back({i});
      }
      for (const auto& g : groups) {
        std::set<std::string> e;
        std::size_t linked = 0;
        for (auto i : g) {
          if (d.entity_links.count(i)) {
            ++linked;
            e.insert(d.entity_links.at(i));
          }
        }
        if (linked != g.size() || e.size() != 1) continue;
        ++kept;
        for (auto i : g) expected[*e.begin()].insert(d.mentions[i].key());
      }
    }
    EXPECT_EQ(gold.kept_clusters, kept);
    ASSERT_EQ(gold.concepts.size(), expected.size());
    for (const auto& c : gold.concepts) {
      EXPECT_EQ(std::set<MentionKey>(c.mentions.begin(), c.mentions.end()), expected.at(c.entity));
    }
    check_partition(to_partition(gold));
  }
}

TEST(GoldJsonl, RoundTripAndFormat) {
  GoldKG gold = compile_gold(linked_corpus());
  std::string text = write_gold_jsonl(gold);
  EXPECT_EQ(strings::lines(text)[1],
            R"({"entity":"Recurrent_neural_network","mentions":[{"doc_id":"a","start":22,"end":25,"type":"Method"}]})");
  GoldKG back = read_gold_jsonl(text);
  EXPECT_EQ(back.concepts, gold.concepts);
  EXPECT_THROW(read_gold_jsonl(text + strings::lines(text)[1].data()), ParseError);
}

TEST(GoldJsonl, RejectsSharedMentions) {
  std::string text =
      R"({"entity":"A","mentions":[{"doc_id":"a","start":0,"end":3,"type":"Method"}]})"
      "\n"
      R"({"entity":"B","mentions":[{"doc_id":"a","start":0,"end":3,"type":"Method"}]})"
      "\n";
  try {
    read_gold_jsonl(text, "g.jsonl");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2u);
  }
}

TEST(Links, ApplyAndWrite) {
  Corpus corpus = linked_corpus();
  std::string links = write_links(corpus);
  Corpus bare = corpus;
  for (auto& d : bare.documents) d.entity_links.clear();
  apply_links(bare, links);
  EXPECT_EQ(bare, corpus);

  Corpus c2 = bare;
  for (auto& d : c2.documents) d.entity_links.clear();
  apply_links(c2, "# comment\na\t0\t3\t*\tQ9\n");
  EXPECT_EQ(c2.documents[0].entity_links.at(0), "Q9");
}

TEST(Links, Errors) {
  auto expect_error = [](const std::string& tsv, const std::string& fragment) {
    Corpus corpus = linked_corpus();
    for (auto& d : corpus.documents) d.entity_links.clear();
    try {
      apply_links(corpus, "a\t0\t3\tMethod\tQ1\n" + tsv, "l.tsv");
      FAIL() << tsv;
    } catch (const ParseError& e) {
      EXPECT_EQ(e.line(), 2u);
      EXPECT_NE(std::string(e.what()).find(fragment), std::string::npos) << e.what();
    }
  };
  expect_error("a\t0\t3\tMethod\n", "5 tab-separated");
  expect_error("zz\t0\t3\tMethod\tQ\n", "unknown document");
  expect_error("a\t0\t4\tMethod\tQ\n", "no mention");
  expect_error("a\t0\t3\tWidget\tQ\n", "unknown type");
  expect_error("a\t0\t3\tMethod\tQ2\n", "already linked");
  expect_error("a\tx\t3\tMethod\tQ2\n", "integers");
}

TEST(Evaluate, GoldAsPredictionIsPerfect) {
  // One entity per label, clusters as annotated: the prediction equals gold.
  DocBuilder a("a", "CS", "Neural networks learn. They generalize. Trees split.");
  std::size_t nn = a.mention("Neural networks", ConceptType::Method);
  std::size_t they = a.mention("They", ConceptType::None);
  std::size_t trees = a.mention("Trees", ConceptType::Method);
  a.cluster({nn, they});
  a.link(nn, "NN").link(they, "NN").link(trees, "DT");
  DocBuilder b("b", "Med", "A neural network diagnoses.");
  std::size_t nn2 = b.mention("A neural network", ConceptType::Method);
  b.link(nn2, "NN");
  Corpus corpus{{a.build(), b.build()}};
  GoldKG gold = compile_gold(corpus);
  PopulationEval e = evaluate_population(to_partition(gold), corpus,
                                         {CollapseScope::CrossDomain, true});
  EXPECT_EQ(e.report.muc.f1, 1);
  EXPECT_EQ(e.report.b_cubed.f1, 1);
  EXPECT_EQ(e.report.ceaf_e.f1, 1);
  EXPECT_EQ(e.report.conll.f1, 1);
  EXPECT_EQ(e.concepts, 2u);
  EXPECT_EQ(e.typed_concepts, 2u);

  // In-domain splits the NN concept; without coreference "They" stands alone.
  PopulationEval in = evaluate_population(to_partition(gold), corpus,
                                          {CollapseScope::InDomain, true});
  EXPECT_EQ(in.concepts, 3u);
  EXPECT_EQ(in.report.muc.precision, 1);
  EXPECT_LT(in.report.muc.recall, 1);
  PopulationEval flat = evaluate_population(to_partition(gold), corpus,
                                            {CollapseScope::CrossDomain, false});
  EXPECT_EQ(flat.concepts, 3u);
  EXPECT_EQ(flat.typed_concepts, 2u);
}

TEST(Evaluate, UniverseMismatchIsReported) {
  Corpus corpus = linked_corpus();
  Partition<MentionKey> gold = {{MentionKey{"a", 90, 95, ConceptType::Data}}};
  EXPECT_THROW(evaluate_population(gold, corpus, {}), UniverseMismatch);
}

TEST(Evaluate, CrossDomainRecallAtLeastInDomain) {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    Corpus corpus = generate_corpus(seed, {});
    auto gold = to_partition(compile_gold(corpus));
    auto cross = evaluate_population(gold, corpus, {CollapseScope::CrossDomain, true});
    auto in = evaluate_population(gold, corpus, {CollapseScope::InDomain, true});
    EXPECT_GE(cross.report.conll.recall, in.report.conll.recall) << seed;
    EXPECT_LE(cross.concepts, in.concepts);
  }
}

}  // namespace
}  // namespace stmkg
