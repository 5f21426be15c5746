// Copyright 2026 The BITE Tokenizer Authors
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

#include "bite/metrics.h"

#include <gtest/gtest.h>

#include <functional>

#include "oracles.h"
#include "test_support.h"

namespace bite {
namespace {

using Seq = std::vector<std::string>;
using testing::OracleMatches;

const std::vector<Seq> kCatCorpus = {{"the", "cat", "sat", "on", "the", "mat"}};

TEST(TopNVocabTest, Examples) {
  absl::StatusOr<TopNResult> top2 = TopNVocab(kCatCorpus, 2);
  ASSERT_TRUE(top2.ok());
  EXPECT_EQ(top2->vocab, (Seq{"the", "cat"}));
  EXPECT_FALSE(top2->truncated);

  absl::StatusOr<TopNResult> all = TopNVocab(kCatCorpus, 9);
  EXPECT_EQ(all->vocab, (Seq{"the", "cat", "mat", "on", "sat"}));
  EXPECT_TRUE(all->truncated);

  const std::vector<Seq> encoded = {{"go", "[VBD]", "go"}, {"walk", "[VBD]"}};
  EXPECT_EQ(TopNVocab(encoded, 2)->vocab, (Seq{"[VBD]", "go"}));

  EXPECT_EQ(TopNVocab(kCatCorpus, 0).status().code(),
            absl::StatusCode::kInvalidArgument);
}

TEST(CoverageTest, Examples) {
  EXPECT_DOUBLE_EQ(*Coverage({"the", "cat"}, kCatCorpus), 0.5);
  EXPECT_DOUBLE_EQ(*Coverage({"the", "cat", "sat", "on", "mat"}, kCatCorpus),
                   1.0);
  EXPECT_DOUBLE_EQ(*Coverage({}, kCatCorpus), 0.0);
  EXPECT_FALSE(Coverage({"the"}, std::vector<Seq>{}).ok());
  EXPECT_FALSE(Coverage({"the"}, std::vector<Seq>{{}, {}}).ok());
}

TEST(CoverageTest, PropertyMonotoneInVocabulary) {
  Rng rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<Seq> corpus(1 + rng.UniformIndex(10));
    for (auto& s : corpus) {
      for (size_t i = 0, n = 1 + rng.UniformIndex(8); i < n; ++i) {
        s.push_back(testing::RandomString(rng, "abc", 1, 2));
      }
    }
    absl::flat_hash_set<std::string> vocab;
    double last = *Coverage(vocab, corpus);
    EXPECT_EQ(last, 0.0);
    for (int step = 0; step < 8; ++step) {
      vocab.insert(testing::RandomString(rng, "abc", 1, 2));
      const double c = *Coverage(vocab, corpus);
      EXPECT_GE(c, last);
      EXPECT_LE(c, 1.0);
      last = c;
    }
    // Top-N vocabularies nest, so their coverage is monotone in N too.
    double prev = 0;
    for (int n = 1; n <= 12; ++n) {
      const TopNResult top = *TopNVocab(corpus, n);
      const double c = *Coverage({top.vocab.begin(), top.vocab.end()}, corpus);
      EXPECT_GE(c, prev);
      prev = c;
    }
  }
}

TEST(SymbolComplexityTest, Examples) {
  const std::vector<Seq> enc = {{"cat"}, {"run", "##ning"}, {"<unk>"}};
  EXPECT_DOUBLE_EQ(*SymbolComplexity(enc, 2.0), 5.0);
  EXPECT_DOUBLE_EQ(*SymbolComplexity(enc, 1.0), 4.0);
  EXPECT_DOUBLE_EQ(*SymbolComplexity(enc, 3.5), 6.5);
  EXPECT_EQ(SymbolComplexity(enc, 0.5).status().code(),
            absl::StatusCode::kInvalidArgument);
  EXPECT_FALSE(SymbolComplexity(std::vector<Seq>{}, 2.0).ok());
}

TEST(SymbolComplexityTest, PropertyBpeNonIncreasingInVocabSize) {
  Rng rng(6);
  std::vector<Seq> corpus;
  for (int i = 0; i < 600; ++i) {
    corpus.push_back({testing::RandomString(rng, "abcdefg", 2, 8)});
  }
  std::vector<std::string> types;
  for (int i = 0; i < 300; ++i) {
    types.push_back(testing::RandomString(rng, "abcdefgh", 1, 10));
  }
  double last = 1e18;
  for (int size : {20, 40, 80, 160, 320, 640}) {
    SubwordTrainOptions opts;
    opts.vocab_size = size;
    const SubwordModel m = *SubwordModel::Train(corpus, opts);
    const double c = *SymbolComplexity(m, types, 2.0);
    EXPECT_LE(c, last) << size;
    last = c;
  }
}

TEST(SimilarityTest, Examples) {
  EXPECT_DOUBLE_EQ(Similarity(Seq{"a", "b", "c"}, Seq{"a", "b", "c"}), 1.0);
  EXPECT_NEAR(Similarity(Seq{"a", "b", "c"}, Seq{"a", "x", "c"}), 4.0 / 6,
              1e-12);
  EXPECT_DOUBLE_EQ(Similarity(Seq{}, Seq{"a"}), 0.0);
  EXPECT_DOUBLE_EQ(Similarity(Seq{}, Seq{}), 1.0);
  EXPECT_EQ(MatchingBlocks(Seq{"a", "b", "c"}, Seq{"a", "x", "c"}),
            (std::vector<MatchingBlock>{{0, 0, 1}, {2, 2, 1}}));
  // The tie-break on equal-length blocks makes the value order-dependent.
  EXPECT_DOUBLE_EQ(Similarity(Seq{"a", "a", "b", "a"}, Seq{"b", "a", "a", "a"}),
                   0.75);
  EXPECT_DOUBLE_EQ(Similarity(Seq{"b", "a", "a", "a"}, Seq{"a", "a", "b", "a"}),
                   0.5);
  // Equal-length blocks: the earliest in a wins.
  EXPECT_EQ(MatchingBlocks(Seq{"x", "y"}, Seq{"y", "x"}),
            (std::vector<MatchingBlock>{{0, 1, 1}}));
}

TEST(SimilarityTest, PropertyMatchesQuadraticOracle) {
  Rng rng(7);
  for (int trial = 0; trial < 1000; ++trial) {
    const std::string alphabet = trial % 2 ? "ab" : "abcdef";
    auto random_seq = [&] {
      Seq s;
      for (size_t i = 0, n = rng.UniformIndex(14); i < n; ++i) {
        s.push_back(testing::RandomString(rng, alphabet, 1, 1));
      }
      return s;
    };
    const Seq a = random_seq(), b = random_seq();
    const size_t m = OracleMatches(a, 0, a.size(), b, 0, b.size());
    const double expected =
        a.empty() && b.empty() ? 1.0 : 2.0 * m / (a.size() + b.size());
    const double got = Similarity(a, b);
    EXPECT_NEAR(got, expected, 1e-12);
    EXPECT_NEAR(Similarity(b, a),
                b.empty() && a.empty()
                    ? 1.0
                    : 2.0 * OracleMatches(b, 0, b.size(), a, 0, a.size()) /
                          (a.size() + b.size()),
                1e-12);
    EXPECT_GE(got, 0.0);
    EXPECT_LE(got, 1.0);
    EXPECT_DOUBLE_EQ(Similarity(a, a), 1.0);

    size_t total = 0, prev_a = 0, prev_b = 0;
    for (const MatchingBlock& blk : MatchingBlocks(a, b)) {
      EXPECT_GE(blk.a, prev_a);
      EXPECT_GE(blk.b, prev_b);
      for (size_t k = 0; k < blk.size; ++k)
        EXPECT_EQ(a[blk.a + k], b[blk.b + k]);
      prev_a = blk.a + blk.size;
      prev_b = blk.b + blk.size;
      total += blk.size;
    }
    EXPECT_EQ(total, m);
  }
}

TEST(SeqLenDeltaTest, Examples) {
  const std::vector<int64_t> same = {3, 5, 7};
  const SeqLenDeltaResult zero = *SeqLenDelta(same, same);
  EXPECT_DOUBLE_EQ(zero.delta_percent, 0.0);
  EXPECT_DOUBLE_EQ(zero.mean_with, 5.0);

  const std::vector<int64_t> with = {6, 6}, without = {5, 5};
  EXPECT_NEAR(SeqLenDelta(with, without)->delta_percent, 20.0, 1e-12);

  EXPECT_FALSE(
      SeqLenDelta(std::vector<int64_t>{}, std::vector<int64_t>{}).ok());
  EXPECT_FALSE(SeqLenDelta(with, same).ok());
}

TEST(InflectedTokenFractionTest, CountsInflectionAndDummySymbols) {
  using K = SymbolKind;
  const std::vector<std::vector<BiteSymbol>> enc = {
      {{K::kPassthrough, "He"},
       {K::kBaseForm, "go"},
       {K::kInflection, "[VBD]"},
       {K::kBaseForm, "home"}},
      {{K::kBaseForm, "take"}, {K::kDummy, "[INFL]"}}};
  // 2 of the 4 words carried an inflection.
  EXPECT_DOUBLE_EQ(InflectedTokenFraction(enc), 0.5);
  EXPECT_DOUBLE_EQ(InflectedTokenFraction({}), 0.0);
}

TEST(MetricReportTest, JsonShape) {
  MetricReport r;
  r.metric_name = "coverage";
  r.parameters["vocab_size"] = 500;
  r.value = 0.25;
  r.units = "fraction";
  EXPECT_EQ(r.ToJson().dump(),
            R"({"metric_name":"coverage","parameters":{"vocab_size":500},)"
            R"("value":0.25,"units":"fraction"})");
}

}  // namespace
}  // namespace bite
