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

#include "bite/morph.h"

#include <gmock/gmock.h>
#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

#include "bite/random.h"
#include "bite/text_util.h"
#include "test_support.h"

namespace bite {
namespace {

using ::bite::testing::ShippedLexicon;
using ::testing::Contains;
using ::testing::ElementsAre;

std::string Lemma(std::string_view s, PosTag t) {
  absl::StatusOr<std::string> r = ShippedLexicon().Lemmatize(s, t);
  return r.ok() ? *r : "<error>";
}

std::optional<PosTag> Infl(std::string_view s, PosTag t) {
  auto r = ShippedLexicon().InflectionOf(s, t);
  EXPECT_TRUE(r.ok());
  return r.ok() ? *r : std::nullopt;
}

TEST(LemmatizeTest, DictionaryForms) {
  EXPECT_EQ(Lemma("went", PosTag::kVBD), "go");
  EXPECT_EQ(Lemma("danced", PosTag::kVBD), "dance");
  EXPECT_EQ(Lemma("dancing", PosTag::kVBG), "dance");
  EXPECT_EQ(Lemma("cat", PosTag::kNN), "cat");
  EXPECT_EQ(Lemma("took", PosTag::kVBD), "take");
  EXPECT_EQ(Lemma("taking", PosTag::kVBG), "take");
  EXPECT_EQ(Lemma("taken", PosTag::kVBN), "take");
  EXPECT_EQ(Lemma("mice", PosTag::kNNS), "mouse");
  EXPECT_EQ(Lemma("was", PosTag::kVBD), "be");
  EXPECT_EQ(Lemma("better", PosTag::kJJR), "good");
}

TEST(LemmatizeTest, CaseIsRestored) {
  EXPECT_EQ(Lemma("Went", PosTag::kVBD), "Go");
  EXPECT_EQ(Lemma("WENT", PosTag::kVBD), "GO");
}

TEST(LemmatizeTest, RulesHandleUnknownWords) {
  EXPECT_EQ(Lemma("blicked", PosTag::kVBD), "blick");
  EXPECT_EQ(Lemma("blicking", PosTag::kVBG), "blick");
  EXPECT_EQ(Lemma("blickets", PosTag::kNNS), "blicket");
  EXPECT_EQ(Lemma("zorpier", PosTag::kJJR), "zorpy");
  // Nothing plausible to strip: the surface comes back unchanged.
  EXPECT_EQ(Lemma("qqq", PosTag::kVBD), "qqq");
}

TEST(LemmatizeTest, NonContentTagIsAnError) {
  EXPECT_EQ(ShippedLexicon().Lemmatize(".", PosTag::kPeriod).status().code(),
            absl::StatusCode::kInvalidArgument);
  EXPECT_FALSE(ShippedLexicon().InflectionOf("the", PosTag::kDT).ok());
}

TEST(InflectionOfTest, NullPolicy) {
  EXPECT_EQ(Infl("took", PosTag::kVBD), PosTag::kVBD);
  EXPECT_EQ(Infl("cat", PosTag::kNN), std::nullopt);
  EXPECT_EQ(Infl("go", PosTag::kVB), std::nullopt);
  EXPECT_EQ(Infl("red", PosTag::kJJ), std::nullopt);
  EXPECT_EQ(Infl("run", PosTag::kVBP), std::nullopt);
  EXPECT_EQ(Infl("are", PosTag::kVBP), PosTag::kVBP);
  EXPECT_EQ(Infl("am", PosTag::kVBP), PosTag::kVBP);
  // Zero-marked forms keep their tag when the tag alone regenerates them.
  EXPECT_EQ(Infl("put", PosTag::kVBD), PosTag::kVBD);
  EXPECT_EQ(Infl("sheep", PosTag::kNNS), PosTag::kNNS);
}

TEST(InflectTest, DictionaryAndRules) {
  const MorphLexicon& lex = ShippedLexicon();
  EXPECT_EQ(lex.Inflect("take", PosTag::kVBD), "took");
  EXPECT_EQ(lex.Inflect("dance", PosTag::kVBG), "dancing");
  EXPECT_EQ(lex.Inflect("run", std::nullopt), "run");
  EXPECT_EQ(lex.Inflect("be", PosTag::kVBD), "was");
  EXPECT_EQ(lex.Inflect("go", PosTag::kVBZ), "goes");
  EXPECT_EQ(lex.Inflect("Go", PosTag::kVBD), "Went");
  EXPECT_EQ(lex.Inflect("blick", PosTag::kVBD), "blicked");
  EXPECT_THAT(lex.InflectAll("be", PosTag::kVBD), ElementsAre("was", "were"));
}

TEST(RegularInflectTest, SpellingRules) {
  EXPECT_EQ(RegularInflect("stop", PosTag::kVBD), "stopped");
  EXPECT_EQ(RegularInflect("try", PosTag::kVBD), "tried");
  EXPECT_EQ(RegularInflect("cry", PosTag::kVBZ), "cries");
  EXPECT_EQ(RegularInflect("make", PosTag::kVBG), "making");
  EXPECT_EQ(RegularInflect("lie", PosTag::kVBG), "lying");
  EXPECT_EQ(RegularInflect("see", PosTag::kVBG), "seeing");
  EXPECT_EQ(RegularInflect("box", PosTag::kNNS), "boxes");
  EXPECT_EQ(RegularInflect("big", PosTag::kJJR), "bigger");
  EXPECT_EQ(RegularInflect("happy", PosTag::kJJS), "happiest");
  EXPECT_EQ(RegularInflect("wide", PosTag::kJJS), "widest");
  EXPECT_EQ(RegularInflect("visit", PosTag::kVBD), "visited");
}

TEST(RuleLemmaCandidatesTest, InvertsSpellingRules) {
  EXPECT_THAT(RuleLemmaCandidates("stopped", PosTag::kVBD), Contains("stop"));
  EXPECT_THAT(RuleLemmaCandidates("tried", PosTag::kVBD), Contains("try"));
  EXPECT_THAT(RuleLemmaCandidates("making", PosTag::kVBG), Contains("make"));
  EXPECT_THAT(RuleLemmaCandidates("boxes", PosTag::kNNS), Contains("box"));
  EXPECT_TRUE(RuleLemmaCandidates("cat", PosTag::kNN).empty());
}

TEST(LoadTest, RejectsMalformedTables) {
  auto load = [](std::string lemmas, std::string infl) {
    std::istringstream l(lemmas), i(infl);
    return MorphLexicon::FromStreams(l, i).status();
  };
  EXPECT_TRUE(load("# c\nwent\tVBD\tgo\n", "go\tVBD\twent\t1\n").ok());
  EXPECT_FALSE(load("went\tVBD\n", "").ok());
  EXPECT_FALSE(load("went\tXYZ\tgo\n", "").ok());
  EXPECT_FALSE(load("", "go\tVBD\twent\t0\n").ok());
  EXPECT_FALSE(load("", "go\tVBD\twent\tone\n").ok());
  // Base tags must map a surface to itself.
  EXPECT_FALSE(load("cats\tNN\tcat\n", "").ok());
  EXPECT_FALSE(load("went\tVBD\tgo\nwent\tVBD\tgo\n", "").ok());
  EXPECT_EQ(
      MorphLexicon::Load("/nonexistent/a", "/nonexistent/b").status().code(),
      absl::StatusCode::kNotFound);
}

TEST(LoadTest, SmallLexiconRoundTrip) {
  std::istringstream l("went\tVBD\tgo\ngone\tVBN\tgo\n"),
      i("go\tVBD\twent\t1\ngo\tVBN\tgone\t1\n");
  absl::StatusOr<MorphLexicon> lex = MorphLexicon::FromStreams(l, i);
  ASSERT_TRUE(lex.ok());
  EXPECT_EQ(*lex->Lemmatize("went", PosTag::kVBD), "go");
  EXPECT_EQ(lex->Inflect("go", PosTag::kVBN), "gone");
  EXPECT_EQ(lex->LookupLemma("walked", PosTag::kVBD), std::nullopt);
  EXPECT_TRUE(lex->IsKnownLemma("go", CoarsePos::kVerb));
  EXPECT_FALSE(lex->IsKnownLemma("go", CoarsePos::kNoun));
}

// Every lemma-table entry reinflects to its surface or a listed variant.
TEST(MorphPropertyTest, LemmaTableRoundTrips) {
  const MorphLexicon& lex = ShippedLexicon();
  std::ifstream in(testing::DataPath("lexicon/lemmas.tsv"));
  std::string line;
  int checked = 0;
  while (std::getline(in, line)) {
    if (IsSkippableLine(line)) continue;
    const auto f = SplitTabs(line);
    ASSERT_EQ(f.size(), 3u);
    const PosTag tag = *ParseTag(f[1]);
    const std::string lemma = *lex.Lemmatize(f[0], tag);
    const std::string back = lex.Inflect(lemma, tag);
    if (back != f[0]) {
      EXPECT_THAT(lex.InflectAll(lemma, tag), Contains(std::string(f[0])))
          << f[0] << "/" << f[1] << " -> " << lemma << " -> " << back;
    }
    ++checked;
  }
  EXPECT_GT(checked, 50000);
}

TEST(MorphPropertyTest, LemmatizeIsIdempotentAndRulesNeverEmpty) {
  const MorphLexicon& lex = ShippedLexicon();
  Rng rng(5);
  const std::vector<PosTag> tags = {PosTag::kNNS, PosTag::kVBD, PosTag::kVBG,
                                    PosTag::kVBN, PosTag::kVBZ, PosTag::kJJR,
                                    PosTag::kJJS, PosTag::kVBP};
  for (int trial = 0; trial < 3000; ++trial) {
    const std::string word = testing::RandomString(rng, "abcdeiostyng", 1, 9);
    const PosTag tag = tags[rng.UniformIndex(tags.size())];
    const std::string lemma = *lex.Lemmatize(word, tag);
    ASSERT_FALSE(lemma.empty()) << word;
    EXPECT_EQ(*lex.Lemmatize(lemma, BaseTagOf(tag)), lemma);
    EXPECT_FALSE(RegularInflect(word, tag).empty());
    for (const std::string& c : RuleLemmaCandidates(word, tag)) {
      EXPECT_FALSE(c.empty());
    }
    EXPECT_EQ(lex.Inflect(word, std::nullopt), word);
  }
}

}  // namespace
}  // namespace bite
