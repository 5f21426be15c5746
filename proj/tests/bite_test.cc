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

#include "bite/bite.h"

#include <gtest/gtest.h>

#include <map>
#include <set>

#include "bite/text_util.h"
#include "test_support.h"

namespace bite {
namespace {

using Kind = SymbolKind;

std::vector<TaggedToken> Toks(
    std::initializer_list<std::pair<const char*, PosTag>> toks) {
  std::vector<TaggedToken> out;
  for (const auto& [w, t] : toks) out.push_back({w, t});
  return out;
}

std::vector<std::string> Texts(const std::vector<BiteSymbol>& s) {
  return SymbolTexts(s);
}

class BiteTest : public ::testing::Test {
 protected:
  BiteCodec codec_{&testing::ShippedLexicon()};
  BiteCodec first_{&testing::ShippedLexicon(),
                   OverabundancePolicy::kFirstEntry};
};

TEST_F(BiteTest, EncodeExamples) {
  const auto he = codec_.Encode(Toks({{"He", PosTag::kPRP},
                                      {"went", PosTag::kVBD},
                                      {"home", PosTag::kNN},
                                      {".", PosTag::kPeriod}}),
                                BiteMode::kStandard);
  EXPECT_EQ(Texts(he),
            (std::vector<std::string>{"He", "go", "[VBD]", "home", "."}));
  EXPECT_EQ(he[0].kind, Kind::kPassthrough);
  EXPECT_EQ(he[1].kind, Kind::kBaseForm);
  EXPECT_EQ(he[2].kind, Kind::kInflection);
  EXPECT_EQ(he[3].kind, Kind::kBaseForm);

  EXPECT_EQ(
      Texts(codec_.Encode(Toks({{"go", PosTag::kVB}, {"home", PosTag::kNN}}),
                          BiteMode::kStandard)),
      (std::vector<std::string>{"go", "home"}));

  const auto abl =
      codec_.Encode(Toks({{"went", PosTag::kVBD}, {"taken", PosTag::kVBN}}),
                    BiteMode::kAblated);
  EXPECT_EQ(Texts(abl),
            (std::vector<std::string>{"go", "[INFL]", "take", "[INFL]"}));
  EXPECT_EQ(abl[1].kind, Kind::kDummy);

  EXPECT_TRUE(codec_.Encode({}, BiteMode::kStandard).empty());
}

TEST_F(BiteTest, DecodeExamples) {
  EXPECT_EQ(*codec_.DecodeTexts(std::vector<std::string>{"go", "[VBD]"}),
            std::vector<std::string>{"went"});
  EXPECT_EQ(*codec_.DecodeTexts(
                std::vector<std::string>{"He", "go", "[VBD]", "home", "."}),
            (std::vector<std::string>{"He", "went", "home", "."}));
  EXPECT_EQ(*first_.DecodeTexts(std::vector<std::string>{"be", "[VBD]"}),
            std::vector<std::string>{"was"});
  EXPECT_EQ(*codec_.DecodeTexts(std::vector<std::string>{"be", "[VBD]"}),
            std::vector<std::string>{"was"});
  EXPECT_TRUE(codec_.DecodeTexts(std::vector<std::string>{})->empty());
}

TEST_F(BiteTest, AgreementPolicyResolvesBe) {
  auto decode = [&](const BiteCodec& c, std::vector<std::string> s) {
    return Join(*c.DecodeTexts(s), " ");
  };
  EXPECT_EQ(decode(codec_, {"they", "be", "[VBD]", "here"}), "they were here");
  EXPECT_EQ(decode(first_, {"they", "be", "[VBD]", "here"}), "they was here");
  EXPECT_EQ(decode(codec_, {"the", "dog", "[NNS]", "be", "[VBD]", "loud"}),
            "the dogs were loud");
  EXPECT_EQ(decode(codec_, {"I", "be", "[VBP]", "here"}), "I am here");
  EXPECT_EQ(decode(codec_, {"she", "be", "[VBD]", "here"}), "she was here");
}

TEST_F(BiteTest, DecodeErrors) {
  absl::Status dangling =
      codec_.DecodeTexts(std::vector<std::string>{"[VBD]", "go"}).status();
  EXPECT_EQ(dangling.code(), absl::StatusCode::kInvalidArgument);

  const std::vector<BiteSymbol> after_pass = {{Kind::kPassthrough, "."},
                                              {Kind::kInflection, "[NNS]"}};
  EXPECT_EQ(codec_.Decode(after_pass).status().code(),
            absl::StatusCode::kInvalidArgument);

  absl::Status dummy =
      codec_.DecodeTexts(std::vector<std::string>{"go", "[INFL]"}).status();
  EXPECT_EQ(dummy.code(), absl::StatusCode::kFailedPrecondition);
}

TEST(SymbolTest, SpellingAndClassification) {
  EXPECT_EQ(InflectionSymbol(PosTag::kVBD), "[VBD]");
  EXPECT_EQ(ParseInflectionSymbol("[JJS]"), PosTag::kJJS);
  EXPECT_EQ(ParseInflectionSymbol("[NN]"), std::nullopt);
  EXPECT_EQ(ParseInflectionSymbol("[VBD"), std::nullopt);
  EXPECT_EQ(ParseInflectionSymbol("[INFL]"), std::nullopt);

  const auto& specials = BiteSpecialSymbols();
  ASSERT_EQ(specials.size(), 9u);
  EXPECT_EQ(specials.back(), "[INFL]");
  for (const auto& s : specials) EXPECT_TRUE(IsBiteSpecialSymbol(s));
  EXPECT_FALSE(IsBiteSpecialSymbol("[PRP]"));
  EXPECT_FALSE(IsBiteSpecialSymbol("go"));

  const auto k = ClassifySymbols(
      std::vector<std::string>{"He", "go", "[VBD]", "x", "[INFL]", "[NNS]"});
  std::vector<Kind> kinds;
  for (const auto& s : k) kinds.push_back(s.kind);
  EXPECT_EQ(kinds, (std::vector<Kind>{Kind::kPassthrough, Kind::kBaseForm,
                                      Kind::kInflection, Kind::kBaseForm,
                                      Kind::kDummy, Kind::kInflection}));
}

TEST_F(BiteTest, PropertyLengthBound) {
  Rng rng(101);
  const MorphLexicon& lex = testing::ShippedLexicon();
  for (int iter = 0; iter < 2000; ++iter) {
    const auto s = testing::RandomTaggedSentence(rng, false);
    size_t inflected = 0;
    for (const auto& t : s) {
      if (IsContentTag(t.tag) &&
          lex.InflectionOf(t.surface, t.tag)->has_value()) {
        ++inflected;
      }
    }
    const auto enc = codec_.Encode(s, BiteMode::kStandard);
    EXPECT_EQ(enc.size() - s.size(), inflected);
    EXPECT_LE(enc.size(), 2 * s.size());
    if (inflected < s.size()) {
      EXPECT_LT(enc.size(), 2 * s.size());
    }
    // Inflection symbols only ever follow a base form.
    for (size_t i = 0; i < enc.size(); ++i) {
      if (enc[i].kind == Kind::kInflection) {
        ASSERT_GT(i, 0u);
        EXPECT_EQ(enc[i - 1].kind, Kind::kBaseForm);
      }
    }
  }
}

TEST_F(BiteTest, PropertyAblatedMatchesStandardUpToDummy) {
  Rng rng(202);
  for (int iter = 0; iter < 2000; ++iter) {
    const auto s = testing::RandomTaggedSentence(rng, false);
    auto standard = codec_.Encode(s, BiteMode::kStandard);
    for (auto& sym : standard) {
      if (sym.kind == Kind::kInflection) sym = {Kind::kDummy, "[INFL]"};
    }
    EXPECT_EQ(standard, codec_.Encode(s, BiteMode::kAblated));
  }
}

TEST_F(BiteTest, PropertyBaseFormConsistency) {
  const auto& table = testing::ShippedInflectionRows();
  std::map<std::string, std::vector<const testing::InflectionRows::Row*>>
      by_lemma;
  for (const auto& r : table.rows) {
    if (table.Unique(r)) by_lemma[r.lemma].push_back(&r);
  }
  Rng rng(303);
  std::vector<std::string> lemmas;
  for (const auto& [l, _] : by_lemma) lemmas.push_back(l);
  rng.Shuffle(lemmas);
  lemmas.resize(3000);
  lemmas.push_back("take");
  for (const auto& lemma : lemmas) {
    std::set<std::string> bases;
    for (const auto* r : by_lemma[lemma]) {
      const auto enc = codec_.Encode(
          std::vector<TaggedToken>{{r->surface, r->tag}}, BiteMode::kStandard);
      bases.insert(enc[0].text);
    }
    EXPECT_EQ(bases, std::set<std::string>{lemma}) << lemma;
  }
}

TEST_F(BiteTest, PropertyRoundTripOnCoveredSentences) {
  Rng rng(404);
  for (int iter = 0; iter < 3000; ++iter) {
    auto s = testing::RandomTaggedSentence(rng, true);
    if (rng.UniformIndex(2) == 0 && IsContentTag(s[0].tag) &&
        s[0].surface[0] >= 'a' && s[0].surface[0] <= 'z') {
      s[0].surface[0] = static_cast<char>(s[0].surface[0] - 'a' + 'A');
    }
    std::vector<std::string> surfaces;
    for (const auto& t : s) surfaces.push_back(t.surface);
    for (const BiteCodec* c : {&codec_, &first_}) {
      absl::StatusOr<std::vector<std::string>> back =
          c->Decode(c->Encode(s, BiteMode::kStandard));
      ASSERT_TRUE(back.ok()) << back.status();
      EXPECT_EQ(*back, surfaces) << Join(surfaces, " ");
    }
  }
}

}  // namespace
}  // namespace bite
