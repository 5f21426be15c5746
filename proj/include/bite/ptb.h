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

#ifndef BITE_PTB_H_
#define BITE_PTB_H_

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>

namespace bite {

// The declared Penn Treebank tag set: the 36 part-of-speech tags followed by
// the 9 punctuation tags. Enumerator order is the canonical tag order.
// clang-format off
enum class PosTag : uint8_t {
  kCC, kCD, kDT, kEX, kFW, kIN, kJJ, kJJR, kJJS, kLS, kMD, kNN, kNNS, kNNP,
  kNNPS, kPDT, kPOS, kPRP, kPRPS, kRB, kRBR, kRBS, kRP, kSYM, kTO, kUH, kVB,
  kVBD, kVBG, kVBN, kVBP, kVBZ, kWDT, kWP, kWPS, kWRB,
  kHash, kDollar, kCloseQuote, kOpenQuote, kLeftParen, kRightParen, kComma,
  kPeriod, kColon,
};
// clang-format on

inline constexpr int kNumPosTags = 45;

// Coarse part of speech used by the content-word check.
enum class CoarsePos : uint8_t { kNoun, kVerb, kAdj, kOther };

// Printable name, e.g. "VBD", "PRP$", "``".
std::string_view TagName(PosTag tag);

// Inverse of TagName. Returns nullopt for strings outside the tag set.
std::optional<PosTag> ParseTag(std::string_view name);

// NN* -> noun, VB* -> verb, JJ* -> adjective, everything else -> other.
CoarsePos CoarsePosOf(PosTag tag);

inline bool IsContentTag(PosTag tag) {
  return CoarsePosOf(tag) != CoarsePos::kOther;
}

// NN, NNP, VB, JJ: the tags whose surface is, by definition, the base form.
bool IsBaseTag(PosTag tag);

// The 8 tags that can surface as inflection symbols:
// NNS, VBD, VBG, VBN, VBP, VBZ, JJR, JJS.
bool IsInflectionTag(PosTag tag);

inline constexpr std::array<PosTag, 8> kInflectionTags = {
    PosTag::kNNS, PosTag::kVBD, PosTag::kVBG, PosTag::kVBN,
    PosTag::kVBP, PosTag::kVBZ, PosTag::kJJR, PosTag::kJJS};

// The base-form tag of a content tag's family: NN for nouns, VB for verbs,
// JJ for adjectives. Proper-noun tags map to NN.
PosTag BaseTagOf(PosTag tag);

// All tags of a coarse family in canonical order (base tag first).
std::span<const PosTag> TagsOfFamily(CoarsePos pos);

}  // namespace bite

#endif  // BITE_PTB_H_
