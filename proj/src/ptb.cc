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

#include "bite/ptb.h"

namespace bite {
namespace {

// clang-format off
constexpr std::array<std::string_view, kNumPosTags> kTagNames = {
    "CC",  "CD",  "DT",   "EX",  "FW",  "IN",   "JJ",  "JJR", "JJS",
    "LS",  "MD",  "NN",   "NNS", "NNP", "NNPS", "PDT", "POS", "PRP",
    "PRP$", "RB", "RBR",  "RBS", "RP",  "SYM",  "TO",  "UH",  "VB",
    "VBD", "VBG", "VBN",  "VBP", "VBZ", "WDT",  "WP",  "WP$", "WRB",
    "#",   "$",   "''",   "``",  "(",   ")",    ",",   ".",   ":"};
// clang-format on

constexpr std::array<PosTag, 2> kNounFamily = {PosTag::kNN, PosTag::kNNS};
constexpr std::array<PosTag, 6> kVerbFamily = {PosTag::kVB,  PosTag::kVBD,
                                               PosTag::kVBG, PosTag::kVBN,
                                               PosTag::kVBP, PosTag::kVBZ};
constexpr std::array<PosTag, 3> kAdjFamily = {PosTag::kJJ, PosTag::kJJR,
                                              PosTag::kJJS};

}  // namespace

std::string_view TagName(PosTag tag) {
  return kTagNames[static_cast<size_t>(tag)];
}

std::optional<PosTag> ParseTag(std::string_view name) {
  for (size_t i = 0; i < kTagNames.size(); ++i) {
    if (kTagNames[i] == name) return static_cast<PosTag>(i);
  }
  return std::nullopt;
}

CoarsePos CoarsePosOf(PosTag tag) {
  switch (tag) {
    case PosTag::kNN:
    case PosTag::kNNS:
    case PosTag::kNNP:
    case PosTag::kNNPS:
      return CoarsePos::kNoun;
    case PosTag::kVB:
    case PosTag::kVBD:
    case PosTag::kVBG:
    case PosTag::kVBN:
    case PosTag::kVBP:
    case PosTag::kVBZ:
      return CoarsePos::kVerb;
    case PosTag::kJJ:
    case PosTag::kJJR:
    case PosTag::kJJS:
      return CoarsePos::kAdj;
    default:
      return CoarsePos::kOther;
  }
}

bool IsBaseTag(PosTag tag) {
  return tag == PosTag::kNN || tag == PosTag::kNNP || tag == PosTag::kVB ||
         tag == PosTag::kJJ;
}

bool IsInflectionTag(PosTag tag) {
  for (PosTag t : kInflectionTags) {
    if (t == tag) return true;
  }
  return false;
}

PosTag BaseTagOf(PosTag tag) {
  switch (CoarsePosOf(tag)) {
    case CoarsePos::kNoun:
      return PosTag::kNN;
    case CoarsePos::kVerb:
      return PosTag::kVB;
    case CoarsePos::kAdj:
      return PosTag::kJJ;
    case CoarsePos::kOther:
      break;
  }
  return tag;
}

std::span<const PosTag> TagsOfFamily(CoarsePos pos) {
  switch (pos) {
    case CoarsePos::kNoun:
      return kNounFamily;
    case CoarsePos::kVerb:
      return kVerbFamily;
    case CoarsePos::kAdj:
      return kAdjFamily;
    case CoarsePos::kOther:
      break;
  }
  return {};
}

}  // namespace bite
