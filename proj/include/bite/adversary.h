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

#ifndef BITE_ADVERSARY_H_
#define BITE_ADVERSARY_H_

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "bite/morph.h"
#include "bite/ptb.h"
#include "bite/tagger.h"

namespace bite {

struct PerturbationCandidate {
  size_t position = 0;
  std::string original;
  std::string variant;
  PosTag tag_of_variant = PosTag::kNN;

  bool operator==(const PerturbationCandidate&) const = default;
};

// Other inflections of the word's lemma within its part of speech, each
// tagged with the first tag (canonical order) that produces it. Only forms
// that lemmatize back to the same lemma are kept. Proper nouns have none.
// Fails for non-content tags.
absl::StatusOr<std::vector<PerturbationCandidate>> Variants(
    const MorphLexicon& lexicon, std::string_view surface, PosTag tag,
    size_t position = 0);

using Scorer =
    std::function<absl::StatusOr<double>(std::span<const TaggedToken>)>;

struct AttackResult {
  std::vector<TaggedToken> tokens;
  double score = 0;
};

// Left to right, each content word takes whichever of its surface and its
// variants maximizes `scorer` given the choices already made. Only a strict
// improvement replaces the current surface.
absl::StatusOr<AttackResult> GreedyAttack(const MorphLexicon& lexicon,
                                          std::span<const TaggedToken> sentence,
                                          const Scorer& scorer);

// `k` independent draws; every content word with variants gets a uniform
// choice among its surface and its variants.
absl::StatusOr<std::vector<std::vector<TaggedToken>>> SamplePerturbations(
    const MorphLexicon& lexicon, std::span<const TaggedToken> sentence, int k,
    uint64_t seed);

// Number of positions whose surface differs from `clean`.
Scorer HammingScorer(std::vector<TaggedToken> clean);

}  // namespace bite

#endif  // BITE_ADVERSARY_H_
