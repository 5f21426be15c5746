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

#include "bite/adversary.h"

#include <algorithm>

#include "absl/container/flat_hash_set.h"
#include "bite/random.h"
#include "fmt/core.h"

namespace bite {
namespace {

bool IsProperNoun(PosTag tag) {
  return tag == PosTag::kNNP || tag == PosTag::kNNPS;
}

// Variants for every position; empty for non-content words.
absl::StatusOr<std::vector<std::vector<PerturbationCandidate>>> AllVariants(
    const MorphLexicon& lexicon, std::span<const TaggedToken> sentence) {
  std::vector<std::vector<PerturbationCandidate>> out(sentence.size());
  for (size_t i = 0; i < sentence.size(); ++i) {
    if (!IsContentTag(sentence[i].tag)) continue;
    absl::StatusOr<std::vector<PerturbationCandidate>> v =
        Variants(lexicon, sentence[i].surface, sentence[i].tag, i);
    if (!v.ok()) return v.status();
    out[i] = *std::move(v);
  }
  return out;
}

}  // namespace

absl::StatusOr<std::vector<PerturbationCandidate>> Variants(
    const MorphLexicon& lexicon, std::string_view surface, PosTag tag,
    size_t position) {
  absl::StatusOr<std::string> lemma = lexicon.Lemmatize(surface, tag);
  if (!lemma.ok()) return lemma.status();
  std::vector<PerturbationCandidate> out;
  if (IsProperNoun(tag)) return out;
  absl::flat_hash_set<std::string> seen = {std::string(surface)};
  for (PosTag t : TagsOfFamily(CoarsePosOf(tag))) {
    for (std::string& form : lexicon.InflectAll(*lemma, t)) {
      if (seen.contains(form)) continue;
      absl::StatusOr<std::string> back = lexicon.Lemmatize(form, t);
      if (!back.ok() || *back != *lemma) continue;
      seen.insert(form);
      out.push_back({position, std::string(surface), std::move(form), t});
    }
  }
  return out;
}

absl::StatusOr<AttackResult> GreedyAttack(const MorphLexicon& lexicon,
                                          std::span<const TaggedToken> sentence,
                                          const Scorer& scorer) {
  auto variants = AllVariants(lexicon, sentence);
  if (!variants.ok()) return variants.status();
  AttackResult result;
  result.tokens.assign(sentence.begin(), sentence.end());
  absl::StatusOr<double> score = scorer(result.tokens);
  if (!score.ok()) {
    return absl::Status(score.status().code(),
                        fmt::format("scoring the clean sentence: {}",
                                    std::string(score.status().message())));
  }
  result.score = *score;
  for (size_t i = 0; i < sentence.size(); ++i) {
    const TaggedToken kept = result.tokens[i];
    TaggedToken best = kept;
    for (const PerturbationCandidate& c : (*variants)[i]) {
      result.tokens[i] = {c.variant, c.tag_of_variant};
      absl::StatusOr<double> s = scorer(result.tokens);
      if (!s.ok()) {
        return absl::Status(
            s.status().code(),
            fmt::format("scoring position {} ('{}' -> '{}'): {}", i, c.original,
                        c.variant, std::string(s.status().message())));
      }
      if (*s > result.score) {
        result.score = *s;
        best = result.tokens[i];
      }
    }
    result.tokens[i] = best;
  }
  return result;
}

absl::StatusOr<std::vector<std::vector<TaggedToken>>> SamplePerturbations(
    const MorphLexicon& lexicon, std::span<const TaggedToken> sentence, int k,
    uint64_t seed) {
  if (k < 1) return absl::InvalidArgumentError("k must be at least 1");
  auto variants = AllVariants(lexicon, sentence);
  if (!variants.ok()) return variants.status();
  Rng rng(seed);
  std::vector<std::vector<TaggedToken>> out;
  out.reserve(k);
  for (int draw = 0; draw < k; ++draw) {
    std::vector<TaggedToken> tokens(sentence.begin(), sentence.end());
    for (size_t i = 0; i < tokens.size(); ++i) {
      const auto& v = (*variants)[i];
      if (v.empty()) continue;
      const uint64_t pick = rng.UniformIndex(v.size() + 1);
      if (pick > 0)
        tokens[i] = {v[pick - 1].variant, v[pick - 1].tag_of_variant};
    }
    out.push_back(std::move(tokens));
  }
  return out;
}

Scorer HammingScorer(std::vector<TaggedToken> clean) {
  return [clean = std::move(clean)](
             std::span<const TaggedToken> s) -> absl::StatusOr<double> {
    if (s.size() != clean.size()) {
      return absl::InvalidArgumentError("sentence length changed");
    }
    double d = 0;
    for (size_t i = 0; i < s.size(); ++i) d += s[i].surface != clean[i].surface;
    return d;
  };
}

}  // namespace bite
