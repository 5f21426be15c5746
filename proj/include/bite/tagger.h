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

#ifndef BITE_TAGGER_H_
#define BITE_TAGGER_H_

#include <cstdint>
#include <istream>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "absl/container/flat_hash_map.h"
#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "bite/pretokenizer.h"
#include "bite/ptb.h"

namespace bite {

struct TaggedToken {
  std::string surface;
  PosTag tag = PosTag::kNN;

  bool operator==(const TaggedToken&) const = default;
};

using TaggedSentence = std::vector<TaggedToken>;

// Reads "surface<TAB>tag" lines with blank lines between sentences. Errors
// name the offending tag and line number.
absl::StatusOr<std::vector<TaggedSentence>> ReadTaggedCorpus(std::istream& in);
absl::StatusOr<std::vector<TaggedSentence>> ReadTaggedCorpusFile(
    const std::string& path);

void WriteTaggedCorpus(std::span<const TaggedSentence> corpus,
                       std::ostream& out);

struct TrainOptions {
  int epochs = 5;
  uint64_t seed = 0;
};

// Averaged perceptron with greedy left-to-right decoding.
//
// Model file (text, "bite-perceptron 1"):
//   tags <n>                 followed by n tag names, one per line
//   lexicon <n>              followed by n "word<TAB>tag" lines
//   features <n>             followed by n "feature<TAB>k<TAB>tag w ..." lines
// Weights are written in shortest round-trip decimal form.
class PerceptronTagger {
 public:
  static constexpr int kLexiconMinCount = 20;
  static constexpr double kLexiconMinRate = 0.97;
  // Previous-tag features before the first word.
  static constexpr std::string_view kStart = "-START-";
  static constexpr std::string_view kStart2 = "-START2-";

  PerceptronTagger() = default;

  static absl::StatusOr<PerceptronTagger> Train(
      std::span<const TaggedSentence> corpus, const TrainOptions& options);

  std::vector<PosTag> Tag(std::span<const std::string> words) const;
  std::vector<TaggedToken> TagTokens(std::span<const WordToken> tokens) const;

  absl::Status Save(std::ostream& out) const;
  absl::Status SaveFile(const std::string& path) const;
  static absl::StatusOr<PerceptronTagger> Load(std::istream& in);
  static absl::StatusOr<PerceptronTagger> LoadFile(const std::string& path);

  std::span<const PosTag> tag_set() const { return tag_set_; }
  std::optional<PosTag> LexiconTag(std::string_view word) const;
  // Averaged weight of (feature, tag); zero when absent.
  double Weight(std::string_view feature, PosTag tag) const;
  size_t num_features() const { return weights_.size(); }

  // Feature strings for position i given the two previously predicted tags.
  static std::vector<std::string> Features(std::span<const std::string> words,
                                           size_t i, std::string_view prev,
                                           std::string_view prev2);

 private:
  using WeightRow = std::vector<std::pair<uint8_t, double>>;

  int Predict(const std::vector<std::string>& features) const;

  std::vector<PosTag> tag_set_;
  absl::flat_hash_map<std::string, PosTag> lexicon_;
  absl::flat_hash_map<std::string, WeightRow> weights_;
};

}  // namespace bite

#endif  // BITE_TAGGER_H_
