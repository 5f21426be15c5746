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

#ifndef BITE_PIPELINE_H_
#define BITE_PIPELINE_H_

#include <cstdint>
#include <istream>
#include <memory>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "absl/status/statusor.h"
#include "bite/bite.h"
#include "bite/morph.h"
#include "bite/subword.h"
#include "bite/tagger.h"
#include "nlohmann/json.hpp"

namespace bite {

// What happens between tagging and subword encoding.
enum class PipelineMode { kOff, kStandard, kAblated };

std::string_view PipelineModeName(PipelineMode mode);
// The error names the accepted spellings.
absl::StatusOr<PipelineMode> ParsePipelineMode(std::string_view name);

std::string_view OverabundanceName(OverabundancePolicy policy);
absl::StatusOr<OverabundancePolicy> ParseOverabundance(std::string_view name);

inline constexpr std::string_view kTaggerFileName = "tagger.model";
inline constexpr std::string_view kSubwordFileName = "subword.json";

struct PipelineConfig {
  // Empty paths are simply not loaded; the lexicon defaults to the shipped
  // tables.
  std::string tagger_path;
  std::string lemma_path;
  std::string inflection_path;
  std::string subword_path;
  PipelineMode mode = PipelineMode::kStandard;
  OverabundancePolicy overabundance = OverabundancePolicy::kAgreement;

  // tagger.model and subword.json inside `dir`, when present.
  static PipelineConfig ForModelDir(const std::string& dir);

  // Keys: model_dir, tagger, lemmas, inflections, subword, mode,
  // overabundance. Relative paths resolve against `base_dir`. Unknown keys
  // are rejected.
  static absl::StatusOr<PipelineConfig> FromJson(
      const nlohmann::ordered_json& j, const std::string& base_dir = "");
  static absl::StatusOr<PipelineConfig> FromFile(const std::string& path);
};

std::string DefaultLemmaPath();
std::string DefaultInflectionPath();

struct PerturbRecord {
  std::vector<TaggedToken> clean;
  std::vector<TaggedToken> adversarial;
  double score = 0;
};

enum class PerturbMethod { kGreedy, kSample };
enum class ScorerKind { kEncodingDivergence, kHamming };

absl::StatusOr<PerturbMethod> ParsePerturbMethod(std::string_view name);
absl::StatusOr<ScorerKind> ParseScorerKind(std::string_view name);

struct PerturbOptions {
  PerturbMethod method = PerturbMethod::kGreedy;
  int k = 4;
  uint64_t seed = 0;
  ScorerKind scorer = ScorerKind::kEncodingDivergence;
  // Re-run the tagger on each candidate before encoding it, instead of
  // trusting the dictionary tag of the variant.
  bool retag = false;
};

// Pretokenizer, tagger, BITE and subword model loaded together. Immutable
// after Load, so concurrent use is safe.
class Pipeline {
 public:
  static absl::StatusOr<std::unique_ptr<Pipeline>> Load(
      const PipelineConfig& config);

  const PipelineConfig& config() const { return config_; }
  bool has_tagger() const { return tagger_.has_value(); }
  bool has_subword() const { return subword_.has_value(); }
  const MorphLexicon& lexicon() const { return *lexicon_; }
  const BiteCodec& codec() const { return *codec_; }
  const PerceptronTagger* tagger() const {
    return tagger_ ? &*tagger_ : nullptr;
  }
  const SubwordModel* subword() const {
    return subword_ ? &*subword_ : nullptr;
  }

  absl::StatusOr<std::vector<TaggedToken>> Tag(std::string_view line) const;

  // Symbol strings handed to the subword model.
  std::vector<std::string> Transform(std::span<const TaggedToken> tokens,
                                     PipelineMode mode) const;
  // Pretokenizes, tags when BITE is on, and transforms.
  absl::StatusOr<std::vector<std::string>> TransformLine(
      std::string_view line, PipelineMode mode) const;

  absl::StatusOr<EncodedSequence> Encode(std::string_view line) const {
    return Encode(line, config_.mode);
  }
  absl::StatusOr<EncodedSequence> Encode(std::string_view line,
                                         PipelineMode mode) const;
  absl::StatusOr<EncodedSequence> EncodeTagged(
      std::span<const TaggedToken> tokens, PipelineMode mode) const;

  // Ids back to word tokens. Ablated encodings cannot be decoded.
  absl::StatusOr<std::vector<std::string>> Decode(
      std::span<const int> ids) const {
    return Decode(ids, config_.mode);
  }
  absl::StatusOr<std::vector<std::string>> Decode(std::span<const int> ids,
                                                  PipelineMode mode) const;

  // Encoding-divergence scores 1 - similarity of the pipeline encodings
  // (in the configured mode) against the clean sentence.
  absl::StatusOr<std::vector<PerturbRecord>> Perturb(
      std::string_view line, const PerturbOptions& options) const;

 private:
  Pipeline() = default;

  PipelineConfig config_;
  std::unique_ptr<MorphLexicon> lexicon_;
  std::unique_ptr<BiteCodec> codec_;
  std::optional<PerceptronTagger> tagger_;
  std::optional<SubwordModel> subword_;
};

// JSON shapes shared by the CLI and the C boundary.
nlohmann::ordered_json EncodedToJson(const EncodedSequence& encoded);
nlohmann::ordered_json TaggedToJson(std::span<const TaggedToken> tokens);
nlohmann::ordered_json PerturbRecordToJson(const PerturbRecord& record);
std::string JoinTokens(std::span<const std::string> tokens);
std::string JoinSurfaces(std::span<const TaggedToken> tokens);

struct PreprocessOptions {
  int min_words = 3;
  int min_chars = 4;
};

struct PreprocessStats {
  int64_t kept = 0;
  int64_t dropped_blank = 0;
  int64_t dropped_short = 0;
};

// Copies lines with at least min_words whitespace-separated words and
// min_chars characters (code points, surrounding whitespace excluded),
// stripping surrounding whitespace.
PreprocessStats PreprocessCorpus(std::istream& in, std::ostream& out,
                                 const PreprocessOptions& options);

}  // namespace bite

#endif  // BITE_PIPELINE_H_
