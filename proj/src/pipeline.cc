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

#include "bite/pipeline.h"

#include <filesystem>
#include <fstream>

#include "bite/adversary.h"
#include "bite/metrics.h"
#include "bite/pretokenizer.h"
#include "bite/unicode.h"
#include "fmt/core.h"

namespace bite {
namespace {

using json = nlohmann::ordered_json;
namespace fs = std::filesystem;

std::string Resolve(const std::string& base_dir, const std::string& path) {
  if (path.empty() || base_dir.empty() || fs::path(path).is_absolute()) {
    return path;
  }
  return (fs::path(base_dir) / path).string();
}

std::string InDir(const std::string& dir, std::string_view name) {
  return (fs::path(dir) / std::string(name)).string();
}

absl::Status WithContext(const absl::Status& s, std::string_view what) {
  return absl::Status(s.code(),
                      fmt::format("{}: {}", what, std::string(s.message())));
}

}  // namespace

std::string_view PipelineModeName(PipelineMode mode) {
  switch (mode) {
    case PipelineMode::kOff:
      return "off";
    case PipelineMode::kStandard:
      return "standard";
    case PipelineMode::kAblated:
      return "ablated";
  }
  return "";
}

absl::StatusOr<PipelineMode> ParsePipelineMode(std::string_view name) {
  for (PipelineMode m :
       {PipelineMode::kOff, PipelineMode::kStandard, PipelineMode::kAblated}) {
    if (PipelineModeName(m) == name) return m;
  }
  return absl::InvalidArgumentError(fmt::format(
      "unknown mode '{}'; expected one of off, standard, ablated", name));
}

std::string_view OverabundanceName(OverabundancePolicy policy) {
  return policy == OverabundancePolicy::kFirstEntry ? "first" : "agreement";
}

absl::StatusOr<OverabundancePolicy> ParseOverabundance(std::string_view name) {
  if (name == "first") return OverabundancePolicy::kFirstEntry;
  if (name == "agreement") return OverabundancePolicy::kAgreement;
  return absl::InvalidArgumentError(fmt::format(
      "unknown overabundance policy '{}'; expected first or agreement", name));
}

absl::StatusOr<PerturbMethod> ParsePerturbMethod(std::string_view name) {
  if (name == "greedy") return PerturbMethod::kGreedy;
  if (name == "sample") return PerturbMethod::kSample;
  return absl::InvalidArgumentError(fmt::format(
      "unknown perturbation method '{}'; expected greedy or sample", name));
}

absl::StatusOr<ScorerKind> ParseScorerKind(std::string_view name) {
  if (name == "encoding-divergence") return ScorerKind::kEncodingDivergence;
  if (name == "hamming") return ScorerKind::kHamming;
  return absl::InvalidArgumentError(fmt::format(
      "unknown scorer '{}'; expected encoding-divergence or hamming", name));
}

std::string DefaultLemmaPath() {
  return std::string(BITE_DATA_DIR) + "/lexicon/lemmas.tsv";
}

std::string DefaultInflectionPath() {
  return std::string(BITE_DATA_DIR) + "/lexicon/inflections.tsv";
}

PipelineConfig PipelineConfig::ForModelDir(const std::string& dir) {
  PipelineConfig config;
  if (dir.empty()) return config;
  const std::string tagger = InDir(dir, kTaggerFileName);
  const std::string subword = InDir(dir, kSubwordFileName);
  if (fs::exists(tagger)) config.tagger_path = tagger;
  if (fs::exists(subword)) config.subword_path = subword;
  return config;
}

absl::StatusOr<PipelineConfig> PipelineConfig::FromJson(
    const json& j, const std::string& base_dir) {
  if (!j.is_object()) {
    return absl::InvalidArgumentError("pipeline config must be a JSON object");
  }
  static const std::vector<std::string> kKeys = {
      "model_dir", "tagger", "lemmas",       "inflections",
      "subword",   "mode",   "overabundance"};
  for (const auto& [key, value] : j.items()) {
    if (std::find(kKeys.begin(), kKeys.end(), key) == kKeys.end()) {
      return absl::InvalidArgumentError(
          fmt::format("unknown config key '{}'", key));
    }
    if (!value.is_string()) {
      return absl::InvalidArgumentError(
          fmt::format("config key '{}' must be a string", key));
    }
  }
  auto get = [&j](const char* key) {
    return j.contains(key) ? j[key].get<std::string>() : std::string();
  };
  PipelineConfig config = ForModelDir(Resolve(base_dir, get("model_dir")));
  if (j.contains("tagger"))
    config.tagger_path = Resolve(base_dir, get("tagger"));
  if (j.contains("subword")) {
    config.subword_path = Resolve(base_dir, get("subword"));
  }
  config.lemma_path = Resolve(base_dir, get("lemmas"));
  config.inflection_path = Resolve(base_dir, get("inflections"));
  if (j.contains("mode")) {
    absl::StatusOr<PipelineMode> mode = ParsePipelineMode(get("mode"));
    if (!mode.ok()) return mode.status();
    config.mode = *mode;
  }
  if (j.contains("overabundance")) {
    absl::StatusOr<OverabundancePolicy> p =
        ParseOverabundance(get("overabundance"));
    if (!p.ok()) return p.status();
    config.overabundance = *p;
  }
  return config;
}

absl::StatusOr<PipelineConfig> PipelineConfig::FromFile(
    const std::string& path) {
  std::ifstream in(path);
  if (!in) return absl::NotFoundError(fmt::format("cannot open '{}'", path));
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& e) {
    return absl::InvalidArgumentError(
        fmt::format("{}: invalid JSON: {}", path, e.what()));
  }
  return FromJson(j, fs::path(path).parent_path().string());
}

absl::StatusOr<std::unique_ptr<Pipeline>> Pipeline::Load(
    const PipelineConfig& config) {
  std::unique_ptr<Pipeline> p(new Pipeline());
  p->config_ = config;
  const std::string lemmas =
      config.lemma_path.empty() ? DefaultLemmaPath() : config.lemma_path;
  const std::string inflections = config.inflection_path.empty()
                                      ? DefaultInflectionPath()
                                      : config.inflection_path;
  absl::StatusOr<MorphLexicon> lexicon =
      MorphLexicon::Load(lemmas, inflections);
  if (!lexicon.ok()) return WithContext(lexicon.status(), "lexicon");
  p->lexicon_ = std::make_unique<MorphLexicon>(*std::move(lexicon));
  p->codec_ =
      std::make_unique<BiteCodec>(p->lexicon_.get(), config.overabundance);
  if (!config.tagger_path.empty()) {
    absl::StatusOr<PerceptronTagger> tagger =
        PerceptronTagger::LoadFile(config.tagger_path);
    if (!tagger.ok()) {
      return WithContext(tagger.status(), config.tagger_path);
    }
    p->tagger_ = *std::move(tagger);
  }
  if (!config.subword_path.empty()) {
    absl::StatusOr<SubwordModel> subword =
        SubwordModel::LoadFile(config.subword_path);
    if (!subword.ok()) {
      return WithContext(subword.status(), config.subword_path);
    }
    p->subword_ = *std::move(subword);
  }
  return p;
}

absl::StatusOr<std::vector<TaggedToken>> Pipeline::Tag(
    std::string_view line) const {
  if (!tagger_) return absl::FailedPreconditionError("no tagger model loaded");
  return tagger_->TagTokens(Pretokenize(line));
}

std::vector<std::string> Pipeline::Transform(
    std::span<const TaggedToken> tokens, PipelineMode mode) const {
  if (mode == PipelineMode::kOff) {
    std::vector<std::string> out;
    out.reserve(tokens.size());
    for (const TaggedToken& t : tokens) out.push_back(t.surface);
    return out;
  }
  return SymbolTexts(codec_->Encode(tokens, mode == PipelineMode::kAblated
                                                ? BiteMode::kAblated
                                                : BiteMode::kStandard));
}

absl::StatusOr<std::vector<std::string>> Pipeline::TransformLine(
    std::string_view line, PipelineMode mode) const {
  if (mode == PipelineMode::kOff) return PretokenizeSurfaces(line);
  absl::StatusOr<std::vector<TaggedToken>> tagged = Tag(line);
  if (!tagged.ok()) return tagged.status();
  return Transform(*tagged, mode);
}

absl::StatusOr<EncodedSequence> Pipeline::Encode(std::string_view line,
                                                 PipelineMode mode) const {
  if (!subword_)
    return absl::FailedPreconditionError("no subword model loaded");
  absl::StatusOr<std::vector<std::string>> symbols = TransformLine(line, mode);
  if (!symbols.ok()) return symbols.status();
  return subword_->Encode(*symbols);
}

absl::StatusOr<EncodedSequence> Pipeline::EncodeTagged(
    std::span<const TaggedToken> tokens, PipelineMode mode) const {
  if (!subword_)
    return absl::FailedPreconditionError("no subword model loaded");
  return subword_->Encode(Transform(tokens, mode));
}

absl::StatusOr<std::vector<std::string>> Pipeline::Decode(
    std::span<const int> ids, PipelineMode mode) const {
  if (!subword_)
    return absl::FailedPreconditionError("no subword model loaded");
  absl::StatusOr<std::vector<std::string>> symbols = subword_->Decode(ids);
  if (!symbols.ok() || mode == PipelineMode::kOff) return symbols;
  return codec_->DecodeTexts(*symbols);
}

absl::StatusOr<std::vector<PerturbRecord>> Pipeline::Perturb(
    std::string_view line, const PerturbOptions& options) const {
  absl::StatusOr<std::vector<TaggedToken>> clean = Tag(line);
  if (!clean.ok()) return clean.status();
  Scorer scorer;
  if (options.scorer == ScorerKind::kHamming) {
    scorer = HammingScorer(*clean);
  } else {
    absl::StatusOr<EncodedSequence> reference =
        EncodeTagged(*clean, config_.mode);
    if (!reference.ok()) return reference.status();
    scorer = [this, ref = reference->symbols, retag = options.retag](
                 std::span<const TaggedToken> s) -> absl::StatusOr<double> {
      std::vector<TaggedToken> retagged;
      if (retag) {
        std::vector<std::string> words;
        for (const TaggedToken& t : s) words.push_back(t.surface);
        const std::vector<PosTag> tags = tagger_->Tag(words);
        for (size_t i = 0; i < words.size(); ++i) {
          retagged.push_back({std::move(words[i]), tags[i]});
        }
        s = retagged;
      }
      absl::StatusOr<EncodedSequence> e = EncodeTagged(s, config_.mode);
      if (!e.ok()) return e.status();
      return 1.0 - Similarity(ref, e->symbols);
    };
  }
  std::vector<PerturbRecord> records;
  if (options.method == PerturbMethod::kGreedy) {
    absl::StatusOr<AttackResult> r = GreedyAttack(*lexicon_, *clean, scorer);
    if (!r.ok()) return r.status();
    records.push_back({*clean, std::move(r->tokens), r->score});
    return records;
  }
  auto samples =
      SamplePerturbations(*lexicon_, *clean, options.k, options.seed);
  if (!samples.ok()) return samples.status();
  for (auto& s : *samples) {
    absl::StatusOr<double> score = scorer(s);
    if (!score.ok()) return score.status();
    records.push_back({*clean, std::move(s), *score});
  }
  return records;
}

json EncodedToJson(const EncodedSequence& encoded) {
  json j;
  j["symbols"] = encoded.symbols;
  j["ids"] = encoded.ids;
  return j;
}

json TaggedToJson(std::span<const TaggedToken> tokens) {
  json out = json::array();
  for (const TaggedToken& t : tokens) {
    json tok;
    tok["surface"] = t.surface;
    tok["tag"] = std::string(TagName(t.tag));
    out.push_back(std::move(tok));
  }
  return out;
}

json PerturbRecordToJson(const PerturbRecord& record) {
  json j;
  j["clean"] = JoinSurfaces(record.clean);
  j["adversarial"] = JoinSurfaces(record.adversarial);
  j["score"] = record.score;
  return j;
}

std::string JoinTokens(std::span<const std::string> tokens) {
  std::string out;
  for (const std::string& t : tokens) {
    if (!out.empty()) out += ' ';
    out += t;
  }
  return out;
}

std::string JoinSurfaces(std::span<const TaggedToken> tokens) {
  std::string out;
  for (const TaggedToken& t : tokens) {
    if (!out.empty()) out += ' ';
    out += t.surface;
  }
  return out;
}

PreprocessStats PreprocessCorpus(std::istream& in, std::ostream& out,
                                 const PreprocessOptions& options) {
  PreprocessStats stats;
  std::string line;
  while (std::getline(in, line)) {
    // Trim surrounding whitespace and count words and characters.
    size_t first = std::string::npos, last = 0;
    int64_t words = 0, chars = 0;
    bool in_word = false;
    for (size_t pos = 0; pos < line.size();) {
      const Utf8Char c = DecodeUtf8(line, pos);
      const bool space = c.valid && IsUnicodeWhitespace(c.code_point);
      if (!space) {
        if (first == std::string::npos) first = pos;
        last = pos + c.length;
        if (!in_word) ++words;
      }
      in_word = !space;
      pos += c.length;
    }
    if (first == std::string::npos) {
      ++stats.dropped_blank;
      continue;
    }
    const std::string_view kept =
        std::string_view(line).substr(first, last - first);
    chars = static_cast<int64_t>(Utf8Length(kept));
    if (words < options.min_words || chars < options.min_chars) {
      ++stats.dropped_short;
      continue;
    }
    out << kept << '\n';
    ++stats.kept;
  }
  return stats;
}

}  // namespace bite
