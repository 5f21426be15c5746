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

#include "test_support.h"

#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "bite/pipeline.h"
#include "bite/text_util.h"
#include "bite/unicode.h"

namespace bite::testing {
namespace {

namespace fs = std::filesystem;

template <typename T>
T OrDie(absl::StatusOr<T> v, std::string_view what) {
  if (!v.ok()) {
    throw std::runtime_error(std::string(what) + ": " +
                             std::string(v.status().message()));
  }
  return *std::move(v);
}

void OrDie(const absl::Status& s, std::string_view what) {
  if (!s.ok()) {
    throw std::runtime_error(std::string(what) + ": " +
                             std::string(s.message()));
  }
}

}  // namespace

std::string DataPath(std::string_view relative) {
  return std::string(BITE_DATA_DIR) + "/" + std::string(relative);
}

const MorphLexicon& ShippedLexicon() {
  static const MorphLexicon* lexicon = new MorphLexicon(
      OrDie(MorphLexicon::Load(DataPath("lexicon/lemmas.tsv"),
                               DataPath("lexicon/inflections.tsv")),
            "lexicon"));
  return *lexicon;
}

const std::vector<TaggedSentence>& OancCorpus() {
  static const auto* corpus = new std::vector<TaggedSentence>(
      OrDie(ReadTaggedCorpusFile(DataPath("corpora/oanc-tagged.tsv")), "oanc"));
  return *corpus;
}

std::vector<TaggedSentence> OancTrainSplit() {
  const auto& all = OancCorpus();
  return {all.begin(), all.begin() + all.size() * 9 / 10};
}

std::vector<TaggedSentence> OancHeldOut() {
  const auto& all = OancCorpus();
  return {all.begin() + all.size() * 9 / 10, all.end()};
}

const PerceptronTagger& SharedTagger() {
  static const PerceptronTagger* tagger = [] {
    const fs::path dir = BITE_TEST_CACHE_DIR;
    const fs::path path = dir / "tagger-oanc90.model";
    if (fs::exists(path)) {
      absl::StatusOr<PerceptronTagger> cached =
          PerceptronTagger::LoadFile(path.string());
      if (cached.ok()) return new PerceptronTagger(*std::move(cached));
    }
    const std::vector<TaggedSentence> train = OancTrainSplit();
    auto* t = new PerceptronTagger(
        OrDie(PerceptronTagger::Train(train, TrainOptions{}), "tagger"));
    std::error_code ec;
    fs::create_directories(dir, ec);
    // Concurrent test processes each write their own file and rename.
    const fs::path tmp = dir / ("tagger." + std::to_string(getpid()) + ".tmp");
    if (t->SaveFile(tmp.string()).ok()) fs::rename(tmp, path, ec);
    return t;
  }();
  return *tagger;
}

std::string SharedModelDir() {
  static const std::string* dir = [] {
    const fs::path d = fs::path(BITE_TEST_CACHE_DIR) / "bpe20k-bite";
    const fs::path tagger = d / std::string(kTaggerFileName);
    const fs::path subword = d / std::string(kSubwordFileName);
    if (fs::exists(tagger) && fs::exists(subword) &&
        SubwordModel::LoadFile(subword.string()).ok()) {
      return new std::string(d.string());
    }
    std::error_code ec;
    fs::create_directories(d, ec);
    const std::string pid = std::to_string(getpid());
    const fs::path tagger_tmp = d / ("tagger." + pid + ".tmp");
    OrDie(SharedTagger().SaveFile(tagger_tmp.string()), "tagger");
    fs::rename(tagger_tmp, tagger, ec);

    PipelineConfig config;
    config.tagger_path = tagger.string();
    const std::unique_ptr<Pipeline> pipeline =
        OrDie(Pipeline::Load(config), "pipeline");
    std::vector<std::vector<std::string>> corpus;
    for (const std::string& line : GutenbergLines()) {
      corpus.push_back(OrDie(
          pipeline->TransformLine(line, PipelineMode::kStandard), "bite"));
    }
    SubwordTrainOptions options;
    options.vocab_size = 20000;
    options.special_symbols = BiteSpecialSymbols();
    const SubwordModel model =
        OrDie(SubwordModel::Train(corpus, options), "bpe");
    const fs::path subword_tmp = d / ("subword." + pid + ".tmp");
    OrDie(model.SaveFile(subword_tmp.string()), "save");
    fs::rename(subword_tmp, subword, ec);
    return new std::string(d.string());
  }();
  return *dir;
}

const std::vector<std::string>& GutenbergLines() {
  static const auto* lines = [] {
    auto* out = new std::vector<std::string>;
    std::ifstream in(DataPath("corpora/gutenberg-sentences.txt"));
    if (!in) throw std::runtime_error("missing gutenberg corpus");
    std::string line;
    while (std::getline(in, line)) out->emplace_back(StripCr(line));
    return out;
  }();
  return *lines;
}

std::string ScratchDir() {
  static const std::string dir = [] {
    const fs::path p =
        fs::temp_directory_path() / ("bite-test-" + std::to_string(getpid()));
    fs::create_directories(p);
    return p.string();
  }();
  return dir;
}

std::string ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void WriteFile(const std::string& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary);
  out << content;
}

std::string RandomString(Rng& rng, std::string_view alphabet, int min_len,
                         int max_len) {
  const int len =
      min_len + static_cast<int>(rng.UniformIndex(max_len - min_len + 1));
  const std::vector<std::string> chars = SplitUtf8(alphabet);
  std::string s;
  for (int i = 0; i < len; ++i) s += chars[rng.UniformIndex(chars.size())];
  return s;
}

const InflectionRows& ShippedInflectionRows() {
  static const InflectionRows* rows = [] {
    auto* out = new InflectionRows;
    std::ifstream in(DataPath("lexicon/inflections.tsv"));
    std::string line;
    while (std::getline(in, line)) {
      if (IsSkippableLine(line)) continue;
      const auto f = SplitTabs(line);
      int rank = 0;
      ParseInt(f[3], &rank);
      const PosTag tag = *ParseTag(f[1]);
      out->rows.push_back({std::string(f[0]), tag, std::string(f[2]), rank});
      out->producers[{std::string(f[2]), tag}].insert(std::string(f[0]));
    }
    return out;
  }();
  return *rows;
}

namespace {

constexpr std::pair<const char*, PosTag> kFiller[] = {
    {"the", PosTag::kDT},  {"of", PosTag::kIN},  {"and", PosTag::kCC},
    {",", PosTag::kComma}, {"it", PosTag::kPRP}, {".", PosTag::kPeriod},
    {"very", PosTag::kRB}, {"3", PosTag::kCD}};

}  // namespace

std::vector<TaggedToken> RandomTaggedSentence(Rng& rng, bool reconstructible) {
  const InflectionRows& table = ShippedInflectionRows();
  const size_t n = 1 + rng.UniformIndex(12);
  std::vector<TaggedToken> s;
  while (s.size() < n) {
    const size_t pick = rng.UniformIndex(4);
    if (pick == 0) {
      const auto& f = kFiller[rng.UniformIndex(std::size(kFiller))];
      s.push_back({f.first, f.second});
      continue;
    }
    const auto& r = table.rows[rng.UniformIndex(table.rows.size())];
    if (reconstructible &&
        (r.rank != 1 || !table.Unique(r) || r.lemma == "be")) {
      continue;
    }
    if (pick == 1) {
      s.push_back({r.lemma, BaseTagOf(r.tag)});
    } else {
      s.push_back({r.surface, r.tag});
    }
  }
  return s;
}

}  // namespace bite::testing
