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

#include "bite/tagger.h"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <fstream>

#include "bite/random.h"
#include "bite/text_util.h"
#include "bite/unicode.h"
#include "fmt/core.h"

namespace bite {
namespace {

constexpr std::string_view kMagic = "bite-perceptron 1";
constexpr std::string_view kEnd = "-END-";

bool HasDigit(std::string_view w) {
  return std::any_of(w.begin(), w.end(),
                     [](char c) { return c >= '0' && c <= '9'; });
}

std::string Normalize(std::string_view word) {
  if (!word.empty() && word.front() >= '0' && word.front() <= '9') {
    return "!DIGITS";
  }
  return ToLower(word);
}

// Last k code points, or the whole word when it is shorter.
std::string Suffix(std::string_view word, size_t k) {
  const std::vector<std::string> chars = SplitUtf8(word);
  std::string out;
  for (size_t i = chars.size() > k ? chars.size() - k : 0; i < chars.size();
       ++i) {
    out += chars[i];
  }
  return out;
}

std::string FormatDouble(double v) {
  std::array<char, 32> buf;
  auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), ptr);
}

bool ParseDouble(std::string_view s, double* out) {
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), *out);
  return ec == std::errc() && ptr == s.data() + s.size();
}

int Argmax(const std::vector<double>& scores) {
  int best = 0;
  for (int t = 1; t < static_cast<int>(scores.size()); ++t) {
    if (scores[t] > scores[best]) best = t;
  }
  return best;
}

// Online weight with the running sum needed for averaging.
struct Accumulator {
  uint8_t tag;
  double weight = 0;
  double total = 0;
  int64_t stamp = 0;
};

}  // namespace

absl::StatusOr<std::vector<TaggedSentence>> ReadTaggedCorpus(std::istream& in) {
  std::vector<TaggedSentence> corpus;
  TaggedSentence current;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string_view view = StripCr(line);
    if (view.empty()) {
      if (!current.empty()) corpus.push_back(std::move(current));
      current.clear();
      continue;
    }
    const std::vector<std::string_view> f = SplitTabs(view);
    if (f.size() != 2 || f[0].empty()) {
      return absl::InvalidArgumentError(
          fmt::format("line {}: expected surface<TAB>tag", line_no));
    }
    std::optional<PosTag> tag = ParseTag(f[1]);
    if (!tag.has_value()) {
      return absl::InvalidArgumentError(
          fmt::format("line {}: unknown tag '{}'", line_no, f[1]));
    }
    current.push_back({std::string(f[0]), *tag});
  }
  if (!current.empty()) corpus.push_back(std::move(current));
  return corpus;
}

absl::StatusOr<std::vector<TaggedSentence>> ReadTaggedCorpusFile(
    const std::string& path) {
  std::ifstream in(path);
  if (!in) return absl::NotFoundError("cannot open " + path);
  absl::StatusOr<std::vector<TaggedSentence>> corpus = ReadTaggedCorpus(in);
  if (!corpus.ok()) {
    return absl::Status(corpus.status().code(),
                        path + ": " + std::string(corpus.status().message()));
  }
  return corpus;
}

void WriteTaggedCorpus(std::span<const TaggedSentence> corpus,
                       std::ostream& out) {
  for (const TaggedSentence& sentence : corpus) {
    for (const TaggedToken& t : sentence) {
      out << t.surface << '\t' << TagName(t.tag) << '\n';
    }
    out << '\n';
  }
}

std::vector<std::string> PerceptronTagger::Features(
    std::span<const std::string> words, size_t i, std::string_view prev,
    std::string_view prev2) {
  const std::string& word = words[i];
  const std::string w = Normalize(word);
  const std::string prev_word =
      i > 0 ? Normalize(words[i - 1]) : std::string(kStart);
  const std::string next_word =
      i + 1 < words.size() ? Normalize(words[i + 1]) : std::string(kEnd);

  std::vector<std::string> f;
  f.reserve(18);
  f.emplace_back("bias");
  f.push_back("w " + w);
  const size_t len = Utf8Length(w);
  for (size_t k = 1; k <= 3 && k <= len; ++k) {
    f.push_back(fmt::format("s{} {}", k, Suffix(w, k)));
  }
  if (!word.empty()) {
    f.push_back("c1 " +
                std::string(word.substr(0, DecodeUtf8(word, 0).length)));
  }
  f.push_back(fmt::format("t-1 {}", prev));
  f.push_back(fmt::format("t-2 {} {}", prev2, prev));
  f.push_back("w-1 " + prev_word);
  f.push_back("w+1 " + next_word);
  f.push_back("w-1s3 " + Suffix(prev_word, 3));
  f.push_back("w+1s3 " + Suffix(next_word, 3));
  if (HasDigit(word)) f.emplace_back("has-digit");
  if (word.find('-') != std::string::npos) f.emplace_back("has-hyphen");
  if (StartsUppercase(word)) f.emplace_back("capitalized");
  return f;
}

absl::StatusOr<PerceptronTagger> PerceptronTagger::Train(
    std::span<const TaggedSentence> corpus, const TrainOptions& options) {
  if (options.epochs < 1) {
    return absl::InvalidArgumentError("epochs must be >= 1");
  }
  if (corpus.empty()) return absl::InvalidArgumentError("empty corpus");

  PerceptronTagger model;
  std::array<int, kNumPosTags> index_of;
  index_of.fill(-1);
  {
    std::array<bool, kNumPosTags> seen{};
    for (const TaggedSentence& s : corpus) {
      for (const TaggedToken& t : s) seen[static_cast<int>(t.tag)] = true;
    }
    for (int t = 0; t < kNumPosTags; ++t) {
      if (!seen[t]) continue;
      index_of[t] = static_cast<int>(model.tag_set_.size());
      model.tag_set_.push_back(static_cast<PosTag>(t));
    }
  }
  const size_t num_tags = model.tag_set_.size();

  // Unambiguous lexicon.
  {
    absl::flat_hash_map<std::string, std::array<int, kNumPosTags>> counts;
    for (const TaggedSentence& s : corpus) {
      for (const TaggedToken& t : s) {
        auto [it, inserted] = counts.try_emplace(t.surface);
        if (inserted) it->second.fill(0);
        ++it->second[static_cast<int>(t.tag)];
      }
    }
    for (const auto& [word, by_tag] : counts) {
      int total = 0, best = 0;
      for (int t = 0; t < kNumPosTags; ++t) {
        total += by_tag[t];
        if (by_tag[t] > by_tag[best]) best = t;
      }
      if (total >= kLexiconMinCount &&
          by_tag[best] >= kLexiconMinRate * total) {
        model.lexicon_.emplace(word, static_cast<PosTag>(best));
      }
    }
  }

  absl::flat_hash_map<std::string, std::vector<Accumulator>> acc;
  int64_t instances = 0;
  auto update = [&](const std::string& feature, int tag, double delta) {
    std::vector<Accumulator>& row = acc[feature];
    auto it = std::find_if(row.begin(), row.end(),
                           [&](const Accumulator& a) { return a.tag == tag; });
    if (it == row.end()) {
      row.push_back({static_cast<uint8_t>(tag)});
      it = row.end() - 1;
    }
    it->total += static_cast<double>(instances - it->stamp) * it->weight;
    it->stamp = instances;
    it->weight += delta;
  };

  std::vector<size_t> order(corpus.size());
  for (size_t i = 0; i < order.size(); ++i) order[i] = i;
  Rng rng(options.seed);
  std::vector<double> scores(num_tags);
  std::vector<std::string> words;

  for (int epoch = 0; epoch < options.epochs; ++epoch) {
    rng.Shuffle(order);
    for (size_t si : order) {
      const TaggedSentence& sentence = corpus[si];
      words.clear();
      for (const TaggedToken& t : sentence) words.push_back(t.surface);
      std::string_view prev = kStart, prev2 = kStart2;
      for (size_t i = 0; i < sentence.size(); ++i) {
        int guess;
        if (auto it = model.lexicon_.find(words[i]);
            it != model.lexicon_.end()) {
          guess = index_of[static_cast<int>(it->second)];
        } else {
          const std::vector<std::string> feats =
              Features(words, i, prev, prev2);
          std::fill(scores.begin(), scores.end(), 0.0);
          for (const std::string& f : feats) {
            auto row = acc.find(f);
            if (row == acc.end()) continue;
            for (const Accumulator& a : row->second) {
              scores[a.tag] += a.weight;
            }
          }
          guess = Argmax(scores);
          ++instances;
          const int gold = index_of[static_cast<int>(sentence[i].tag)];
          if (guess != gold) {
            for (const std::string& f : feats) {
              update(f, gold, 1.0);
              update(f, guess, -1.0);
            }
          }
        }
        prev2 = prev;
        prev = TagName(model.tag_set_[guess]);
      }
    }
  }

  for (auto& [feature, row] : acc) {
    WeightRow averaged;
    for (const Accumulator& a : row) {
      const double total =
          a.total + static_cast<double>(instances - a.stamp) * a.weight;
      const double avg = total / static_cast<double>(instances);
      if (avg != 0.0) averaged.emplace_back(a.tag, avg);
    }
    if (averaged.empty()) continue;
    std::sort(averaged.begin(), averaged.end());
    model.weights_.emplace(feature, std::move(averaged));
  }
  return model;
}

int PerceptronTagger::Predict(const std::vector<std::string>& features) const {
  std::vector<double> scores(tag_set_.size(), 0.0);
  for (const std::string& f : features) {
    auto it = weights_.find(f);
    if (it == weights_.end()) continue;
    for (const auto& [tag, w] : it->second) scores[tag] += w;
  }
  return Argmax(scores);
}

std::vector<PosTag> PerceptronTagger::Tag(
    std::span<const std::string> words) const {
  std::vector<PosTag> out;
  out.reserve(words.size());
  if (tag_set_.empty()) return out;
  std::string_view prev = kStart, prev2 = kStart2;
  for (size_t i = 0; i < words.size(); ++i) {
    PosTag tag;
    if (auto it = lexicon_.find(words[i]); it != lexicon_.end()) {
      tag = it->second;
    } else {
      tag = tag_set_[Predict(Features(words, i, prev, prev2))];
    }
    out.push_back(tag);
    prev2 = prev;
    prev = TagName(tag);
  }
  return out;
}

std::vector<TaggedToken> PerceptronTagger::TagTokens(
    std::span<const WordToken> tokens) const {
  std::vector<std::string> words;
  words.reserve(tokens.size());
  for (const WordToken& t : tokens) words.push_back(t.surface);
  const std::vector<PosTag> tags = Tag(words);
  std::vector<TaggedToken> out;
  out.reserve(tokens.size());
  for (size_t i = 0; i < tokens.size(); ++i) {
    out.push_back({std::move(words[i]), tags[i]});
  }
  return out;
}

std::optional<PosTag> PerceptronTagger::LexiconTag(
    std::string_view word) const {
  auto it = lexicon_.find(std::string(word));
  if (it == lexicon_.end()) return std::nullopt;
  return it->second;
}

double PerceptronTagger::Weight(std::string_view feature, PosTag tag) const {
  auto it = weights_.find(std::string(feature));
  if (it == weights_.end()) return 0.0;
  for (const auto& [t, w] : it->second) {
    if (tag_set_[t] == tag) return w;
  }
  return 0.0;
}

absl::Status PerceptronTagger::Save(std::ostream& out) const {
  out << kMagic << '\n';
  out << "tags " << tag_set_.size() << '\n';
  for (PosTag t : tag_set_) out << TagName(t) << '\n';

  std::vector<std::pair<std::string, PosTag>> lexicon(lexicon_.begin(),
                                                      lexicon_.end());
  std::sort(lexicon.begin(), lexicon.end());
  out << "lexicon " << lexicon.size() << '\n';
  for (const auto& [word, tag] : lexicon) {
    out << word << '\t' << TagName(tag) << '\n';
  }

  std::vector<const std::pair<const std::string, WeightRow>*> rows;
  rows.reserve(weights_.size());
  for (const auto& entry : weights_) rows.push_back(&entry);
  std::sort(rows.begin(), rows.end(),
            [](const auto* a, const auto* b) { return a->first < b->first; });
  out << "features " << rows.size() << '\n';
  for (const auto* row : rows) {
    out << row->first << '\t' << row->second.size();
    for (const auto& [tag, w] : row->second) {
      out << '\t' << TagName(tag_set_[tag]) << ' ' << FormatDouble(w);
    }
    out << '\n';
  }
  if (!out) return absl::DataLossError("write failed");
  return absl::OkStatus();
}

absl::Status PerceptronTagger::SaveFile(const std::string& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) return absl::PermissionDeniedError("cannot write " + path);
  return Save(out);
}

absl::StatusOr<PerceptronTagger> PerceptronTagger::Load(std::istream& in) {
  std::string line;
  int line_no = 0;
  auto corrupt = [&](std::string_view what) {
    return absl::DataLossError(
        fmt::format("tagger model line {}: {}", line_no, what));
  };
  auto next = [&]() -> bool {
    if (!std::getline(in, line)) return false;
    ++line_no;
    return true;
  };
  auto read_count = [&](std::string_view key, int* n) -> bool {
    if (!next()) return false;
    const std::vector<std::string_view> f = SplitChar(line, ' ');
    return f.size() == 2 && f[0] == key && ParseInt(f[1], n) && *n >= 0;
  };

  if (!next() || line != kMagic) return corrupt("bad header");
  PerceptronTagger model;
  int n = 0;
  if (!read_count("tags", &n) || n == 0) return corrupt("expected tags <n>");
  std::array<int, kNumPosTags> index_of;
  index_of.fill(-1);
  for (int i = 0; i < n; ++i) {
    if (!next()) return corrupt("truncated tag list");
    std::optional<PosTag> tag = ParseTag(line);
    if (!tag.has_value()) return corrupt("unknown tag");
    index_of[static_cast<int>(*tag)] = i;
    model.tag_set_.push_back(*tag);
  }
  if (!read_count("lexicon", &n)) return corrupt("expected lexicon <n>");
  for (int i = 0; i < n; ++i) {
    if (!next()) return corrupt("truncated lexicon");
    const std::vector<std::string_view> f = SplitTabs(line);
    std::optional<PosTag> tag =
        f.size() == 2 ? ParseTag(f[1]) : std::optional<PosTag>();
    if (!tag.has_value() || index_of[static_cast<int>(*tag)] < 0) {
      return corrupt("bad lexicon entry");
    }
    model.lexicon_.emplace(std::string(f[0]), *tag);
  }
  if (!read_count("features", &n)) return corrupt("expected features <n>");
  for (int i = 0; i < n; ++i) {
    if (!next()) return corrupt("truncated features");
    const std::vector<std::string_view> f = SplitTabs(line);
    int k = 0;
    if (f.size() < 2 || !ParseInt(f[1], &k) ||
        f.size() != static_cast<size_t>(k) + 2) {
      return corrupt("bad feature row");
    }
    WeightRow row;
    for (int j = 0; j < k; ++j) {
      const std::vector<std::string_view> tw = SplitChar(f[j + 2], ' ');
      double w = 0;
      std::optional<PosTag> tag =
          tw.size() == 2 ? ParseTag(tw[0]) : std::optional<PosTag>();
      if (!tag.has_value() || index_of[static_cast<int>(*tag)] < 0 ||
          !ParseDouble(tw[1], &w) || !std::isfinite(w)) {
        return corrupt("bad weight");
      }
      row.emplace_back(static_cast<uint8_t>(index_of[static_cast<int>(*tag)]),
                       w);
    }
    model.weights_.emplace(std::string(f[0]), std::move(row));
  }
  return model;
}

absl::StatusOr<PerceptronTagger> PerceptronTagger::LoadFile(
    const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return absl::NotFoundError("cannot open " + path);
  return Load(in);
}

}  // namespace bite
