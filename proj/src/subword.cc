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

#include "bite/subword.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <set>

#include "absl/container/flat_hash_set.h"
#include "bite/unicode.h"
#include "fmt/core.h"
#include "nlohmann/json.hpp"
#include "subword_trainers.h"

namespace bite {
namespace {

using json = nlohmann::ordered_json;

uint64_t PairKey(int a, int b) {
  return (static_cast<uint64_t>(static_cast<uint32_t>(a)) << 32) |
         static_cast<uint32_t>(b);
}

bool HasWhitespace(std::string_view s) {
  for (size_t pos = 0; pos < s.size();) {
    const Utf8Char c = DecodeUtf8(s, pos);
    if (c.valid && IsUnicodeWhitespace(c.code_point)) return true;
    pos += c.length;
  }
  return false;
}

// Words that would collide with the model's own markers.
bool HasReservedMarker(ModelType type, std::string_view word) {
  switch (type) {
    case ModelType::kBpe:
      return word.find(kEndOfWord) != std::string_view::npos;
    case ModelType::kWordPiece:
      return word.substr(0, kContinuationPrefix.size()) == kContinuationPrefix;
    case ModelType::kUnigram:
      return word.find(kWordStart) != std::string_view::npos;
  }
  return false;
}

bool ContainsAny(std::string_view word, std::span<const std::string> needles) {
  for (const std::string& n : needles) {
    if (word.find(n) != std::string_view::npos) return true;
  }
  return false;
}

}  // namespace

std::string_view ModelTypeName(ModelType type) {
  switch (type) {
    case ModelType::kBpe:
      return "bpe";
    case ModelType::kWordPiece:
      return "wordpiece";
    case ModelType::kUnigram:
      return "unigram";
  }
  return "";
}

std::optional<ModelType> ParseModelType(std::string_view name) {
  for (ModelType t :
       {ModelType::kBpe, ModelType::kWordPiece, ModelType::kUnigram}) {
    if (ModelTypeName(t) == name) return t;
  }
  return std::nullopt;
}

size_t CountAlphabet(std::span<const std::vector<std::string>> corpus,
                     std::span<const std::string> special_symbols) {
  const absl::flat_hash_set<std::string> specials(special_symbols.begin(),
                                                  special_symbols.end());
  absl::flat_hash_set<std::string> chars;
  for (const auto& sentence : corpus) {
    for (const std::string& token : sentence) {
      if (specials.contains(token)) continue;
      for (std::string& c : SplitUtf8(token)) chars.insert(std::move(c));
    }
  }
  return chars.size();
}

absl::StatusOr<SubwordModel> SubwordModel::Train(
    std::span<const std::vector<std::string>> corpus,
    const SubwordTrainOptions& options) {
  SubwordModel model;
  model.type_ = options.type;
  model.specials_.push_back(std::string(kUnkSymbol));
  absl::flat_hash_set<std::string> special_set = {std::string(kUnkSymbol)};
  for (const std::string& s : options.special_symbols) {
    if (s.empty() || HasWhitespace(s) || !IsValidUtf8(s) ||
        HasReservedMarker(ModelType::kBpe, s) ||
        HasReservedMarker(ModelType::kWordPiece, s) ||
        HasReservedMarker(ModelType::kUnigram, s)) {
      return absl::InvalidArgumentError(
          fmt::format("invalid special symbol '{}'", s));
    }
    if (!special_set.insert(s).second) {
      return absl::InvalidArgumentError(
          fmt::format("duplicate special symbol '{}'", s));
    }
    model.specials_.push_back(s);
  }

  std::map<std::string, int64_t> counts;
  for (const auto& sentence : corpus) {
    for (const std::string& token : sentence) {
      if (token.empty() || special_set.contains(token)) continue;
      if (HasWhitespace(token)) {
        return absl::InvalidArgumentError(
            fmt::format("token contains whitespace: '{}'", token));
      }
      // Such words encode to <unk>, so they teach the model nothing.
      if (!IsValidUtf8(token) || HasReservedMarker(options.type, token) ||
          ContainsAny(token, model.specials_)) {
        continue;
      }
      ++counts[token];
    }
  }
  internal::WordCounts words(counts.begin(), counts.end());
  if (words.empty()) {
    return absl::InvalidArgumentError("training corpus has no words");
  }

  std::vector<std::string> alphabet;
  switch (options.type) {
    case ModelType::kBpe:
      alphabet = internal::BpeAlphabet(words);
      break;
    case ModelType::kWordPiece:
      alphabet = internal::WordPieceAlphabet(words);
      break;
    case ModelType::kUnigram:
      alphabet = internal::UnigramAlphabet(words);
      break;
  }
  const int floor = static_cast<int>(alphabet.size() + model.specials_.size());
  if (options.vocab_size <= floor) {
    return absl::InvalidArgumentError(fmt::format(
        "vocab_size {} must exceed {} (alphabet of {} plus {} special symbols)",
        options.vocab_size, floor, alphabet.size(), model.specials_.size()));
  }
  const int budget =
      options.vocab_size - static_cast<int>(model.specials_.size());

  model.vocab_ = model.specials_;
  switch (options.type) {
    case ModelType::kBpe:
    case ModelType::kWordPiece: {
      internal::LearnedPieces learned =
          options.type == ModelType::kBpe
              ? internal::TrainBpe(words, budget)
              : internal::TrainWordPiece(words, budget);
      model.vocab_.insert(model.vocab_.end(), learned.pieces.begin(),
                          learned.pieces.end());
      model.merges_ = std::move(learned.merges);
      break;
    }
    case ModelType::kUnigram: {
      if (options.seed_size < 1 || options.em_iterations < 1 ||
          options.max_piece_length < 1 || !(options.prune_fraction > 0) ||
          !(options.prune_fraction < 1)) {
        return absl::InvalidArgumentError("invalid unigram training options");
      }
      internal::UnigramOptions uopts{options.seed_size, options.prune_fraction,
                                     options.em_iterations,
                                     options.max_piece_length};
      internal::LearnedPieces learned =
          internal::TrainUnigram(words, budget, uopts);
      std::map<std::string, double> score_of;
      for (size_t i = 0; i < learned.pieces.size(); ++i) {
        score_of[learned.pieces[i]] = learned.scores[i];
      }
      model.scores_.assign(model.vocab_.size(), 0.0);
      const std::set<std::string> alpha(alphabet.begin(), alphabet.end());
      for (const std::string& c : alphabet) {
        model.vocab_.push_back(c);
        auto it = score_of.find(c);
        // The marker and every character always occur, so this is defensive.
        model.scores_.push_back(it != score_of.end() ? it->second : -1e9);
      }
      for (size_t i = 0; i < learned.pieces.size(); ++i) {
        if (alpha.contains(learned.pieces[i])) continue;
        model.vocab_.push_back(learned.pieces[i]);
        model.scores_.push_back(learned.scores[i]);
      }
      break;
    }
  }
  if (absl::Status s = model.Rebuild(); !s.ok()) return s;
  return model;
}

absl::Status SubwordModel::Rebuild() {
  ids_.clear();
  merge_ranks_.clear();
  merge_result_.clear();
  max_symbol_chars_ = 0;
  if (vocab_.empty() || vocab_[0] != kUnkSymbol) {
    return absl::InvalidArgumentError("vocab must start with <unk>");
  }
  if (specials_.empty() || specials_.size() > vocab_.size() ||
      !std::equal(specials_.begin(), specials_.end(), vocab_.begin())) {
    return absl::InvalidArgumentError(
        "special symbols must follow <unk> at the start of the vocab");
  }
  for (size_t i = 0; i < vocab_.size(); ++i) {
    if (vocab_[i].empty()) return absl::InvalidArgumentError("empty symbol");
    if (!ids_.emplace(vocab_[i], static_cast<int>(i)).second) {
      return absl::InvalidArgumentError(
          fmt::format("duplicate symbol '{}'", vocab_[i]));
    }
    max_symbol_chars_ =
        std::max(max_symbol_chars_, static_cast<int>(Utf8Length(vocab_[i])));
  }
  if (type_ == ModelType::kUnigram) {
    if (scores_.size() != vocab_.size()) {
      return absl::InvalidArgumentError("scores must parallel the vocab");
    }
    for (size_t i = specials_.size(); i < scores_.size(); ++i) {
      if (!std::isfinite(scores_[i])) {
        return absl::InvalidArgumentError("non-finite piece score");
      }
    }
    if (!merges_.empty()) {
      return absl::InvalidArgumentError("unigram models have no merges");
    }
  } else if (!scores_.empty()) {
    return absl::InvalidArgumentError("only unigram models carry scores");
  }
  if (type_ == ModelType::kBpe) {
    for (size_t r = 0; r < merges_.size(); ++r) {
      const auto& [a, b] = merges_[r];
      auto ia = ids_.find(a), ib = ids_.find(b), in = ids_.find(a + b);
      if (ia == ids_.end() || ib == ids_.end() || in == ids_.end()) {
        return absl::InvalidArgumentError(
            fmt::format("merge {} '{} {}' uses unknown symbols", r, a, b));
      }
      merge_ranks_[PairKey(ia->second, ib->second)].push_back(
          static_cast<int>(r));
      merge_result_.push_back(in->second);
    }
  }
  if (type_ == ModelType::kWordPiece) {
    for (size_t r = 0; r < merges_.size(); ++r) {
      const auto& [a, b] = merges_[r];
      if (b.substr(0, kContinuationPrefix.size()) != kContinuationPrefix ||
          !ids_.contains(a) || !ids_.contains(b) ||
          !ids_.contains(a + b.substr(kContinuationPrefix.size()))) {
        return absl::InvalidArgumentError(
            fmt::format("merge {} '{} {}' uses unknown symbols", r, a, b));
      }
    }
  }
  return absl::OkStatus();
}

std::optional<int> SubwordModel::IdOf(std::string_view symbol) const {
  auto it = ids_.find(std::string(symbol));
  if (it == ids_.end()) return std::nullopt;
  return it->second;
}

bool SubwordModel::IsSpecial(std::string_view symbol) const {
  auto it = ids_.find(std::string(symbol));
  return it != ids_.end() && it->second < static_cast<int>(specials_.size());
}

EncodedSequence SubwordModel::Encode(
    std::span<const std::string> tokens) const {
  EncodedSequence out;
  for (const std::string& token : tokens) {
    if (auto it = ids_.find(token);
        it != ids_.end() && it->second < static_cast<int>(specials_.size())) {
      out.ids.push_back(it->second);
      continue;
    }
    for (int id : EncodeWord(token)) out.ids.push_back(id);
  }
  out.symbols.reserve(out.ids.size());
  for (int id : out.ids) out.symbols.push_back(vocab_[id]);
  return out;
}

std::vector<int> SubwordModel::EncodeWord(std::string_view word) const {
  if (word.empty()) return {};
  if (vocab_.empty()) return {0};
  if (!IsValidUtf8(word) || HasReservedMarker(type_, word) ||
      ContainsAny(word, specials_)) {
    return {0};
  }
  const std::vector<std::string> chars = SplitUtf8(word);
  // WordPiece needs no per-character check: greedy matching fails on its own.
  if (type_ != ModelType::kWordPiece) {
    for (const std::string& c : chars) {
      if (!ids_.contains(c)) return {0};
    }
  }
  switch (type_) {
    case ModelType::kBpe:
      return EncodeBpe(chars);
    case ModelType::kWordPiece:
      return EncodeWordPiece(chars);
    case ModelType::kUnigram:
      return EncodeUnigram(chars);
  }
  return {0};
}

// Replays the merge list: at each step the earliest merge still ahead of
// the last one applied fires on every non-overlapping occurrence.
std::vector<int> SubwordModel::EncodeBpe(
    std::span<const std::string> chars) const {
  std::vector<int> syms;
  syms.reserve(chars.size());
  for (size_t i = 0; i < chars.size(); ++i) {
    std::string s = chars[i];
    if (i + 1 == chars.size()) s += kEndOfWord;
    auto it = ids_.find(s);
    if (it == ids_.end()) return {0};
    syms.push_back(it->second);
  }
  int last = -1;
  while (syms.size() > 1) {
    int best = std::numeric_limits<int>::max();
    for (size_t i = 0; i + 1 < syms.size(); ++i) {
      auto it = merge_ranks_.find(PairKey(syms[i], syms[i + 1]));
      if (it == merge_ranks_.end()) continue;
      auto r = std::upper_bound(it->second.begin(), it->second.end(), last);
      if (r != it->second.end()) best = std::min(best, *r);
    }
    if (best == std::numeric_limits<int>::max()) break;
    const int a = ids_.at(merges_[best].first);
    const int b = ids_.at(merges_[best].second);
    std::vector<int> next;
    next.reserve(syms.size());
    for (size_t i = 0; i < syms.size(); ++i) {
      if (i + 1 < syms.size() && syms[i] == a && syms[i + 1] == b) {
        next.push_back(merge_result_[best]);
        ++i;
      } else {
        next.push_back(syms[i]);
      }
    }
    syms = std::move(next);
    last = best;
  }
  return syms;
}

std::vector<int> SubwordModel::EncodeWordPiece(
    std::span<const std::string> chars) const {
  std::vector<int> out;
  size_t begin = 0;
  while (begin < chars.size()) {
    int found = -1;
    size_t found_end = begin;
    std::string piece = begin > 0 ? std::string(kContinuationPrefix) : "";
    const size_t limit =
        std::min(chars.size(), begin + static_cast<size_t>(max_symbol_chars_));
    for (size_t end = begin; end < limit; ++end) {
      piece += chars[end];
      if (auto it = ids_.find(piece);
          it != ids_.end() &&
          it->second >= static_cast<int>(specials_.size())) {
        found = it->second;
        found_end = end + 1;
      }
    }
    if (found < 0) return {0};
    out.push_back(found);
    begin = found_end;
  }
  return out;
}

std::vector<int> SubwordModel::EncodeUnigram(
    std::span<const std::string> chars) const {
  std::vector<std::string> units;
  units.reserve(chars.size() + 1);
  units.emplace_back(kWordStart);
  units.insert(units.end(), chars.begin(), chars.end());
  const int m = static_cast<int>(units.size());
  const double neg_inf = -std::numeric_limits<double>::infinity();
  std::vector<double> best(m + 1, neg_inf);
  std::vector<int> back_pos(m + 1, -1), back_id(m + 1, -1);
  best[0] = 0;
  const int first_piece = static_cast<int>(specials_.size());
  for (int begin = 0; begin < m; ++begin) {
    if (best[begin] == neg_inf) continue;
    std::string piece;
    for (int end = begin; end < std::min(m, begin + max_symbol_chars_); ++end) {
      piece += units[end];
      auto it = ids_.find(piece);
      if (it == ids_.end() || it->second < first_piece) continue;
      const double score = best[begin] + scores_[it->second];
      if (score > best[end + 1]) {
        best[end + 1] = score;
        back_pos[end + 1] = begin;
        back_id[end + 1] = it->second;
      }
    }
  }
  if (best[m] == neg_inf) return {0};
  std::vector<int> out;
  for (int pos = m; pos > 0; pos = back_pos[pos]) out.push_back(back_id[pos]);
  std::reverse(out.begin(), out.end());
  return out;
}

absl::StatusOr<std::vector<std::string>> SubwordModel::Decode(
    std::span<const int> ids) const {
  std::vector<std::string> words;
  // True while the last word may still take more pieces.
  bool open = false;
  for (int id : ids) {
    if (id < 0 || id >= vocab_size()) {
      return absl::OutOfRangeError(
          fmt::format("id {} outside vocab of {}", id, vocab_size()));
    }
    const std::string& sym = vocab_[id];
    if (id < static_cast<int>(specials_.size())) {
      words.push_back(sym);
      open = false;
      continue;
    }
    switch (type_) {
      case ModelType::kBpe: {
        const bool final = sym.size() >= kEndOfWord.size() &&
                           sym.compare(sym.size() - kEndOfWord.size(),
                                       kEndOfWord.size(), kEndOfWord) == 0;
        std::string_view text = sym;
        if (final) text.remove_suffix(kEndOfWord.size());
        if (open) {
          words.back() += text;
        } else {
          words.emplace_back(text);
        }
        open = !final;
        break;
      }
      case ModelType::kWordPiece: {
        if (sym.size() > kContinuationPrefix.size() &&
            sym.compare(0, kContinuationPrefix.size(), kContinuationPrefix) ==
                0 &&
            open) {
          words.back() += sym.substr(kContinuationPrefix.size());
        } else {
          words.push_back(sym);
        }
        open = true;
        break;
      }
      case ModelType::kUnigram: {
        const bool start = sym.compare(0, kWordStart.size(), kWordStart) == 0;
        std::string_view text = sym;
        if (start) text.remove_prefix(kWordStart.size());
        if (start || !open) {
          words.emplace_back(text);
        } else {
          words.back() += text;
        }
        open = true;
        break;
      }
    }
  }
  return words;
}

absl::Status SubwordModel::Save(std::ostream& out) const {
  json j;
  j["format_version"] = kFormatVersion;
  j["model_type"] = std::string(ModelTypeName(type_));
  j["special_symbols"] =
      std::vector<std::string>(specials_.begin() + 1, specials_.end());
  j["vocab"] = vocab_;
  json merges = json::array();
  for (const auto& [a, b] : merges_) merges.push_back(a + " " + b);
  j["merges"] = std::move(merges);
  j["scores"] = scores_;
  if (type_ == ModelType::kWordPiece) {
    j["continuation_prefix"] = std::string(kContinuationPrefix);
  }
  out << j.dump(1) << "\n";
  if (!out) return absl::DataLossError("failed to write subword model");
  return absl::OkStatus();
}

absl::Status SubwordModel::SaveFile(const std::string& path) const {
  std::ofstream out(path);
  if (!out) {
    return absl::NotFoundError(
        fmt::format("cannot open '{}' for writing", path));
  }
  return Save(out);
}

absl::StatusOr<SubwordModel> SubwordModel::Load(std::istream& in) {
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& e) {
    return absl::InvalidArgumentError(
        fmt::format("subword model is not valid JSON: {}", e.what()));
  }
  SubwordModel model;
  try {
    if (!j.is_object()) {
      return absl::InvalidArgumentError("subword model must be a JSON object");
    }
    const int version = j.at("format_version").get<int>();
    if (version != kFormatVersion) {
      return absl::InvalidArgumentError(
          fmt::format("unsupported format_version {}", version));
    }
    const std::string type = j.at("model_type").get<std::string>();
    std::optional<ModelType> parsed = ParseModelType(type);
    if (!parsed) {
      return absl::InvalidArgumentError(
          fmt::format("unknown model_type '{}'", type));
    }
    model.type_ = *parsed;
    model.specials_.push_back(std::string(kUnkSymbol));
    for (const auto& s : j.value("special_symbols", json::array())) {
      model.specials_.push_back(s.get<std::string>());
    }
    model.vocab_ = j.at("vocab").get<std::vector<std::string>>();
    for (const auto& m : j.value("merges", json::array())) {
      const std::string line = m.get<std::string>();
      const size_t space = line.find(' ');
      if (space == std::string::npos || space == 0 ||
          space + 1 >= line.size() ||
          line.find(' ', space + 1) != std::string::npos) {
        return absl::InvalidArgumentError(
            fmt::format("malformed merge '{}'", line));
      }
      model.merges_.emplace_back(line.substr(0, space), line.substr(space + 1));
    }
    model.scores_ = j.value("scores", std::vector<double>{});
    if (model.type_ == ModelType::kWordPiece &&
        j.value("continuation_prefix", std::string(kContinuationPrefix)) !=
            kContinuationPrefix) {
      return absl::InvalidArgumentError("unsupported continuation_prefix");
    }
  } catch (const json::exception& e) {
    return absl::InvalidArgumentError(
        fmt::format("malformed subword model: {}", e.what()));
  }
  if (absl::Status s = model.Rebuild(); !s.ok()) return s;
  return model;
}

absl::StatusOr<SubwordModel> SubwordModel::LoadFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) return absl::NotFoundError(fmt::format("cannot open '{}'", path));
  return Load(in);
}

}  // namespace bite
