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

#ifndef BITE_SUBWORD_H_
#define BITE_SUBWORD_H_

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

namespace bite {

enum class ModelType { kBpe, kWordPiece, kUnigram };

std::string_view ModelTypeName(ModelType type);
std::optional<ModelType> ParseModelType(std::string_view name);

inline constexpr std::string_view kUnkSymbol = "<unk>";
inline constexpr std::string_view kEndOfWord = "</w>";
inline constexpr std::string_view kContinuationPrefix = "##";
// U+2581, marks the first piece of a word in unigram models.
inline constexpr std::string_view kWordStart = "\xE2\x96\x81";

struct EncodedSequence {
  std::vector<int> ids;
  std::vector<std::string> symbols;

  bool operator==(const EncodedSequence&) const = default;
};

struct SubwordTrainOptions {
  ModelType type = ModelType::kBpe;
  int vocab_size = 8000;
  // Atomic symbols in addition to <unk>, which always has id 0.
  std::vector<std::string> special_symbols;
  // Unigram only.
  int seed_size = 1'000'000;
  double prune_fraction = 0.2;
  int em_iterations = 2;
  int max_piece_length = 16;
};

// Word-internal subword tokenizer. Input tokens never merge across token
// boundaries; special symbols pass through as single ids.
//
// Symbol spellings: BPE marks the word-final piece with "</w>", WordPiece
// prefixes non-initial pieces with "##", unigram prefixes the word-initial
// piece with U+2581. A word that contains a character outside the trained
// alphabet, or a reserved marker, is encoded as a single <unk>.
class SubwordModel {
 public:
  static constexpr int kFormatVersion = 1;

  SubwordModel() = default;

  static absl::StatusOr<SubwordModel> Train(
      std::span<const std::vector<std::string>> corpus,
      const SubwordTrainOptions& options);

  EncodedSequence Encode(std::span<const std::string> tokens) const;
  // Pieces of one non-special word.
  std::vector<int> EncodeWord(std::string_view word) const;

  absl::StatusOr<std::vector<std::string>> Decode(
      std::span<const int> ids) const;

  absl::Status Save(std::ostream& out) const;
  absl::Status SaveFile(const std::string& path) const;
  static absl::StatusOr<SubwordModel> Load(std::istream& in);
  static absl::StatusOr<SubwordModel> LoadFile(const std::string& path);

  ModelType type() const { return type_; }
  int vocab_size() const { return static_cast<int>(vocab_.size()); }
  const std::vector<std::string>& vocab() const { return vocab_; }
  const std::vector<std::pair<std::string, std::string>>& merges() const {
    return merges_;
  }
  const std::vector<double>& scores() const { return scores_; }
  const std::vector<std::string>& special_symbols() const { return specials_; }
  int unk_id() const { return 0; }
  std::optional<int> IdOf(std::string_view symbol) const;
  bool IsSpecial(std::string_view symbol) const;

 private:
  absl::Status Rebuild();

  std::vector<int> EncodeBpe(std::span<const std::string> chars) const;
  std::vector<int> EncodeWordPiece(std::span<const std::string> chars) const;
  std::vector<int> EncodeUnigram(std::span<const std::string> chars) const;

  ModelType type_ = ModelType::kBpe;
  std::vector<std::string> vocab_;
  std::vector<std::string> specials_;  // includes <unk>
  std::vector<std::pair<std::string, std::string>> merges_;
  std::vector<double> scores_;

  // Derived on load.
  absl::flat_hash_map<std::string, int> ids_;
  // BPE: (left id, right id) -> ranks at which the pair merges.
  absl::flat_hash_map<uint64_t, std::vector<int>> merge_ranks_;
  std::vector<int> merge_result_;
  int max_symbol_chars_ = 0;
};

// Distinct characters, counted by code point, of the non-special tokens.
size_t CountAlphabet(std::span<const std::vector<std::string>> corpus,
                     std::span<const std::string> special_symbols);

}  // namespace bite

#endif  // BITE_SUBWORD_H_
