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

// Trainers behind SubwordModel::Train. Exposed to tests.

#ifndef BITE_SRC_SUBWORD_TRAINERS_H_
#define BITE_SRC_SUBWORD_TRAINERS_H_

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace bite::internal {

// Word types sorted by spelling, with corpus counts.
using WordCounts = std::vector<std::pair<std::string, int64_t>>;

struct LearnedPieces {
  // Non-special vocabulary in id order.
  std::vector<std::string> pieces;
  std::vector<std::pair<std::string, std::string>> merges;
  // Unigram only, parallel to `pieces`.
  std::vector<double> scores;
};

// Initial symbols of a word: chars with "</w>" on the last one (BPE) or
// "##" on all but the first (WordPiece).
std::vector<std::string> InitialBpeSymbols(const std::string& word);
std::vector<std::string> InitialWordPieceSymbols(const std::string& word);

// Both spellings of every character, sorted.
std::vector<std::string> BpeAlphabet(const WordCounts& words);
std::vector<std::string> WordPieceAlphabet(const WordCounts& words);
// Every character plus the word-start marker, sorted.
std::vector<std::string> UnigramAlphabet(const WordCounts& words);

// `budget` is the number of non-special pieces wanted.
LearnedPieces TrainBpe(const WordCounts& words, int budget);
LearnedPieces TrainWordPiece(const WordCounts& words, int budget);

struct UnigramOptions {
  int seed_size = 1'000'000;
  double prune_fraction = 0.2;
  int em_iterations = 2;
  int max_piece_length = 16;
};

LearnedPieces TrainUnigram(const WordCounts& words, int budget,
                           const UnigramOptions& options);

// Corpus log-likelihood after each of `iterations` EM steps on the seed
// vocabulary, no pruning.
std::vector<double> UnigramEmTrace(const WordCounts& words, int iterations,
                                   const UnigramOptions& options);

}  // namespace bite::internal

#endif  // BITE_SRC_SUBWORD_TRAINERS_H_
