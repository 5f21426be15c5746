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

#ifndef BITE_METRICS_H_
#define BITE_METRICS_H_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "absl/container/flat_hash_set.h"
#include "absl/status/statusor.h"
#include "bite/bite.h"
#include "bite/subword.h"
#include "nlohmann/json.hpp"

namespace bite {

using TokenCorpus = std::span<const std::vector<std::string>>;

struct TopNResult {
  // Most frequent first; equal counts in byte order.
  std::vector<std::string> vocab;
  // Set when n exceeded the number of types.
  bool truncated = false;
};

absl::StatusOr<TopNResult> TopNVocab(TokenCorpus corpus, int n);

// Fraction of corpus tokens found in `vocab`.
absl::StatusOr<double> Coverage(const absl::flat_hash_set<std::string>& vocab,
                                TokenCorpus corpus);

// Sum over encodings of (pieces - unks) + lambda * unks, where unks counts
// "<unk>" pieces.
absl::StatusOr<double> SymbolComplexity(
    std::span<const std::vector<std::string>> encodings, double lambda);

// Encodes each type with `model` and scores the encodings as above.
absl::StatusOr<double> SymbolComplexity(const SubwordModel& model,
                                        std::span<const std::string> types,
                                        double lambda);

struct MatchingBlock {
  size_t a = 0;
  size_t b = 0;
  size_t size = 0;

  bool operator==(const MatchingBlock&) const = default;
};

// Ratcliff/Obershelp: the longest common block (earliest in a, then in b),
// then recurse on both sides. No junk heuristics. Blocks come back sorted.
std::vector<MatchingBlock> MatchingBlocks(std::span<const std::string> a,
                                          std::span<const std::string> b);

// 2M / (|a| + |b|); 1 for two empty sequences.
double Similarity(std::span<const std::string> a,
                  std::span<const std::string> b);

struct SeqLenDeltaResult {
  // 100 * (mean_with - mean_without) / mean_without.
  double delta_percent = 0;
  double mean_with = 0;
  double mean_without = 0;
};

// Per-sentence encoded lengths under the two tokenizers.
absl::StatusOr<SeqLenDeltaResult> SeqLenDelta(
    std::span<const int64_t> lengths_with,
    std::span<const int64_t> lengths_without);

// Inflection (or dummy) symbols per word token, in [0, 1].
double InflectedTokenFraction(std::span<const std::vector<BiteSymbol>> encoded);

struct MetricReport {
  std::string metric_name;
  nlohmann::ordered_json parameters = nlohmann::ordered_json::object();
  double value = 0;
  std::string units;

  nlohmann::ordered_json ToJson() const;
};

}  // namespace bite

#endif  // BITE_METRICS_H_
