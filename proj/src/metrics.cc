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

#include "bite/metrics.h"

#include <algorithm>
#include <deque>
#include <tuple>

#include "absl/container/flat_hash_map.h"
#include "fmt/core.h"

namespace bite {

absl::StatusOr<TopNResult> TopNVocab(TokenCorpus corpus, int n) {
  if (n < 1) return absl::InvalidArgumentError("n must be at least 1");
  absl::flat_hash_map<std::string, int64_t> counts;
  for (const auto& sentence : corpus) {
    for (const std::string& token : sentence) ++counts[token];
  }
  std::vector<std::pair<std::string, int64_t>> types(counts.begin(),
                                                     counts.end());
  std::sort(types.begin(), types.end(), [](const auto& x, const auto& y) {
    return x.second != y.second ? x.second > y.second : x.first < y.first;
  });
  TopNResult result;
  result.truncated = static_cast<size_t>(n) > types.size();
  const size_t keep = std::min(types.size(), static_cast<size_t>(n));
  result.vocab.reserve(keep);
  for (size_t i = 0; i < keep; ++i) result.vocab.push_back(types[i].first);
  return result;
}

absl::StatusOr<double> Coverage(const absl::flat_hash_set<std::string>& vocab,
                                TokenCorpus corpus) {
  int64_t total = 0, covered = 0;
  for (const auto& sentence : corpus) {
    for (const std::string& token : sentence) {
      ++total;
      if (vocab.contains(token)) ++covered;
    }
  }
  if (total == 0) return absl::InvalidArgumentError("corpus has no tokens");
  return static_cast<double>(covered) / static_cast<double>(total);
}

absl::StatusOr<double> SymbolComplexity(
    std::span<const std::vector<std::string>> encodings, double lambda) {
  if (!(lambda >= 1)) {
    return absl::InvalidArgumentError(
        fmt::format("lambda must be at least 1, got {}", lambda));
  }
  if (encodings.empty()) return absl::InvalidArgumentError("no word types");
  double total = 0;
  for (const auto& pieces : encodings) {
    const auto unks = std::count(pieces.begin(), pieces.end(), kUnkSymbol);
    total += static_cast<double>(pieces.size() - unks) +
             lambda * static_cast<double>(unks);
  }
  return total;
}

absl::StatusOr<double> SymbolComplexity(const SubwordModel& model,
                                        std::span<const std::string> types,
                                        double lambda) {
  std::vector<std::vector<std::string>> encodings;
  encodings.reserve(types.size());
  for (const std::string& type : types) {
    std::vector<std::string> pieces;
    for (int id : model.EncodeWord(type)) pieces.push_back(model.vocab()[id]);
    encodings.push_back(std::move(pieces));
  }
  return SymbolComplexity(encodings, lambda);
}

namespace {

// Longest common block within a[alo, ahi) x b[blo, bhi), preferring the
// smallest start in a, then in b. Same row-wise scheme as difflib.
MatchingBlock LongestMatch(
    const std::vector<int>& a,
    const absl::flat_hash_map<int, std::vector<size_t>>& b_index, size_t alo,
    size_t ahi, size_t blo, size_t bhi) {
  MatchingBlock best{alo, blo, 0};
  // run[j + 1] = length of the match ending at (i - 1, j).
  absl::flat_hash_map<size_t, size_t> run, next;
  for (size_t i = alo; i < ahi; ++i) {
    next.clear();
    auto it = b_index.find(a[i]);
    if (it != b_index.end()) {
      for (size_t j : it->second) {
        if (j < blo) continue;
        if (j >= bhi) break;
        auto prev = run.find(j);
        const size_t k = (prev == run.end() ? 0 : prev->second) + 1;
        next[j + 1] = k;
        if (k > best.size) best = {i + 1 - k, j + 1 - k, k};
      }
    }
    std::swap(run, next);
  }
  return best;
}

}  // namespace

std::vector<MatchingBlock> MatchingBlocks(std::span<const std::string> a,
                                          std::span<const std::string> b) {
  absl::flat_hash_map<std::string, int> ids;
  auto intern = [&ids](const std::string& s) {
    return ids.try_emplace(s, static_cast<int>(ids.size())).first->second;
  };
  std::vector<int> ai, bi;
  for (const std::string& s : a) ai.push_back(intern(s));
  for (const std::string& s : b) bi.push_back(intern(s));
  absl::flat_hash_map<int, std::vector<size_t>> b_index;
  for (size_t j = 0; j < bi.size(); ++j) b_index[bi[j]].push_back(j);

  std::vector<MatchingBlock> blocks;
  std::deque<std::tuple<size_t, size_t, size_t, size_t>> todo;
  todo.emplace_back(0, ai.size(), 0, bi.size());
  while (!todo.empty()) {
    auto [alo, ahi, blo, bhi] = todo.front();
    todo.pop_front();
    const MatchingBlock m = LongestMatch(ai, b_index, alo, ahi, blo, bhi);
    if (m.size == 0) continue;
    blocks.push_back(m);
    if (alo < m.a && blo < m.b) todo.emplace_back(alo, m.a, blo, m.b);
    if (m.a + m.size < ahi && m.b + m.size < bhi) {
      todo.emplace_back(m.a + m.size, ahi, m.b + m.size, bhi);
    }
  }
  std::sort(blocks.begin(), blocks.end(), [](const auto& x, const auto& y) {
    return std::tie(x.a, x.b) < std::tie(y.a, y.b);
  });
  return blocks;
}

double Similarity(std::span<const std::string> a,
                  std::span<const std::string> b) {
  if (a.empty() && b.empty()) return 1.0;
  size_t matched = 0;
  for (const MatchingBlock& m : MatchingBlocks(a, b)) matched += m.size;
  return 2.0 * static_cast<double>(matched) /
         static_cast<double>(a.size() + b.size());
}

absl::StatusOr<SeqLenDeltaResult> SeqLenDelta(
    std::span<const int64_t> lengths_with,
    std::span<const int64_t> lengths_without) {
  if (lengths_with.empty() || lengths_without.empty()) {
    return absl::InvalidArgumentError("corpus has no sentences");
  }
  if (lengths_with.size() != lengths_without.size()) {
    return absl::InvalidArgumentError(
        fmt::format("length lists differ in size: {} vs {}",
                    lengths_with.size(), lengths_without.size()));
  }
  SeqLenDeltaResult r;
  for (int64_t n : lengths_with) r.mean_with += static_cast<double>(n);
  for (int64_t n : lengths_without) r.mean_without += static_cast<double>(n);
  r.mean_with /= static_cast<double>(lengths_with.size());
  r.mean_without /= static_cast<double>(lengths_without.size());
  if (r.mean_without == 0) {
    return absl::InvalidArgumentError("corpus encodes to nothing");
  }
  r.delta_percent = 100.0 * (r.mean_with - r.mean_without) / r.mean_without;
  return r;
}

double InflectedTokenFraction(
    std::span<const std::vector<BiteSymbol>> encoded) {
  int64_t words = 0, inflected = 0;
  for (const auto& sentence : encoded) {
    for (const BiteSymbol& s : sentence) {
      if (s.kind == SymbolKind::kInflection || s.kind == SymbolKind::kDummy) {
        ++inflected;
      } else {
        ++words;
      }
    }
  }
  return words == 0
             ? 0.0
             : static_cast<double>(inflected) / static_cast<double>(words);
}

nlohmann::ordered_json MetricReport::ToJson() const {
  nlohmann::ordered_json j;
  j["metric_name"] = metric_name;
  j["parameters"] = parameters;
  j["value"] = value;
  j["units"] = units;
  return j;
}

}  // namespace bite
