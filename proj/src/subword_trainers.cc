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

#include "subword_trainers.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <set>
#include <string_view>

#include "absl/container/flat_hash_map.h"
#include "absl/container/flat_hash_set.h"
#include "bite/subword.h"
#include "bite/unicode.h"

namespace bite::internal {
namespace {

uint64_t PairKey(int a, int b) {
  return (static_cast<uint64_t>(static_cast<uint32_t>(a)) << 32) |
         static_cast<uint32_t>(b);
}
int PairLeft(uint64_t key) { return static_cast<int>(key >> 32); }
int PairRight(uint64_t key) { return static_cast<int>(key & 0xFFFFFFFFu); }

std::set<std::string> Characters(const WordCounts& words) {
  std::set<std::string> chars;
  for (const auto& [word, count] : words) {
    for (std::string& c : SplitUtf8(word)) chars.insert(std::move(c));
  }
  return chars;
}

// Incremental pair statistics shared by the BPE and WordPiece trainers.
class MergeTrainer {
 public:
  enum class Objective { kCount, kLikelihoodRatio };

  MergeTrainer(Objective objective, bool continuation)
      : objective_(objective), continuation_(continuation) {}

  LearnedPieces Run(const WordCounts& words,
                    const std::vector<std::string>& alphabet, int budget) {
    for (const std::string& s : alphabet) Intern(s);
    for (const auto& [word, count] : words) {
      std::vector<int> syms;
      const std::vector<std::string> initial =
          continuation_ ? InitialWordPieceSymbols(word)
                        : InitialBpeSymbols(word);
      for (const std::string& s : initial) syms.push_back(Intern(s));
      words_.push_back(std::move(syms));
      counts_.push_back(count);
    }
    for (size_t w = 0; w < words_.size(); ++w) AddWord(static_cast<int>(w));
    for (const auto& [key, count] : pair_count_) Push(key);

    LearnedPieces out;
    out.pieces = alphabet;
    int vocab = static_cast<int>(alphabet.size());
    while (vocab < budget) {
      std::optional<uint64_t> best = PopBest();
      if (!best.has_value()) break;
      const int a = PairLeft(*best), b = PairRight(*best);
      const std::string merged =
          strs_[a] + (continuation_
                          ? strs_[b].substr(kContinuationPrefix.size())
                          : strs_[b]);
      const bool fresh = !ids_.contains(merged);
      const int n = Intern(merged);
      if (fresh) {
        out.pieces.push_back(merged);
        ++vocab;
      }
      out.merges.emplace_back(strs_[a], strs_[b]);
      ApplyMerge(a, b, n);
      MaybeCompact();
    }
    return out;
  }

 private:
  struct Entry {
    int64_t count;
    int64_t count_a;
    int64_t count_b;
    int a;
    int b;
  };

  int Intern(const std::string& s) {
    auto [it, inserted] = ids_.try_emplace(s, static_cast<int>(strs_.size()));
    if (inserted) {
      strs_.push_back(s);
      sym_count_.push_back(0);
      sym_pairs_.emplace_back();
    }
    return it->second;
  }

  // True when x should pop before y.
  bool Better(const Entry& x, const Entry& y) const {
    if (objective_ == Objective::kCount) {
      if (x.count != y.count) return x.count > y.count;
    } else {
      // x.count / (x.a * x.b) vs y.count / (y.a * y.b), exactly.
      const __int128 lhs =
          static_cast<__int128>(x.count) * y.count_a * y.count_b;
      const __int128 rhs =
          static_cast<__int128>(y.count) * x.count_a * x.count_b;
      if (lhs != rhs) return lhs > rhs;
    }
    if (strs_[x.a] != strs_[y.a]) return strs_[x.a] < strs_[y.a];
    return strs_[x.b] < strs_[y.b];
  }

  void Push(uint64_t key) {
    auto it = pair_count_.find(key);
    if (it == pair_count_.end()) return;
    const int a = PairLeft(key), b = PairRight(key);
    heap_.push_back({it->second, sym_count_[a], sym_count_[b], a, b});
    std::push_heap(
        heap_.begin(), heap_.end(),
        [this](const Entry& x, const Entry& y) { return Better(y, x); });
  }

  std::optional<uint64_t> PopBest() {
    auto cmp = [this](const Entry& x, const Entry& y) { return Better(y, x); };
    while (!heap_.empty()) {
      std::pop_heap(heap_.begin(), heap_.end(), cmp);
      const Entry e = heap_.back();
      heap_.pop_back();
      const uint64_t key = PairKey(e.a, e.b);
      auto it = pair_count_.find(key);
      // Stale snapshots are dropped; every change pushed a fresh entry.
      if (it == pair_count_.end() || it->second != e.count) continue;
      if (objective_ == Objective::kLikelihoodRatio &&
          (sym_count_[e.a] != e.count_a || sym_count_[e.b] != e.count_b)) {
        continue;
      }
      return key;
    }
    return std::nullopt;
  }

  void MaybeCompact() {
    if (heap_.size() < 4 * pair_count_.size() + (1u << 20)) return;
    heap_.clear();
    for (const auto& [key, count] : pair_count_) Push(key);
  }

  void CountPair(uint64_t key, int64_t delta, int word) {
    int64_t& c = pair_count_[key];
    const bool was_zero = c == 0;
    c += delta;
    changed_.insert(key);
    if (c == 0) {
      pair_count_.erase(key);
      pair_where_.erase(key);
      sym_pairs_[PairLeft(key)].erase(key);
      sym_pairs_[PairRight(key)].erase(key);
      return;
    }
    if (was_zero) {
      sym_pairs_[PairLeft(key)].insert(key);
      sym_pairs_[PairRight(key)].insert(key);
    }
    if (delta > 0) pair_where_[key].insert(word);
  }

  void AddWord(int w) {
    const std::vector<int>& syms = words_[w];
    for (int s : syms) sym_count_[s] += counts_[w];
    for (size_t i = 0; i + 1 < syms.size(); ++i) {
      CountPair(PairKey(syms[i], syms[i + 1]), counts_[w], w);
    }
  }

  void RemoveWord(int w) {
    const std::vector<int>& syms = words_[w];
    for (int s : syms) sym_count_[s] -= counts_[w];
    for (size_t i = 0; i + 1 < syms.size(); ++i) {
      const uint64_t key = PairKey(syms[i], syms[i + 1]);
      if (auto it = pair_where_.find(key); it != pair_where_.end()) {
        it->second.erase(w);
      }
      CountPair(key, -counts_[w], w);
    }
  }

  void ApplyMerge(int a, int b, int n) {
    const uint64_t key = PairKey(a, b);
    auto where = pair_where_.find(key);
    if (where == pair_where_.end()) return;
    std::vector<int> affected(where->second.begin(), where->second.end());
    std::sort(affected.begin(), affected.end());
    changed_.clear();
    for (int w : affected) {
      std::vector<int>& syms = words_[w];
      std::vector<int> merged;
      merged.reserve(syms.size());
      for (size_t i = 0; i < syms.size(); ++i) {
        if (i + 1 < syms.size() && syms[i] == a && syms[i + 1] == b) {
          merged.push_back(n);
          ++i;
        } else {
          merged.push_back(syms[i]);
        }
      }
      RemoveWord(w);
      syms = std::move(merged);
      AddWord(w);
    }
    if (objective_ == Objective::kLikelihoodRatio) {
      for (int s : {a, b, n}) {
        for (uint64_t k : sym_pairs_[s]) changed_.insert(k);
      }
    }
    std::vector<uint64_t> keys(changed_.begin(), changed_.end());
    std::sort(keys.begin(), keys.end());
    for (uint64_t k : keys) Push(k);
  }

  Objective objective_;
  bool continuation_;
  std::vector<std::string> strs_;
  absl::flat_hash_map<std::string, int> ids_;
  std::vector<std::vector<int>> words_;
  std::vector<int64_t> counts_;
  std::vector<int64_t> sym_count_;
  std::vector<absl::flat_hash_set<uint64_t>> sym_pairs_;
  absl::flat_hash_map<uint64_t, int64_t> pair_count_;
  absl::flat_hash_map<uint64_t, absl::flat_hash_set<int>> pair_where_;
  absl::flat_hash_set<uint64_t> changed_;
  std::vector<Entry> heap_;
};

// ---------------------------------------------------------------------------
// Unigram LM.

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

double LogAdd(double x, double y) {
  if (x == kNegInf) return y;
  if (y == kNegInf) return x;
  if (x < y) std::swap(x, y);
  return x + std::log1p(std::exp(y - x));
}

struct Edge {
  int begin;
  int end;
  int piece;
};

class UnigramTrainer {
 public:
  UnigramTrainer(const WordCounts& words, const UnigramOptions& options)
      : options_(options) {
    for (const auto& [word, count] : words) {
      std::vector<std::string> chars{std::string(kWordStart)};
      for (std::string& c : SplitUtf8(word)) chars.push_back(std::move(c));
      words_.push_back(std::move(chars));
      counts_.push_back(count);
    }
  }

  void Seed() {
    absl::flat_hash_map<std::string, int64_t> freq;
    for (size_t w = 0; w < words_.size(); ++w) {
      const std::vector<std::string>& chars = words_[w];
      for (size_t i = 0; i < chars.size(); ++i) {
        std::string s;
        for (size_t len = 1;
             len <= static_cast<size_t>(options_.max_piece_length) &&
             i + len <= chars.size();
             ++len) {
          s += chars[i + len - 1];
          freq[s] += counts_[w];
        }
      }
    }
    std::vector<std::pair<std::string, int64_t>> singles, multi;
    for (auto& [s, f] : freq) {
      (Utf8Length(s) == 1 ? singles : multi).emplace_back(s, f);
    }
    auto by_freq = [](const auto& x, const auto& y) {
      return x.second != y.second ? x.second > y.second : x.first < y.first;
    };
    std::sort(singles.begin(), singles.end(), by_freq);
    std::sort(multi.begin(), multi.end(), by_freq);
    const size_t keep_multi = std::min(
        multi.size(),
        static_cast<size_t>(std::max<int64_t>(
            0, options_.seed_size - static_cast<int64_t>(singles.size()))));
    multi.resize(keep_multi);

    double total = 0;
    for (const auto* list : {&singles, &multi}) {
      for (const auto& [s, f] : *list) {
        pieces_.push_back(s);
        required_.push_back(list == &singles);
        logp_.push_back(static_cast<double>(f));
        total += static_cast<double>(f);
      }
    }
    for (double& p : logp_) p = std::log(p / total);
    Reindex();
  }

  // One EM step; returns the log-likelihood under the pre-step parameters.
  double EmStep() {
    std::vector<double> expected(pieces_.size(), 0.0);
    double likelihood = 0;
    std::vector<double> alpha, beta;
    for (size_t w = 0; w < words_.size(); ++w) {
      const std::vector<Edge>& edges = edges_[w];
      const int m = static_cast<int>(words_[w].size());
      alpha.assign(m + 1, kNegInf);
      beta.assign(m + 1, kNegInf);
      alpha[0] = 0;
      // Edges are sorted by end, then begin.
      for (const Edge& e : edges) {
        alpha[e.end] = LogAdd(alpha[e.end], alpha[e.begin] + logp_[e.piece]);
      }
      beta[m] = 0;
      for (const Edge& e : by_begin_desc_[w]) {
        beta[e.begin] = LogAdd(beta[e.begin], beta[e.end] + logp_[e.piece]);
      }
      const double z = alpha[m];
      if (z == kNegInf) continue;
      const double c = static_cast<double>(counts_[w]);
      likelihood += c * z;
      for (const Edge& e : edges) {
        const double lp = alpha[e.begin] + logp_[e.piece] + beta[e.end] - z;
        if (lp > kNegInf) expected[e.piece] += c * std::exp(lp);
      }
    }
    double total = 0;
    for (double x : expected) total += x;
    for (size_t i = 0; i < pieces_.size(); ++i) {
      logp_[i] = expected[i] > 0 ? std::log(expected[i] / total) : kNegInf;
    }
    return likelihood;
  }

  double LogLikelihood() const {
    double likelihood = 0;
    std::vector<double> alpha;
    for (size_t w = 0; w < words_.size(); ++w) {
      const int m = static_cast<int>(words_[w].size());
      alpha.assign(m + 1, kNegInf);
      alpha[0] = 0;
      for (const Edge& e : edges_[w]) {
        alpha[e.end] = LogAdd(alpha[e.end], alpha[e.begin] + logp_[e.piece]);
      }
      if (alpha[m] > kNegInf) likelihood += counts_[w] * alpha[m];
    }
    return likelihood;
  }

  void Prune(int target) {
    const size_t size = pieces_.size();
    // Viterbi usage counts.
    std::vector<double> usage(size, 0.0);
    for (size_t w = 0; w < words_.size(); ++w) {
      for (int p : Viterbi(edges_[w], static_cast<int>(words_[w].size()), -1)) {
        usage[p] += static_cast<double>(counts_[w]);
      }
    }
    std::vector<std::pair<double, int>> losses;
    for (size_t p = 0; p < size; ++p) {
      if (required_[p]) continue;
      double loss = kNegInf;
      if (logp_[p] > kNegInf) {
        loss = 0;
        if (usage[p] > 0) {
          const std::vector<std::string> chars = SplitUtf8(pieces_[p]);
          const std::vector<Edge> edges = EdgesOf(chars);
          double alt = 0;
          const std::vector<int> seg = Viterbi(
              edges, static_cast<int>(chars.size()), static_cast<int>(p));
          for (int q : seg) alt += logp_[q];
          loss = seg.empty() ? std::numeric_limits<double>::infinity()
                             : usage[p] * (logp_[p] - alt);
        }
      }
      losses.emplace_back(loss, static_cast<int>(p));
    }
    std::sort(
        losses.begin(), losses.end(), [this](const auto& x, const auto& y) {
          return x.first != y.first ? x.first < y.first
                                    : pieces_[x.second] < pieces_[y.second];
        });
    const size_t step = static_cast<size_t>(
        std::ceil(static_cast<double>(size) * options_.prune_fraction));
    size_t remove = std::min(size - static_cast<size_t>(target), step);
    remove = std::min(remove, losses.size());
    std::vector<bool> drop(size, false);
    for (size_t i = 0; i < remove; ++i) drop[losses[i].second] = true;
    Compact(drop);
  }

  // Required characters that never received mass get a floor score; other
  // dead pieces are dropped.
  LearnedPieces Finish() {
    double floor = 0;
    bool any = false;
    for (double lp : logp_) {
      if (lp > kNegInf && (!any || lp < floor)) floor = lp, any = true;
    }
    floor -= 10.0;
    std::vector<bool> drop(pieces_.size(), false);
    for (size_t p = 0; p < pieces_.size(); ++p) {
      if (logp_[p] == kNegInf) {
        if (required_[p]) {
          logp_[p] = floor;
        } else {
          drop[p] = true;
        }
      }
    }
    Compact(drop);
    std::vector<int> order(pieces_.size());
    for (size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
    std::sort(order.begin(), order.end(), [this](int x, int y) {
      return logp_[x] != logp_[y] ? logp_[x] > logp_[y]
                                  : pieces_[x] < pieces_[y];
    });
    LearnedPieces out;
    for (int i : order) {
      out.pieces.push_back(pieces_[i]);
      out.scores.push_back(logp_[i]);
    }
    return out;
  }

  size_t size() const { return pieces_.size(); }

 private:
  void Compact(const std::vector<bool>& drop) {
    std::vector<std::string> pieces;
    std::vector<double> logp;
    std::vector<bool> required;
    for (size_t p = 0; p < pieces_.size(); ++p) {
      if (drop[p]) continue;
      pieces.push_back(std::move(pieces_[p]));
      logp.push_back(logp_[p]);
      required.push_back(required_[p]);
    }
    pieces_ = std::move(pieces);
    logp_ = std::move(logp);
    required_ = std::move(required);
    Reindex();
  }

  std::vector<Edge> EdgesOf(const std::vector<std::string>& chars) const {
    std::vector<Edge> edges;
    const int m = static_cast<int>(chars.size());
    for (int end = 1; end <= m; ++end) {
      const int first = std::max(0, end - options_.max_piece_length);
      for (int begin = first; begin < end; ++begin) {
        std::string s;
        for (int k = begin; k < end; ++k) s += chars[k];
        if (auto it = index_.find(s); it != index_.end()) {
          edges.push_back({begin, end, it->second});
        }
      }
    }
    return edges;
  }

  void Reindex() {
    index_.clear();
    for (size_t p = 0; p < pieces_.size(); ++p) {
      index_.emplace(pieces_[p], static_cast<int>(p));
    }
    edges_.clear();
    by_begin_desc_.clear();
    for (const auto& chars : words_) {
      edges_.push_back(EdgesOf(chars));
      std::vector<Edge> desc = edges_.back();
      std::stable_sort(
          desc.begin(), desc.end(),
          [](const Edge& x, const Edge& y) { return x.begin > y.begin; });
      by_begin_desc_.push_back(std::move(desc));
    }
  }

  // Best segmentation over `edges` (sorted by end), skipping piece `banned`.
  std::vector<int> Viterbi(const std::vector<Edge>& edges, int m,
                           int banned) const {
    std::vector<double> best(m + 1, kNegInf);
    std::vector<const Edge*> back(m + 1, nullptr);
    best[0] = 0;
    for (const Edge& e : edges) {
      if (e.piece == banned || logp_[e.piece] == kNegInf ||
          best[e.begin] == kNegInf) {
        continue;
      }
      const double score = best[e.begin] + logp_[e.piece];
      if (score > best[e.end]) {
        best[e.end] = score;
        back[e.end] = &e;
      }
    }
    std::vector<int> out;
    if (best[m] == kNegInf) return out;
    for (int pos = m; pos > 0; pos = back[pos]->begin) {
      out.push_back(back[pos]->piece);
    }
    std::reverse(out.begin(), out.end());
    return out;
  }

  UnigramOptions options_;
  std::vector<std::vector<std::string>> words_;
  std::vector<int64_t> counts_;
  std::vector<std::string> pieces_;
  std::vector<double> logp_;
  std::vector<bool> required_;
  absl::flat_hash_map<std::string, int> index_;
  std::vector<std::vector<Edge>> edges_;
  std::vector<std::vector<Edge>> by_begin_desc_;
};

}  // namespace

std::vector<std::string> InitialBpeSymbols(const std::string& word) {
  std::vector<std::string> chars = SplitUtf8(word);
  if (!chars.empty()) chars.back() += kEndOfWord;
  return chars;
}

std::vector<std::string> InitialWordPieceSymbols(const std::string& word) {
  std::vector<std::string> chars = SplitUtf8(word);
  for (size_t i = 1; i < chars.size(); ++i) {
    chars[i] = std::string(kContinuationPrefix) + chars[i];
  }
  return chars;
}

std::vector<std::string> BpeAlphabet(const WordCounts& words) {
  std::vector<std::string> out;
  for (const std::string& c : Characters(words)) {
    out.push_back(c);
    out.push_back(c + std::string(kEndOfWord));
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::string> WordPieceAlphabet(const WordCounts& words) {
  std::vector<std::string> out;
  for (const std::string& c : Characters(words)) {
    out.push_back(c);
    out.push_back(std::string(kContinuationPrefix) + c);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::string> UnigramAlphabet(const WordCounts& words) {
  std::set<std::string> chars = Characters(words);
  chars.insert(std::string(kWordStart));
  return std::vector<std::string>(chars.begin(), chars.end());
}

LearnedPieces TrainBpe(const WordCounts& words, int budget) {
  MergeTrainer trainer(MergeTrainer::Objective::kCount, false);
  return trainer.Run(words, BpeAlphabet(words), budget);
}

LearnedPieces TrainWordPiece(const WordCounts& words, int budget) {
  MergeTrainer trainer(MergeTrainer::Objective::kLikelihoodRatio, true);
  return trainer.Run(words, WordPieceAlphabet(words), budget);
}

LearnedPieces TrainUnigram(const WordCounts& words, int budget,
                           const UnigramOptions& options) {
  UnigramTrainer trainer(words, options);
  trainer.Seed();
  while (true) {
    for (int i = 0; i < options.em_iterations; ++i) trainer.EmStep();
    if (trainer.size() <= static_cast<size_t>(budget)) break;
    const size_t before = trainer.size();
    trainer.Prune(budget);
    if (trainer.size() == before) break;
  }
  return trainer.Finish();
}

std::vector<double> UnigramEmTrace(const WordCounts& words, int iterations,
                                   const UnigramOptions& options) {
  UnigramTrainer trainer(words, options);
  trainer.Seed();
  std::vector<double> trace;
  for (int i = 0; i < iterations; ++i) {
    trainer.EmStep();
    trace.push_back(trainer.LogLikelihood());
  }
  return trace;
}

}  // namespace bite::internal
