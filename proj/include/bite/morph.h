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

#ifndef BITE_MORPH_H_
#define BITE_MORPH_H_

#include <istream>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "absl/container/flat_hash_map.h"
#include "absl/container/flat_hash_set.h"
#include "absl/status/statusor.h"
#include "bite/ptb.h"

namespace bite {

// Lemma and inflection dictionaries plus English suffix rules.
//
// Lemma file: "surface<TAB>tag<TAB>lemma".
// Inflection file: "lemma<TAB>tag<TAB>surface<TAB>rank", rank 1 preferred.
// Both are UTF-8, one record per line, '#' starts a comment line.
//
// Lookups try the exact string first, then the lowercased string, restoring
// the original capitalization pattern on the result.
class MorphLexicon {
 public:
  MorphLexicon() = default;

  static absl::StatusOr<MorphLexicon> Load(const std::string& lemma_path,
                                           const std::string& inflection_path);
  static absl::StatusOr<MorphLexicon> FromStreams(std::istream& lemmas,
                                                  std::istream& inflections);

  // Base form of `surface` under content tag `tag`. Base-form tags (NN, NNP,
  // VB, JJ) return the surface itself. Fails for non-content tags.
  absl::StatusOr<std::string> Lemmatize(std::string_view surface,
                                        PosTag tag) const;

  // The inflection symbol carried by `surface`, or nullopt for an
  // uninflected word. Fails for non-content tags.
  absl::StatusOr<std::optional<PosTag>> InflectionOf(std::string_view surface,
                                                     PosTag tag) const;

  // Preferred surface of `lemma` under `tag`. nullopt returns the lemma.
  std::string Inflect(std::string_view lemma, std::optional<PosTag> tag) const;

  // Every listed surface of (lemma, tag) in preference order, falling back
  // to the single rule-generated form.
  std::vector<std::string> InflectAll(std::string_view lemma, PosTag tag) const;

  // Dictionary entries only.
  std::optional<std::string> LookupLemma(std::string_view surface,
                                         PosTag tag) const;
  std::vector<std::string> LookupInflections(std::string_view lemma,
                                             PosTag tag) const;

  bool IsKnownLemma(std::string_view lemma, CoarsePos pos) const;

  size_t lemma_entries() const { return lemma_table_.size(); }
  size_t inflection_entries() const { return inflect_table_.size(); }

 private:
  using Key = std::pair<std::string, PosTag>;

  const std::string* FindLemmaExact(std::string_view surface, PosTag tag) const;
  const std::vector<std::string>* FindInflectionsExact(std::string_view lemma,
                                                       PosTag tag) const;
  std::string RuleLemma(std::string_view surface, PosTag tag) const;

  absl::flat_hash_map<Key, std::string> lemma_table_;
  absl::flat_hash_map<Key, std::vector<std::string>> inflect_table_;
  absl::flat_hash_set<std::pair<std::string, CoarsePos>> known_lemmas_;
};

// Regular (rule-only) inflection, e.g. ("stop", VBD) -> "stopped".
std::string RegularInflect(std::string_view lemma, PosTag tag);

// Rule-generated lemma candidates for an inflected surface, in rule order.
std::vector<std::string> RuleLemmaCandidates(std::string_view surface,
                                             PosTag tag);

}  // namespace bite

#endif  // BITE_MORPH_H_
