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

#include "bite/morph.h"

#include <algorithm>
#include <fstream>

#include "absl/status/status.h"
#include "bite/text_util.h"
#include "bite/unicode.h"
#include "fmt/core.h"

namespace bite {
namespace {

bool IsVowel(char c) {
  switch (c) {
    case 'a':
    case 'e':
    case 'i':
    case 'o':
    case 'u':
    case 'A':
    case 'E':
    case 'I':
    case 'O':
    case 'U':
      return true;
    default:
      return false;
  }
}

bool IsLetter(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z');
}

bool IsConsonant(char c) { return IsLetter(c) && !IsVowel(c); }

char Lower(char c) { return (c >= 'A' && c <= 'Z') ? c - 'A' + 'a' : c; }

bool EndsWith(std::string_view s, std::string_view suffix) {
  if (s.size() < suffix.size()) return false;
  for (size_t i = 0; i < suffix.size(); ++i) {
    if (Lower(s[s.size() - suffix.size() + i]) != suffix[i]) return false;
  }
  return true;
}

bool HasVowel(std::string_view s) {
  return std::any_of(s.begin(), s.end(),
                     [](char c) { return IsVowel(c) || Lower(c) == 'y'; });
}

int VowelGroups(std::string_view s) {
  int groups = 0;
  bool in_group = false;
  for (char c : s) {
    const bool v = IsVowel(c);
    if (v && !in_group) ++groups;
    in_group = v;
  }
  return groups;
}

// Short stressed syllable ending consonant-vowel-consonant: stop, big, run.
bool DoublesFinalConsonant(std::string_view w) {
  if (w.size() < 3) return false;
  const char c1 = w[w.size() - 3], v = w[w.size() - 2], c2 = w[w.size() - 1];
  if (!IsConsonant(c1) || !IsVowel(v) || !IsConsonant(c2)) return false;
  const char l2 = Lower(c2);
  if (l2 == 'w' || l2 == 'x' || l2 == 'y') return false;
  return VowelGroups(w) == 1;
}

bool EndsConsonantY(std::string_view w) {
  return w.size() >= 2 && Lower(w.back()) == 'y' &&
         IsConsonant(w[w.size() - 2]);
}

bool EndsSibilant(std::string_view w) {
  return EndsWith(w, "s") || EndsWith(w, "x") || EndsWith(w, "z") ||
         EndsWith(w, "ch") || EndsWith(w, "sh");
}

std::string WithSuffix(std::string_view stem, std::string_view suffix) {
  std::string out(stem);
  out.append(suffix);
  return out;
}

std::string Chop(std::string_view w, size_t n) {
  return std::string(w.substr(0, w.size() - n));
}

// Endings that English base forms essentially never have.
bool PlausibleEnding(std::string_view w) {
  if (w.empty()) return false;
  const char last = Lower(w.back());
  if (last == 'v' || last == 'j' || last == 'q') return false;
  if (w.size() >= 2 && (last == 'l' || last == 'r')) {
    const char prev = Lower(w[w.size() - 2]);
    if (IsConsonant(prev) && prev != 'l' && prev != 'r' && prev != 'w') {
      return false;
    }
  }
  return true;
}

PosTag NormalizeTag(PosTag tag) {
  return tag == PosTag::kNNPS ? PosTag::kNNS : tag;
}

bool IsBaseFormTag(PosTag tag) { return IsBaseTag(tag); }

bool Recasable(CaseStyle style) {
  return style == CaseStyle::kFirstUpper || style == CaseStyle::kAllUpper;
}

absl::Status ContentTagRequired(PosTag tag) {
  if (IsContentTag(tag)) return absl::OkStatus();
  return absl::InvalidArgumentError(
      fmt::format("not a content tag: {}", TagName(tag)));
}

absl::StatusOr<PosTag> ParseContentTag(std::string_view field,
                                       std::string_view source, int line_no) {
  std::optional<PosTag> tag = ParseTag(field);
  if (!tag.has_value() || !IsContentTag(*tag)) {
    return absl::InvalidArgumentError(fmt::format(
        "{} line {}: bad content tag '{}'", source, line_no, field));
  }
  return *tag;
}

}  // namespace

std::string RegularInflect(std::string_view lemma, PosTag tag) {
  const std::string_view w = lemma;
  switch (NormalizeTag(tag)) {
    case PosTag::kNNS:
    case PosTag::kVBZ:
      if (EndsConsonantY(w)) return WithSuffix(Chop(w, 1), "ies");
      if (EndsSibilant(w)) return WithSuffix(w, "es");
      return WithSuffix(w, "s");
    case PosTag::kVBD:
    case PosTag::kVBN:
      if (EndsWith(w, "e")) return WithSuffix(w, "d");
      if (EndsConsonantY(w)) return WithSuffix(Chop(w, 1), "ied");
      if (DoublesFinalConsonant(w)) {
        return WithSuffix(w, w.substr(w.size() - 1)) + "ed";
      }
      return WithSuffix(w, "ed");
    case PosTag::kVBG:
      if (EndsWith(w, "ie")) return WithSuffix(Chop(w, 2), "ying");
      if (EndsWith(w, "e") && !EndsWith(w, "ee") && !EndsWith(w, "ye") &&
          !EndsWith(w, "oe") && w.size() > 2) {
        return WithSuffix(Chop(w, 1), "ing");
      }
      if (DoublesFinalConsonant(w)) {
        return WithSuffix(w, w.substr(w.size() - 1)) + "ing";
      }
      return WithSuffix(w, "ing");
    case PosTag::kJJR:
    case PosTag::kJJS: {
      const bool superlative = NormalizeTag(tag) == PosTag::kJJS;
      const std::string_view suffix = superlative ? "est" : "er";
      if (EndsWith(w, "e")) return WithSuffix(w, suffix.substr(1));
      if (EndsConsonantY(w)) {
        return WithSuffix(Chop(w, 1) + "i", suffix);
      }
      if (DoublesFinalConsonant(w)) {
        return WithSuffix(WithSuffix(w, w.substr(w.size() - 1)), suffix);
      }
      return WithSuffix(w, suffix);
    }
    default:
      return std::string(lemma);
  }
}

std::vector<std::string> RuleLemmaCandidates(std::string_view surface,
                                             PosTag tag) {
  std::vector<std::string> out;
  auto add = [&](std::string c) {
    if (c.empty() || !HasVowel(c)) return;
    if (std::find(out.begin(), out.end(), c) == out.end()) {
      out.push_back(std::move(c));
    }
  };
  // Undoubling: "stopp" -> "stop".
  auto add_stem = [&](std::string_view stem) {
    add(std::string(stem));
    if (stem.size() >= 3 && stem.back() == stem[stem.size() - 2] &&
        IsConsonant(stem.back())) {
      add(Chop(stem, 1));
    }
  };
  const std::string_view w = surface;
  switch (NormalizeTag(tag)) {
    case PosTag::kNNS:
    case PosTag::kVBZ:
      if (EndsWith(w, "ies") && w.size() > 4) add(Chop(w, 3) + "y");
      if (EndsWith(w, "es")) {
        const std::string stem = Chop(w, 2);
        if (EndsSibilant(stem) || EndsWith(stem, "o")) add(stem);
      }
      if (EndsWith(w, "s") && !EndsWith(w, "ss")) add(Chop(w, 1));
      break;
    case PosTag::kVBD:
    case PosTag::kVBN:
      if (EndsWith(w, "ied") && w.size() > 4) add(Chop(w, 3) + "y");
      if (EndsWith(w, "ed")) {
        add_stem(std::string_view(w).substr(0, w.size() - 2));
        add(Chop(w, 1));
      }
      break;
    case PosTag::kVBG:
      if (EndsWith(w, "ying") && w.size() > 5) add(Chop(w, 4) + "ie");
      if (EndsWith(w, "ing")) {
        const std::string stem = Chop(w, 3);
        add_stem(stem);
        add(stem + "e");
      }
      break;
    case PosTag::kJJR:
      if (EndsWith(w, "ier") && w.size() > 4) add(Chop(w, 3) + "y");
      if (EndsWith(w, "er")) {
        add_stem(std::string_view(w).substr(0, w.size() - 2));
        add(Chop(w, 1));
      }
      break;
    case PosTag::kJJS:
      if (EndsWith(w, "iest") && w.size() > 5) add(Chop(w, 4) + "y");
      if (EndsWith(w, "est")) {
        add_stem(std::string_view(w).substr(0, w.size() - 3));
        add(Chop(w, 2));
      }
      break;
    default:
      break;
  }
  return out;
}

absl::StatusOr<MorphLexicon> MorphLexicon::Load(
    const std::string& lemma_path, const std::string& inflection_path) {
  std::ifstream lemmas(lemma_path);
  if (!lemmas) {
    return absl::NotFoundError("cannot open " + lemma_path);
  }
  std::ifstream inflections(inflection_path);
  if (!inflections) {
    return absl::NotFoundError("cannot open " + inflection_path);
  }
  return FromStreams(lemmas, inflections);
}

absl::StatusOr<MorphLexicon> MorphLexicon::FromStreams(
    std::istream& lemmas, std::istream& inflections) {
  MorphLexicon lex;
  std::string line;
  int line_no = 0;
  while (std::getline(lemmas, line)) {
    ++line_no;
    if (IsSkippableLine(line)) continue;
    const std::vector<std::string_view> f = SplitTabs(StripCr(line));
    if (f.size() != 3 || f[0].empty() || f[2].empty()) {
      return absl::InvalidArgumentError(
          fmt::format("lemma table line {}: expected 3 fields", line_no));
    }
    absl::StatusOr<PosTag> tag = ParseContentTag(f[1], "lemma table", line_no);
    if (!tag.ok()) return tag.status();
    if (IsBaseFormTag(*tag) && f[0] != f[2]) {
      return absl::InvalidArgumentError(fmt::format(
          "lemma table line {}: base-form tag with lemma != surface", line_no));
    }
    Key key(std::string(f[0]), *tag);
    if (!lex.lemma_table_.emplace(key, std::string(f[2])).second) {
      return absl::InvalidArgumentError(fmt::format(
          "lemma table line {}: duplicate entry '{}'", line_no, f[0]));
    }
    lex.known_lemmas_.emplace(std::string(f[2]), CoarsePosOf(*tag));
  }

  absl::flat_hash_map<Key, std::vector<std::pair<int, std::string>>> ranked;
  line_no = 0;
  while (std::getline(inflections, line)) {
    ++line_no;
    if (IsSkippableLine(line)) continue;
    const std::vector<std::string_view> f = SplitTabs(StripCr(line));
    int rank = 0;
    if (f.size() != 4 || f[0].empty() || f[2].empty() ||
        !ParseInt(f[3], &rank) || rank < 1) {
      return absl::InvalidArgumentError(fmt::format(
          "inflection table line {}: expected lemma, tag, surface, rank >= 1",
          line_no));
    }
    absl::StatusOr<PosTag> tag =
        ParseContentTag(f[1], "inflection table", line_no);
    if (!tag.ok()) return tag.status();
    ranked[Key(std::string(f[0]), *tag)].emplace_back(rank, std::string(f[2]));
    lex.known_lemmas_.emplace(std::string(f[0]), CoarsePosOf(*tag));
  }
  for (auto& [key, forms] : ranked) {
    std::stable_sort(
        forms.begin(), forms.end(),
        [](const auto& a, const auto& b) { return a.first < b.first; });
    std::vector<std::string>& list = lex.inflect_table_[key];
    for (auto& [rank, surface] : forms) {
      if (std::find(list.begin(), list.end(), surface) == list.end()) {
        list.push_back(std::move(surface));
      }
    }
  }
  return lex;
}

const std::string* MorphLexicon::FindLemmaExact(std::string_view surface,
                                                PosTag tag) const {
  auto it = lemma_table_.find(Key(std::string(surface), tag));
  return it == lemma_table_.end() ? nullptr : &it->second;
}

const std::vector<std::string>* MorphLexicon::FindInflectionsExact(
    std::string_view lemma, PosTag tag) const {
  auto it = inflect_table_.find(Key(std::string(lemma), tag));
  return it == inflect_table_.end() ? nullptr : &it->second;
}

std::optional<std::string> MorphLexicon::LookupLemma(std::string_view surface,
                                                     PosTag tag) const {
  tag = NormalizeTag(tag);
  if (const std::string* hit = FindLemmaExact(surface, tag)) return *hit;
  const CaseStyle style = DetectCaseStyle(surface);
  if (Recasable(style)) {
    if (const std::string* hit = FindLemmaExact(ToLower(surface), tag)) {
      return ApplyCaseStyle(*hit, style);
    }
  }
  return std::nullopt;
}

std::vector<std::string> MorphLexicon::LookupInflections(std::string_view lemma,
                                                         PosTag tag) const {
  tag = NormalizeTag(tag);
  if (const auto* hit = FindInflectionsExact(lemma, tag)) return *hit;
  const CaseStyle style = DetectCaseStyle(lemma);
  if (Recasable(style)) {
    if (const auto* hit = FindInflectionsExact(ToLower(lemma), tag)) {
      std::vector<std::string> out;
      for (const std::string& s : *hit) out.push_back(ApplyCaseStyle(s, style));
      return out;
    }
  }
  return {};
}

bool MorphLexicon::IsKnownLemma(std::string_view lemma, CoarsePos pos) const {
  if (known_lemmas_.contains(std::make_pair(std::string(lemma), pos))) {
    return true;
  }
  return Recasable(DetectCaseStyle(lemma)) &&
         known_lemmas_.contains(std::make_pair(ToLower(lemma), pos));
}

std::string MorphLexicon::RuleLemma(std::string_view surface,
                                    PosTag tag) const {
  const CaseStyle style = DetectCaseStyle(surface);
  if (Recasable(style)) {
    return ApplyCaseStyle(RuleLemma(ToLower(surface), tag), style);
  }
  const std::vector<std::string> candidates = RuleLemmaCandidates(surface, tag);
  if (candidates.empty()) return std::string(surface);
  // A candidate must inflect back to the surface. Dictionary lemmas win in
  // rule order; otherwise the shortest candidate with a plausible ending.
  auto reproduces = [&](const std::string& c) {
    const std::vector<std::string> forms = InflectAll(c, tag);
    return std::find(forms.begin(), forms.end(), surface) != forms.end();
  };
  const CoarsePos pos = CoarsePosOf(tag);
  for (const std::string& c : candidates) {
    if (IsKnownLemma(c, pos) && reproduces(c)) return c;
  }
  const std::string* best = nullptr;
  for (const std::string& c : candidates) {
    if (PlausibleEnding(c) && reproduces(c) &&
        (best == nullptr || c.size() < best->size())) {
      best = &c;
    }
  }
  return best != nullptr ? *best : std::string(surface);
}

absl::StatusOr<std::string> MorphLexicon::Lemmatize(std::string_view surface,
                                                    PosTag tag) const {
  if (absl::Status s = ContentTagRequired(tag); !s.ok()) return s;
  if (IsBaseFormTag(tag)) return std::string(surface);
  tag = NormalizeTag(tag);
  if (std::optional<std::string> hit = LookupLemma(surface, tag)) return *hit;
  if (tag == PosTag::kVBP) return std::string(surface);
  return RuleLemma(surface, tag);
}

absl::StatusOr<std::optional<PosTag>> MorphLexicon::InflectionOf(
    std::string_view surface, PosTag tag) const {
  absl::StatusOr<std::string> lemma = Lemmatize(surface, tag);
  if (!lemma.ok()) return lemma.status();
  if (IsBaseFormTag(tag)) return std::optional<PosTag>();
  tag = NormalizeTag(tag);
  if (*lemma != surface) return std::optional<PosTag>(tag);
  if (tag == PosTag::kVBP) return std::optional<PosTag>();
  // Zero-marked forms (put/VBD, sheep/NNS) keep their tag only when the
  // inflection is confirmed to reproduce the surface.
  if (Inflect(*lemma, tag) == surface) return std::optional<PosTag>(tag);
  return std::optional<PosTag>();
}

std::string MorphLexicon::Inflect(std::string_view lemma,
                                  std::optional<PosTag> tag) const {
  if (!tag.has_value() || !IsContentTag(*tag) || IsBaseFormTag(*tag)) {
    return std::string(lemma);
  }
  const PosTag t = NormalizeTag(*tag);
  std::vector<std::string> listed = LookupInflections(lemma, t);
  if (!listed.empty()) return std::move(listed.front());
  if (t == PosTag::kVBP) return std::string(lemma);
  const CaseStyle style = DetectCaseStyle(lemma);
  if (Recasable(style)) {
    return ApplyCaseStyle(RegularInflect(ToLower(lemma), t), style);
  }
  return RegularInflect(lemma, t);
}

std::vector<std::string> MorphLexicon::InflectAll(std::string_view lemma,
                                                  PosTag tag) const {
  if (!IsContentTag(tag) || IsBaseFormTag(tag)) return {std::string(lemma)};
  std::vector<std::string> listed = LookupInflections(lemma, tag);
  if (!listed.empty()) return listed;
  return {Inflect(lemma, tag)};
}

}  // namespace bite
