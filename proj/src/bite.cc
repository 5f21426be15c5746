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

#include "bite/bite.h"

#include <algorithm>

#include "absl/status/status.h"
#include "bite/unicode.h"
#include "fmt/core.h"

namespace bite {
namespace {

enum class Number { kUnknown, kFirstSingular, kSingular, kPlural };

Number PronounNumber(std::string_view w) {
  if (w == "i") return Number::kFirstSingular;
  if (w == "he" || w == "she" || w == "it" || w == "this") {
    return Number::kSingular;
  }
  if (w == "we" || w == "you" || w == "they" || w == "these" || w == "those") {
    return Number::kPlural;
  }
  return Number::kUnknown;
}

bool IsSkippableAdverb(std::string_view w) {
  static constexpr std::string_view kAdverbs[] = {
      "not",       "also",     "really",    "never",     "always",  "still",
      "then",      "only",     "certainly", "indeed",    "ever",    "often",
      "soon",      "now",      "sometimes", "surely",    "quite",   "once",
      "already",   "perhaps",  "probably",  "generally", "usually", "merely",
      "hardly",    "scarcely", "just",      "even",      "all",     "both",
      "evidently", "truly",    "sure"};
  for (std::string_view a : kAdverbs) {
    if (w == a) return true;
  }
  return false;
}

bool IsSubjunctiveTrigger(std::string_view w) {
  return w == "if" || w == "wish" || w == "wished" || w == "though" ||
         w == "unless" || w == "whether" || w == "till" || w == "lest" ||
         w == "whenever";
}

bool IsPreposition(std::string_view w) {
  static constexpr std::string_view kPrepositions[] = {
      "of",    "at",      "in",    "on",      "from",   "with",
      "for",   "by",      "about", "towards", "toward", "upon",
      "among", "between", "under", "over",    "into"};
  for (std::string_view a : kPrepositions) {
    if (w == a) return true;
  }
  return false;
}

bool IsRelative(std::string_view w) {
  return w == "who" || w == "which" || w == "that";
}

bool IsVerbMark(const BiteSymbol& s) {
  return s.kind == SymbolKind::kInflection && s.text != "[NNS]" &&
         s.text != "[JJR]" && s.text != "[JJS]";
}

bool IsPluralMark(const BiteSymbol& s) {
  return s.kind == SymbolKind::kInflection && s.text == "[NNS]";
}

bool IsBoundary(const BiteSymbol& s) {
  return s.kind == SymbolKind::kPassthrough &&
         (s.text == "," || s.text == ";" || s.text == ":" || s.text == "." ||
          s.text == "!" || s.text == "?" || s.text == "\"" || s.text == "-" ||
          s.text == "(" || s.text == ")");
}

// Number evidence for the subject of a form of "be" whose base symbol sits
// at `base`. `past` selects the subjunctive reading of "if ... were".
class AgreementContext {
 public:
  AgreementContext(std::span<const BiteSymbol> symbols, bool past)
      : symbols_(symbols), past_(past) {
    lower_.reserve(symbols.size());
    for (const BiteSymbol& s : symbols) lower_.push_back(ToLower(s.text));
  }

  Number Resolve(size_t base) const {
    const long p = SkipAdverbsLeft(static_cast<long>(base) - 1);
    if (p < 0 || lower_[p] == "there" || lower_[p] == "here" ||
        IsSubjunctiveTrigger(lower_[p]) || lower_[p] == "where" ||
        lower_[p] == "how" || lower_[p] == "what") {
      return Forward(base + 2);
    }
    const BiteSymbol& at = symbols_[p];
    if (past_ && SubjunctiveClause(p)) return Number::kPlural;
    if (IsPluralMark(at)) return Number::kPlural;
    if (Number n = PronounNumber(lower_[p]); n != Number::kUnknown) {
      const long q = SkipAdverbsLeft(p - 1);
      if (q >= 0) {
        if (past_ && IsSubjunctiveTrigger(lower_[q])) return Number::kPlural;
        if ((lower_[q] == "and" || lower_[q] == "or") && q > 0 &&
            IsConjunct(q - 1)) {
          return Number::kPlural;
        }
      }
      return n;
    }
    if (IsRelative(lower_[p])) {
      long r = p - 1;
      if (r >= 0 && symbols_[r].text == ",") --r;
      if (r >= 0 && IsPluralMark(symbols_[r])) return Number::kPlural;
      if (r >= 0) return PronounNumber(lower_[r]);
      return Number::kUnknown;
    }
    if (at.text == ",") {
      // "All eyes, as usual, were": resolve before the parenthetical.
      for (long i = p - 1; i > 0 && i > p - 8; --i) {
        if (IsBoundary(symbols_[i]) && symbols_[i].text != ",") break;
        if (symbols_[i].text == ",") {
          if (IsPluralMark(symbols_[i - 1])) return Number::kPlural;
          break;
        }
      }
    }
    if (IsBoundary(at) || lower_[p] == "and" || lower_[p] == "or" ||
        lower_[p] == "but") {
      return EarlierSubject(p);
    }
    if (p > 0 && lower_[p - 1] == "the" && IsFamilyName(symbols_[p].text)) {
      return Number::kPlural;
    }
    return NounPhrase(p);
  }

 private:
  long SkipAdverbsLeft(long i) const {
    while (i >= 0 && IsSkippableAdverb(lower_[i])) --i;
    return i;
  }

  // "if my father were": a trigger opening the clause that holds the subject.
  bool SubjunctiveClause(long p) const {
    for (long i = p; i >= 0 && i > p - 6; --i) {
      if (IsBoundary(symbols_[i]) || IsVerbMark(symbols_[i])) return false;
      if (IsSubjunctiveTrigger(lower_[i])) return true;
    }
    return false;
  }

  // "the Woodhouses".
  static bool IsFamilyName(std::string_view w) {
    return w.size() > 3 && StartsUppercase(w) && w.back() == 's' &&
           w[w.size() - 2] != 's';
  }

  // Elided subject after a conjunction: "..., and am sure".
  Number EarlierSubject(long p) const {
    for (long i = p; i >= 0 && i > p - 15; --i) {
      const std::string& w = lower_[i];
      if (w == "." || w == "!" || w == "?" || w == ";") break;
      if (w == "these" || w == "those" || w == "this") continue;
      if (Number n = PronounNumber(w); n != Number::kUnknown) return n;
    }
    return Number::kUnknown;
  }

  // A conjunct that makes "X and I" a plural subject.
  bool IsConjunct(long i) const {
    const BiteSymbol& s = symbols_[i];
    if (s.kind == SymbolKind::kInflection) return IsPluralMark(s);
    if (IsBoundary(s)) return false;
    const std::string& w = lower_[i];
    if (w == "you" || w == "he" || w == "she" || w == "we" || w == "they" ||
        w == "me" || w == "him" || w == "her" || w == "them") {
      return true;
    }
    return i > 0 && StartsUppercase(s.text);
  }

  // Walks left through the subject noun phrase ending at p.
  Number NounPhrase(long p) const {
    bool after_prep = false;
    for (long i = p; i >= 0 && i > p - 8; --i) {
      const BiteSymbol& s = symbols_[i];
      if (IsBoundary(s) || IsVerbMark(s) || IsRelative(lower_[i])) break;
      if (lower_[i] == "and" && i != p) return Number::kPlural;
      if (IsPreposition(lower_[i])) {
        after_prep = true;
        continue;
      }
      if (after_prep && IsPluralMark(s)) return Number::kPlural;
    }
    return Number::kUnknown;
  }

  Number Forward(size_t from) const {
    for (size_t j = from; j < symbols_.size() && j < from + 5; ++j) {
      if (IsBoundary(symbols_[j]) || IsVerbMark(symbols_[j])) break;
      if (IsPluralMark(symbols_[j])) return Number::kPlural;
      if (Number n = PronounNumber(lower_[j]); n != Number::kUnknown) {
        return n;
      }
    }
    return Number::kUnknown;
  }

  std::span<const BiteSymbol> symbols_;
  bool past_;
  std::vector<std::string> lower_;
};

}  // namespace

std::string InflectionSymbol(PosTag tag) {
  return fmt::format("[{}]", TagName(tag));
}

std::optional<PosTag> ParseInflectionSymbol(std::string_view text) {
  if (text.size() < 3 || text.front() != '[' || text.back() != ']') {
    return std::nullopt;
  }
  std::optional<PosTag> tag = ParseTag(text.substr(1, text.size() - 2));
  if (!tag.has_value() || !IsInflectionTag(*tag)) return std::nullopt;
  return tag;
}

const std::vector<std::string>& BiteSpecialSymbols() {
  static const std::vector<std::string>* symbols = [] {
    auto* v = new std::vector<std::string>;
    for (PosTag t : kInflectionTags) v->push_back(InflectionSymbol(t));
    v->emplace_back(kDummySymbol);
    return v;
  }();
  return *symbols;
}

bool IsBiteSpecialSymbol(std::string_view text) {
  return text == kDummySymbol || ParseInflectionSymbol(text).has_value();
}

std::vector<BiteSymbol> ClassifySymbols(std::span<const std::string> texts) {
  std::vector<BiteSymbol> out(texts.size());
  for (size_t i = 0; i < texts.size(); ++i) {
    out[i].text = texts[i];
    if (texts[i] == kDummySymbol) {
      out[i].kind = SymbolKind::kDummy;
    } else if (ParseInflectionSymbol(texts[i]).has_value()) {
      out[i].kind = SymbolKind::kInflection;
    } else {
      out[i].kind = SymbolKind::kPassthrough;
    }
  }
  for (size_t i = 0; i + 1 < out.size(); ++i) {
    const SymbolKind next = out[i + 1].kind;
    if (out[i].kind == SymbolKind::kPassthrough &&
        (next == SymbolKind::kInflection || next == SymbolKind::kDummy)) {
      out[i].kind = SymbolKind::kBaseForm;
    }
  }
  return out;
}

std::vector<std::string> SymbolTexts(std::span<const BiteSymbol> symbols) {
  std::vector<std::string> out;
  out.reserve(symbols.size());
  for (const BiteSymbol& s : symbols) out.push_back(s.text);
  return out;
}

std::vector<BiteSymbol> BiteCodec::Encode(std::span<const TaggedToken> tokens,
                                          BiteMode mode) const {
  std::vector<BiteSymbol> out;
  out.reserve(tokens.size() * 2);
  for (const TaggedToken& token : tokens) {
    if (!IsContentTag(token.tag)) {
      out.push_back({SymbolKind::kPassthrough, token.surface});
      continue;
    }
    // Content tags cannot fail either call.
    std::string lemma = *lexicon_->Lemmatize(token.surface, token.tag);
    const std::optional<PosTag> inflection =
        *lexicon_->InflectionOf(token.surface, token.tag);
    out.push_back({SymbolKind::kBaseForm, std::move(lemma)});
    if (!inflection.has_value()) continue;
    if (mode == BiteMode::kAblated) {
      out.push_back({SymbolKind::kDummy, std::string(kDummySymbol)});
    } else {
      out.push_back({SymbolKind::kInflection, InflectionSymbol(*inflection)});
    }
  }
  return out;
}

std::string BiteCodec::Reinflect(std::span<const BiteSymbol> symbols,
                                 size_t base, PosTag tag) const {
  const std::string& lemma = symbols[base].text;
  if (policy_ == OverabundancePolicy::kAgreement &&
      (tag == PosTag::kVBD || tag == PosTag::kVBP) && ToLower(lemma) == "be") {
    const std::vector<std::string> forms =
        lexicon_->LookupInflections(lemma, tag);
    std::string_view want;
    switch (AgreementContext(symbols, tag == PosTag::kVBD).Resolve(base)) {
      case Number::kFirstSingular:
        want = tag == PosTag::kVBD ? "was" : "am";
        break;
      case Number::kSingular:
        want = tag == PosTag::kVBD ? "was" : "are";
        break;
      case Number::kPlural:
        want = tag == PosTag::kVBD ? "were" : "are";
        break;
      case Number::kUnknown:
        break;
    }
    for (const std::string& f : forms) {
      if (!want.empty() && ToLower(f) == want) return f;
    }
  }
  return lexicon_->Inflect(lemma, tag);
}

absl::StatusOr<std::vector<std::string>> BiteCodec::Decode(
    std::span<const BiteSymbol> symbols) const {
  std::vector<std::string> out;
  out.reserve(symbols.size());
  for (size_t i = 0; i < symbols.size(); ++i) {
    const BiteSymbol& s = symbols[i];
    switch (s.kind) {
      case SymbolKind::kDummy:
        return absl::FailedPreconditionError(
            fmt::format("symbol {}: {} is not invertible", i, kDummySymbol));
      case SymbolKind::kInflection:
        return absl::InvalidArgumentError(
            fmt::format("symbol {}: {} has no preceding base form", i, s.text));
      case SymbolKind::kBaseForm:
      case SymbolKind::kPassthrough:
        break;
    }
    const bool inflected = s.kind == SymbolKind::kBaseForm &&
                           i + 1 < symbols.size() &&
                           symbols[i + 1].kind == SymbolKind::kInflection;
    if (!inflected) {
      out.push_back(s.text);
      continue;
    }
    std::optional<PosTag> tag = ParseInflectionSymbol(symbols[i + 1].text);
    if (!tag.has_value()) {
      return absl::InvalidArgumentError(fmt::format(
          "symbol {}: unknown inflection {}", i + 1, symbols[i + 1].text));
    }
    out.push_back(Reinflect(symbols, i, *tag));
    ++i;
  }
  return out;
}

}  // namespace bite
