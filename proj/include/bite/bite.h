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

#ifndef BITE_BITE_H_
#define BITE_BITE_H_

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "absl/status/statusor.h"
#include "bite/morph.h"
#include "bite/ptb.h"
#include "bite/tagger.h"

namespace bite {

enum class SymbolKind { kBaseForm, kInflection, kDummy, kPassthrough };

struct BiteSymbol {
  SymbolKind kind = SymbolKind::kPassthrough;
  std::string text;

  bool operator==(const BiteSymbol&) const = default;
};

enum class BiteMode { kStandard, kAblated };

// How decode picks among several listed surfaces of one (lemma, tag).
enum class OverabundancePolicy {
  // Always the rank-1 surface.
  kFirstEntry,
  // Number agreement with a nearby subject for was/were and am/are; rank 1
  // when the context gives no evidence.
  kAgreement,
};

inline constexpr std::string_view kDummySymbol = "[INFL]";

// "[VBD]" for VBD.
std::string InflectionSymbol(PosTag tag);
std::optional<PosTag> ParseInflectionSymbol(std::string_view text);

// The 8 inflection symbols followed by the dummy symbol.
const std::vector<std::string>& BiteSpecialSymbols();
bool IsBiteSpecialSymbol(std::string_view text);

// Rebuilds symbol kinds from bare strings: inflection and dummy symbols are
// recognized by spelling, a symbol followed by one of them is a base form,
// everything else is passthrough.
std::vector<BiteSymbol> ClassifySymbols(std::span<const std::string> texts);

std::vector<std::string> SymbolTexts(std::span<const BiteSymbol> symbols);

class BiteCodec {
 public:
  explicit BiteCodec(
      const MorphLexicon* lexicon,
      OverabundancePolicy policy = OverabundancePolicy::kAgreement)
      : lexicon_(lexicon), policy_(policy) {}

  std::vector<BiteSymbol> Encode(std::span<const TaggedToken> tokens,
                                 BiteMode mode) const;

  // Fails on an inflection symbol without a preceding base form and on any
  // dummy symbol.
  absl::StatusOr<std::vector<std::string>> Decode(
      std::span<const BiteSymbol> symbols) const;

  absl::StatusOr<std::vector<std::string>> DecodeTexts(
      std::span<const std::string> texts) const {
    return Decode(ClassifySymbols(texts));
  }

  OverabundancePolicy policy() const { return policy_; }

 private:
  std::string Reinflect(std::span<const BiteSymbol> symbols, size_t base,
                        PosTag tag) const;

  const MorphLexicon* lexicon_;
  OverabundancePolicy policy_;
};

}  // namespace bite

#endif  // BITE_BITE_H_
