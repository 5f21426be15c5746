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

#ifndef BITE_PRETOKENIZER_H_
#define BITE_PRETOKENIZER_H_

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace bite {

struct WordToken {
  std::string surface;
  // Byte offsets into the source text, half-open.
  size_t begin = 0;
  size_t end = 0;
  bool is_punct = false;

  bool operator==(const WordToken&) const = default;
};

// Splits on Unicode whitespace and isolates every punctuation or symbol
// character (ASCII punctuation, general categories P* and S*) as its own
// token. Ill-formed UTF-8 bytes are kept inside word tokens.
std::vector<WordToken> Pretokenize(std::string_view text);

// Surfaces only.
std::vector<std::string> PretokenizeSurfaces(std::string_view text);

// Joins tokens with single spaces, omitting the space before a single
// punctuation character.
std::string Detokenize(std::span<const std::string> tokens);

bool IsPunctuationToken(std::string_view token);

}  // namespace bite

#endif  // BITE_PRETOKENIZER_H_
