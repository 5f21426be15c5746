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

#include "bite/pretokenizer.h"

#include "bite/unicode.h"

namespace bite {

std::vector<WordToken> Pretokenize(std::string_view text) {
  std::vector<WordToken> tokens;
  size_t word_begin = std::string_view::npos;
  auto flush = [&](size_t end) {
    if (word_begin == std::string_view::npos) return;
    tokens.push_back({std::string(text.substr(word_begin, end - word_begin)),
                      word_begin, end, false});
    word_begin = std::string_view::npos;
  };

  for (size_t pos = 0; pos < text.size();) {
    const Utf8Char c = DecodeUtf8(text, pos);
    if (c.valid && IsUnicodeWhitespace(c.code_point)) {
      flush(pos);
    } else if (c.valid && IsPunctuationOrSymbol(c.code_point)) {
      flush(pos);
      tokens.push_back(
          {std::string(text.substr(pos, c.length)), pos, pos + c.length, true});
    } else if (word_begin == std::string_view::npos) {
      word_begin = pos;
    }
    pos += c.length;
  }
  flush(text.size());
  return tokens;
}

std::vector<std::string> PretokenizeSurfaces(std::string_view text) {
  std::vector<std::string> out;
  for (WordToken& t : Pretokenize(text)) out.push_back(std::move(t.surface));
  return out;
}

bool IsPunctuationToken(std::string_view token) {
  if (token.empty()) return false;
  const Utf8Char c = DecodeUtf8(token, 0);
  return c.valid && c.length == token.size() &&
         IsPunctuationOrSymbol(c.code_point);
}

std::string Detokenize(std::span<const std::string> tokens) {
  std::string out;
  for (size_t i = 0; i < tokens.size(); ++i) {
    if (i > 0 && !IsPunctuationToken(tokens[i])) out.push_back(' ');
    out += tokens[i];
  }
  return out;
}

}  // namespace bite
