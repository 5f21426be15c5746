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

#ifndef BITE_UNICODE_H_
#define BITE_UNICODE_H_

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace bite {

// One decoded unit of a UTF-8 string. Ill-formed bytes decode to a one-byte
// unit with `valid == false` so that every input byte belongs to exactly one
// unit.
struct Utf8Char {
  char32_t code_point = 0;
  size_t length = 0;
  bool valid = false;
};

Utf8Char DecodeUtf8(std::string_view text, size_t pos);

void AppendUtf8(char32_t code_point, std::string* out);

// Splits into per-character substrings (one per decoded unit).
std::vector<std::string> SplitUtf8(std::string_view text);

size_t Utf8Length(std::string_view text);

bool IsValidUtf8(std::string_view text);

bool IsUnicodeWhitespace(char32_t c);

// ASCII punctuation or any code point in general category P* or S*.
bool IsPunctuationOrSymbol(char32_t c);

// Full-string case mapping through per-code-point simple case mapping.
std::string ToLower(std::string_view text);
std::string ToUpper(std::string_view text);

// True when the first code point is an uppercase letter.
bool StartsUppercase(std::string_view text);

enum class CaseStyle { kLower, kFirstUpper, kAllUpper, kMixed };

CaseStyle DetectCaseStyle(std::string_view text);

// Re-applies a case style captured from another word. kMixed and kLower leave
// `text` unchanged.
std::string ApplyCaseStyle(std::string_view text, CaseStyle style);

}  // namespace bite

#endif  // BITE_UNICODE_H_
