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

#include "bite/unicode.h"

#include <unicode/uchar.h>

namespace bite {

Utf8Char DecodeUtf8(std::string_view text, size_t pos) {
  const auto byte = [&](size_t i) {
    return static_cast<unsigned char>(text[i]);
  };
  const unsigned char lead = byte(pos);
  if (lead < 0x80) return {lead, 1, true};

  size_t need = 0;
  char32_t cp = 0;
  char32_t min_value = 0;
  if ((lead & 0xE0) == 0xC0) {
    need = 1, cp = lead & 0x1F, min_value = 0x80;
  } else if ((lead & 0xF0) == 0xE0) {
    need = 2, cp = lead & 0x0F, min_value = 0x800;
  } else if ((lead & 0xF8) == 0xF0) {
    need = 3, cp = lead & 0x07, min_value = 0x10000;
  } else {
    return {lead, 1, false};
  }
  if (pos + need >= text.size()) return {lead, 1, false};
  for (size_t i = 1; i <= need; ++i) {
    const unsigned char b = byte(pos + i);
    if ((b & 0xC0) != 0x80) return {lead, 1, false};
    cp = (cp << 6) | (b & 0x3F);
  }
  if (cp < min_value || cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) {
    return {lead, 1, false};
  }
  return {cp, need + 1, true};
}

void AppendUtf8(char32_t cp, std::string* out) {
  if (cp < 0x80) {
    out->push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out->push_back(static_cast<char>(0xC0 | (cp >> 6)));
    out->push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else if (cp < 0x10000) {
    out->push_back(static_cast<char>(0xE0 | (cp >> 12)));
    out->push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out->push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else {
    out->push_back(static_cast<char>(0xF0 | (cp >> 18)));
    out->push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
    out->push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out->push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  }
}

std::vector<std::string> SplitUtf8(std::string_view text) {
  std::vector<std::string> out;
  for (size_t pos = 0; pos < text.size();) {
    const Utf8Char c = DecodeUtf8(text, pos);
    out.emplace_back(text.substr(pos, c.length));
    pos += c.length;
  }
  return out;
}

size_t Utf8Length(std::string_view text) {
  size_t n = 0;
  for (size_t pos = 0; pos < text.size(); ++n) {
    pos += DecodeUtf8(text, pos).length;
  }
  return n;
}

bool IsValidUtf8(std::string_view text) {
  for (size_t pos = 0; pos < text.size();) {
    const Utf8Char c = DecodeUtf8(text, pos);
    if (!c.valid) return false;
    pos += c.length;
  }
  return true;
}

bool IsUnicodeWhitespace(char32_t c) {
  return u_isUWhiteSpace(static_cast<UChar32>(c));
}

bool IsPunctuationOrSymbol(char32_t c) {
  if (c < 0x80) {
    return (c >= 0x21 && c <= 0x2F) || (c >= 0x3A && c <= 0x40) ||
           (c >= 0x5B && c <= 0x60) || (c >= 0x7B && c <= 0x7E);
  }
  const int32_t mask = U_GET_GC_MASK(static_cast<UChar32>(c));
  return (mask & (U_GC_P_MASK | U_GC_S_MASK)) != 0;
}

namespace {

template <typename MapFn>
std::string MapCase(std::string_view text, MapFn map) {
  std::string out;
  out.reserve(text.size());
  for (size_t pos = 0; pos < text.size();) {
    const Utf8Char c = DecodeUtf8(text, pos);
    if (c.valid) {
      AppendUtf8(static_cast<char32_t>(map(static_cast<UChar32>(c.code_point))),
                 &out);
    } else {
      out.append(text.substr(pos, c.length));
    }
    pos += c.length;
  }
  return out;
}

}  // namespace

std::string ToLower(std::string_view text) {
  return MapCase(text, [](UChar32 c) { return u_tolower(c); });
}

std::string ToUpper(std::string_view text) {
  return MapCase(text, [](UChar32 c) { return u_toupper(c); });
}

bool StartsUppercase(std::string_view text) {
  if (text.empty()) return false;
  const Utf8Char c = DecodeUtf8(text, 0);
  return c.valid && u_isupper(static_cast<UChar32>(c.code_point));
}

CaseStyle DetectCaseStyle(std::string_view text) {
  size_t letters = 0, upper = 0;
  bool first_upper = false;
  for (size_t pos = 0; pos < text.size();) {
    const Utf8Char c = DecodeUtf8(text, pos);
    const UChar32 cp = static_cast<UChar32>(c.code_point);
    if (c.valid && u_isalpha(cp)) {
      if (u_isupper(cp)) {
        if (letters == 0) first_upper = true;
        ++upper;
      }
      ++letters;
    }
    pos += c.length;
  }
  if (upper == 0) return CaseStyle::kLower;
  if (upper == letters && letters > 1) return CaseStyle::kAllUpper;
  if (first_upper && upper == 1) return CaseStyle::kFirstUpper;
  return CaseStyle::kMixed;
}

std::string ApplyCaseStyle(std::string_view text, CaseStyle style) {
  switch (style) {
    case CaseStyle::kAllUpper:
      return ToUpper(text);
    case CaseStyle::kFirstUpper: {
      if (text.empty()) return std::string();
      const Utf8Char first = DecodeUtf8(text, 0);
      return ToUpper(text.substr(0, first.length)) +
             std::string(text.substr(first.length));
    }
    case CaseStyle::kLower:
    case CaseStyle::kMixed:
      break;
  }
  return std::string(text);
}

}  // namespace bite
