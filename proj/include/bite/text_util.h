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

#ifndef BITE_TEXT_UTIL_H_
#define BITE_TEXT_UTIL_H_

#include <string>
#include <string_view>
#include <vector>

namespace bite {

std::vector<std::string_view> SplitChar(std::string_view s, char sep);

inline std::vector<std::string_view> SplitTabs(std::string_view s) {
  return SplitChar(s, '\t');
}

// Whitespace-separated fields, empty fields dropped.
std::vector<std::string_view> SplitAsciiWhitespace(std::string_view s);

std::string_view StripCr(std::string_view s);

// Blank lines and '#' comments in the TSV resources.
bool IsSkippableLine(std::string_view line);

bool ParseInt(std::string_view s, int* out);
bool ParseInt64(std::string_view s, long long* out);

std::string Join(const std::vector<std::string>& parts, std::string_view sep);

}  // namespace bite

#endif  // BITE_TEXT_UTIL_H_
