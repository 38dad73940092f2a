// Copyright 2026 The dnadapt Authors.
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

// Small string helpers shared by the text-processing modules.

#ifndef DNADAPT_TEXT_HPP_
#define DNADAPT_TEXT_HPP_

#include <string>
#include <string_view>
#include <vector>

namespace dnadapt {

/// Throws Error(kInvalidUtf8) on malformed input.
std::u32string DecodeUtf8(std::string_view bytes);
std::string EncodeUtf8(std::u32string_view code_points);

inline bool IsSpace(char32_t c) {
  return c == U' ' || c == U'\t' || c == U'\n' || c == U'\r' || c == U'\v' ||
         c == U'\f';
}

std::string_view Trim(std::string_view s);

/// Maximal runs of non-whitespace.
std::vector<std::string> SplitWords(std::string_view s);

std::string JoinWords(const std::vector<std::string>& words);

std::string AsciiLower(std::string_view s);

}  // namespace dnadapt

#endif  // DNADAPT_TEXT_HPP_
