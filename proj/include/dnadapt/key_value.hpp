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

// Flat "key = value" config files. '#' starts a comment line. A value that
// starts with a double quote is read as a JSON string literal, so leading or
// trailing blanks and special characters survive.

#ifndef DNADAPT_KEY_VALUE_HPP_
#define DNADAPT_KEY_VALUE_HPP_

#include <istream>
#include <map>
#include <string>

namespace dnadapt {

using KeyValues = std::map<std::string, std::string>;

KeyValues ParseKeyValues(std::istream& in, const std::string& source = "<stream>");
KeyValues LoadKeyValues(const std::string& path);

/// Sorted by key, one "key = value" per line; quotes values when needed.
std::string SerializeKeyValues(const KeyValues& kv);

}  // namespace dnadapt

#endif  // DNADAPT_KEY_VALUE_HPP_
