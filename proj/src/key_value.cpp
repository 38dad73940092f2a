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

#include "dnadapt/key_value.hpp"

#include <fstream>

#include "dnadapt/error.hpp"
#include "dnadapt/text.hpp"
#include "json.hpp"

namespace dnadapt {

KeyValues ParseKeyValues(std::istream& in, const std::string& source) {
  KeyValues kv;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string_view body = Trim(line);
    if (body.empty() || body.front() == '#') continue;
    const auto eq = body.find('=');
    const auto where = [&] { return source + ":" + std::to_string(line_no); };
    if (eq == std::string_view::npos) {
      throw Error(ErrorCode::kInvalidConfig, where() + ": expected 'key = value'");
    }
    const std::string key(Trim(body.substr(0, eq)));
    std::string_view raw = Trim(body.substr(eq + 1));
    if (key.empty()) throw Error(ErrorCode::kInvalidConfig, where() + ": empty key");
    std::string value;
    if (!raw.empty() && raw.front() == '"') {
      try {
        value = nlohmann::json::parse(raw).get<std::string>();
      } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::kInvalidConfig, where() + ": bad quoted value: " + e.what());
      }
    } else {
      value = std::string(raw);
    }
    if (!kv.emplace(key, value).second) {
      throw Error(ErrorCode::kInvalidConfig, where() + ": duplicate key '" + key + "'");
    }
  }
  return kv;
}

KeyValues LoadKeyValues(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIoError, "cannot open config " + path);
  return ParseKeyValues(in, path);
}

std::string SerializeKeyValues(const KeyValues& kv) {
  std::string out;
  for (const auto& [key, value] : kv) {
    const bool needs_quotes = value.empty() || value != Trim(value) || value.front() == '"' ||
                              value.find('\n') != std::string::npos;
    out += key;
    out += " = ";
    out += needs_quotes ? nlohmann::json(value).dump() : value;
    out.push_back('\n');
  }
  return out;
}

}  // namespace dnadapt
