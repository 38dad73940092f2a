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

#include "dnadapt/embedding_table.hpp"

#include "dnadapt/binary_io.hpp"

namespace dnadapt {

namespace {
constexpr char kMagic[4] = {'D', 'N', 'E', 'M'};
}

std::string SerializeEmbeddingTable(const EmbeddingTable& table) {
  table.Validate();
  ByteWriter w;
  w.PutBytes(std::string_view(kMagic, 4));
  w.PutU32(static_cast<std::uint32_t>(table.vocab_size()));
  w.PutU32(static_cast<std::uint32_t>(table.dim()));
  for (Eigen::Index r = 0; r < table.vocab_size(); ++r) {
    for (Eigen::Index c = 0; c < table.dim(); ++c) w.PutF32(table.vectors(r, c));
  }
  for (const std::string& tok : table.tokens) {
    w.PutU32(static_cast<std::uint32_t>(tok.size()));
    w.PutBytes(tok);
  }
  return w.Take();
}

EmbeddingTable DeserializeEmbeddingTable(const std::string& bytes) {
  ByteReader r(bytes, "embedding table");
  if (r.GetBytes(4) != std::string_view(kMagic, 4)) {
    throw Error(ErrorCode::kMalformedRecord, "embedding table: bad magic");
  }
  const std::uint32_t vocab = r.GetU32();
  const std::uint32_t dim = r.GetU32();
  EmbeddingTable table;
  table.vectors.resize(vocab, dim);
  for (std::uint32_t i = 0; i < vocab; ++i) {
    for (std::uint32_t j = 0; j < dim; ++j) table.vectors(i, j) = r.GetF32();
  }
  table.tokens.reserve(vocab);
  for (std::uint32_t i = 0; i < vocab; ++i) {
    const std::uint32_t len = r.GetU32();
    table.tokens.emplace_back(r.GetBytes(len));
  }
  if (!r.AtEnd()) throw Error(ErrorCode::kMalformedRecord, "embedding table: trailing bytes");
  table.Validate();
  return table;
}

void SaveEmbeddingTable(const EmbeddingTable& table, const std::string& path) {
  WriteFileBytes(path, SerializeEmbeddingTable(table));
}

EmbeddingTable LoadEmbeddingTable(const std::string& path) {
  return DeserializeEmbeddingTable(ReadFileBytes(path));
}

}  // namespace dnadapt
