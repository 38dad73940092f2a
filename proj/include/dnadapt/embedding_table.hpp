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

// Token-embedding table and nearest-token quantization.
//
// File layout (all integers and reals little-endian):
//
//   "DNEM"                      4 magic bytes
//   V                           uint32
//   d                           uint32
//   V*d reals                   float32, row-major
//   V tokens                    uint32 byte length, then UTF-8 bytes

#ifndef DNADAPT_EMBEDDING_TABLE_HPP_
#define DNADAPT_EMBEDDING_TABLE_HPP_

#include <Eigen/Dense>
#include <cmath>
#include <string>
#include <unordered_map>
#include <vector>

#include "dnadapt/error.hpp"

namespace dnadapt {

template <typename Scalar>
struct BasicEmbeddingTable {
  using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

  Matrix vectors;  // V x d
  std::vector<std::string> tokens;

  Eigen::Index vocab_size() const { return vectors.rows(); }
  Eigen::Index dim() const { return vectors.cols(); }
  bool empty() const { return vectors.rows() == 0; }

  /// Throws Error(kInvalidArgument) unless |tokens| = V, every entry is
  /// finite, tokens are non-empty and whitespace-free, and repeated token
  /// strings carry identical rows.
  void Validate() const;
};

using EmbeddingTable = BasicEmbeddingTable<float>;

void SaveEmbeddingTable(const EmbeddingTable& table, const std::string& path);
EmbeddingTable LoadEmbeddingTable(const std::string& path);
std::string SerializeEmbeddingTable(const EmbeddingTable& table);
EmbeddingTable DeserializeEmbeddingTable(const std::string& bytes);

/// For each frame (row of `frames`), the index of the row of `table` with the
/// highest cosine similarity; ties go to the lowest index. Scores within
/// kCosineTieTolerance of each other count as tied, so rows that differ only
/// in scale tie despite rounding. Zero-norm rows are never candidates. Scores
/// are accumulated in double.
inline constexpr double kCosineTieTolerance = 1e-12;

template <typename Derived, typename Scalar>
std::vector<Eigen::Index> NearestTokenIndices(const Eigen::MatrixBase<Derived>& frames,
                                              const BasicEmbeddingTable<Scalar>& table) {
  if (table.empty()) throw Error(ErrorCode::kEmptyDataset, "embedding table is empty");
  if (frames.cols() != table.dim()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "frame dim " + std::to_string(frames.cols()) + " vs table dim " +
                    std::to_string(table.dim()));
  }
  const Eigen::MatrixXd rows = table.vectors.template cast<double>();
  const Eigen::VectorXd row_norms = rows.rowwise().norm();
  bool any_candidate = false;
  for (Eigen::Index r = 0; r < rows.rows(); ++r) any_candidate |= row_norms[r] > 0.0;
  if (!any_candidate) throw Error(ErrorCode::kZeroVector, "every table row has zero norm");

  std::vector<Eigen::Index> nearest;
  nearest.reserve(static_cast<std::size_t>(frames.rows()));
  for (Eigen::Index f = 0; f < frames.rows(); ++f) {
    const Eigen::VectorXd frame = frames.row(f).transpose().template cast<double>();
    const double frame_norm = frame.norm();
    if (!(frame_norm > 0.0)) {
      throw Error(ErrorCode::kZeroVector, "frame " + std::to_string(f) + " has zero norm");
    }
    Eigen::Index best = -1;
    double best_score = 0.0;
    for (Eigen::Index r = 0; r < rows.rows(); ++r) {
      if (!(row_norms[r] > 0.0)) continue;
      const double score = rows.row(r).dot(frame) / (row_norms[r] * frame_norm);
      if (best < 0 || score > best_score + kCosineTieTolerance) {
        best = r;
        best_score = score;
      }
    }
    nearest.push_back(best);
  }
  return nearest;
}

/// Space-joined nearest tokens, one per frame.
template <typename Derived, typename Scalar>
std::string QuantizeToTokens(const Eigen::MatrixBase<Derived>& frames,
                             const BasicEmbeddingTable<Scalar>& table) {
  std::string out;
  for (Eigen::Index idx : NearestTokenIndices(frames, table)) {
    if (!out.empty()) out.push_back(' ');
    out += table.tokens[static_cast<std::size_t>(idx)];
  }
  return out;
}

template <typename Scalar>
void BasicEmbeddingTable<Scalar>::Validate() const {
  if (tokens.size() != static_cast<std::size_t>(vectors.rows())) {
    throw Error(ErrorCode::kInvalidArgument, "token count " + std::to_string(tokens.size()) +
                                                 " != vocab size " +
                                                 std::to_string(vectors.rows()));
  }
  if (!vectors.allFinite()) throw Error(ErrorCode::kInvalidArgument, "non-finite embedding");
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    const std::string& tok = tokens[i];
    if (tok.empty()) throw Error(ErrorCode::kInvalidArgument, "empty token at " + std::to_string(i));
    for (char c : tok) {
      if (c == ' ' || c == '\t' || c == '\n' || c == '\r') {
        throw Error(ErrorCode::kInvalidArgument, "token '" + tok + "' contains whitespace");
      }
    }
  }
  std::unordered_map<std::string, std::size_t> first_index;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    const auto [it, inserted] = first_index.emplace(tokens[i], i);
    if (!inserted && vectors.row(static_cast<Eigen::Index>(it->second)) !=
                         vectors.row(static_cast<Eigen::Index>(i))) {
      throw Error(ErrorCode::kInvalidArgument,
                  "token '" + tokens[i] + "' appears twice with different vectors");
    }
  }
}

}  // namespace dnadapt

#endif  // DNADAPT_EMBEDDING_TABLE_HPP_
