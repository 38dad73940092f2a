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

// Small pre-LayerNorm decoder-only transformer with hand-written backward
// pass, templated on the scalar type (float for training, double for
// gradient checks).
//
// Symbols inside the speech slot of an AUDIO item are embedded as
// token_embedding + audio_embedding. The second table plays the role of the
// speech projector: it starts at zero, so audio initially lands on the text
// embeddings, and learns whatever offset the acoustic channel needs.
//
// All parameters live in one flat vector. ParameterLayout names the blocks
// and their shapes; every block is a row-major matrix.

#ifndef DNADAPT_TRANSFORMER_HPP_
#define DNADAPT_TRANSFORMER_HPP_

#include <Eigen/Dense>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "dnadapt/error.hpp"
#include "dnadapt/random.hpp"

namespace dnadapt {

struct ModelDims {
  int embed_dim = 48;
  int hidden_dim = 128;
  int layers = 2;
  int heads = 2;
  int max_positions = 192;

  void Validate() const {
    if (embed_dim < 1 || hidden_dim < 1 || layers < 1 || heads < 1 || max_positions < 2 ||
        embed_dim % heads != 0) {
      throw Error(ErrorCode::kInvalidConfig,
                  "model dims must be >= 1 and embed_dim divisible by heads");
    }
  }
  bool operator==(const ModelDims&) const = default;
};

struct ParameterBlock {
  std::string name;
  Eigen::Index rows = 0;
  Eigen::Index cols = 0;
  Eigen::Index offset = 0;

  Eigen::Index size() const { return rows * cols; }
};

class ParameterLayout {
 public:
  struct LayerBlocks {
    int ln1_gain, ln1_bias, qkv_weight, qkv_bias, out_weight, out_bias;
    int ln2_gain, ln2_bias, mlp_in_weight, mlp_in_bias, mlp_out_weight, mlp_out_bias;
  };

  ParameterLayout() = default;
  ParameterLayout(const ModelDims& dims, int vocab_size);

  const std::vector<ParameterBlock>& blocks() const { return blocks_; }
  const ParameterBlock& block(int i) const { return blocks_[static_cast<std::size_t>(i)]; }
  /// Index of a block by name, or -1.
  int Find(const std::string& name) const;
  Eigen::Index size() const { return size_; }

  int token_embedding = -1, audio_embedding = -1, position_embedding = -1;
  int final_gain = -1, final_bias = -1, output_weight = -1, output_bias = -1;
  std::vector<LayerBlocks> layers;

 private:
  int Add(std::string name, Eigen::Index rows, Eigen::Index cols);

  std::vector<ParameterBlock> blocks_;
  Eigen::Index size_ = 0;
};

/// Sequences packed row-wise without padding. Row r of the packed
/// activations is position positions[r] of sequence s, where
/// offsets[s] <= r < offsets[s + 1].
struct PackedBatch {
  std::vector<int> tokens;
  std::vector<std::uint8_t> audio;
  std::vector<int> positions;
  std::vector<int> targets;  // next token, or -1 where no loss applies
  std::vector<Eigen::Index> offsets{0};
  Eigen::Index num_targets = 0;

  Eigen::Index rows() const { return static_cast<Eigen::Index>(tokens.size()); }
  std::size_t num_sequences() const { return offsets.size() - 1; }
};

template <typename Scalar>
class Transformer {
 public:
  using Mat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
  using Vec = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
  using RowVec = Eigen::Matrix<Scalar, 1, Eigen::Dynamic>;
  using MapMat = Eigen::Map<Mat>;
  using CMapMat = Eigen::Map<const Mat>;
  using CMapRow = Eigen::Map<const RowVec>;
  using MapRow = Eigen::Map<RowVec>;

  Transformer(ModelDims dims, int vocab_size)
      : dims_(dims), vocab_size_(vocab_size), layout_(dims, vocab_size) {}

  const ModelDims& dims() const { return dims_; }
  int vocab_size() const { return vocab_size_; }
  const ParameterLayout& layout() const { return layout_; }

  /// Fresh parameters: N(0, 0.02) token and position embeddings, a zero audio
  /// embedding, N(0, 1/fan_in) projections with
  /// residual outputs scaled by 1/sqrt(2 * layers), unit LayerNorm gains.
  Vec Initialize(std::uint64_t seed) const;

  /// Sum of next-token cross-entropy over rows with a target. When `grad` is
  /// non-null, accumulates `grad_scale` times the gradient of that sum.
  Scalar Loss(const Vec& params, const PackedBatch& batch, Vec* grad = nullptr,
              Scalar grad_scale = Scalar(1)) const;

  /// Incremental decoding state (key/value cache) for one sequence.
  struct DecodeCache {
    std::vector<Mat> keys, values;
    Eigen::Index length = 0;
  };

  DecodeCache NewCache() const;

  /// Feeds one token at the next position and returns its output logits.
  RowVec Step(const Vec& params, int token, bool audio, DecodeCache& cache) const;

 private:
  struct LayerCache {
    Mat x_in, xhat1, n1, qkv, o, x_mid, xhat2, n2, u, t, g;
    Vec rstd1, rstd2;
    std::vector<Mat> probs;  // per (sequence, head)
  };

  CMapMat Block(const Vec& p, int i) const {
    const ParameterBlock& b = layout_.block(i);
    return CMapMat(p.data() + b.offset, b.rows, b.cols);
  }
  MapMat GradBlock(Vec& g, int i) const {
    const ParameterBlock& b = layout_.block(i);
    return MapMat(g.data() + b.offset, b.rows, b.cols);
  }
  CMapRow Row(const Vec& p, int i) const {
    const ParameterBlock& b = layout_.block(i);
    return CMapRow(p.data() + b.offset, b.cols);
  }
  MapRow GradRow(Vec& g, int i) const {
    const ParameterBlock& b = layout_.block(i);
    return MapRow(g.data() + b.offset, b.cols);
  }

  static void LayerNormForward(const Mat& x, const CMapRow& gain, const CMapRow& bias, Mat& xhat,
                               Vec& rstd, Mat& y);
  static Mat LayerNormBackward(const Mat& dy, const Mat& xhat, const Vec& rstd,
                               const CMapRow& gain, MapRow dgain, MapRow dbias);

  // tanh-approximate GELU, vectorized: Gelu(u) = u * (1 + t) / 2 with
  // t = GeluTanh(u).
  static constexpr Scalar kGeluC = Scalar(0.7978845608028654);
  static constexpr Scalar kGeluA = Scalar(0.044715);
  template <typename Derived>
  static auto GeluTanh(const Eigen::ArrayBase<Derived>& u) {
    return (kGeluC * (u + kGeluA * u.cube())).tanh();
  }
  template <typename DerivedU, typename DerivedT>
  static auto Gelu(const Eigen::ArrayBase<DerivedU>& u, const Eigen::ArrayBase<DerivedT>& t) {
    return Scalar(0.5) * u * (Scalar(1) + t);
  }
  template <typename DerivedU, typename DerivedT>
  static auto GeluGrad(const Eigen::ArrayBase<DerivedU>& u, const Eigen::ArrayBase<DerivedT>& t) {
    return Scalar(0.5) * (Scalar(1) + t) +
           Scalar(0.5) * kGeluC * u * (Scalar(1) - t.square()) * (Scalar(1) + 3 * kGeluA * u.square());
  }

  ModelDims dims_;
  int vocab_size_;
  ParameterLayout layout_;
};

// ---------------------------------------------------------------------------

inline ParameterLayout::ParameterLayout(const ModelDims& dims, int vocab_size) {
  dims.Validate();
  const Eigen::Index d = dims.embed_dim, f = dims.hidden_dim, v = vocab_size;
  token_embedding = Add("token_embedding", v, d);
  audio_embedding = Add("audio_embedding", v, d);
  position_embedding = Add("position_embedding", dims.max_positions, d);
  for (int l = 0; l < dims.layers; ++l) {
    const std::string p = "layer" + std::to_string(l) + ".";
    LayerBlocks lb{};
    lb.ln1_gain = Add(p + "ln1.gain", 1, d);
    lb.ln1_bias = Add(p + "ln1.bias", 1, d);
    lb.qkv_weight = Add(p + "attn.qkv.weight", d, 3 * d);
    lb.qkv_bias = Add(p + "attn.qkv.bias", 1, 3 * d);
    lb.out_weight = Add(p + "attn.out.weight", d, d);
    lb.out_bias = Add(p + "attn.out.bias", 1, d);
    lb.ln2_gain = Add(p + "ln2.gain", 1, d);
    lb.ln2_bias = Add(p + "ln2.bias", 1, d);
    lb.mlp_in_weight = Add(p + "mlp.in.weight", d, f);
    lb.mlp_in_bias = Add(p + "mlp.in.bias", 1, f);
    lb.mlp_out_weight = Add(p + "mlp.out.weight", f, d);
    lb.mlp_out_bias = Add(p + "mlp.out.bias", 1, d);
    layers.push_back(lb);
  }
  final_gain = Add("final_ln.gain", 1, d);
  final_bias = Add("final_ln.bias", 1, d);
  output_weight = Add("output.weight", d, v);
  output_bias = Add("output.bias", 1, v);
}

inline int ParameterLayout::Add(std::string name, Eigen::Index rows, Eigen::Index cols) {
  blocks_.push_back({std::move(name), rows, cols, size_});
  size_ += rows * cols;
  return static_cast<int>(blocks_.size()) - 1;
}

inline int ParameterLayout::Find(const std::string& name) const {
  for (std::size_t i = 0; i < blocks_.size(); ++i) {
    if (blocks_[i].name == name) return static_cast<int>(i);
  }
  return -1;
}

template <typename Scalar>
typename Transformer<Scalar>::Vec Transformer<Scalar>::Initialize(std::uint64_t seed) const {
  Vec p = Vec::Zero(layout_.size());
  Rng rng(seed);
  const auto fill = [&](int block, double stddev) {
    const ParameterBlock& b = layout_.block(block);
    for (Eigen::Index i = 0; i < b.size(); ++i) {
      p[b.offset + i] = static_cast<Scalar>(stddev * rng.Normal());
    }
  };
  const auto ones = [&](int block) {
    const ParameterBlock& b = layout_.block(block);
    p.segment(b.offset, b.size()).setOnes();
  };
  const double d = dims_.embed_dim, f = dims_.hidden_dim;
  const double residual = 1.0 / std::sqrt(2.0 * dims_.layers);
  fill(layout_.token_embedding, 0.02);
  fill(layout_.position_embedding, 0.02);
  for (const auto& lb : layout_.layers) {
    ones(lb.ln1_gain);
    ones(lb.ln2_gain);
    fill(lb.qkv_weight, 1.0 / std::sqrt(d));
    fill(lb.out_weight, residual / std::sqrt(d));
    fill(lb.mlp_in_weight, 1.0 / std::sqrt(d));
    fill(lb.mlp_out_weight, residual / std::sqrt(f));
  }
  ones(layout_.final_gain);
  fill(layout_.output_weight, 1.0 / std::sqrt(d));
  return p;
}

template <typename Scalar>
void Transformer<Scalar>::LayerNormForward(const Mat& x, const CMapRow& gain, const CMapRow& bias,
                                           Mat& xhat, Vec& rstd, Mat& y) {
  constexpr Scalar kEps = Scalar(1e-5);
  const Vec mean = x.rowwise().mean();
  xhat = x.colwise() - mean;
  rstd = (xhat.array().square().rowwise().mean() + kEps).rsqrt().matrix();
  xhat = xhat.array().colwise() * rstd.array();
  y = (xhat.array().rowwise() * gain.array()).rowwise() + bias.array();
}

template <typename Scalar>
typename Transformer<Scalar>::Mat Transformer<Scalar>::LayerNormBackward(
    const Mat& dy, const Mat& xhat, const Vec& rstd, const CMapRow& gain, MapRow dgain,
    MapRow dbias) {
  dgain += (dy.array() * xhat.array()).colwise().sum().matrix();
  dbias += dy.colwise().sum();
  const Mat dxhat = dy.array().rowwise() * gain.array();
  const Vec m1 = dxhat.rowwise().mean();
  const Vec m2 = (dxhat.array() * xhat.array()).rowwise().mean();
  Mat dx = dxhat.colwise() - m1;
  dx.array() -= xhat.array().colwise() * m2.array();
  dx.array().colwise() *= rstd.array();
  return dx;
}

template <typename Scalar>
Scalar Transformer<Scalar>::Loss(const Vec& params, const PackedBatch& batch, Vec* grad,
                                 Scalar grad_scale) const {
  const Eigen::Index rows = batch.rows();
  const Eigen::Index d = dims_.embed_dim;
  const int heads = dims_.heads;
  const Eigen::Index dh = d / heads;
  const Scalar scale = Scalar(1) / std::sqrt(static_cast<Scalar>(dh));
  const std::size_t nseq = batch.num_sequences();

  // Embedding.
  Mat x(rows, d);
  {
    const CMapMat tok = Block(params, layout_.token_embedding);
    const CMapMat aud = Block(params, layout_.audio_embedding);
    const CMapMat pos = Block(params, layout_.position_embedding);
    for (Eigen::Index r = 0; r < rows; ++r) {
      const auto t = static_cast<std::size_t>(r);
      if (batch.positions[t] >= dims_.max_positions) {
        throw Error(ErrorCode::kInvalidArgument, "sequence longer than max_positions");
      }
      x.row(r) = tok.row(batch.tokens[t]) + pos.row(batch.positions[t]);
      if (batch.audio[t]) x.row(r) += aud.row(batch.tokens[t]);
    }
  }

  std::vector<LayerCache> caches(layout_.layers.size());
  for (std::size_t l = 0; l < layout_.layers.size(); ++l) {
    const auto& lb = layout_.layers[l];
    LayerCache& c = caches[l];
    c.x_in = x;
    LayerNormForward(x, Row(params, lb.ln1_gain), Row(params, lb.ln1_bias), c.xhat1, c.rstd1, c.n1);
    c.qkv = c.n1 * Block(params, lb.qkv_weight);
    c.qkv.rowwise() += Row(params, lb.qkv_bias);
    c.o.resize(rows, d);
    c.probs.resize(nseq * static_cast<std::size_t>(heads));
    for (std::size_t s = 0; s < nseq; ++s) {
      const Eigen::Index r0 = batch.offsets[s];
      const Eigen::Index n = batch.offsets[s + 1] - r0;
      for (int h = 0; h < heads; ++h) {
        const auto q = c.qkv.block(r0, h * dh, n, dh);
        const auto k = c.qkv.block(r0, d + h * dh, n, dh);
        const auto v = c.qkv.block(r0, 2 * d + h * dh, n, dh);
        Mat& p = c.probs[s * static_cast<std::size_t>(heads) + static_cast<std::size_t>(h)];
        p.noalias() = (q * k.transpose()) * scale;
        for (Eigen::Index i = 0; i < n; ++i) {
          auto live = p.row(i).head(i + 1).array();
          live = (live - live.maxCoeff()).exp();
          live /= live.sum();
          p.row(i).tail(n - i - 1).setZero();
        }
        c.o.block(r0, h * dh, n, dh).noalias() = p * v;
      }
    }
    x = c.x_in + c.o * Block(params, lb.out_weight);
    x.rowwise() += Row(params, lb.out_bias);
    c.x_mid = x;
    LayerNormForward(x, Row(params, lb.ln2_gain), Row(params, lb.ln2_bias), c.xhat2, c.rstd2, c.n2);
    c.u = c.n2 * Block(params, lb.mlp_in_weight);
    c.u.rowwise() += Row(params, lb.mlp_in_bias);
    c.t = GeluTanh(c.u.array()).matrix();
    c.g = Gelu(c.u.array(), c.t.array()).matrix();
    x.noalias() += c.g * Block(params, lb.mlp_out_weight);
    x.rowwise() += Row(params, lb.mlp_out_bias);
  }

  Mat xhatf, nf;
  Vec rstdf;
  LayerNormForward(x, Row(params, layout_.final_gain), Row(params, layout_.final_bias), xhatf,
                   rstdf, nf);
  Mat logits = nf * Block(params, layout_.output_weight);
  logits.rowwise() += Row(params, layout_.output_bias);

  // Softmax cross-entropy, in place: logits -> d(loss)/d(logits).
  Scalar loss = 0;
  for (Eigen::Index r = 0; r < rows; ++r) {
    const int target = batch.targets[static_cast<std::size_t>(r)];
    if (target < 0) {
      logits.row(r).setZero();
      continue;
    }
    const Scalar m = logits.row(r).maxCoeff();
    logits.row(r).array() = (logits.row(r).array() - m).exp();
    const Scalar z = logits.row(r).sum();
    loss += std::log(z) - std::log(logits(r, target));
    logits.row(r) /= z;
    logits(r, target) -= Scalar(1);
  }
  if (grad == nullptr) return loss;

  Vec& g = *grad;
  Mat& dlogits = logits;
  dlogits *= grad_scale;
  GradBlock(g, layout_.output_weight).noalias() += nf.transpose() * dlogits;
  GradRow(g, layout_.output_bias) += dlogits.colwise().sum();
  Mat dnf = dlogits * Block(params, layout_.output_weight).transpose();
  Mat dx = LayerNormBackward(dnf, xhatf, rstdf, Row(params, layout_.final_gain),
                             GradRow(g, layout_.final_gain), GradRow(g, layout_.final_bias));

  for (std::size_t li = layout_.layers.size(); li-- > 0;) {
    const auto& lb = layout_.layers[li];
    const LayerCache& c = caches[li];

    // MLP branch.
    GradBlock(g, lb.mlp_out_weight).noalias() += c.g.transpose() * dx;
    GradRow(g, lb.mlp_out_bias) += dx.colwise().sum();
    Mat du = dx * Block(params, lb.mlp_out_weight).transpose();
    du.array() *= GeluGrad(c.u.array(), c.t.array());
    GradBlock(g, lb.mlp_in_weight).noalias() += c.n2.transpose() * du;
    GradRow(g, lb.mlp_in_bias) += du.colwise().sum();
    const Mat dn2 = du * Block(params, lb.mlp_in_weight).transpose();
    dx += LayerNormBackward(dn2, c.xhat2, c.rstd2, Row(params, lb.ln2_gain),
                            GradRow(g, lb.ln2_gain), GradRow(g, lb.ln2_bias));

    // Attention branch.
    GradBlock(g, lb.out_weight).noalias() += c.o.transpose() * dx;
    GradRow(g, lb.out_bias) += dx.colwise().sum();
    const Mat d_o = dx * Block(params, lb.out_weight).transpose();
    Mat dqkv(rows, 3 * d);
    for (std::size_t s = 0; s < nseq; ++s) {
      const Eigen::Index r0 = batch.offsets[s];
      const Eigen::Index n = batch.offsets[s + 1] - r0;
      for (int h = 0; h < heads; ++h) {
        const auto q = c.qkv.block(r0, h * dh, n, dh);
        const auto k = c.qkv.block(r0, d + h * dh, n, dh);
        const auto v = c.qkv.block(r0, 2 * d + h * dh, n, dh);
        const Mat& p = c.probs[s * static_cast<std::size_t>(heads) + static_cast<std::size_t>(h)];
        const auto doh = d_o.block(r0, h * dh, n, dh);
        Mat dp = doh * v.transpose();
        dqkv.block(r0, 2 * d + h * dh, n, dh).noalias() = p.transpose() * doh;
        const Vec rowdot = (dp.array() * p.array()).rowwise().sum();
        Mat ds = (p.array() * (dp.array().colwise() - rowdot.array())).matrix();
        ds *= scale;
        dqkv.block(r0, h * dh, n, dh).noalias() = ds * k;
        dqkv.block(r0, d + h * dh, n, dh).noalias() = ds.transpose() * q;
      }
    }
    GradBlock(g, lb.qkv_weight).noalias() += c.n1.transpose() * dqkv;
    GradRow(g, lb.qkv_bias) += dqkv.colwise().sum();
    const Mat dn1 = dqkv * Block(params, lb.qkv_weight).transpose();
    dx += LayerNormBackward(dn1, c.xhat1, c.rstd1, Row(params, lb.ln1_gain),
                            GradRow(g, lb.ln1_gain), GradRow(g, lb.ln1_bias));
  }

  MapMat dtok = GradBlock(g, layout_.token_embedding);
  MapMat daud = GradBlock(g, layout_.audio_embedding);
  MapMat dpos = GradBlock(g, layout_.position_embedding);
  for (Eigen::Index r = 0; r < rows; ++r) {
    const auto t = static_cast<std::size_t>(r);
    dtok.row(batch.tokens[t]) += dx.row(r);
    if (batch.audio[t]) daud.row(batch.tokens[t]) += dx.row(r);
    dpos.row(batch.positions[t]) += dx.row(r);
  }
  return loss;
}

template <typename Scalar>
typename Transformer<Scalar>::DecodeCache Transformer<Scalar>::NewCache() const {
  DecodeCache cache;
  cache.keys.assign(layout_.layers.size(), Mat(dims_.max_positions, dims_.embed_dim));
  cache.values.assign(layout_.layers.size(), Mat(dims_.max_positions, dims_.embed_dim));
  return cache;
}

template <typename Scalar>
typename Transformer<Scalar>::RowVec Transformer<Scalar>::Step(const Vec& params, int token,
                                                               bool audio,
                                                               DecodeCache& cache) const {
  const Eigen::Index pos = cache.length;
  if (pos >= dims_.max_positions) {
    throw Error(ErrorCode::kInvalidArgument, "decode ran past max_positions");
  }
  const Eigen::Index d = dims_.embed_dim;
  const int heads = dims_.heads;
  const Eigen::Index dh = d / heads;
  const Scalar scale = Scalar(1) / std::sqrt(static_cast<Scalar>(dh));

  Mat x = Block(params, layout_.token_embedding).row(token) +
          Block(params, layout_.position_embedding).row(pos);
  if (audio) x += Block(params, layout_.audio_embedding).row(token);
  Mat xhat, n;
  Vec rstd;
  for (std::size_t l = 0; l < layout_.layers.size(); ++l) {
    const auto& lb = layout_.layers[l];
    LayerNormForward(x, Row(params, lb.ln1_gain), Row(params, lb.ln1_bias), xhat, rstd, n);
    RowVec qkv = n * Block(params, lb.qkv_weight);
    qkv += Row(params, lb.qkv_bias);
    cache.keys[l].row(pos) = qkv.segment(d, d);
    cache.values[l].row(pos) = qkv.segment(2 * d, d);
    RowVec o(d);
    for (int h = 0; h < heads; ++h) {
      const auto q = qkv.segment(h * dh, dh);
      const auto k = cache.keys[l].block(0, h * dh, pos + 1, dh);
      const auto v = cache.values[l].block(0, h * dh, pos + 1, dh);
      RowVec s = (q * k.transpose()) * scale;
      s.array() = (s.array() - s.maxCoeff()).exp();
      s /= s.sum();
      o.segment(h * dh, dh) = s * v;
    }
    x += o * Block(params, lb.out_weight);
    x += Row(params, lb.out_bias);
    LayerNormForward(x, Row(params, lb.ln2_gain), Row(params, lb.ln2_bias), xhat, rstd, n);
    Mat u = n * Block(params, lb.mlp_in_weight);
    u += Row(params, lb.mlp_in_bias);
    const Mat g = Gelu(u.array(), GeluTanh(u.array())).matrix();
    x += g * Block(params, lb.mlp_out_weight);
    x += Row(params, lb.mlp_out_bias);
  }
  LayerNormForward(x, Row(params, layout_.final_gain), Row(params, layout_.final_bias), xhat, rstd,
                   n);
  RowVec logits = n * Block(params, layout_.output_weight);
  logits += Row(params, layout_.output_bias);
  ++cache.length;
  return logits;
}

}  // namespace dnadapt

#endif  // DNADAPT_TRANSFORMER_HPP_
