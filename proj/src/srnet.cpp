/* The copyright in this software is being made available under the BSD
 * Licence, included below.  This software may be subject to other third
 * party and contributor rights, including patent rights, and no such
 * rights are granted under this licence.
 *
 * Copyright (c) 2026, LSRN-PCGC contributors
 * All rights reserved.
 *
 * Redistribution and use in source and binary forms, with or without
 * modification, are permitted provided that the following conditions are met:
 *
 * * Redistributions of source code must retain the above copyright
 *   notice, this list of conditions and the following disclaimer.
 *
 * * Redistributions in binary form must reproduce the above copyright
 *   notice, this list of conditions and the following disclaimer in the
 *   documentation and/or other materials provided with the distribution.
 *
 * * Neither the name of the copyright holder nor the names of its
 *   contributors may be used to endorse or promote products derived from
 *   this software without specific prior written permission.
 *
 * THIS SOFTWARE IS PROVIDED BY THE COPYRIGHT HOLDERS AND CONTRIBUTORS "AS IS"
 * AND ANY EXPRESS OR IMPLIED WARRANTIES, INCLUDING, BUT NOT LIMITED TO, THE
 * IMPLIED WARRANTIES OF MERCHANTABILITY AND FITNESS FOR A PARTICULAR PURPOSE
 * ARE DISCLAIMED. IN NO EVENT SHALL THE COPYRIGHT HOLDER OR CONTRIBUTORS BE
 * LIABLE FOR ANY DIRECT, INDIRECT, INCIDENTAL, SPECIAL, EXEMPLARY, OR
 * CONSEQUENTIAL DAMAGES (INCLUDING, BUT NOT LIMITED TO, PROCUREMENT OF
 * SUBSTITUTE GOODS OR SERVICES; LOSS OF USE, DATA, OR PROFITS; OR BUSINESS
 * INTERRUPTION) HOWEVER CAUSED AND ON ANY THEORY OF LIABILITY, WHETHER IN
 * CONTRACT, STRICT LIABILITY, OR TORT (INCLUDING NEGLIGENCE OR OTHERWISE)
 * ARISING IN ANY WAY OUT OF THE USE OF THIS SOFTWARE, EVEN IF ADVISED OF THE
 * POSSIBILITY OF SUCH DAMAGE.
 */

#include "lsrn/srnet.h"

#include "lsrn/det_math.h"
#include "lsrn/error.h"
#include "lsrn/prng.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <string>

namespace lsrn {

//============================================================================

namespace {

  constexpr double kProbClamp = 1e-7;
  constexpr float kParamLimit = 65504.0f;  // largest finite binary16

  void checkShape(int inDim, int hidden)
  {
    if (inDim < 1)
      throw Error(ErrorCode::kInvalidConfig, "input dimension must be >= 1");
    if (hidden < 1 || hidden > kMaxHidden)
      throw Error(
        ErrorCode::kInvalidConfig,
        "hidden size must be in [1, " + std::to_string(kMaxHidden) + "], got "
          + std::to_string(hidden));
  }

  double bce(double p, int target)
  {
    p = std::clamp(p, kProbClamp, 1.0 - kProbClamp);
    return target ? -std::log(p) : -std::log(1.0 - p);
  }

  // Feature rows as lists of set columns; inputs are binary, so W1 x is a
  // sum of the selected columns.
  struct SparseRows {
    std::vector<uint32_t> offsets{0};
    std::vector<uint8_t> cols;

    explicit SparseRows(const FeatureMatrix& features)
    {
      offsets.reserve(features.rows() + 1);
      for (size_t j = 0; j < features.rows(); j++) {
        auto row = features.row(j);
        for (int c = 0; c < features.cols(); c++)
          if (row[c])
            cols.push_back(uint8_t(c));
        offsets.push_back(uint32_t(cols.size()));
      }
    }

    std::span<const uint8_t> row(size_t j) const
    {
      return {cols.data() + offsets[j], offsets[j + 1] - offsets[j]};
    }
  };

  //--------------------------------------------------------------------------
  // Forward/backward over a batch of rows.  w1 is held transposed
  // (inDim x hidden) so that column gathers are contiguous.

  struct Workspace {
    int inDim, hidden;
    double omega0;
    std::vector<double> pre, h, cosv, dh;

    Workspace(int inDim_, int hidden_, double omega0_)
      : inDim(inDim_), hidden(hidden_), omega0(omega0_)
      , pre(hidden_), h(hidden_), cosv(hidden_), dh(hidden_)
    {}
  };

  double accumulateBatch(
    Workspace& ws,
    std::span<const float> w1t,
    std::span<const float> b1,
    std::span<const float> w2,
    std::span<const float> b2,
    const SparseRows& rows,
    std::span<const uint8_t> masks,
    std::span<const uint32_t> batch,
    std::vector<double>& gw1t,
    std::vector<double>& gb1,
    std::vector<double>& gw2,
    std::vector<double>& gb2)
  {
    const int H = ws.hidden;
    const double scale = 1.0 / (double(kPatternBits) * double(batch.size()));
    double loss = 0;

    std::fill(gw1t.begin(), gw1t.end(), 0.0);
    std::fill(gb1.begin(), gb1.end(), 0.0);
    std::fill(gw2.begin(), gw2.end(), 0.0);
    std::fill(gb2.begin(), gb2.end(), 0.0);

    for (uint32_t j : batch) {
      auto active = rows.row(j);

      for (int i = 0; i < H; i++)
        ws.pre[i] = b1[i];
      for (uint8_t c : active) {
        const float* col = &w1t[size_t(c) * H];
        for (int i = 0; i < H; i++)
          ws.pre[i] += col[i];
      }
      for (int i = 0; i < H; i++)
        detmath::sincos(ws.omega0 * ws.pre[i], ws.h[i], ws.cosv[i]);

      std::fill(ws.dh.begin(), ws.dh.end(), 0.0);
      const uint8_t mask = masks[j];
      for (int k = 0; k < kPatternBits; k++) {
        const float* w2row = &w2[size_t(k) * H];
        double z = b2[k];
        for (int i = 0; i < H; i++)
          z += w2row[i] * ws.h[i];
        double p = detmath::sigmoid(z);
        int t = (mask >> k) & 1;
        loss += bce(p, t);

        double dz = (p - t) * scale;
        gb2[k] += dz;
        double* g2row = &gw2[size_t(k) * H];
        for (int i = 0; i < H; i++) {
          g2row[i] += dz * ws.h[i];
          ws.dh[i] += dz * w2row[i];
        }
      }

      for (int i = 0; i < H; i++) {
        double da = ws.dh[i] * ws.omega0 * ws.cosv[i];
        ws.dh[i] = da;
        gb1[i] += da;
      }
      for (uint8_t c : active) {
        double* gcol = &gw1t[size_t(c) * H];
        for (int i = 0; i < H; i++)
          gcol[i] += ws.dh[i];
      }
    }

    return loss * scale;
  }

  std::vector<float> transpose(std::span<const float> m, int rows, int cols)
  {
    std::vector<float> t(m.size());
    for (int r = 0; r < rows; r++)
      for (int c = 0; c < cols; c++)
        t[size_t(c) * rows + r] = m[size_t(r) * cols + c];
    return t;
  }

}  // namespace

//============================================================================

std::vector<float>
MlpParams::flatten() const
{
  std::vector<float> flat;
  flat.reserve(count());
  flat.insert(flat.end(), w1.begin(), w1.end());
  flat.insert(flat.end(), b1.begin(), b1.end());
  flat.insert(flat.end(), w2.begin(), w2.end());
  flat.insert(flat.end(), b2.begin(), b2.end());
  return flat;
}

//----------------------------------------------------------------------------

MlpParams
MlpParams::fromFlat(
  int inDim, int hidden, float omega0, std::span<const float> flat)
{
  checkShape(inDim, hidden);
  if (flat.size() != countFor(inDim, hidden))
    throw Error(
      ErrorCode::kLengthMismatch,
      "expected " + std::to_string(countFor(inDim, hidden))
        + " parameters, got " + std::to_string(flat.size()));

  MlpParams p;
  p.inDim = inDim;
  p.hidden = hidden;
  p.omega0 = omega0;
  auto it = flat.begin();
  auto take = [&](std::vector<float>& dst, size_t n) {
    dst.assign(it, it + n);
    it += n;
  };
  take(p.w1, size_t(hidden) * inDim);
  take(p.b1, hidden);
  take(p.w2, size_t(kPatternBits) * hidden);
  take(p.b2, kPatternBits);
  return p;
}

//----------------------------------------------------------------------------

MlpParams
MlpParams::zeros(int inDim, int hidden, float omega0)
{
  std::vector<float> flat(countFor(inDim, hidden), 0.0f);
  return fromFlat(inDim, hidden, omega0, flat);
}

//============================================================================

MlpParams
initParams(uint64_t seed, int inDim, int hidden, float omega0)
{
  MlpParams p = MlpParams::zeros(inDim, hidden, omega0);
  Prng rng(seed);

  const double bound1 = std::sqrt(6.0 / inDim);
  const double bound2 = std::sqrt(6.0 / hidden);
  for (auto& w : p.w1)
    w = float(rng.uniform(-bound1, bound1));
  for (auto& b : p.b1)
    b = float(rng.uniform(-bound1, bound1));
  for (auto& w : p.w2)
    w = float(rng.uniform(-bound2, bound2));
  for (auto& b : p.b2)
    b = float(rng.uniform(-bound2, bound2));
  return p;
}

//----------------------------------------------------------------------------

Probabilities
forward(const MlpParams& params, std::span<const uint8_t> x)
{
  if (int(x.size()) != params.inDim)
    throw Error(
      ErrorCode::kDimMismatch,
      "feature length " + std::to_string(x.size()) + " != input dimension "
        + std::to_string(params.inDim));

  const int H = params.hidden;
  double h[kMaxHidden];
  for (int i = 0; i < H; i++) {
    const float* w1row = &params.w1[size_t(i) * params.inDim];
    double pre = params.b1[i];
    for (int c = 0; c < params.inDim; c++)
      if (x[c])
        pre += w1row[c];
    h[i] = detmath::sin(double(params.omega0) * pre);
  }

  Probabilities p;
  for (int k = 0; k < kPatternBits; k++) {
    const float* w2row = &params.w2[size_t(k) * H];
    double z = params.b2[k];
    for (int i = 0; i < H; i++)
      z += w2row[i] * h[i];
    // keep strictly inside (0, 1) once sigmoid saturates in double
    p[k] = std::clamp(detmath::sigmoid(z), 1e-300, std::nextafter(1.0, 0.0));
  }
  return p;
}

//----------------------------------------------------------------------------

std::vector<Probabilities>
forward(const MlpParams& params, const FeatureMatrix& features)
{
  std::vector<Probabilities> out;
  out.reserve(features.rows());
  for (size_t j = 0; j < features.rows(); j++)
    out.push_back(forward(params, features.row(j)));
  return out;
}

//----------------------------------------------------------------------------

double
lossAndGrad(
  const MlpParams& params,
  const FeatureMatrix& features,
  std::span<const uint8_t> masks,
  MlpGradients* grads)
{
  if (features.cols() != params.inDim)
    throw Error(ErrorCode::kDimMismatch, "feature width != input dimension");
  if (features.rows() != masks.size())
    throw Error(ErrorCode::kLengthMismatch, "one mask per feature row needed");
  if (features.rows() == 0)
    throw Error(ErrorCode::kEmptyTrainingSet, "empty batch");

  const int H = params.hidden;
  const int in = params.inDim;
  SparseRows rows(features);
  Workspace ws(in, H, params.omega0);
  auto w1t = transpose(params.w1, H, in);

  std::vector<uint32_t> batch(features.rows());
  std::iota(batch.begin(), batch.end(), 0u);

  std::vector<double> gw1t(size_t(in) * H), gb1(H), gw2(size_t(8) * H), gb2(8);
  double loss = accumulateBatch(
    ws, w1t, params.b1, params.w2, params.b2, rows, masks, batch, gw1t, gb1,
    gw2, gb2);

  if (grads) {
    grads->w1.assign(size_t(H) * in, 0.0);
    for (int c = 0; c < in; c++)
      for (int i = 0; i < H; i++)
        grads->w1[size_t(i) * in + c] = gw1t[size_t(c) * H + i];
    grads->b1 = gb1;
    grads->w2 = gw2;
    grads->b2 = gb2;
  }
  return loss;
}

//----------------------------------------------------------------------------

TrainResult
train(
  const FeatureMatrix& features,
  const InterpolationPatterns& patterns,
  const TrainConfig& config)
{
  if (features.rows() == 0 || patterns.size() == 0)
    throw Error(ErrorCode::kEmptyTrainingSet, "no training rows");
  if (features.rows() != patterns.size())
    throw Error(
      ErrorCode::kLengthMismatch,
      std::to_string(features.rows()) + " feature rows for "
        + std::to_string(patterns.size()) + " patterns");
  if (!(config.learningRate > 0) || config.batchSize < 1 || config.epochs < 1)
    throw Error(
      ErrorCode::kInvalidConfig,
      "learning rate must be > 0, batch size and epochs >= 1");

  const int in = features.cols();
  const int H = config.hidden;
  const size_t n = features.rows();

  TrainResult result;
  MlpParams init = initParams(config.seed, in, H, config.omega0);

  SparseRows rows(features);
  Workspace ws(in, H, init.omega0);

  // Working copy with w1 transposed; Adam is elementwise so the layout does
  // not affect the update.
  std::vector<float> w1t = transpose(init.w1, H, in);
  std::vector<float> b1 = init.b1, w2 = init.w2, b2 = init.b2;
  std::vector<double> gw1t(w1t.size()), gb1(b1.size()), gw2(w2.size()),
    gb2(b2.size());

  struct Moments {
    std::vector<double> m, v;
    explicit Moments(size_t size) : m(size, 0.0), v(size, 0.0) {}
  };
  Moments mw1(w1t.size()), mb1(b1.size()), mw2(w2.size()), mb2(b2.size());

  double beta1Pow = 1.0, beta2Pow = 1.0;
  auto adamStep = [&](
                    std::vector<float>& param, const std::vector<double>& grad,
                    Moments& mom) {
    const double c1 = 1.0 - beta1Pow;
    const double c2 = 1.0 - beta2Pow;
    for (size_t i = 0; i < param.size(); i++) {
      double g = grad[i];
      mom.m[i] = config.beta1 * mom.m[i] + (1.0 - config.beta1) * g;
      mom.v[i] = config.beta2 * mom.v[i] + (1.0 - config.beta2) * g * g;
      double mhat = mom.m[i] / c1;
      double vhat = mom.v[i] / c2;
      double updated =
        param[i] - config.learningRate * mhat / (std::sqrt(vhat) + config.epsAdam);
      param[i] = std::clamp(float(updated), -kParamLimit, kParamLimit);
    }
  };

  Prng shuffleRng(config.seed ^ 0xd1b54a32d192ed03ull);
  std::vector<uint32_t> order(n);
  std::iota(order.begin(), order.end(), 0u);
  const size_t batchSize = size_t(config.batchSize);

  result.epochLoss.reserve(config.epochs);
  for (int epoch = 0; epoch < config.epochs; epoch++) {
    for (size_t i = n - 1; i > 0; i--)
      std::swap(order[i], order[shuffleRng.below(i + 1)]);

    double epochLoss = 0;
    for (size_t start = 0; start < n; start += batchSize) {
      size_t len = std::min(batchSize, n - start);
      std::span<const uint32_t> batch(order.data() + start, len);
      double loss = accumulateBatch(
        ws, w1t, b1, w2, b2, rows, patterns.masks, batch, gw1t, gb1, gw2, gb2);
      epochLoss += loss * double(len);

      beta1Pow *= config.beta1;
      beta2Pow *= config.beta2;
      adamStep(w1t, gw1t, mw1);
      adamStep(b1, gb1, mb1);
      adamStep(w2, gw2, mw2);
      adamStep(b2, gb2, mb2);
    }
    result.epochLoss.push_back(epochLoss / double(n));
  }

  result.params = init;
  result.params.w1 = transpose(w1t, in, H);
  result.params.b1 = std::move(b1);
  result.params.w2 = std::move(w2);
  result.params.b2 = std::move(b2);
  return result;
}

//----------------------------------------------------------------------------

uint8_t
predictPattern(const Probabilities& p)
{
  uint8_t mask = 0;
  int best = 0;
  for (int k = 0; k < kPatternBits; k++) {
    if (p[k] >= 0.5)
      mask |= uint8_t(1u << k);
    if (p[k] > p[best])
      best = k;
  }
  if (!mask)
    mask = uint8_t(1u << best);
  return mask;
}

//----------------------------------------------------------------------------

InterpolationPatterns
predictPatterns(const MlpParams& params, const FeatureMatrix& features)
{
  if (features.cols() != params.inDim)
    throw Error(ErrorCode::kDimMismatch, "feature width != input dimension");

  InterpolationPatterns out;
  out.masks.reserve(features.rows());
  for (size_t j = 0; j < features.rows(); j++)
    out.masks.push_back(predictPattern(forward(params, features.row(j))));
  return out;
}

//----------------------------------------------------------------------------

double
maskBitAccuracy(
  std::span<const uint8_t> predicted, std::span<const uint8_t> target)
{
  if (predicted.size() != target.size())
    throw Error(ErrorCode::kLengthMismatch, "mask lists differ in length");
  if (predicted.empty())
    return 1.0;

  uint64_t wrong = 0;
  for (size_t j = 0; j < predicted.size(); j++)
    wrong += std::popcount(uint8_t(predicted[j] ^ target[j]));
  return 1.0 - double(wrong) / (8.0 * double(predicted.size()));
}

//============================================================================

}  // namespace lsrn
