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

#pragma once

#include "lsrn/geometry.h"

#include <array>
#include <cstdint>
#include <span>
#include <vector>

namespace lsrn {

//============================================================================
// One-hidden-layer perceptron mapping a neighbour-occupancy vector to the
// eight child-occupancy probabilities of a parent voxel:
//
//   h = sin(omega0 * (W1 x + b1)),   p = sigmoid(W2 h + b2).

constexpr int kPatternBits = 8;
constexpr int kMaxHidden = 64;

struct MlpParams {
  int inDim = 0;
  int hidden = 0;
  float omega0 = 1.0f;

  std::vector<float> w1;  // hidden x inDim, row-major
  std::vector<float> b1;  // hidden
  std::vector<float> w2;  // 8 x hidden, row-major
  std::vector<float> b2;  // 8

  static size_t countFor(int inDim, int hidden)
  {
    return size_t(inDim) * hidden + hidden + size_t(kPatternBits) * hidden
      + kPatternBits;
  }

  size_t count() const { return countFor(inDim, hidden); }

  // All parameters in serialisation order: w1, b1, w2, b2.
  std::vector<float> flatten() const;

  static MlpParams
  fromFlat(int inDim, int hidden, float omega0, std::span<const float> flat);

  // A zero-initialised parameter set of the given shape.
  static MlpParams zeros(int inDim, int hidden, float omega0 = 1.0f);

  friend bool operator==(const MlpParams&, const MlpParams&) = default;
};

// Same shape as MlpParams, double precision.
struct MlpGradients {
  std::vector<double> w1, b1, w2, b2;
};

struct TrainConfig {
  int hidden = 32;
  double learningRate = 1e-3;
  int batchSize = 2048;
  int epochs = 150;
  uint64_t seed = 0;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsAdam = 1e-8;
  float omega0 = 1.0f;
};

struct TrainResult {
  MlpParams params;
  // Mean training loss of every epoch, in order.
  std::vector<double> epochLoss;
};

using Probabilities = std::array<double, kPatternBits>;

//============================================================================

// Weights and biases of layer l drawn from U(-sqrt(6 / fan_in), +...), where
// fan_in is inDim for the hidden layer and hidden for the output layer.
MlpParams
initParams(uint64_t seed, int inDim, int hidden, float omega0 = 1.0f);

Probabilities forward(const MlpParams& params, std::span<const uint8_t> x);

std::vector<Probabilities>
forward(const MlpParams& params, const FeatureMatrix& features);

// Mean binary cross-entropy over every row and all eight outputs, with
// probabilities clamped to [1e-7, 1 - 1e-7] inside the logarithms, and its
// analytic gradient.  |masks| holds one target mask per feature row.
double lossAndGrad(
  const MlpParams& params,
  const FeatureMatrix& features,
  std::span<const uint8_t> masks,
  MlpGradients* grads);

// Overfits a freshly initialised network to (features, patterns) with Adam.
// Bit-reproducible for a given config.
TrainResult train(
  const FeatureMatrix& features,
  const InterpolationPatterns& patterns,
  const TrainConfig& config);

// Bit k set iff p_k >= 0.5; an all-zero result falls back to the most
// probable child (lowest k on ties), so the mask is never empty.
uint8_t predictPattern(const Probabilities& p);

InterpolationPatterns
predictPatterns(const MlpParams& params, const FeatureMatrix& features);

// Fraction of the 8 * n child bits on which the two mask lists agree.
double
maskBitAccuracy(std::span<const uint8_t> predicted, std::span<const uint8_t> target);

//============================================================================

}  // namespace lsrn
