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
#include <unordered_map>

namespace lsrn {

//============================================================================
// Majority-vote lookup table from a packed neighbour-occupancy key to the
// eight child-occupancy decisions.  Per key, this is the predictor with the
// lowest per-bit error on its own training data.

// Bit c of the key is feature column c (up to 128 columns).
struct FeatureKey {
  uint64_t lo = 0;
  uint64_t hi = 0;

  friend bool operator==(const FeatureKey&, const FeatureKey&) = default;
};

struct FeatureKeyHash {
  size_t operator()(const FeatureKey& key) const
  {
    uint64_t h = key.lo * 0x9e3779b97f4a7c15ull ^ key.hi;
    h ^= h >> 31;
    h *= 0xbf58476d1ce4e5b9ull;
    return size_t(h ^ (h >> 29));
  }
};

FeatureKey packFeatureKey(std::span<const uint8_t> row);

struct ChildVotes {
  uint32_t occupied = 0;
  uint32_t empty = 0;
};

struct LutTable {
  int radius = 0;
  int inDim = 0;
  std::unordered_map<FeatureKey, std::array<ChildVotes, 8>, FeatureKeyHash>
    entries;
};

LutTable buildLut(
  const FeatureMatrix& features, const InterpolationPatterns& patterns);

// Child k is occupied iff its occupied votes reach its empty votes.  Unseen
// keys predict child 0 only; an empty result falls back to the child with
// the highest occupied ratio (lowest k on ties).
uint8_t lutPredict(const LutTable& table, std::span<const uint8_t> row);

InterpolationPatterns
lutPredict(const LutTable& table, const FeatureMatrix& features);

//============================================================================

}  // namespace lsrn
