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

#include "lsrn/lut_oracle.h"

#include "lsrn/error.h"

namespace lsrn {

//============================================================================

FeatureKey
packFeatureKey(std::span<const uint8_t> row)
{
  if (row.size() > 128)
    throw Error(ErrorCode::kDimMismatch, "feature keys hold at most 128 bits");

  FeatureKey key;
  for (size_t c = 0; c < row.size(); c++) {
    if (!row[c])
      continue;
    if (c < 64)
      key.lo |= uint64_t(1) << c;
    else
      key.hi |= uint64_t(1) << (c - 64);
  }
  return key;
}

//----------------------------------------------------------------------------

LutTable
buildLut(const FeatureMatrix& features, const InterpolationPatterns& patterns)
{
  if (features.rows() != patterns.size())
    throw Error(ErrorCode::kLengthMismatch, "one pattern per feature row needed");

  LutTable table;
  table.radius = features.radius();
  table.inDim = features.cols();
  for (size_t j = 0; j < features.rows(); j++) {
    auto& votes = table.entries[packFeatureKey(features.row(j))];
    for (int k = 0; k < 8; k++) {
      if ((patterns.masks[j] >> k) & 1)
        votes[k].occupied++;
      else
        votes[k].empty++;
    }
  }
  return table;
}

//----------------------------------------------------------------------------

uint8_t
lutPredict(const LutTable& table, std::span<const uint8_t> row)
{
  auto it = table.entries.find(packFeatureKey(row));
  if (it == table.entries.end())
    return 1;

  const auto& votes = it->second;
  uint8_t mask = 0;
  int best = 0;
  // compare occupied ratios by cross-multiplication
  auto ratioAbove = [&](int a, int b) {
    uint64_t na = votes[a].occupied, da = na + votes[a].empty;
    uint64_t nb = votes[b].occupied, db = nb + votes[b].empty;
    return na * db > nb * da;
  };
  for (int k = 0; k < 8; k++) {
    if (votes[k].occupied >= votes[k].empty)
      mask |= uint8_t(1u << k);
    if (ratioAbove(k, best))
      best = k;
  }
  if (!mask)
    mask = uint8_t(1u << best);
  return mask;
}

//----------------------------------------------------------------------------

InterpolationPatterns
lutPredict(const LutTable& table, const FeatureMatrix& features)
{
  InterpolationPatterns out;
  out.masks.reserve(features.rows());
  for (size_t j = 0; j < features.rows(); j++)
    out.masks.push_back(lutPredict(table, features.row(j)));
  return out;
}

//============================================================================

}  // namespace lsrn
