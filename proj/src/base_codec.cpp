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

#include "lsrn/base_codec.h"

#include "lsrn/error.h"
#include "lsrn/range_coder.h"

#include <algorithm>
#include <array>
#include <bit>
#include <string>

namespace lsrn {

//============================================================================

namespace {

  using ContextSet = std::array<AdaptiveBitModel, 64>;

  inline int contextIndex(int bit, int setSoFar)
  {
    return bit * 8 + std::min(setSoFar, 7);
  }

  void checkDepth(int depth)
  {
    if (depth < 1 || depth > kMaxCoordBits)
      throw Error(
        ErrorCode::kDepthOverflow,
        "octree depth must be in [1, " + std::to_string(kMaxCoordBits)
          + "], got " + std::to_string(depth));
  }

  std::vector<Point3> parentsOf(const std::vector<Point3>& nodes)
  {
    std::vector<Point3> parents;
    parents.reserve(nodes.size());
    for (const auto& p : nodes)
      parents.push_back({p.x >> 1, p.y >> 1, p.z >> 1});
    std::sort(parents.begin(), parents.end());
    parents.erase(std::unique(parents.begin(), parents.end()), parents.end());
    return parents;
  }

}  // namespace

//============================================================================

int
octreeDepthFor(const VoxelCloud& cloud)
{
  return std::max(1, int(std::bit_width(cloud.maxCoordinate())));
}

//----------------------------------------------------------------------------

std::vector<std::vector<uint8_t>>
octreeLevels(const VoxelCloud& cloud, int depth)
{
  checkDepth(depth);
  if (cloud.empty())
    throw Error(ErrorCode::kEmptyCloud, "cannot code an empty base cloud");
  if (cloud.maxCoordinate() >> depth)
    throw Error(
      ErrorCode::kDepthOverflow,
      "coordinate " + std::to_string(cloud.maxCoordinate())
        + " does not fit depth " + std::to_string(depth));

  std::vector<std::vector<Point3>> nodes(depth + 1);
  nodes[depth] = cloud.points();
  for (int l = depth - 1; l >= 0; l--)
    nodes[l] = parentsOf(nodes[l + 1]);

  std::vector<std::vector<uint8_t>> masks(depth);
  for (int l = 0; l < depth; l++) {
    const auto& parents = nodes[l];
    masks[l].assign(parents.size(), 0);
    for (const auto& c : nodes[l + 1]) {
      Point3 p{c.x >> 1, c.y >> 1, c.z >> 1};
      auto idx = std::lower_bound(parents.begin(), parents.end(), p)
        - parents.begin();
      int b = 4 * (c.x & 1) + 2 * (c.y & 1) + (c.z & 1);
      masks[l][idx] |= uint8_t(1u << b);
    }
  }
  return masks;
}

//----------------------------------------------------------------------------

std::vector<uint8_t>
encodeBase(const VoxelCloud& cloud, int depth)
{
  auto levels = octreeLevels(cloud, depth);

  ContextSet contexts;
  RangeEncoder encoder;
  for (const auto& level : levels) {
    for (uint8_t mask : level) {
      int count = 0;
      for (int b = 0; b < 8; b++) {
        int bit = (mask >> b) & 1;
        encoder.encode(bit, contexts[contextIndex(b, count)]);
        count += bit;
      }
    }
  }

  std::vector<uint8_t> out{uint8_t(depth)};
  auto body = encoder.finish();
  out.insert(out.end(), body.begin(), body.end());
  return out;
}

//----------------------------------------------------------------------------

VoxelCloud
decodeBase(std::span<const uint8_t> bytes, int depth, size_t maxNodes)
{
  checkDepth(depth);
  if (bytes.empty())
    throw Error(ErrorCode::kCorruptStream, "empty base payload");
  if (bytes[0] != depth)
    throw Error(
      ErrorCode::kCorruptStream,
      "payload depth " + std::to_string(bytes[0]) + " != expected "
        + std::to_string(depth));

  ContextSet contexts;
  RangeDecoder decoder(bytes.subspan(1));

  std::vector<Point3> level{{0, 0, 0}};
  std::vector<Point3> next;
  for (int l = 0; l < depth; l++) {
    next.clear();
    for (const auto& node : level) {
      int mask = 0;
      int count = 0;
      for (int b = 0; b < 8; b++) {
        int bit = decoder.decode(contexts[contextIndex(b, count)]);
        mask |= bit << b;
        count += bit;
      }
      if (!mask)
        throw Error(ErrorCode::kCorruptStream, "empty octree node");
      if (next.size() + count > maxNodes)
        throw Error(ErrorCode::kCorruptStream, "octree node limit exceeded");

      for (int b = 0; b < 8; b++) {
        if ((mask >> b) & 1)
          next.push_back(
            {(node.x << 1) | uint32_t(b >> 2), (node.y << 1) | uint32_t((b >> 1) & 1),
             (node.z << 1) | uint32_t(b & 1)});
      }
    }
    std::sort(next.begin(), next.end());
    std::swap(level, next);
  }

  if (!decoder.atEnd())
    throw Error(ErrorCode::kCorruptStream, "trailing bytes after base payload");

  return VoxelCloud(std::move(level), depth);
}

//============================================================================

}  // namespace lsrn
