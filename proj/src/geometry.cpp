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

#include "lsrn/geometry.h"

#include "lsrn/error.h"
#include "point_set.h"

#include <algorithm>
#include <string>

namespace lsrn {

//============================================================================

VoxelCloud::VoxelCloud(std::vector<Point3> points, int bitDepth)
  : _points(std::move(points)), _bitDepth(bitDepth)
{
  constexpr uint32_t kLimit = uint32_t(1) << kMaxCoordBits;
  for (const auto& p : _points) {
    if (p.x >= kLimit || p.y >= kLimit || p.z >= kLimit)
      throw Error(
        ErrorCode::kDepthOverflow,
        "coordinate exceeds " + std::to_string(kMaxCoordBits) + " bits");
  }
  if (!std::is_sorted(_points.begin(), _points.end()))
    std::sort(_points.begin(), _points.end());
  _points.erase(std::unique(_points.begin(), _points.end()), _points.end());
}

//----------------------------------------------------------------------------

int64_t
VoxelCloud::indexOf(const Point3& p) const
{
  auto it = std::lower_bound(_points.begin(), _points.end(), p);
  if (it == _points.end() || *it != p)
    return -1;
  return it - _points.begin();
}

//----------------------------------------------------------------------------

uint32_t
VoxelCloud::maxCoordinate() const
{
  uint32_t m = 0;
  for (const auto& p : _points)
    m = std::max({m, p.x, p.y, p.z});
  return m;
}

//============================================================================

FeatureMatrix::FeatureMatrix(size_t rows, int radius)
  : _rows(rows)
  , _cols(neighborhoodSize(radius))
  , _radius(radius)
  , _data(rows * size_t(_cols), 0)
{}

//============================================================================

int
neighborhoodSize(int radius)
{
  int side = 2 * radius + 1;
  return side * side * side - 1;
}

//----------------------------------------------------------------------------

std::vector<std::array<int, 3>>
neighborOffsets(int radius)
{
  std::vector<std::array<int, 3>> offsets;
  offsets.reserve(neighborhoodSize(radius));
  for (int dx = -radius; dx <= radius; dx++)
    for (int dy = -radius; dy <= radius; dy++)
      for (int dz = -radius; dz <= radius; dz++)
        if (dx || dy || dz)
          offsets.push_back({dx, dy, dz});
  return offsets;
}

//============================================================================

VoxelCloud
downsample(const VoxelCloud& cloud)
{
  if (cloud.empty())
    throw Error(ErrorCode::kEmptyCloud, "cannot downsample an empty cloud");

  std::vector<Point3> out;
  out.reserve(cloud.size());
  for (const auto& p : cloud.points())
    out.push_back({(p.x + 1) >> 1, (p.y + 1) >> 1, (p.z + 1) >> 1});

  return VoxelCloud(std::move(out), std::max(1, cloud.bitDepth() - 1));
}

//----------------------------------------------------------------------------

VoxelCloud
downsample(const VoxelCloud& cloud, int times)
{
  VoxelCloud out = cloud;
  for (int i = 0; i < times; i++)
    out = downsample(out);
  return out;
}

//----------------------------------------------------------------------------

InterpolationPatterns
extractPatterns(const VoxelCloud& high, const VoxelCloud& low)
{
  if (downsample(high) != low)
    throw Error(
      ErrorCode::kInconsistentPair,
      "low-resolution cloud is not the downsampled high-resolution cloud");

  InterpolationPatterns patterns;
  patterns.masks.assign(low.size(), 0);

  for (const auto& v : high.points()) {
    Point3 parent{(v.x + 1) >> 1, (v.y + 1) >> 1, (v.z + 1) >> 1};
    ChildOffset delta{
      int(2 * parent.x - v.x), int(2 * parent.y - v.y),
      int(2 * parent.z - v.z)};
    auto j = low.indexOf(parent);
    patterns.masks[j] |= uint8_t(1u << delta.index());
  }

  return patterns;
}

//----------------------------------------------------------------------------

VoxelCloud
applyPatterns(const VoxelCloud& low, const InterpolationPatterns& patterns)
{
  if (patterns.size() != low.size())
    throw Error(
      ErrorCode::kLengthMismatch,
      std::to_string(patterns.size()) + " masks for " +
        std::to_string(low.size()) + " parents");

  std::vector<Point3> out;
  out.reserve(low.size() * 4);

  for (size_t j = 0; j < low.size(); j++) {
    const uint8_t mask = patterns.masks[j];
    if (!mask)
      throw Error(
        ErrorCode::kInvalidPattern, "zero mask at parent " + std::to_string(j));

    const Point3 p = low.points()[j];
    bool emitted = false;
    for (int k = 0; k < 8; k++) {
      if (!((mask >> k) & 1))
        continue;
      auto d = ChildOffset::fromIndex(k);
      // each child has exactly one parent, so no duplicates can arise
      if ((p.x == 0 && d.dx) || (p.y == 0 && d.dy) || (p.z == 0 && d.dz))
        continue;
      out.push_back({2 * p.x - d.dx, 2 * p.y - d.dy, 2 * p.z - d.dz});
      emitted = true;
    }
    if (!emitted)
      out.push_back({2 * p.x, 2 * p.y, 2 * p.z});
  }

  return VoxelCloud(std::move(out), low.bitDepth() + 1);
}

//----------------------------------------------------------------------------

VoxelCloud
directUpscale(const VoxelCloud& cloud, int s)
{
  if (s == 0)
    return cloud;

  std::vector<Point3> out;
  out.reserve(cloud.size());
  for (const auto& p : cloud.points())
    out.push_back({p.x << s, p.y << s, p.z << s});

  uint32_t limit = uint32_t(1) << (kMaxCoordBits - s);
  if (cloud.maxCoordinate() >= limit)
    throw Error(ErrorCode::kDepthOverflow, "upscaled coordinate overflows");

  return VoxelCloud(std::move(out), cloud.bitDepth() + s);
}

//----------------------------------------------------------------------------

FeatureMatrix
occupancyFeatures(const VoxelCloud& low, int radius)
{
  if (radius != 1 && radius != 2)
    throw Error(
      ErrorCode::kInvalidConfig,
      "neighbourhood radius must be 1 or 2, got " + std::to_string(radius));
  if (low.empty())
    throw Error(ErrorCode::kEmptyCloud, "no points to extract features from");

  const auto offsets = neighborOffsets(radius);
  const detail::PointHashSet occupied(low.points());

  FeatureMatrix features(low.size(), radius);
  for (size_t j = 0; j < low.size(); j++) {
    const auto& p = low.points()[j];
    auto row = features.row(j);
    for (size_t c = 0; c < offsets.size(); c++) {
      const auto& o = offsets[c];
      row[c] = occupied.contains(
        int64_t(p.x) + o[0], int64_t(p.y) + o[1], int64_t(p.z) + o[2]);
    }
  }

  return features;
}

//============================================================================

}  // namespace lsrn
