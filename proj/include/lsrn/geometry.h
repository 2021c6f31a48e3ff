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

#include <array>
#include <compare>
#include <cstdint>
#include <span>
#include <vector>

namespace lsrn {

//============================================================================
// Voxel coordinates are non-negative integers below 2^kMaxCoordBits on
// every axis; a cloud of bit depth B nominally spans [0, 2^B - 1].

constexpr int kMaxBitDepth = 20;
constexpr int kMaxCoordBits = 21;

struct Point3 {
  uint32_t x = 0;
  uint32_t y = 0;
  uint32_t z = 0;

  friend auto operator<=>(const Point3&, const Point3&) = default;
};

// Packs a coordinate into an integer whose natural order is the canonical
// lexicographic (x, y, z) order.
inline uint64_t
packPoint(const Point3& p)
{
  return (uint64_t(p.x) << 42) | (uint64_t(p.y) << 21) | uint64_t(p.z);
}

//----------------------------------------------------------------------------
// A deduplicated, canonically ordered set of voxels.

class VoxelCloud {
public:
  VoxelCloud() = default;

  // Sorts and deduplicates |points|.  Throws DepthOverflow if any
  // coordinate needs more than kMaxCoordBits bits.
  VoxelCloud(std::vector<Point3> points, int bitDepth);

  const std::vector<Point3>& points() const { return _points; }
  int bitDepth() const { return _bitDepth; }
  void setBitDepth(int bitDepth) { _bitDepth = bitDepth; }
  size_t size() const { return _points.size(); }
  bool empty() const { return _points.empty(); }

  // Index of |p| in canonical order, or -1 when absent.
  int64_t indexOf(const Point3& p) const;

  // Largest coordinate value on any axis (0 for an empty cloud).
  uint32_t maxCoordinate() const;

  friend bool operator==(const VoxelCloud& a, const VoxelCloud& b)
  {
    return a._points == b._points;
  }

private:
  std::vector<Point3> _points;
  int _bitDepth = 1;
};

//----------------------------------------------------------------------------
// Child k of parent p is 2p - (dx, dy, dz) with k = 4dx + 2dy + dz.

struct ChildOffset {
  int dx, dy, dz;

  static constexpr ChildOffset fromIndex(int k)
  {
    return {(k >> 2) & 1, (k >> 1) & 1, k & 1};
  }

  constexpr int index() const { return 4 * dx + 2 * dy + dz; }
};

// Bit k of masks[j] is set when child k of parent j is occupied.
struct InterpolationPatterns {
  std::vector<uint8_t> masks;

  size_t size() const { return masks.size(); }
};

// Row j holds the binary occupancy of the (2D+1)^3 - 1 neighbours of parent
// j, in the order given by neighborOffsets(D).
class FeatureMatrix {
public:
  FeatureMatrix() = default;
  FeatureMatrix(size_t rows, int radius);

  size_t rows() const { return _rows; }
  int cols() const { return _cols; }
  int radius() const { return _radius; }

  std::span<const uint8_t> row(size_t j) const
  {
    return {_data.data() + j * _cols, size_t(_cols)};
  }
  std::span<uint8_t> row(size_t j)
  {
    return {_data.data() + j * _cols, size_t(_cols)};
  }

private:
  size_t _rows = 0;
  int _cols = 0;
  int _radius = 0;
  std::vector<uint8_t> _data;
};

//============================================================================

// Number of neighbours in a cube of radius |radius|, centre excluded.
int neighborhoodSize(int radius);

// Offsets in [-D, D]^3 \ {0}, ascending lexicographic on (dx, dy, dz).
std::vector<std::array<int, 3>> neighborOffsets(int radius);

// Maps every coordinate v to (v + 1) / 2 and removes duplicates.
VoxelCloud downsample(const VoxelCloud& cloud);

// Applies downsample() |times| times.
VoxelCloud downsample(const VoxelCloud& cloud, int times);

InterpolationPatterns
extractPatterns(const VoxelCloud& high, const VoxelCloud& low);

// Expands each parent of |low| into the children selected by its mask.
// Children that would have a negative coordinate are skipped; a parent left
// with no valid child keeps child 0.
VoxelCloud
applyPatterns(const VoxelCloud& low, const InterpolationPatterns& patterns);

// Scales every coordinate by 2^|s|.
VoxelCloud directUpscale(const VoxelCloud& cloud, int s);

FeatureMatrix occupancyFeatures(const VoxelCloud& low, int radius);

//============================================================================

}  // namespace lsrn
