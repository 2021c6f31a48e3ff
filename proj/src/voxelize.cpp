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

#include "lsrn/voxelize.h"

#include "lsrn/error.h"

#include <algorithm>
#include <cmath>
#include <string>

namespace lsrn {

//============================================================================

namespace {

  void checkInput(const PlyDocument& doc, int bitDepth)
  {
    if (doc.vertices.empty())
      throw Error(ErrorCode::kEmptyCloud, "point cloud has no vertices");
    if (bitDepth < 1 || bitDepth > kMaxBitDepth)
      throw Error(
        ErrorCode::kInvalidConfig,
        "bit depth must be in [1, " + std::to_string(kMaxBitDepth) + "]");
  }

}  // namespace

//----------------------------------------------------------------------------

VoxelCloud
voxelize(const PlyDocument& doc, int bitDepth)
{
  checkInput(doc, bitDepth);
  const double top = double((uint32_t(1) << bitDepth) - 1);

  std::array<double, 3> lo = doc.vertices.front(), hi = lo;
  for (const auto& v : doc.vertices) {
    for (int a = 0; a < 3; a++) {
      lo[a] = std::min(lo[a], v[a]);
      hi[a] = std::max(hi[a], v[a]);
    }
  }

  bool inRange = lo[0] >= 0 && lo[1] >= 0 && lo[2] >= 0 && hi[0] <= top
    && hi[1] <= top && hi[2] <= top;
  if (doc.integerTyped && inRange)
    return rasterize(doc, bitDepth);

  double extent = std::max({hi[0] - lo[0], hi[1] - lo[1], hi[2] - lo[2]});
  if (!(extent > 0))
    throw Error(ErrorCode::kDegenerateBounds, "point cloud has zero extent");

  const double scale = top / extent;
  std::vector<Point3> points;
  points.reserve(doc.vertices.size());
  for (const auto& v : doc.vertices) {
    uint32_t c[3];
    for (int a = 0; a < 3; a++) {
      double q = std::floor((v[a] - lo[a]) * scale + 0.5);
      c[a] = uint32_t(std::clamp(q, 0.0, top));
    }
    points.push_back({c[0], c[1], c[2]});
  }
  return VoxelCloud(std::move(points), bitDepth);
}

//----------------------------------------------------------------------------

VoxelCloud
rasterize(const PlyDocument& doc, int bitDepth)
{
  checkInput(doc, bitDepth);
  constexpr double kLimit = double(uint32_t(1) << kMaxCoordBits);

  std::vector<Point3> points;
  points.reserve(doc.vertices.size());
  for (const auto& v : doc.vertices) {
    uint32_t c[3];
    for (int a = 0; a < 3; a++) {
      double q = std::floor(v[a] + 0.5);
      if (q < 0 || q >= kLimit)
        throw Error(
          ErrorCode::kDepthOverflow,
          "coordinate " + std::to_string(v[a]) + " outside the voxel grid");
      c[a] = uint32_t(q);
    }
    points.push_back({c[0], c[1], c[2]});
  }
  return VoxelCloud(std::move(points), bitDepth);
}

//============================================================================

}  // namespace lsrn
