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

#include "fixtures.h"

#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

namespace lsrn::testing {

namespace {

  // Builds the boundary of a solid whose every column (x, y) is a single
  // interval [c - h, c + h] in z, h < 0 meaning empty.
  VoxelCloud columnSolidShell(
    int bitDepth, const std::function<int64_t(int64_t, int64_t)>& halfHeight)
  {
    const int64_t n = int64_t(1) << bitDepth;
    const int64_t c = n / 2;
    std::vector<int64_t> h(size_t(n * n));
    for (int64_t x = 0; x < n; x++)
      for (int64_t y = 0; y < n; y++)
        h[x * n + y] = halfHeight(x - c, y - c);

    auto at = [&](int64_t x, int64_t y) -> int64_t {
      if (x < 0 || y < 0 || x >= n || y >= n)
        return -1;
      return h[x * n + y];
    };

    std::vector<Point3> pts;
    for (int64_t x = 0; x < n; x++) {
      for (int64_t y = 0; y < n; y++) {
        int64_t hc = at(x, y);
        if (hc < 0)
          continue;
        int64_t m = std::min(
          {at(x - 1, y), at(x + 1, y), at(x, y - 1), at(x, y + 1), hc - 1});
        for (int64_t d = std::max<int64_t>(m + 1, 0); d <= hc; d++) {
          for (int64_t z : {c - d, c + d}) {
            if (z >= 0 && z < n)
              pts.push_back({uint32_t(x), uint32_t(y), uint32_t(z)});
            if (d == 0)
              break;
          }
        }
      }
    }
    return VoxelCloud(std::move(pts), bitDepth);
  }

}  // namespace

VoxelCloud
sphereShell(int bitDepth, double radius)
{
  const double r2 = radius * radius;
  return columnSolidShell(bitDepth, [&](int64_t dx, int64_t dy) -> int64_t {
    double rem = r2 - double(dx * dx + dy * dy);
    if (rem < 0)
      return -1;
    int64_t h = int64_t(std::sqrt(rem));
    while (double(h * h) > rem)
      h--;
    while (double((h + 1) * (h + 1)) <= rem)
      h++;
    return h;
  });
}

VoxelCloud
torusShell(int bitDepth, double major, double minor)
{
  return columnSolidShell(bitDepth, [&](int64_t dx, int64_t dy) -> int64_t {
    double rho = std::sqrt(double(dx * dx + dy * dy));
    double rem = minor * minor - (rho - major) * (rho - major);
    if (rem < 0)
      return -1;
    int64_t h = int64_t(std::sqrt(rem));
    while (double(h * h) > rem)
      h--;
    while (double((h + 1) * (h + 1)) <= rem)
      h++;
    return h;
  });
}

VoxelCloud
boxShell(int bitDepth, int hx, int hy, int hz)
{
  return columnSolidShell(bitDepth, [&](int64_t dx, int64_t dy) -> int64_t {
    return std::abs(dx) <= hx && std::abs(dy) <= hy ? hz : -1;
  });
}

VoxelCloud
randomCloud(Prng& rng, int bitDepth, size_t count)
{
  const uint64_t n = uint64_t(1) << bitDepth;
  std::vector<Point3> pts;
  pts.reserve(count);
  for (size_t i = 0; i < count; i++)
    pts.push_back(
      {uint32_t(rng.below(n)), uint32_t(rng.below(n)), uint32_t(rng.below(n))});
  return VoxelCloud(std::move(pts), bitDepth);
}

}  // namespace lsrn::testing
