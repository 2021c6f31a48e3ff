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
#include "lsrn/error.h"
#include "lsrn/geometry.h"

#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>
#include <tuple>

using namespace lsrn;

namespace {

VoxelCloud
cloudOf(std::vector<Point3> pts, int bitDepth = 8)
{
  return VoxelCloud(std::move(pts), bitDepth);
}

// Independent per-point map and set-based dedup.
std::set<std::tuple<uint32_t, uint32_t, uint32_t>>
downsampleOracle(const VoxelCloud& c)
{
  std::set<std::tuple<uint32_t, uint32_t, uint32_t>> out;
  for (const auto& p : c.points())
    out.insert({(p.x + 1) / 2, (p.y + 1) / 2, (p.z + 1) / 2});
  return out;
}

}  // namespace

TEST_CASE("voxel cloud is canonical")
{
  VoxelCloud c = cloudOf({{3, 1, 2}, {0, 0, 1}, {3, 1, 2}, {0, 0, 0}});
  REQUIRE(c.size() == 3);
  CHECK(c.points()[0] == Point3{0, 0, 0});
  CHECK(c.points()[1] == Point3{0, 0, 1});
  CHECK(c.points()[2] == Point3{3, 1, 2});
  CHECK(c.indexOf({0, 0, 1}) == 1);
  CHECK(c.indexOf({9, 9, 9}) == -1);
  CHECK_THROWS_AS(cloudOf({{1u << 21, 0, 0}}), Error);
}

TEST_CASE("child offsets are a bijection onto {0,1}^3")
{
  std::set<std::tuple<int, int, int>> seen;
  for (int k = 0; k < 8; k++) {
    auto d = ChildOffset::fromIndex(k);
    CHECK(d.index() == k);
    seen.insert({d.dx, d.dy, d.dz});
  }
  CHECK(seen.size() == 8);
}

TEST_CASE("downsample rounds half up")
{
  auto out = downsample(cloudOf({{0, 0, 0}, {1, 1, 1}, {2, 2, 2}}));
  CHECK(out == cloudOf({{0, 0, 0}, {1, 1, 1}}));
  CHECK(out.bitDepth() == 7);

  CHECK(downsample(cloudOf({{5, 5, 5}})) == cloudOf({{3, 3, 3}}));
  CHECK(downsample(cloudOf({{5, 5, 5}}, 1)).bitDepth() == 1);

  CHECK_THROWS_AS(downsample(VoxelCloud()), Error);
}

TEST_CASE("downsample matches brute-force oracle on random clouds")
{
  Prng rng(7);
  for (int trial = 0; trial < 5; trial++) {
    auto c = testing::randomCloud(rng, 8, 500);
    auto out = downsample(c);
    auto oracle = downsampleOracle(c);
    REQUIRE(out.size() == oracle.size());
    size_t i = 0;
    for (const auto& [x, y, z] : oracle)
      CHECK(out.points()[i++] == Point3{x, y, z});
    CHECK(out.size() <= c.size());
  }
}

TEST_CASE("extract patterns")
{
  SUBCASE("two children of one parent")
  {
    auto high = cloudOf({{2, 2, 2}, {1, 2, 2}});
    auto low = cloudOf({{1, 1, 1}});
    auto p = extractPatterns(high, low);
    REQUIRE(p.size() == 1);
    CHECK(p.masks[0] == ((1 << 0) | (1 << 4)));
  }

  SUBCASE("full block")
  {
    std::vector<Point3> block;
    for (uint32_t x = 1; x <= 2; x++)
      for (uint32_t y = 1; y <= 2; y++)
        for (uint32_t z = 1; z <= 2; z++)
          block.push_back({x, y, z});
    auto p = extractPatterns(cloudOf(block), cloudOf({{1, 1, 1}}));
    CHECK(p.masks == std::vector<uint8_t>{0xff});
  }

  SUBCASE("popcount identity on a sphere")
  {
    auto high = testing::sphereShell(6, 20);
    auto low = downsample(high);
    auto p = extractPatterns(high, low);
    size_t bits = 0;
    for (auto m : p.masks) {
      CHECK(m != 0);
      bits += std::popcount(m);
    }
    CHECK(bits == high.size());
  }

  SUBCASE("inconsistent pair")
  {
    CHECK_THROWS_AS(
      extractPatterns(cloudOf({{2, 2, 2}}), cloudOf({{0, 0, 0}})), Error);
  }
}

TEST_CASE("apply patterns")
{
  auto low = cloudOf({{1, 1, 1}}, 7);

  auto full = applyPatterns(low, {{0xff}});
  CHECK(full.size() == 8);
  CHECK(full.bitDepth() == 8);
  for (const auto& p : full.points()) {
    CHECK(p.x >= 1);
    CHECK(p.x <= 2);
  }

  CHECK(applyPatterns(low, {{0x01}}) == cloudOf({{2, 2, 2}}));

  CHECK_THROWS_AS(applyPatterns(low, {{0x00}}), Error);
  CHECK_THROWS_AS(applyPatterns(low, {{0x01, 0x01}}), Error);

  // children left of the origin are dropped
  auto edge = applyPatterns(cloudOf({{0, 3, 3}}), {{1 << 4}});
  CHECK(edge == cloudOf({{0, 6, 6}}));
  auto mixed = applyPatterns(cloudOf({{0, 3, 3}}), {{(1 << 4) | (1 << 1)}});
  CHECK(mixed == cloudOf({{0, 6, 5}}));
}

TEST_CASE("apply inverts extract on a torus")
{
  auto high = testing::torusShell(7, 35, 12);
  auto low = downsample(high);
  CHECK(applyPatterns(low, extractPatterns(high, low)) == high);
}

TEST_CASE("apply with bit0 masks equals direct upscale")
{
  Prng rng(3);
  auto low = testing::randomCloud(rng, 6, 300);
  InterpolationPatterns ones{std::vector<uint8_t>(low.size(), 1)};
  CHECK(applyPatterns(low, ones) == directUpscale(low, 1));
}

TEST_CASE("direct upscale")
{
  CHECK(directUpscale(cloudOf({{1, 2, 3}}), 1) == cloudOf({{2, 4, 6}}));
  CHECK(directUpscale(cloudOf({{1, 1, 1}}), 3) == cloudOf({{8, 8, 8}}));

  Prng rng(5);
  auto c = testing::randomCloud(rng, 6, 100);
  CHECK(directUpscale(c, 0) == c);
  auto up = directUpscale(c, 2);
  CHECK(up.size() == c.size());
  CHECK(up.bitDepth() == c.bitDepth() + 2);
}

TEST_CASE("neighbour offsets")
{
  CHECK(neighborhoodSize(1) == 26);
  CHECK(neighborhoodSize(2) == 124);
  auto o = neighborOffsets(1);
  REQUIRE(o.size() == 26);
  CHECK(o.front() == std::array<int, 3>{-1, -1, -1});
  CHECK(o[1] == std::array<int, 3>{-1, -1, 0});
  CHECK(o.back() == std::array<int, 3>{1, 1, 1});
  CHECK(std::is_sorted(o.begin(), o.end()));
  CHECK(neighborOffsets(2).size() == 124);
}

TEST_CASE("occupancy features")
{
  SUBCASE("isolated point")
  {
    auto f = occupancyFeatures(cloudOf({{5, 5, 5}}), 1);
    REQUIRE(f.rows() == 1);
    REQUIRE(f.cols() == 26);
    for (auto v : f.row(0))
      CHECK(v == 0);
  }

  SUBCASE("full 3x3x3 block")
  {
    std::vector<Point3> block;
    for (uint32_t x = 0; x < 3; x++)
      for (uint32_t y = 0; y < 3; y++)
        for (uint32_t z = 0; z < 3; z++)
          block.push_back({x, y, z});
    auto c = cloudOf(block);
    auto f = occupancyFeatures(c, 1);
    auto centre = f.row(size_t(c.indexOf({1, 1, 1})));
    for (auto v : centre)
      CHECK(v == 1);
    // corner at the origin sees only the 7 in-grid neighbours
    auto corner = f.row(0);
    CHECK(std::count(corner.begin(), corner.end(), 1) == 7);
  }

  SUBCASE("radius 2 matches set-membership oracle")
  {
    Prng rng(11);
    auto c = testing::randomCloud(rng, 4, 600);
    std::set<std::tuple<int64_t, int64_t, int64_t>> members;
    for (const auto& p : c.points())
      members.insert({p.x, p.y, p.z});
    auto offsets = neighborOffsets(2);
    auto f = occupancyFeatures(c, 2);
    REQUIRE(f.cols() == 124);
    for (size_t j = 0; j < c.size(); j++) {
      const auto& p = c.points()[j];
      for (size_t k = 0; k < offsets.size(); k++) {
        bool expected = members.count(
          {int64_t(p.x) + offsets[k][0], int64_t(p.y) + offsets[k][1],
           int64_t(p.z) + offsets[k][2]});
        CHECK(f.row(j)[k] == expected);
      }
    }
  }

  SUBCASE("order independent")
  {
    Prng rng(12);
    auto c = testing::randomCloud(rng, 5, 400);
    auto pts = c.points();
    std::mt19937 shuffler(1);
    std::shuffle(pts.begin(), pts.end(), shuffler);
    auto a = occupancyFeatures(c, 1);
    auto b = occupancyFeatures(VoxelCloud(pts, 5), 1);
    for (size_t j = 0; j < a.rows(); j++)
      CHECK(std::equal(a.row(j).begin(), a.row(j).end(), b.row(j).begin()));
  }

  CHECK_THROWS_AS(occupancyFeatures(VoxelCloud(), 1), Error);
  CHECK_THROWS_AS(occupancyFeatures(cloudOf({{1, 1, 1}}), 3), Error);
}

TEST_CASE("partition: every subset holds 1..8 points")
{
  auto high = testing::sphereShell(7, 40);
  auto low = downsample(high);
  std::vector<int> counts(low.size(), 0);
  for (const auto& v : high.points()) {
    auto j = low.indexOf({(v.x + 1) / 2, (v.y + 1) / 2, (v.z + 1) / 2});
    REQUIRE(j >= 0);
    counts[j]++;
  }
  for (int n : counts) {
    CHECK(n >= 1);
    CHECK(n <= 8);
  }
}
