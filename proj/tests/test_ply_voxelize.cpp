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
#include "lsrn/ply_io.h"
#include "lsrn/prng.h"
#include "lsrn/voxelize.h"

#include <doctest.h>

#include <cstring>
#include <sstream>

using namespace lsrn;

namespace {

PlyDocument
parse(const std::string& text)
{
  std::istringstream is(text);
  return readPly(is);
}

template<typename T>
void
append(std::string& s, T v)
{
  char buf[sizeof(T)];
  std::memcpy(buf, &v, sizeof(T));
  s.append(buf, sizeof(T));
}

ErrorCode
errorOf(const std::string& text)
{
  try {
    parse(text);
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::kIo;
}

}  // namespace

TEST_CASE("voxelize examples")
{
  PlyDocument doc{{{0, 0, 0}, {1, 1, 1}}, false};
  CHECK(voxelize(doc, 2) == VoxelCloud({{0, 0, 0}, {3, 3, 3}}, 2));

  PlyDocument ints{{{5, 1, 0}, {5, 1, 0}, {7, 7, 7}, {0, 3, 2}}, true};
  auto v = voxelize(ints, 3);
  CHECK(v == VoxelCloud({{0, 3, 2}, {5, 1, 0}, {7, 7, 7}}, 3));
  CHECK(v.size() == 3);

  // integer input outside the grid is rescaled like any other
  PlyDocument wide{{{0, 0, 0}, {20, 10, 0}}, true};
  CHECK(voxelize(wide, 3) == VoxelCloud({{0, 0, 0}, {7, 4, 0}}, 3));

  // uniform scale: the longest edge alone spans the grid
  PlyDocument box{{{-2, 10, 1}, {2, 11, 1}}, false};
  CHECK(voxelize(box, 4) == VoxelCloud({{0, 0, 0}, {15, 4, 0}}, 4));

  CHECK_THROWS_AS(voxelize(PlyDocument{{{1.5, 2, 3}}, false}, 4), Error);
  CHECK_THROWS_AS(voxelize(PlyDocument{}, 4), Error);
  CHECK(voxelize(PlyDocument{{{1, 2, 3}}, true}, 4) == VoxelCloud({{1, 2, 3}}, 4));
}

TEST_CASE("rasterize")
{
  PlyDocument doc{{{0.4, 1.5, 2.49}, {3, 3, 3}}, false};
  CHECK(rasterize(doc, 3) == VoxelCloud({{0, 2, 2}, {3, 3, 3}}, 3));
  CHECK_THROWS_AS(rasterize(PlyDocument{{{-1, 0, 0}}, false}, 3), Error);
}

TEST_CASE("binary float round trip preserves the voxel set")
{
  Prng rng(12);
  PlyDocument doc;
  for (int i = 0; i < 10000; i++)
    doc.vertices.push_back(
      {float(rng.uniform(-5, 5)), float(rng.uniform(0, 3)), float(rng.uniform(100, 101))});
  auto before = voxelize(doc, 10);

  std::stringstream ss;
  writePly(ss, doc, PlyFormat::kBinaryLittleEndian);
  auto back = readPly(ss);
  CHECK(!back.integerTyped);
  REQUIRE(back.vertices.size() == doc.vertices.size());
  CHECK(back.vertices == doc.vertices);
  CHECK(voxelize(back, 10) == before);

  std::stringstream ascii;
  writePly(ascii, doc, PlyFormat::kAscii);
  CHECK(voxelize(readPly(ascii), 10) == before);
}

TEST_CASE("cloud files")
{
  auto cloud = testing::sphereShell(6, 20);
  std::string path = "ply_roundtrip_test.ply";
  writeCloudPly(path, cloud);
  auto doc = readPlyFile(path);
  CHECK(!doc.integerTyped);
  CHECK(rasterize(doc, 6) == cloud);
  std::remove(path.c_str());
  CHECK_THROWS_AS(readPlyFile("no_such_file.ply"), Error);
}

TEST_CASE("ascii with extra elements and properties")
{
  auto doc = parse(
    "ply\nformat ascii 1.0\ncomment made by hand\n"
    "element vertex 2\nproperty uchar red\nproperty int x\nproperty int y\n"
    "property int z\nproperty list uchar int idx\n"
    "element face 1\nproperty list uchar int vertex_indices\nend_header\n"
    "255 1 2 3 2 7 8\n0 4 5 6 0\n3 0 1 1\n");
  CHECK(doc.integerTyped);
  REQUIRE(doc.vertices.size() == 2);
  CHECK(doc.vertices[0] == std::array<double, 3>{1, 2, 3});
  CHECK(doc.vertices[1] == std::array<double, 3>{4, 5, 6});
}

TEST_CASE("binary with mixed scalar types")
{
  std::string s =
    "ply\r\nformat binary_little_endian 1.0\r\nelement vertex 2\r\n"
    "property double x\r\nproperty short y\r\nproperty float z\r\n"
    "property uint8 alpha\r\nend_header\n";
  append<double>(s, 1.25);
  append<int16_t>(s, -7);
  append<float>(s, 3.5f);
  append<uint8_t>(s, 9);
  append<double>(s, 2.0);
  append<int16_t>(s, 300);
  append<float>(s, -1.0f);
  append<uint8_t>(s, 1);
  auto doc = parse(s);
  CHECK(!doc.integerTyped);
  REQUIRE(doc.vertices.size() == 2);
  CHECK(doc.vertices[0] == std::array<double, 3>{1.25, -7, 3.5});
  CHECK(doc.vertices[1] == std::array<double, 3>{2, 300, -1});
}

TEST_CASE("integer output")
{
  PlyDocument doc{{{1, 2, 3}, {4, 5, 6}}, true};
  std::stringstream ss;
  writePly(ss, doc, PlyFormat::kBinaryLittleEndian, true);
  auto back = readPly(ss);
  CHECK(back.integerTyped);
  CHECK(back.vertices == doc.vertices);
}

TEST_CASE("malformed input")
{
  const std::string head = "ply\nformat ascii 1.0\nelement vertex 1\n";
  CHECK(errorOf("") == ErrorCode::kMalformedPly);
  CHECK(errorOf("plx\n") == ErrorCode::kMalformedPly);
  CHECK(errorOf(head + "property float x\nproperty float y\nproperty float z\n")
        == ErrorCode::kMalformedPly);
  CHECK(errorOf(head + "property float x\nproperty float y\nend_header\n1 2\n")
        == ErrorCode::kMalformedPly);
  CHECK(errorOf(head + "property float x\nproperty float y\nproperty float z\nend_header\n1 2\n")
        == ErrorCode::kMalformedPly);
  CHECK(errorOf(head + "property float x\nproperty float y\nproperty float z\nend_header\n1 a 2\n")
        == ErrorCode::kMalformedPly);
  CHECK(errorOf(head + "property quad x\nend_header\n") == ErrorCode::kMalformedPly);
  CHECK(errorOf("ply\nformat binary_big_endian 1.0\nelement vertex 0\nend_header\n")
        == ErrorCode::kMalformedPly);
  CHECK(errorOf("ply\nformat binary_little_endian 1.0\nelement vertex 3\n"
                "property float x\nproperty float y\nproperty float z\nend_header\nabc")
        == ErrorCode::kMalformedPly);
  CHECK(errorOf(head + "property float x\nproperty float y\nproperty float z\nend_header\nnan 0 0\n")
        == ErrorCode::kMalformedPly);
}
