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
#include "lsrn/metrics.h"
#include "lsrn/ply_io.h"
#include "lsrn/voxelize.h"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <sstream>
#include <string>

#include <unistd.h>

using namespace lsrn;
namespace fs = std::filesystem;

namespace {

struct Run {
  int status;
  std::string out;
  std::string err;
};

struct Workspace {
  fs::path dir;

  Workspace()
  {
    dir = fs::temp_directory_path() / ("lsrn_cli_" + std::to_string(::getpid()));
    fs::create_directories(dir);
  }
  ~Workspace() { fs::remove_all(dir); }

  std::string path(const std::string& name) const { return (dir / name).string(); }

  static std::string slurp(const std::string& p)
  {
    std::ifstream is(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(is), std::istreambuf_iterator<char>()};
  }

  Run run(const std::string& args) const
  {
    std::string out = path("stdout.txt"), err = path("stderr.txt");
    std::string cmd =
      std::string("\"") + LSRN_CLI_PATH + "\" " + args + " >\"" + out + "\" 2>\"" + err + "\"";
    int status = std::system(cmd.c_str());
    return {status, slurp(out), slurp(err)};
  }

  void writeIntegerPly(const std::string& name, const VoxelCloud& cloud) const
  {
    std::ofstream os(path(name), std::ios::binary);
    auto doc = toPlyDocument(cloud);
    doc.integerTyped = true;
    writePly(os, doc, PlyFormat::kAscii, true);
  }
};

double
firstNumber(const std::string& s)
{
  return std::stod(s.substr(0, s.find_first_of(",\n")));
}

}  // namespace

TEST_CASE("encode, decode and evaluate")
{
  Workspace ws;
  auto sphere = testing::sphereShell(8, 100);
  ws.writeIntegerPly("sphere.ply", sphere);

  auto enc = ws.run(
    "encode " + ws.path("sphere.ply") + " " + ws.path("s.lsrn")
    + " --k 1 --bit-depth 8 --epochs 40 --seed 3");
  REQUIRE(enc.status == 0);
  CHECK(enc.out.find("d1_psnr") != std::string::npos);

  REQUIRE(ws.run("decode " + ws.path("s.lsrn") + " " + ws.path("sr.ply")).status == 0);
  REQUIRE(
    ws.run("decode " + ws.path("s.lsrn") + " " + ws.path("bl.ply") + " --baseline").status == 0);

  auto srEval = ws.run(
    "eval --ref " + ws.path("sphere.ply") + " --rec " + ws.path("sr.ply")
    + " --bit-depth 8 --stream " + ws.path("s.lsrn"));
  auto blEval = ws.run(
    "eval --ref " + ws.path("sphere.ply") + " --rec " + ws.path("bl.ply") + " --bit-depth 8");
  REQUIRE(srEval.status == 0);
  REQUIRE(blEval.status == 0);
  double sr = firstNumber(srEval.out), bl = firstNumber(blEval.out);
  MESSAGE("sr " << sr << " baseline " << bl);
  CHECK(std::isfinite(sr));
  CHECK(sr > bl);

  // the bpp column is the stream size over the reference count
  double bpp = std::stod(srEval.out.substr(srEval.out.find(',') + 1));
  CHECK(bpp == doctest::Approx(8.0 * fs::file_size(ws.path("s.lsrn")) / sphere.size()));

  // decoded coordinates lie on the grid of the input
  auto rec = rasterize(readPlyFile(ws.path("sr.ply")), 8);
  CHECK(d1Psnr(sphere, rec, 255) == doctest::Approx(sr).epsilon(1e-6));

  // determinism of every artefact
  REQUIRE(
    ws.run(
        "encode " + ws.path("sphere.ply") + " " + ws.path("s2.lsrn")
        + " --k 1 --bit-depth 8 --epochs 40 --seed 3")
      .status
    == 0);
  CHECK(Workspace::slurp(ws.path("s.lsrn")) == Workspace::slurp(ws.path("s2.lsrn")));
  REQUIRE(ws.run("decode " + ws.path("s2.lsrn") + " " + ws.path("sr2.ply")).status == 0);
  CHECK(Workspace::slurp(ws.path("sr.ply")) == Workspace::slurp(ws.path("sr2.ply")));
}

TEST_CASE("oracle patterns through the command line")
{
  Workspace ws;
  Prng rng(4);
  auto cloud = testing::randomCloud(rng, 4, 900);
  ws.writeIntegerPly("c.ply", cloud);
  REQUIRE(
    ws.run(
        "encode " + ws.path("c.ply") + " " + ws.path("c.lsrn")
        + " --k 1 --bit-depth 4 --oracle-patterns")
      .status
    == 0);
  REQUIRE(ws.run("decode " + ws.path("c.lsrn") + " " + ws.path("c_rec.ply")).status == 0);
  CHECK(rasterize(readPlyFile(ws.path("c_rec.ply")), 4) == cloud);
  auto eval = ws.run(
    "eval --ref " + ws.path("c.ply") + " --rec " + ws.path("c_rec.ply") + " --bit-depth 4");
  CHECK(firstNumber(eval.out) == kLosslessPsnr);
}

TEST_CASE("external base payload")
{
  Workspace ws;
  auto torus = testing::torusShell(7, 40, 15);
  ws.writeIntegerPly("t.ply", torus);
  std::ofstream(ws.path("foreign.bin")) << "opaque";
  REQUIRE(
    ws.run(
        "encode " + ws.path("t.ply") + " " + ws.path("t.lsrn") + " --bit-depth 7 --epochs 3"
        + " --external-base " + ws.path("foreign.bin") + " --export-base "
        + ws.path("base.ply"))
      .status
    == 0);
  CHECK(rasterize(readPlyFile(ws.path("base.ply")), 6) == downsample(torus));
  CHECK(ws.run("decode " + ws.path("t.lsrn") + " " + ws.path("x.ply")).status != 0);
  CHECK(
    ws.run(
        "decode " + ws.path("t.lsrn") + " " + ws.path("x.ply") + " --base-ply "
        + ws.path("base.ply"))
      .status
    == 0);
}

TEST_CASE("sweep and bd rate")
{
  Workspace ws;
  ws.writeIntegerPly("b.ply", testing::boxShell(8, 90, 60, 40));
  auto sweep = ws.run(
    "sweep " + ws.path("b.ply") + " --k-list 1,2,3,4,5,6 --d 1 --bit-depth 8 --epochs 2 --out "
    + ws.path("curve.csv"));
  REQUIRE(sweep.status == 0);

  std::ifstream is(ws.path("curve.csv"));
  auto rows = readRdCsv(is);
  REQUIRE(rows.size() == 6);
  for (int i = 0; i < 6; i++)
    CHECK(rows[i].k == i + 1);

  auto bd = ws.run("bdrate --anchor " + ws.path("curve.csv") + " --test " + ws.path("curve.csv"));
  REQUIRE(bd.status == 0);
  CHECK(bd.out == "0.0\n");

  std::ofstream half(ws.path("half.csv"));
  std::vector<RdRow> halved = rows;
  for (auto& r : halved)
    r.bpp /= 2;
  writeRdCsv(half, halved);
  half.close();
  bd = ws.run("bdrate --anchor " + ws.path("curve.csv") + " --test " + ws.path("half.csv"));
  CHECK(bd.out == "-50.0\n");
}

TEST_CASE("diagnostics")
{
  Workspace ws;
  auto missing = ws.run("encode " + ws.path("none.ply") + " " + ws.path("o.lsrn"));
  CHECK(missing.status != 0);
  CHECK(missing.err.find("none.ply") != std::string::npos);

  CHECK(ws.run("frobnicate").status != 0);
  CHECK(ws.run("decode --no-such-flag a b").status != 0);

  std::ofstream(ws.path("bad.ply")) << "ply\nformat ascii 1.0\nelement vertex 2\nend_header\n";
  auto bad = ws.run("encode " + ws.path("bad.ply") + " " + ws.path("o.lsrn"));
  CHECK(bad.status != 0);
  CHECK(bad.err.find("bad.ply") != std::string::npos);
  CHECK(std::count(bad.err.begin(), bad.err.end(), '\n') == 1);

  std::ofstream(ws.path("junk.lsrn")) << "LSRNjunk";
  auto junk = ws.run("decode " + ws.path("junk.lsrn") + " " + ws.path("o.ply"));
  CHECK(junk.status != 0);
  CHECK(std::count(junk.err.begin(), junk.err.end(), '\n') == 1);
}
