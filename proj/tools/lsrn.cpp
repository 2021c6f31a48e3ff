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

#include "lsrn/error.h"
#include "lsrn/metrics.h"
#include "lsrn/pipeline.h"
#include "lsrn/ply_io.h"
#include "lsrn/voxelize.h"

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

using namespace lsrn;

namespace {

//============================================================================

std::vector<uint8_t>
readBytes(const std::string& path)
{
  std::ifstream is(path, std::ios::binary);
  if (!is)
    throw Error(ErrorCode::kIo, "cannot open '" + path + "'");
  return {std::istreambuf_iterator<char>(is), std::istreambuf_iterator<char>()};
}

void
writeBytes(const std::string& path, std::span<const uint8_t> bytes)
{
  std::ofstream os(path, std::ios::binary);
  if (!os)
    throw Error(ErrorCode::kIo, "cannot create '" + path + "'");
  os.write(reinterpret_cast<const char*>(bytes.data()), std::streamsize(bytes.size()));
  if (!os)
    throw Error(ErrorCode::kIo, "write to '" + path + "' failed");
}

VoxelCloud
loadCloud(const std::string& path, int bitDepth, bool raw)
{
  auto doc = readPlyFile(path);
  return raw ? rasterize(doc, bitDepth) : voxelize(doc, bitDepth);
}

std::vector<RdRow>
loadCsv(const std::string& path)
{
  std::ifstream is(path);
  if (!is)
    throw Error(ErrorCode::kIo, "cannot open '" + path + "'");
  try {
    return readRdCsv(is);
  }
  catch (const Error& e) {
    throw Error(e.code(), path + ": " + e.what());
  }
}

RdCurve
curveFor(const std::vector<RdRow>& rows, const std::string& label)
{
  if (label.empty())
    return toCurve(rows);
  std::vector<RdRow> picked;
  for (const auto& r : rows)
    if (r.label == label)
      picked.push_back(r);
  return toCurve(picked);
}

std::string
formatPsnr(double psnr)
{
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4f", psnr);
  return buf;
}

//----------------------------------------------------------------------------

struct TrainOptions {
  int radius = 1;
  int hidden = 0;
  int hiddenFloor = 4;
  uint64_t seed = 0;
  int epochs = 150;
  int batch = 2048;
  double lr = 1e-3;
  int bitDepth = 10;
  bool raw = false;

  void addTo(CLI::App* cmd)
  {
    cmd->add_option("--d", radius, "Neighbourhood radius (1 or 2)")
      ->capture_default_str();
    cmd->add_option("--hidden", hidden, "Hidden size (default 2^(6-K), or 32 for D=2)");
    cmd->add_option("--hidden-floor", hiddenFloor, "Lower bound of the default hidden size")
      ->capture_default_str();
    cmd->add_option("--seed", seed, "Training seed")->capture_default_str();
    cmd->add_option("--epochs", epochs, "Training epochs")->capture_default_str();
    cmd->add_option("--batch", batch, "Training batch size")->capture_default_str();
    cmd->add_option("--lr", lr, "Adam learning rate")->capture_default_str();
    cmd->add_option("--bit-depth", bitDepth, "Voxel grid bit depth")
      ->capture_default_str();
    cmd->add_flag("--raw", raw, "Input coordinates already lie on the voxel grid");
  }

  EncodeSettings settings(int k) const
  {
    EncodeSettings s;
    s.k = k;
    s.radius = radius;
    if (hidden > 0)
      s.hiddenOverride = hidden;
    s.hiddenFloor = hiddenFloor;
    s.train.seed = seed;
    s.train.epochs = epochs;
    s.train.batchSize = batch;
    s.train.learningRate = lr;
    return s;
  }
};

//============================================================================

}  // namespace

int
main(int argc, char** argv)
{
  CLI::App app{"Point cloud geometry coding with an overfitted super-resolution network"};
  app.require_subcommand(1);
  app.failure_message([](const CLI::App*, const CLI::Error& e) {
    return "lsrn: " + std::string(e.what()) + "\n";
  });

  // encode
  auto* encodeCmd = app.add_subcommand("encode", "Compress a PLY point cloud");
  std::string encIn, encOut, externalBase, exportBase;
  int encK = 1;
  bool oracle = false;
  TrainOptions encOpts;
  encodeCmd->add_option("input", encIn, "Input PLY")->required()->check(CLI::ExistingFile);
  encodeCmd->add_option("output", encOut, "Output stream")->required();
  encodeCmd->add_option("--k", encK, "Downsampling exponent")->capture_default_str();
  encOpts.addTo(encodeCmd);
  encodeCmd->add_flag("--oracle-patterns", oracle, "Ship true patterns instead of a network");
  encodeCmd->add_option(
    "--external-base", externalBase, "Store this file as an opaque base payload");
  encodeCmd->add_option("--export-base", exportBase, "Write the base cloud as PLY");

  // decode
  auto* decodeCmd = app.add_subcommand("decode", "Reconstruct a point cloud");
  std::string decIn, decOut, basePly;
  bool baseline = false;
  decodeCmd->add_option("input", decIn, "Input stream")->required()->check(CLI::ExistingFile);
  decodeCmd->add_option("output", decOut, "Output PLY")->required();
  decodeCmd->add_flag("--baseline", baseline, "Scale the base cloud without the network");
  decodeCmd->add_option(
    "--base-ply", basePly, "Decoded base cloud for streams with an external base")
    ->check(CLI::ExistingFile);

  // eval
  auto* evalCmd = app.add_subcommand("eval", "D1 PSNR of a reconstruction");
  std::string ref, rec, evalStream;
  int evalDepth = 10;
  bool evalRaw = false;
  evalCmd->add_option("--ref", ref, "Reference PLY")->required()->check(CLI::ExistingFile);
  evalCmd->add_option("--rec", rec, "Reconstructed PLY on the voxel grid")
    ->required()
    ->check(CLI::ExistingFile);
  evalCmd->add_option("--bit-depth", evalDepth, "Voxel grid bit depth")->capture_default_str();
  evalCmd->add_option("--stream", evalStream, "Stream file for the bpp column")
    ->check(CLI::ExistingFile);
  evalCmd->add_flag("--raw", evalRaw, "Reference coordinates already lie on the voxel grid");

  // sweep
  auto* sweepCmd = app.add_subcommand("sweep", "Rate-distortion curve over K");
  std::string sweepIn, sweepOut;
  std::vector<int> kList{1, 2, 3, 4, 5, 6};
  bool sweepBaseline = false;
  TrainOptions sweepOpts;
  sweepCmd->add_option("input", sweepIn, "Input PLY")->required()->check(CLI::ExistingFile);
  sweepCmd->add_option("--k-list", kList, "Downsampling exponents")
    ->delimiter(',')
    ->capture_default_str();
  sweepCmd->add_option("--out", sweepOut, "Output CSV")->required();
  sweepCmd->add_flag("--baseline", sweepBaseline, "Add rows for the baseline reconstruction");
  sweepOpts.addTo(sweepCmd);

  // bdrate
  auto* bdCmd = app.add_subcommand("bdrate", "Bjontegaard delta rate in percent");
  std::string anchorCsv, testCsv, anchorLabel, testLabel;
  bdCmd->add_option("--anchor", anchorCsv, "Anchor curve CSV")
    ->required()
    ->check(CLI::ExistingFile);
  bdCmd->add_option("--test", testCsv, "Test curve CSV")->required()->check(CLI::ExistingFile);
  bdCmd->add_option("--anchor-label", anchorLabel, "Use only anchor rows with this label");
  bdCmd->add_option("--test-label", testLabel, "Use only test rows with this label");

  try {
    app.parse(argc, argv);
  }
  catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (*encodeCmd) {
      auto cloud = loadCloud(encIn, encOpts.bitDepth, encOpts.raw);
      auto settings = encOpts.settings(encK);
      settings.oraclePatterns = oracle;
      if (!externalBase.empty())
        settings.externalBasePayload = readBytes(externalBase);
      auto report = encodeWithReport(cloud, settings);
      writeBytes(encOut, report.stream);
      if (!exportBase.empty())
        writeCloudPly(exportBase, report.base);
      std::printf(
        "points %zu base %zu bytes %zu bpp %.6f d1_psnr %s\n", cloud.size(),
        report.base.size(), report.stream.size(), report.bpp,
        formatPsnr(report.d1Psnr).c_str());
    }
    else if (*decodeCmd) {
      auto bytes = readBytes(decIn);
      std::optional<VoxelCloud> base;
      if (!basePly.empty()) {
        auto header = readStream(bytes).header;
        base = rasterize(readPlyFile(basePly), header.bitDepth - header.k);
      }
      const VoxelCloud* external = base ? &*base : nullptr;
      auto cloud = baseline ? baselineDecode(bytes, external) : decode(bytes, external);
      writeCloudPly(decOut, cloud);
    }
    else if (*evalCmd) {
      auto a = loadCloud(ref, evalDepth, evalRaw);
      auto b = rasterize(readPlyFile(rec), evalDepth);
      double psnr = d1Psnr(a, b, peakForBitDepth(evalDepth));
      if (evalStream.empty())
        std::printf("%s\n", formatPsnr(psnr).c_str());
      else {
        auto bytes = readBytes(evalStream);
        std::printf(
          "%s,%.6f\n", formatPsnr(psnr).c_str(), bitsPerPoint(bytes.size(), a.size()));
      }
    }
    else if (*sweepCmd) {
      auto cloud = loadCloud(sweepIn, sweepOpts.bitDepth, sweepOpts.raw);
      const uint32_t peak = peakForBitDepth(sweepOpts.bitDepth);
      std::vector<RdRow> rows;
      for (int k : kList) {
        auto report = encodeWithReport(cloud, sweepOpts.settings(k));
        rows.push_back({"sr", k, report.bpp, report.d1Psnr});
        if (sweepBaseline) {
          auto stream = readStream(report.stream);
          double bpp = bitsPerPoint(kHeaderSize + stream.base.size(), cloud.size());
          rows.push_back(
            {"baseline", k, bpp, d1Psnr(cloud, baselineDecode(report.stream), peak)});
        }
      }
      std::ofstream os(sweepOut);
      if (!os)
        throw Error(ErrorCode::kIo, "cannot create '" + sweepOut + "'");
      writeRdCsv(os, rows);
      if (!os)
        throw Error(ErrorCode::kIo, "write to '" + sweepOut + "' failed");
    }
    else if (*bdCmd) {
      auto anchor = curveFor(loadCsv(anchorCsv), anchorLabel);
      auto test = curveFor(loadCsv(testCsv), testLabel);
      double bd = bdRate(anchor, test);
      char buf[32];
      std::snprintf(buf, sizeof buf, "%.1f", bd);
      // keep "-0.0" out of the output
      std::printf("%s\n", std::string(buf) == "-0.0" ? "0.0" : buf);
    }
  }
  catch (const Error& e) {
    std::fprintf(stderr, "lsrn: %s\n", e.what());
    return 1;
  }
  catch (const std::exception& e) {
    std::fprintf(stderr, "lsrn: %s\n", e.what());
    return 1;
  }
  return 0;
}
