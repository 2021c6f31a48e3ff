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

#include "lsrn/pipeline.h"

#include "lsrn/base_codec.h"
#include "lsrn/error.h"
#include "lsrn/metrics.h"

#include <algorithm>
#include <string>

namespace lsrn {

//============================================================================

namespace {

  int superResolutionPasses(int k) { return std::min(k, 2); }

  // Runs the decoder-side reconstruction from a base cloud.  Exactly one of
  // |net| and |patternPayload| drives the pattern prediction.
  VoxelCloud reconstruct(
    const VoxelCloud& base,
    const Header& header,
    const MlpParams* net,
    std::span<const uint8_t> patternPayload)
  {
    VoxelCloud cur = base;
    size_t consumed = 0;
    for (int pass = 0; pass < superResolutionPasses(header.k); pass++) {
      InterpolationPatterns patterns;
      if (net) {
        patterns = predictPatterns(*net, occupancyFeatures(cur, header.radius));
      } else {
        if (patternPayload.size() - consumed < cur.size())
          throw Error(ErrorCode::kCorruptStream, "pattern payload too short");
        auto slice = patternPayload.subspan(consumed, cur.size());
        patterns.masks.assign(slice.begin(), slice.end());
        consumed += cur.size();
      }
      cur = applyPatterns(cur, patterns);
    }
    if (!net && consumed != patternPayload.size())
      throw Error(ErrorCode::kCorruptStream, "pattern payload too long");

    if (header.k > 2)
      cur = directUpscale(cur, header.k - 2);
    cur.setBitDepth(header.bitDepth);
    return cur;
  }

  VoxelCloud decodeStream(const Stream& stream, const VoxelCloud* externalBase)
  {
    const Header& h = stream.header;
    VoxelCloud base = decodeBaseCloud(stream, externalBase);

    if (h.flags & kFlagPatternPayload)
      return reconstruct(base, h, nullptr, stream.params);

    MlpParams net =
      dequantizeParams(stream.params, h.inDim(), h.hidden, h.omega0);
    return reconstruct(base, h, &net, {});
  }

}  // namespace

//============================================================================

int
defaultHidden(int k, int radius, int hiddenFloor)
{
  if (radius == 2)
    return 32;
  int h = k >= 6 ? 1 : 1 << (6 - k);
  return std::max(h, hiddenFloor);
}

//----------------------------------------------------------------------------

EncodeReport
encodeWithReport(const VoxelCloud& cloud, const EncodeSettings& settings)
{
  if (cloud.empty())
    throw Error(ErrorCode::kEmptyCloud, "nothing to encode");
  if (settings.k < 1 || settings.k >= cloud.bitDepth())
    throw Error(
      ErrorCode::kInvalidK,
      "K = " + std::to_string(settings.k) + " needs 1 <= K < bit depth "
        + std::to_string(cloud.bitDepth()));
  if (cloud.bitDepth() > kMaxBitDepth)
    throw Error(ErrorCode::kDepthOverflow, "bit depth above 20 unsupported");

  const int k = settings.k;
  const int hidden = settings.hiddenOverride.value_or(
    defaultHidden(k, settings.radius, settings.hiddenFloor));

  EncodeReport report;
  VoxelCloud upper = downsample(cloud, k - 1);
  report.base = downsample(upper);
  const VoxelCloud& base = report.base;

  FeatureMatrix features = occupancyFeatures(base, settings.radius);
  InterpolationPatterns patterns = extractPatterns(upper, base);

  Header& h = report.header;
  h.k = uint8_t(k);
  h.radius = uint8_t(settings.radius);
  h.hidden = uint16_t(hidden);
  h.bitDepth = uint8_t(cloud.bitDepth());
  h.octreeDepth = uint8_t(octreeDepthFor(base));
  h.omega0 = settings.train.omega0;

  std::vector<uint8_t> baseBytes;
  if (settings.externalBasePayload) {
    h.flags |= kFlagExternalBase;
    baseBytes = *settings.externalBasePayload;
  } else {
    baseBytes = encodeBase(base, h.octreeDepth);
  }

  std::vector<uint8_t> paramBytes;
  if (settings.oraclePatterns) {
    h.flags |= kFlagPatternPayload;
    paramBytes = patterns.masks;
    if (k >= 2) {
      auto second = extractPatterns(downsample(cloud, k - 2), upper);
      paramBytes.insert(
        paramBytes.end(), second.masks.begin(), second.masks.end());
    }
    report.trainAccuracy = 1.0;
    report.reconstruction = reconstruct(base, h, nullptr, paramBytes);
  } else {
    TrainConfig config = settings.train;
    config.hidden = hidden;
    TrainResult trained = train(features, patterns, config);
    report.epochLoss = std::move(trained.epochLoss);

    // quality is measured with the parameters the decoder will see
    MlpParams deployed = roundTripParams(trained.params);
    paramBytes = quantizeParams(deployed);
    report.trainAccuracy = maskBitAccuracy(
      predictPatterns(deployed, features).masks, patterns.masks);
    report.reconstruction = reconstruct(base, h, &deployed, {});
  }

  report.stream = writeStream(h, baseBytes, paramBytes);
  report.header = readStream(report.stream).header;

  const uint32_t peak = (uint32_t(1) << cloud.bitDepth()) - 1;
  report.d1Psnr = d1Psnr(cloud, report.reconstruction, peak);
  report.bpp = bitsPerPoint(report.stream.size(), cloud.size());
  return report;
}

//----------------------------------------------------------------------------

std::vector<uint8_t>
encode(const VoxelCloud& cloud, const EncodeSettings& settings)
{
  return encodeWithReport(cloud, settings).stream;
}

//----------------------------------------------------------------------------

VoxelCloud
decodeBaseCloud(const Stream& stream, const VoxelCloud* externalBase)
{
  const Header& h = stream.header;
  VoxelCloud base;
  if (h.flags & kFlagExternalBase) {
    if (!externalBase)
      throw Error(
        ErrorCode::kMissingBase,
        "stream uses an external base codec; supply the decoded base cloud");
    base = *externalBase;
    if (base.empty())
      throw Error(ErrorCode::kEmptyCloud, "external base cloud is empty");
  } else {
    base = decodeBase(stream.base, h.octreeDepth);
  }
  base.setBitDepth(std::max(1, h.bitDepth - h.k));
  return base;
}

//----------------------------------------------------------------------------

VoxelCloud
decode(std::span<const uint8_t> bytes, const VoxelCloud* externalBase)
{
  return decodeStream(readStream(bytes), externalBase);
}

//----------------------------------------------------------------------------

VoxelCloud
baselineDecode(std::span<const uint8_t> bytes, const VoxelCloud* externalBase)
{
  Stream stream = readStream(bytes);
  VoxelCloud out =
    directUpscale(decodeBaseCloud(stream, externalBase), stream.header.k);
  out.setBitDepth(stream.header.bitDepth);
  return out;
}

//============================================================================

}  // namespace lsrn
