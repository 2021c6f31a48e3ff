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

#include "lsrn/bitstream.h"
#include "lsrn/geometry.h"
#include "lsrn/srnet.h"

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace lsrn {

//============================================================================
// Encoder: with U = downsample^(K-1)(V) and base = downsample(U), the
// network is overfitted to predict the patterns of U from the occupancy
// around each base point.  The stream carries the base cloud losslessly
// and the network in 16-bit precision.
//
// Decoder: up to two super-resolution passes with the same network, then
// coordinate doubling for any remaining factor.

struct EncodeSettings {
  int k = 1;
  int radius = 1;
  // Hidden size; when unset, 2^(6-K) for radius 1 (not below hiddenFloor)
  // and 32 for radius 2.
  std::optional<int> hiddenOverride;
  int hiddenFloor = 4;
  TrainConfig train;
  // Test hook: ship the true patterns instead of a network.
  bool oraclePatterns = false;
  // Opaque base payload produced by a foreign codec; when set, it is stored
  // verbatim and the decoder must be handed the decoded base cloud.
  std::optional<std::vector<uint8_t>> externalBasePayload;
};

int defaultHidden(int k, int radius, int hiddenFloor);

struct EncodeReport {
  std::vector<uint8_t> stream;
  Header header;
  VoxelCloud base;
  // What decode(stream) returns.
  VoxelCloud reconstruction;
  double d1Psnr = 0;
  double bpp = 0;
  std::vector<double> epochLoss;
  // Per-bit accuracy of the quantised network on its training pairs.
  double trainAccuracy = 0;
};

EncodeReport encodeWithReport(const VoxelCloud& cloud, const EncodeSettings& settings);

std::vector<uint8_t> encode(const VoxelCloud& cloud, const EncodeSettings& settings);

// |externalBase| supplies the decoded base cloud for streams whose base
// payload came from a foreign codec; it is ignored otherwise.
VoxelCloud decode(
  std::span<const uint8_t> bytes, const VoxelCloud* externalBase = nullptr);

// Reference reconstruction without side information: the base cloud with
// every coordinate scaled by 2^K.
VoxelCloud baselineDecode(
  std::span<const uint8_t> bytes, const VoxelCloud* externalBase = nullptr);

// The base cloud a stream carries, at its own scale.
VoxelCloud decodeBaseCloud(
  const Stream& stream, const VoxelCloud* externalBase = nullptr);

//============================================================================

}  // namespace lsrn
