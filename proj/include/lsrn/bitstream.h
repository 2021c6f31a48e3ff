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

#include "lsrn/srnet.h"

#include <cstdint>
#include <span>
#include <vector>

namespace lsrn {

//============================================================================
// Container layout, all multi-byte fields little-endian:
//
//   offset  size  field
//        0     4  magic "LSRN"
//        4     1  version (1)
//        5     1  flags: bit0 external base payload, bit1 pattern payload
//        6     1  K, downsampling exponent
//        7     1  D, neighbourhood radius
//        8     2  hidden size
//       10     1  bit depth of the original cloud
//       11     1  octree depth of the base cloud
//       12     4  base payload length
//       16     4  parameter payload length
//       20     4  omega0 (binary32)
//       24        base payload, then parameter payload

constexpr size_t kHeaderSize = 24;
constexpr uint8_t kStreamVersion = 1;

constexpr uint8_t kFlagExternalBase = 0x01;
constexpr uint8_t kFlagPatternPayload = 0x02;

struct Header {
  uint8_t version = kStreamVersion;
  uint8_t flags = 0;
  uint8_t k = 1;
  uint8_t radius = 1;
  uint16_t hidden = 32;
  uint8_t bitDepth = 10;
  uint8_t octreeDepth = 1;
  uint32_t baseLen = 0;
  uint32_t paramLen = 0;
  float omega0 = 1.0f;

  int inDim() const;

  friend bool operator==(const Header&, const Header&) = default;
};

struct Stream {
  Header header;
  std::vector<uint8_t> base;
  std::vector<uint8_t> params;
};

// Fills in the payload lengths of |header| and serialises the container.
std::vector<uint8_t> writeStream(
  Header header, std::span<const uint8_t> base, std::span<const uint8_t> params);

Stream readStream(std::span<const uint8_t> bytes);

//----------------------------------------------------------------------------
// Network parameters travel as binary16 values in flatten() order.

std::vector<uint8_t> quantizeParams(const MlpParams& params);

MlpParams dequantizeParams(
  std::span<const uint8_t> bytes, int inDim, int hidden, float omega0);

// The parameters exactly as a decoder reconstructs them.
MlpParams roundTripParams(const MlpParams& params);

//============================================================================

}  // namespace lsrn
