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

#include "lsrn/geometry.h"

#include <cstdint>
#include <span>
#include <vector>

namespace lsrn {

//============================================================================
// Lossless octree occupancy coder for the base cloud.
//
// Payload layout: [depth: u8][range-coded node masks][4-byte coder flush].
//
// Nodes are visited breadth first; within a level they are ordered
// lexicographically by node coordinate.  Each occupied node sends its
// 8-bit child mask, bit b = 4 bx + 2 by + bz (bx being the x coordinate
// bit at the child level), as bits b = 0..7 each coded under context
// (b, number of set bits already sent for this mask).

// Smallest depth d >= 1 such that every coordinate of |cloud| is < 2^d.
int octreeDepthFor(const VoxelCloud& cloud);

// Per-level child masks in coding order (levels 0 .. depth-1).
std::vector<std::vector<uint8_t>>
octreeLevels(const VoxelCloud& cloud, int depth);

std::vector<uint8_t> encodeBase(const VoxelCloud& cloud, int depth);

// Decoding stops with CorruptStream on truncated or inconsistent input, or
// once a level would exceed |maxNodes| nodes.
VoxelCloud decodeBase(
  std::span<const uint8_t> bytes, int depth, size_t maxNodes = size_t(1) << 26);

//============================================================================

}  // namespace lsrn
