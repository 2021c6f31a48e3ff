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

#include <array>
#include <iosfwd>
#include <string>
#include <vector>

namespace lsrn {

//============================================================================
// Minimal PLY support: only the x, y, z properties of the "vertex" element
// are read; all other elements and properties are skipped.  Reads ascii and
// binary_little_endian.

enum class PlyFormat { kAscii, kBinaryLittleEndian };

struct PlyDocument {
  std::vector<std::array<double, 3>> vertices;
  // True when x, y and z are all declared with integer types.
  bool integerTyped = false;
};

PlyDocument readPly(std::istream& is);
PlyDocument readPlyFile(const std::string& path);

// Writes x, y, z as float32 (or int32 when |asInteger|).
void writePly(
  std::ostream& os, const PlyDocument& doc, PlyFormat format,
  bool asInteger = false);

// Binary little-endian float32 vertices.
void writeCloudPly(const std::string& path, const VoxelCloud& cloud);

PlyDocument toPlyDocument(const VoxelCloud& cloud);

//============================================================================

}  // namespace lsrn
