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

#include <cstdint>
#include <span>
#include <vector>

namespace lsrn {

//============================================================================
// Adaptive binary model: P(1) = c1 / (c0 + c1).  Both counts start at 1 and
// are halved (floor, minimum 1) whenever their sum exceeds 1024.

struct AdaptiveBitModel {
  uint32_t c0 = 1;
  uint32_t c1 = 1;

  void update(int bit)
  {
    if (bit)
      c1++;
    else
      c0++;
    if (c0 + c1 > 1024) {
      c0 = c0 > 1 ? c0 >> 1 : 1;
      c1 = c1 > 1 ? c1 >> 1 : 1;
    }
  }
};

//----------------------------------------------------------------------------
// Carry-less range coder (Subbotin) over a 32-bit [low, low + range) window.
//
//   r = range / (c0 + c1)
//   bit 0: range = r * c0
//   bit 1: low += r * c0; range -= r * c0
//   renormalise: while the top byte of low and low + range agree (their xor
//   is below 2^24), or range < 2^16 (then first set range = -low mod 2^16),
//   emit low >> 24 and shift low and range left by 8.
//   flush: emit the four bytes of low, most significant first.
//
// The decoder mirrors the encoder, reading one byte per renormalisation
// step after an initial four-byte fill.

class RangeEncoder {
public:
  void encode(int bit, AdaptiveBitModel& model);

  // Appends the final four bytes and returns the stream.
  std::vector<uint8_t> finish();

private:
  void normalize();

  uint32_t _low = 0;
  uint32_t _range = 0xffffffffu;
  std::vector<uint8_t> _out;
};

class RangeDecoder {
public:
  // Throws CorruptStream if |data| is shorter than four bytes.
  explicit RangeDecoder(std::span<const uint8_t> data);

  // Throws CorruptStream when the stream is exhausted.
  int decode(AdaptiveBitModel& model);

  // True once every input byte has been consumed.
  bool atEnd() const { return _pos == _data.size(); }

private:
  uint8_t nextByte();
  void normalize();

  std::span<const uint8_t> _data;
  size_t _pos = 0;
  uint32_t _low = 0;
  uint32_t _range = 0xffffffffu;
  uint32_t _code = 0;
};

//============================================================================

}  // namespace lsrn
