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

#include "lsrn/range_coder.h"

#include "lsrn/error.h"

namespace lsrn {

namespace {
  constexpr uint32_t kTop = uint32_t(1) << 24;
  constexpr uint32_t kBottom = uint32_t(1) << 16;
}

//============================================================================

void
RangeEncoder::encode(int bit, AdaptiveBitModel& model)
{
  uint32_t r = _range / (model.c0 + model.c1);
  uint32_t split = r * model.c0;
  if (bit) {
    _low += split;
    _range -= split;
  } else {
    _range = split;
  }
  model.update(bit);
  normalize();
}

//----------------------------------------------------------------------------

void
RangeEncoder::normalize()
{
  for (;;) {
    if ((_low ^ (_low + _range)) >= kTop) {
      if (_range >= kBottom)
        break;
      _range = (0u - _low) & (kBottom - 1);
    }
    _out.push_back(uint8_t(_low >> 24));
    _low <<= 8;
    _range <<= 8;
  }
}

//----------------------------------------------------------------------------

std::vector<uint8_t>
RangeEncoder::finish()
{
  for (int i = 0; i < 4; i++) {
    _out.push_back(uint8_t(_low >> 24));
    _low <<= 8;
  }
  return std::move(_out);
}

//============================================================================

RangeDecoder::RangeDecoder(std::span<const uint8_t> data) : _data(data)
{
  if (data.size() < 4)
    throw Error(ErrorCode::kCorruptStream, "range coder stream too short");
  for (int i = 0; i < 4; i++)
    _code = (_code << 8) | nextByte();
}

//----------------------------------------------------------------------------

uint8_t
RangeDecoder::nextByte()
{
  if (_pos >= _data.size())
    throw Error(ErrorCode::kCorruptStream, "range coder stream truncated");
  return _data[_pos++];
}

//----------------------------------------------------------------------------

int
RangeDecoder::decode(AdaptiveBitModel& model)
{
  uint32_t r = _range / (model.c0 + model.c1);
  uint32_t split = r * model.c0;
  int bit = (_code - _low) >= split;
  if (bit) {
    _low += split;
    _range -= split;
  } else {
    _range = split;
  }
  model.update(bit);
  normalize();
  return bit;
}

//----------------------------------------------------------------------------

void
RangeDecoder::normalize()
{
  for (;;) {
    if ((_low ^ (_low + _range)) >= kTop) {
      if (_range >= kBottom)
        break;
      _range = (0u - _low) & (kBottom - 1);
    }
    _code = (_code << 8) | nextByte();
    _low <<= 8;
    _range <<= 8;
  }
}

//============================================================================

}  // namespace lsrn
