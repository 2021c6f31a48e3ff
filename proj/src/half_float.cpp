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

#include "lsrn/half_float.h"

#include <bit>

namespace lsrn {

//============================================================================

uint16_t
floatToHalf(float value)
{
  const uint32_t f = std::bit_cast<uint32_t>(value);
  const uint32_t sign = (f >> 16) & 0x8000u;
  const int exponent = int((f >> 23) & 0xffu);
  const uint32_t mantissa = f & 0x7fffffu;

  if (exponent == 0xff)
    return uint16_t(sign | 0x7c00u | (mantissa ? 0x200u : 0u));

  const int e = exponent - 127 + 15;
  if (e >= 31)
    return uint16_t(sign | 0x7c00u);

  if (e <= 0) {
    if (e < -10)
      return uint16_t(sign);
    // subnormal result: value = m * 2^-24
    const uint32_t m = mantissa | 0x800000u;
    const int shift = 14 - e;
    uint32_t half = m >> shift;
    const uint32_t rem = m & ((1u << shift) - 1);
    const uint32_t halfway = 1u << (shift - 1);
    if (rem > halfway || (rem == halfway && (half & 1)))
      half++;
    return uint16_t(sign | half);
  }

  uint32_t half = (uint32_t(e) << 10) | (mantissa >> 13);
  const uint32_t rem = mantissa & 0x1fffu;
  if (rem > 0x1000u || (rem == 0x1000u && (half & 1)))
    half++;  // a carry into the exponent may produce infinity, as it should
  return uint16_t(sign | half);
}

//----------------------------------------------------------------------------

float
halfToFloat(uint16_t half)
{
  const uint32_t sign = uint32_t(half & 0x8000u) << 16;
  const uint32_t exponent = (half >> 10) & 0x1fu;
  uint32_t mantissa = half & 0x3ffu;

  if (exponent == 0x1f)
    return std::bit_cast<float>(sign | 0x7f800000u | (mantissa << 13));

  if (exponent == 0) {
    if (!mantissa)
      return std::bit_cast<float>(sign);
    // normalise the subnormal
    int e = -1;
    do {
      e++;
      mantissa <<= 1;
    } while (!(mantissa & 0x400u));
    mantissa &= 0x3ffu;
    return std::bit_cast<float>(
      sign | (uint32_t(127 - 15 - e) << 23) | (mantissa << 13));
  }

  return std::bit_cast<float>(
    sign | ((exponent + 127 - 15) << 23) | (mantissa << 13));
}

//============================================================================

}  // namespace lsrn
