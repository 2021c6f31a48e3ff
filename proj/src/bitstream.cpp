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

#include "lsrn/bitstream.h"

#include "lsrn/error.h"
#include "lsrn/geometry.h"
#include "lsrn/half_float.h"

#include <bit>
#include <cmath>
#include <cstring>
#include <string>

namespace lsrn {

//============================================================================

namespace {

  constexpr char kMagic[4] = {'L', 'S', 'R', 'N'};
  constexpr uint8_t kKnownFlags = kFlagExternalBase | kFlagPatternPayload;

  void put16(std::vector<uint8_t>& out, uint16_t v)
  {
    out.push_back(uint8_t(v));
    out.push_back(uint8_t(v >> 8));
  }

  void put32(std::vector<uint8_t>& out, uint32_t v)
  {
    for (int i = 0; i < 4; i++)
      out.push_back(uint8_t(v >> (8 * i)));
  }

  uint16_t get16(const uint8_t* p) { return uint16_t(p[0] | (p[1] << 8)); }

  uint32_t get32(const uint8_t* p)
  {
    return uint32_t(p[0]) | (uint32_t(p[1]) << 8) | (uint32_t(p[2]) << 16)
      | (uint32_t(p[3]) << 24);
  }

  void validate(const Header& h)
  {
    if (h.flags & ~kKnownFlags)
      throw Error(ErrorCode::kBadVersion, "unknown header flags");
    if (h.k < 1)
      throw Error(ErrorCode::kInvalidK, "K must be >= 1");
    if (h.radius != 1 && h.radius != 2)
      throw Error(
        ErrorCode::kCorruptStream,
        "neighbourhood radius " + std::to_string(h.radius) + " unsupported");
    if (h.hidden < 1 || h.hidden > kMaxHidden)
      throw Error(
        ErrorCode::kCorruptStream,
        "hidden size " + std::to_string(h.hidden) + " out of range");
    if (h.bitDepth < 1 || h.bitDepth > kMaxBitDepth || h.k >= h.bitDepth)
      throw Error(
        ErrorCode::kInvalidK,
        "K = " + std::to_string(h.k) + " with bit depth "
          + std::to_string(h.bitDepth));
    if (h.octreeDepth < 1 || h.octreeDepth > h.bitDepth - h.k + 1)
      throw Error(ErrorCode::kCorruptStream, "octree depth out of range");
    if (!std::isfinite(h.omega0) || !(h.omega0 > 0))
      throw Error(ErrorCode::kCorruptStream, "omega0 must be finite and > 0");

    bool networkPayload = !(h.flags & (kFlagExternalBase | kFlagPatternPayload));
    if (networkPayload
        && h.paramLen != 2 * MlpParams::countFor(h.inDim(), h.hidden))
      throw Error(
        ErrorCode::kLengthMismatch,
        "parameter payload of " + std::to_string(h.paramLen)
          + " bytes does not match the network shape");
  }

}  // namespace

//============================================================================

int
Header::inDim() const
{
  return neighborhoodSize(radius);
}

//----------------------------------------------------------------------------

std::vector<uint8_t>
writeStream(
  Header header, std::span<const uint8_t> base, std::span<const uint8_t> params)
{
  header.baseLen = uint32_t(base.size());
  header.paramLen = uint32_t(params.size());
  if (header.version != kStreamVersion)
    throw Error(ErrorCode::kBadVersion, "only version 1 can be written");
  validate(header);

  std::vector<uint8_t> out;
  out.reserve(kHeaderSize + base.size() + params.size());
  out.insert(out.end(), std::begin(kMagic), std::end(kMagic));
  out.push_back(header.version);
  out.push_back(header.flags);
  out.push_back(header.k);
  out.push_back(header.radius);
  put16(out, header.hidden);
  out.push_back(header.bitDepth);
  out.push_back(header.octreeDepth);
  put32(out, header.baseLen);
  put32(out, header.paramLen);
  put32(out, std::bit_cast<uint32_t>(header.omega0));
  out.insert(out.end(), base.begin(), base.end());
  out.insert(out.end(), params.begin(), params.end());
  return out;
}

//----------------------------------------------------------------------------

Stream
readStream(std::span<const uint8_t> bytes)
{
  if (bytes.size() < 4 || std::memcmp(bytes.data(), kMagic, 4) != 0)
    throw Error(ErrorCode::kBadMagic, "not an LSRN stream");
  if (bytes.size() < kHeaderSize)
    throw Error(ErrorCode::kTruncatedStream, "header truncated");

  const uint8_t* p = bytes.data();
  Stream s;
  Header& h = s.header;
  h.version = p[4];
  if (h.version != kStreamVersion)
    throw Error(
      ErrorCode::kBadVersion, "unsupported version " + std::to_string(h.version));
  h.flags = p[5];
  h.k = p[6];
  h.radius = p[7];
  h.hidden = get16(p + 8);
  h.bitDepth = p[10];
  h.octreeDepth = p[11];
  h.baseLen = get32(p + 12);
  h.paramLen = get32(p + 16);
  h.omega0 = std::bit_cast<float>(get32(p + 20));

  const uint64_t expected = uint64_t(kHeaderSize) + h.baseLen + h.paramLen;
  if (bytes.size() < expected)
    throw Error(ErrorCode::kTruncatedStream, "payload truncated");
  if (bytes.size() > expected)
    throw Error(ErrorCode::kLengthMismatch, "trailing bytes after payloads");
  validate(h);

  auto body = bytes.subspan(kHeaderSize);
  s.base.assign(body.begin(), body.begin() + h.baseLen);
  s.params.assign(body.begin() + h.baseLen, body.end());
  return s;
}

//============================================================================

std::vector<uint8_t>
quantizeParams(const MlpParams& params)
{
  auto flat = params.flatten();
  std::vector<uint8_t> out;
  out.reserve(2 * flat.size());
  for (size_t i = 0; i < flat.size(); i++) {
    uint16_t h = floatToHalf(flat[i]);
    if ((h & 0x7c00u) == 0x7c00u)
      throw Error(
        ErrorCode::kNonFiniteParam,
        "parameter " + std::to_string(i) + " is not representable in 16 bits");
    put16(out, h);
  }
  return out;
}

//----------------------------------------------------------------------------

MlpParams
dequantizeParams(
  std::span<const uint8_t> bytes, int inDim, int hidden, float omega0)
{
  if (bytes.size() != 2 * MlpParams::countFor(inDim, hidden))
    throw Error(ErrorCode::kLengthMismatch, "parameter payload size mismatch");

  std::vector<float> flat(bytes.size() / 2);
  for (size_t i = 0; i < flat.size(); i++) {
    flat[i] = halfToFloat(get16(bytes.data() + 2 * i));
    if (!std::isfinite(flat[i]))
      throw Error(ErrorCode::kNonFiniteParam, "non-finite stored parameter");
  }
  return MlpParams::fromFlat(inDim, hidden, omega0, flat);
}

//----------------------------------------------------------------------------

MlpParams
roundTripParams(const MlpParams& params)
{
  return dequantizeParams(
    quantizeParams(params), params.inDim, params.hidden, params.omega0);
}

//============================================================================

}  // namespace lsrn
