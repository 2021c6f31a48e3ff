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
#include <iosfwd>
#include <string>
#include <vector>

namespace lsrn {

//============================================================================

// PSNR reported for a distortion-free reconstruction.
constexpr double kLosslessPsnr = 999.0;

// Squared distance from every point of |query| to its nearest neighbour in
// |target| (exact, grid-bucketed search).
std::vector<uint64_t>
nearestSquaredDistances(const VoxelCloud& query, const VoxelCloud& target);

struct D1Error {
  double mseAB = 0;  // reference -> reconstruction
  double mseBA = 0;  // reconstruction -> reference
  double mse() const { return mseAB > mseBA ? mseAB : mseBA; }
};

D1Error d1Error(const VoxelCloud& reference, const VoxelCloud& reconstructed);

// 10 log10(3 peak^2 / D1-MSE), kLosslessPsnr when the MSE is zero.
double d1Psnr(
  const VoxelCloud& reference, const VoxelCloud& reconstructed, uint32_t peak);

// Default peak for a bit depth: 2^B - 1.
inline uint32_t peakForBitDepth(int bitDepth)
{
  return (uint32_t(1) << bitDepth) - 1;
}

double bitsPerPoint(uint64_t streamBytes, uint64_t originalCount);

//----------------------------------------------------------------------------

struct RdPoint {
  double rate = 0;  // bits per original point
  double psnr = 0;  // D1 PSNR, dB
};

using RdCurve = std::vector<RdPoint>;

// Bjontegaard delta rate of |test| against |anchor| in percent (negative
// means |test| needs fewer bits for the same quality).  Each curve is fitted
// with a cubic log(rate) = f(psnr); lossless points are ignored.
double bdRate(const RdCurve& anchor, const RdCurve& test);

//----------------------------------------------------------------------------
// RD curve CSV: header "label,K,bpp,d1_psnr", one row per rate point.

struct RdRow {
  std::string label;
  int k = 0;
  double bpp = 0;
  double psnr = 0;
};

void writeRdCsv(std::ostream& os, const std::vector<RdRow>& rows);
std::vector<RdRow> readRdCsv(std::istream& is);
RdCurve toCurve(const std::vector<RdRow>& rows);

//============================================================================

}  // namespace lsrn
