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

#include "lsrn/error.h"

namespace lsrn {

const char*
errorCodeName(ErrorCode code)
{
  switch (code) {
  case ErrorCode::kEmptyCloud: return "EmptyCloud";
  case ErrorCode::kInconsistentPair: return "InconsistentPair";
  case ErrorCode::kInvalidPattern: return "InvalidPattern";
  case ErrorCode::kLengthMismatch: return "LengthMismatch";
  case ErrorCode::kDimMismatch: return "DimMismatch";
  case ErrorCode::kEmptyTrainingSet: return "EmptyTrainingSet";
  case ErrorCode::kInvalidConfig: return "InvalidConfig";
  case ErrorCode::kDepthOverflow: return "DepthOverflow";
  case ErrorCode::kCorruptStream: return "CorruptStream";
  case ErrorCode::kNonFiniteParam: return "NonFiniteParam";
  case ErrorCode::kBadMagic: return "BadMagic";
  case ErrorCode::kBadVersion: return "BadVersion";
  case ErrorCode::kTruncatedStream: return "TruncatedStream";
  case ErrorCode::kInvalidK: return "InvalidK";
  case ErrorCode::kMissingBase: return "MissingBase";
  case ErrorCode::kNoOverlap: return "NoOverlap";
  case ErrorCode::kInsufficientPoints: return "InsufficientPoints";
  case ErrorCode::kDivisionByZero: return "DivisionByZero";
  case ErrorCode::kDegenerateBounds: return "DegenerateBounds";
  case ErrorCode::kMalformedPly: return "MalformedPly";
  case ErrorCode::kIo: return "Io";
  }
  return "Unknown";
}

}  // namespace lsrn
