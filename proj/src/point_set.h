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
#include <vector>

namespace lsrn {
namespace detail {

//============================================================================
// Open-addressing set of packed coordinates (see packPoint).  Keys accept
// signed probes so that out-of-grid neighbours simply miss.

class PointHashSet {
public:
  explicit PointHashSet(const std::vector<Point3>& points)
  {
    size_t capacity = 16;
    while (capacity < points.size() * 2)
      capacity <<= 1;
    _mask = capacity - 1;
    _slots.assign(capacity, kEmpty);
    for (const auto& p : points)
      insert(packPoint(p));
  }

  bool contains(int64_t x, int64_t y, int64_t z) const
  {
    constexpr int64_t kLimit = int64_t(1) << kMaxCoordBits;
    if (x < 0 || y < 0 || z < 0 || x >= kLimit || y >= kLimit || z >= kLimit)
      return false;
    uint64_t key = (uint64_t(x) << 42) | (uint64_t(y) << 21) | uint64_t(z);
    for (size_t i = hash(key);; i = (i + 1) & _mask) {
      if (_slots[i] == key)
        return true;
      if (_slots[i] == kEmpty)
        return false;
    }
  }

private:
  static constexpr uint64_t kEmpty = ~uint64_t(0);

  size_t hash(uint64_t key) const
  {
    key ^= key >> 33;
    key *= 0xff51afd7ed558ccdull;
    key ^= key >> 33;
    return size_t(key) & _mask;
  }

  void insert(uint64_t key)
  {
    for (size_t i = hash(key);; i = (i + 1) & _mask) {
      if (_slots[i] == key)
        return;
      if (_slots[i] == kEmpty) {
        _slots[i] = key;
        return;
      }
    }
  }

  std::vector<uint64_t> _slots;
  size_t _mask = 0;
};

//============================================================================

}  // namespace detail
}  // namespace lsrn
