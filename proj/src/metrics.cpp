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

#include "lsrn/metrics.h"

#include "lsrn/error.h"
#include "point_set.h"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <unordered_map>

namespace lsrn {

//============================================================================

namespace {

  constexpr int kCellShift = 2;
  constexpr int64_t kCellSize = int64_t(1) << kCellShift;

  // Target points bucketed into cubic cells of kCellSize voxels.
  class CellGrid {
  public:
    explicit CellGrid(const std::vector<Point3>& points)
    {
      _points = points;
      std::sort(_points.begin(), _points.end(), [](auto& a, auto& b) {
        return cellKey(a) < cellKey(b);
      });
      _cells.reserve(_points.size());
      for (uint32_t i = 0; i < _points.size();) {
        uint64_t key = cellKey(_points[i]);
        uint32_t j = i;
        while (j < _points.size() && cellKey(_points[j]) == key)
          j++;
        _cells.emplace(key, std::make_pair(i, j));
        i = j;
      }
    }

    template<typename Fn>
    void forCell(int64_t cx, int64_t cy, int64_t cz, Fn&& fn) const
    {
      constexpr int64_t kLimit = int64_t(1) << (kMaxCoordBits - kCellShift);
      if (cx < 0 || cy < 0 || cz < 0 || cx >= kLimit || cy >= kLimit
          || cz >= kLimit)
        return;
      auto it = _cells.find((uint64_t(cx) << 42) | (uint64_t(cy) << 21) | uint64_t(cz));
      if (it == _cells.end())
        return;
      for (uint32_t i = it->second.first; i < it->second.second; i++)
        fn(_points[i]);
    }

    const std::vector<Point3>& points() const { return _points; }

  private:
    static uint64_t cellKey(const Point3& p)
    {
      return packPoint({p.x >> kCellShift, p.y >> kCellShift, p.z >> kCellShift});
    }

    std::vector<Point3> _points;
    std::unordered_map<uint64_t, std::pair<uint32_t, uint32_t>> _cells;
  };

  uint64_t nearest(const CellGrid& grid, const Point3& q)
  {
    const int64_t cx = q.x >> kCellShift;
    const int64_t cy = q.y >> kCellShift;
    const int64_t cz = q.z >> kCellShift;
    uint64_t best = std::numeric_limits<uint64_t>::max();

    auto visit = [&](const Point3& p) {
      int64_t dx = int64_t(p.x) - q.x;
      int64_t dy = int64_t(p.y) - q.y;
      int64_t dz = int64_t(p.z) - q.z;
      best = std::min(best, uint64_t(dx * dx + dy * dy + dz * dz));
    };

    constexpr int64_t kMaxShell = int64_t(1) << (kMaxCoordBits - kCellShift);
    for (int64_t r = 0; r <= kMaxShell; r++) {
      // a shell costs about 24 r^2 probes; past the point count a scan wins
      if (24 * r * r > int64_t(grid.points().size())) {
        for (const auto& p : grid.points())
          visit(p);
        break;
      }
      for (int64_t dx = -r; dx <= r; dx++) {
        for (int64_t dy = -r; dy <= r; dy++) {
          bool onFace = std::abs(dx) == r || std::abs(dy) == r;
          int64_t step = onFace ? 1 : 2 * r;
          for (int64_t dz = -r; dz <= r; dz += step) {
            grid.forCell(cx + dx, cy + dy, cz + dz, visit);
          }
        }
      }
      // anything in shell r + 1 is at least r * cell + 1 away on some axis
      int64_t bound = r * kCellSize + 1;
      if (best <= uint64_t(bound * bound))
        break;
    }
    return best;
  }

  double meanOf(const std::vector<uint64_t>& values)
  {
    unsigned __int128 sum = 0;
    for (uint64_t v : values)
      sum += v;
    return double(sum) / double(values.size());
  }

  // Least-squares cubic of log(rate) in a normalised psnr variable
  // t = (psnr - centre) / scale.
  struct CubicFit {
    double centre, scale;
    Eigen::Vector4d coeffs;

    // Integral of the fit over psnr in [lo, hi].
    double integrate(double lo, double hi) const
    {
      auto antiderivative = [&](double psnr) {
        double t = (psnr - centre) / scale;
        double acc = 0;
        for (int i = 3; i >= 0; i--)
          acc = acc * t + coeffs[i] / (i + 1);
        return acc * t;
      };
      return scale * (antiderivative(hi) - antiderivative(lo));
    }
  };

  CubicFit fitCurve(const RdCurve& curve)
  {
    double lo = curve.front().psnr, hi = lo;
    for (const auto& p : curve) {
      lo = std::min(lo, p.psnr);
      hi = std::max(hi, p.psnr);
    }
    CubicFit fit;
    fit.centre = 0.5 * (lo + hi);
    fit.scale = hi > lo ? 0.5 * (hi - lo) : 1.0;

    Eigen::MatrixXd a(curve.size(), 4);
    Eigen::VectorXd b(curve.size());
    for (size_t i = 0; i < curve.size(); i++) {
      double t = (curve[i].psnr - fit.centre) / fit.scale;
      a(i, 0) = 1;
      a(i, 1) = t;
      a(i, 2) = t * t;
      a(i, 3) = t * t * t;
      b(i) = std::log(curve[i].rate);
    }
    fit.coeffs = a.colPivHouseholderQr().solve(b);
    return fit;
  }

  RdCurve usablePoints(const RdCurve& curve, const char* which)
  {
    RdCurve out;
    for (const auto& p : curve) {
      if (p.psnr >= kLosslessPsnr)
        continue;
      if (!(p.rate > 0) || !std::isfinite(p.psnr))
        throw Error(
          ErrorCode::kInvalidConfig,
          std::string(which) + " curve has a non-positive rate or bad PSNR");
      out.push_back(p);
    }
    if (out.size() < 4)
      throw Error(
        ErrorCode::kInsufficientPoints,
        std::string(which) + " curve needs at least 4 lossy rate points");
    return out;
  }

}  // namespace

//============================================================================

std::vector<uint64_t>
nearestSquaredDistances(const VoxelCloud& query, const VoxelCloud& target)
{
  if (query.empty() || target.empty())
    throw Error(ErrorCode::kEmptyCloud, "distance between empty clouds");

  const detail::PointHashSet exact(target.points());
  const CellGrid grid(target.points());

  std::vector<uint64_t> out;
  out.reserve(query.size());
  for (const auto& q : query.points()) {
    if (exact.contains(q.x, q.y, q.z))
      out.push_back(0);
    else
      out.push_back(nearest(grid, q));
  }
  return out;
}

//----------------------------------------------------------------------------

D1Error
d1Error(const VoxelCloud& reference, const VoxelCloud& reconstructed)
{
  D1Error e;
  e.mseAB = meanOf(nearestSquaredDistances(reference, reconstructed));
  e.mseBA = meanOf(nearestSquaredDistances(reconstructed, reference));
  return e;
}

//----------------------------------------------------------------------------

double
d1Psnr(
  const VoxelCloud& reference, const VoxelCloud& reconstructed, uint32_t peak)
{
  double mse = d1Error(reference, reconstructed).mse();
  if (mse == 0)
    return kLosslessPsnr;
  double p = double(peak);
  return 10.0 * std::log10(3.0 * p * p / mse);
}

//----------------------------------------------------------------------------

double
bitsPerPoint(uint64_t streamBytes, uint64_t originalCount)
{
  if (!originalCount)
    throw Error(ErrorCode::kDivisionByZero, "bits per point of zero points");
  return 8.0 * double(streamBytes) / double(originalCount);
}

//----------------------------------------------------------------------------

double
bdRate(const RdCurve& anchor, const RdCurve& test)
{
  RdCurve a = usablePoints(anchor, "anchor");
  RdCurve t = usablePoints(test, "test");

  auto range = [](const RdCurve& c) {
    auto [lo, hi] = std::minmax_element(
      c.begin(), c.end(), [](auto& x, auto& y) { return x.psnr < y.psnr; });
    return std::make_pair(lo->psnr, hi->psnr);
  };
  auto [aLo, aHi] = range(a);
  auto [tLo, tHi] = range(t);
  double lo = std::max(aLo, tLo);
  double hi = std::min(aHi, tHi);
  if (!(hi > lo))
    throw Error(ErrorCode::kNoOverlap, "RD curves share no PSNR interval");

  double diff =
    (fitCurve(t).integrate(lo, hi) - fitCurve(a).integrate(lo, hi)) / (hi - lo);
  return (std::exp(diff) - 1.0) * 100.0;
}

//============================================================================

void
writeRdCsv(std::ostream& os, const std::vector<RdRow>& rows)
{
  os << "label,K,bpp,d1_psnr\n";
  char buf[128];
  for (const auto& r : rows) {
    std::snprintf(buf, sizeof buf, "%d,%.6f,%.4f", r.k, r.bpp, r.psnr);
    os << r.label << ',' << buf << '\n';
  }
}

//----------------------------------------------------------------------------

std::vector<RdRow>
readRdCsv(std::istream& is)
{
  std::string line;
  if (!std::getline(is, line))
    throw Error(ErrorCode::kIo, "empty RD curve file");
  if (!line.empty() && line.back() == '\r')
    line.pop_back();
  if (line != "label,K,bpp,d1_psnr")
    throw Error(ErrorCode::kIo, "RD curve header must be label,K,bpp,d1_psnr");

  std::vector<RdRow> rows;
  int lineNo = 1;
  while (std::getline(is, line)) {
    lineNo++;
    if (!line.empty() && line.back() == '\r')
      line.pop_back();
    if (line.empty())
      continue;

    std::vector<std::string> fields;
    std::stringstream ss(line);
    std::string f;
    while (std::getline(ss, f, ','))
      fields.push_back(f);
    if (fields.size() != 4)
      throw Error(
        ErrorCode::kIo, "line " + std::to_string(lineNo) + ": expected 4 fields");

    try {
      RdRow r;
      r.label = fields[0];
      r.k = std::stoi(fields[1]);
      r.bpp = std::stod(fields[2]);
      r.psnr = std::stod(fields[3]);
      rows.push_back(r);
    } catch (const std::logic_error&) {
      throw Error(
        ErrorCode::kIo, "line " + std::to_string(lineNo) + ": bad number");
    }
  }
  return rows;
}

//----------------------------------------------------------------------------

RdCurve
toCurve(const std::vector<RdRow>& rows)
{
  RdCurve c;
  for (const auto& r : rows)
    c.push_back({r.bpp, r.psnr});
  std::sort(c.begin(), c.end(), [](auto& a, auto& b) { return a.rate < b.rate; });
  return c;
}

//============================================================================

}  // namespace lsrn
