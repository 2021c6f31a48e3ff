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

#include "lsrn/ply_io.h"

#include "lsrn/error.h"

#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace lsrn {

//============================================================================

namespace {

  enum class ScalarType { kInt8, kUInt8, kInt16, kUInt16, kInt32, kUInt32, kFloat32, kFloat64 };

  struct Property {
    std::string name;
    ScalarType type = ScalarType::kFloat32;
    bool isList = false;
    ScalarType countType = ScalarType::kUInt8;
  };

  struct Element {
    std::string name;
    size_t count = 0;
    std::vector<Property> properties;
  };

  ScalarType parseType(const std::string& t)
  {
    if (t == "char" || t == "int8") return ScalarType::kInt8;
    if (t == "uchar" || t == "uint8") return ScalarType::kUInt8;
    if (t == "short" || t == "int16") return ScalarType::kInt16;
    if (t == "ushort" || t == "uint16") return ScalarType::kUInt16;
    if (t == "int" || t == "int32") return ScalarType::kInt32;
    if (t == "uint" || t == "uint32") return ScalarType::kUInt32;
    if (t == "float" || t == "float32") return ScalarType::kFloat32;
    if (t == "double" || t == "float64") return ScalarType::kFloat64;
    throw Error(ErrorCode::kMalformedPly, "unknown property type '" + t + "'");
  }

  size_t sizeOf(ScalarType t)
  {
    switch (t) {
    case ScalarType::kInt8:
    case ScalarType::kUInt8: return 1;
    case ScalarType::kInt16:
    case ScalarType::kUInt16: return 2;
    case ScalarType::kInt32:
    case ScalarType::kUInt32:
    case ScalarType::kFloat32: return 4;
    case ScalarType::kFloat64: return 8;
    }
    return 0;
  }

  bool isInteger(ScalarType t)
  {
    return t != ScalarType::kFloat32 && t != ScalarType::kFloat64;
  }

  double readBinary(std::istream& is, ScalarType t)
  {
    unsigned char buf[8];
    size_t n = sizeOf(t);
    if (!is.read(reinterpret_cast<char*>(buf), std::streamsize(n)))
      throw Error(ErrorCode::kMalformedPly, "unexpected end of binary data");

    uint64_t raw = 0;
    for (size_t i = 0; i < n; i++)
      raw |= uint64_t(buf[i]) << (8 * i);

    switch (t) {
    case ScalarType::kInt8: return double(int8_t(raw));
    case ScalarType::kUInt8: return double(uint8_t(raw));
    case ScalarType::kInt16: return double(int16_t(raw));
    case ScalarType::kUInt16: return double(uint16_t(raw));
    case ScalarType::kInt32: return double(int32_t(raw));
    case ScalarType::kUInt32: return double(uint32_t(raw));
    case ScalarType::kFloat32: return double(std::bit_cast<float>(uint32_t(raw)));
    case ScalarType::kFloat64: return std::bit_cast<double>(raw);
    }
    return 0;
  }

  double readAscii(std::istream& is)
  {
    std::string token;
    if (!(is >> token))
      throw Error(ErrorCode::kMalformedPly, "unexpected end of ascii data");
    char* end = nullptr;
    double v = std::strtod(token.c_str(), &end);
    if (end == token.c_str() || *end != '\0')
      throw Error(ErrorCode::kMalformedPly, "bad number '" + token + "'");
    return v;
  }

  void put32(std::ostream& os, uint32_t v)
  {
    char buf[4];
    for (int i = 0; i < 4; i++)
      buf[i] = char(v >> (8 * i));
    os.write(buf, 4);
  }

}  // namespace

//============================================================================

PlyDocument
readPly(std::istream& is)
{
  std::string line;
  std::getline(is, line);
  if (line.rfind("ply", 0) != 0)
    throw Error(ErrorCode::kMalformedPly, "missing 'ply' signature");

  bool binary = false;
  bool sawFormat = false;
  std::vector<Element> elements;
  for (;;) {
    if (!std::getline(is, line))
      throw Error(ErrorCode::kMalformedPly, "header not terminated");
    if (!line.empty() && line.back() == '\r')
      line.pop_back();

    std::istringstream ls(line);
    std::string keyword;
    ls >> keyword;
    if (keyword == "end_header")
      break;
    if (keyword.empty() || keyword == "comment" || keyword == "obj_info")
      continue;

    if (keyword == "format") {
      std::string fmt;
      ls >> fmt;
      if (fmt == "ascii")
        binary = false;
      else if (fmt == "binary_little_endian")
        binary = true;
      else
        throw Error(ErrorCode::kMalformedPly, "unsupported format '" + fmt + "'");
      sawFormat = true;
    } else if (keyword == "element") {
      Element e;
      long long count = -1;
      ls >> e.name >> count;
      if (!ls || count < 0)
        throw Error(ErrorCode::kMalformedPly, "bad element line '" + line + "'");
      e.count = size_t(count);
      elements.push_back(std::move(e));
    } else if (keyword == "property") {
      if (elements.empty())
        throw Error(ErrorCode::kMalformedPly, "property before any element");
      Property p;
      std::string type;
      ls >> type;
      if (type == "list") {
        std::string countType, itemType;
        ls >> countType >> itemType;
        p.isList = true;
        p.countType = parseType(countType);
        p.type = parseType(itemType);
      } else {
        p.type = parseType(type);
      }
      ls >> p.name;
      if (!ls)
        throw Error(ErrorCode::kMalformedPly, "bad property line '" + line + "'");
      elements.back().properties.push_back(p);
    } else {
      throw Error(ErrorCode::kMalformedPly, "unknown header line '" + line + "'");
    }
  }
  if (!sawFormat)
    throw Error(ErrorCode::kMalformedPly, "missing format line");

  PlyDocument doc;
  for (const auto& e : elements) {
    const bool isVertex = e.name == "vertex";
    int axis[3] = {-1, -1, -1};
    if (isVertex) {
      for (size_t i = 0; i < e.properties.size(); i++) {
        const auto& p = e.properties[i];
        int a = p.name == "x" ? 0 : p.name == "y" ? 1 : p.name == "z" ? 2 : -1;
        if (a >= 0 && !p.isList)
          axis[a] = int(i);
      }
      if (axis[0] < 0 || axis[1] < 0 || axis[2] < 0)
        throw Error(ErrorCode::kMalformedPly, "vertex element lacks x, y or z");
      doc.integerTyped = isInteger(e.properties[axis[0]].type)
        && isInteger(e.properties[axis[1]].type)
        && isInteger(e.properties[axis[2]].type);
      doc.vertices.reserve(e.count);
    }

    std::vector<double> values(e.properties.size());
    for (size_t row = 0; row < e.count; row++) {
      for (size_t i = 0; i < e.properties.size(); i++) {
        const auto& p = e.properties[i];
        if (p.isList) {
          double n = binary ? readBinary(is, p.countType) : readAscii(is);
          if (n < 0 || n != std::floor(n))
            throw Error(ErrorCode::kMalformedPly, "bad list length");
          for (size_t k = 0; k < size_t(n); k++)
            binary ? readBinary(is, p.type) : readAscii(is);
          values[i] = 0;
        } else {
          values[i] = binary ? readBinary(is, p.type) : readAscii(is);
        }
      }
      if (isVertex)
        doc.vertices.push_back(
          {values[axis[0]], values[axis[1]], values[axis[2]]});
    }
    if (isVertex)
      break;
  }

  for (const auto& v : doc.vertices)
    for (double c : v)
      if (!std::isfinite(c))
        throw Error(ErrorCode::kMalformedPly, "non-finite vertex coordinate");

  return doc;
}

//----------------------------------------------------------------------------

PlyDocument
readPlyFile(const std::string& path)
{
  std::ifstream is(path, std::ios::binary);
  if (!is)
    throw Error(ErrorCode::kIo, "cannot open '" + path + "'");
  try {
    return readPly(is);
  } catch (const Error& e) {
    throw Error(e.code(), path + ": " + e.what());
  }
}

//----------------------------------------------------------------------------

void
writePly(std::ostream& os, const PlyDocument& doc, PlyFormat format, bool asInteger)
{
  const char* type = asInteger ? "int" : "float";
  os << "ply\n"
     << (format == PlyFormat::kAscii ? "format ascii 1.0\n"
                                     : "format binary_little_endian 1.0\n")
     << "element vertex " << doc.vertices.size() << "\n"
     << "property " << type << " x\n"
     << "property " << type << " y\n"
     << "property " << type << " z\n"
     << "end_header\n";

  if (format == PlyFormat::kAscii) {
    char buf[96];
    for (const auto& v : doc.vertices) {
      if (asInteger)
        std::snprintf(
          buf, sizeof buf, "%d %d %d\n", int32_t(v[0]), int32_t(v[1]),
          int32_t(v[2]));
      else
        std::snprintf(
          buf, sizeof buf, "%.9g %.9g %.9g\n", double(float(v[0])),
          double(float(v[1])), double(float(v[2])));
      os << buf;
    }
  } else {
    for (const auto& v : doc.vertices)
      for (double c : v)
        put32(
          os, asInteger ? uint32_t(int32_t(c)) : std::bit_cast<uint32_t>(float(c)));
  }
}

//----------------------------------------------------------------------------

PlyDocument
toPlyDocument(const VoxelCloud& cloud)
{
  PlyDocument doc;
  doc.integerTyped = true;
  doc.vertices.reserve(cloud.size());
  for (const auto& p : cloud.points())
    doc.vertices.push_back({double(p.x), double(p.y), double(p.z)});
  return doc;
}

//----------------------------------------------------------------------------

void
writeCloudPly(const std::string& path, const VoxelCloud& cloud)
{
  std::ofstream os(path, std::ios::binary);
  if (!os)
    throw Error(ErrorCode::kIo, "cannot create '" + path + "'");
  writePly(os, toPlyDocument(cloud), PlyFormat::kBinaryLittleEndian);
  if (!os)
    throw Error(ErrorCode::kIo, "write to '" + path + "' failed");
}

//============================================================================

}  // namespace lsrn
