/*
 * Copyright 2026 The Locus Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "locus/grid_io.h"

#include <algorithm>
#include <bit>
#include <charconv>
#include <cmath>
#include <cstring>
#include <fstream>
#include <map>
#include <sstream>

#include "locus/errors.h"

namespace locus {

ParseError::ParseError(Kind kind, std::size_t byte_offset,
                       const std::string& detail)
    : Error(detail + " (at byte " + std::to_string(byte_offset) + ")"),
      kind_(kind),
      byte_offset_(byte_offset) {}

namespace {

constexpr std::string_view kMagic = "locus-grid 1";
constexpr std::string_view kOccupancyEncoding = "float32";
constexpr std::string_view kSdfEncoding = "float32-sdf";
constexpr std::string_view kPgmEncoding = "pgm8";

static_assert(std::endian::native == std::endian::little ||
                  std::endian::native == std::endian::big,
              "mixed-endian platforms are not supported");

void AppendFloat32(std::string& out, float value) {
  std::uint32_t bits;
  std::memcpy(&bits, &value, sizeof(bits));
  for (int i = 0; i < 4; ++i) {
    out.push_back(static_cast<char>((bits >> (8 * i)) & 0xff));
  }
}

float ReadFloat32(std::string_view bytes, std::size_t offset) {
  std::uint32_t bits = 0;
  for (int i = 0; i < 4; ++i) {
    bits |= static_cast<std::uint32_t>(
                static_cast<unsigned char>(bytes[offset + i]))
            << (8 * i);
  }
  float value;
  std::memcpy(&value, &bits, sizeof(value));
  return value;
}

struct HeaderLine {
  std::vector<std::string_view> tokens;
  std::size_t offset;
};

struct Header {
  std::map<std::string, HeaderLine, std::less<>> entries;
  std::size_t payload_offset = 0;
};

std::vector<std::string_view> Tokenize(std::string_view line) {
  std::vector<std::string_view> tokens;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    const std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t') ++i;
    if (i > start) tokens.push_back(line.substr(start, i - start));
  }
  return tokens;
}

[[noreturn]] void HeaderError(std::size_t offset, const std::string& detail) {
  throw ParseError(ParseError::Kind::kMalformedHeader, offset,
                   "malformed header: " + detail);
}

// Reads lines up to the blank terminator (or end of input when
// require_terminator is false).
Header ParseHeader(std::string_view bytes, bool require_terminator) {
  Header header;
  std::size_t pos = 0;
  bool first = true;
  while (true) {
    const std::size_t end = bytes.find('\n', pos);
    if (end == std::string_view::npos) {
      if (require_terminator) HeaderError(pos, "missing blank line terminator");
      if (pos < bytes.size()) {
        HeaderError(pos, "unterminated header line");
      }
      header.payload_offset = bytes.size();
      break;
    }
    std::string_view line = bytes.substr(pos, end - pos);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    const std::size_t line_offset = pos;
    pos = end + 1;
    if (line.empty()) {
      if (first) HeaderError(line_offset, "missing magic line");
      header.payload_offset = pos;
      break;
    }
    if (first) {
      if (line != kMagic) HeaderError(line_offset, "expected 'locus-grid 1'");
      first = false;
      continue;
    }
    auto tokens = Tokenize(line);
    if (tokens.empty()) HeaderError(line_offset, "blank key");
    std::string key(tokens.front());
    tokens.erase(tokens.begin());
    if (header.entries.count(key)) HeaderError(line_offset, "duplicate key " + key);
    header.entries.emplace(std::move(key), HeaderLine{std::move(tokens), line_offset});
  }
  return header;
}

const HeaderLine& Require(const Header& header, std::string_view key,
                          std::size_t arity) {
  const auto it = header.entries.find(key);
  if (it == header.entries.end()) {
    HeaderError(header.payload_offset, "missing key " + std::string(key));
  }
  if (it->second.tokens.size() != arity) {
    HeaderError(it->second.offset, "wrong arity for " + std::string(key));
  }
  return it->second;
}

double ParseDoubleToken(std::string_view token, std::size_t offset) {
  double value = 0.0;
  const auto [ptr, ec] =
      std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc() || ptr != token.data() + token.size() ||
      !std::isfinite(value)) {
    HeaderError(offset, "bad number '" + std::string(token) + "'");
  }
  return value;
}

int ParseIntToken(std::string_view token, std::size_t offset) {
  int value = 0;
  const auto [ptr, ec] =
      std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc() || ptr != token.data() + token.size()) {
    HeaderError(offset, "bad integer '" + std::string(token) + "'");
  }
  return value;
}

Pose2 ParsePoseLine(const HeaderLine& line) {
  return Pose2(ParseDoubleToken(line.tokens[0], line.offset),
               ParseDoubleToken(line.tokens[1], line.offset),
               ParseDoubleToken(line.tokens[2], line.offset));
}

GridGeometry ParseGeometry(const Header& header) {
  GridGeometry geometry;
  const HeaderLine& width = Require(header, "width", 1);
  const HeaderLine& height = Require(header, "height", 1);
  const HeaderLine& resolution = Require(header, "resolution", 1);
  geometry.width = ParseIntToken(width.tokens[0], width.offset);
  geometry.height = ParseIntToken(height.tokens[0], height.offset);
  geometry.resolution = ParseDoubleToken(resolution.tokens[0], resolution.offset);
  geometry.origin = ParsePoseLine(Require(header, "origin", 3));
  if (geometry.width <= 0) HeaderError(width.offset, "width must be positive");
  if (geometry.height <= 0) HeaderError(height.offset, "height must be positive");
  if (!(geometry.resolution > 0.0)) {
    HeaderError(resolution.offset, "resolution must be positive");
  }
  return geometry;
}

void CheckEncoding(const Header& header, std::string_view expected) {
  const HeaderLine& encoding = Require(header, "encoding", 1);
  if (encoding.tokens[0] != expected) {
    HeaderError(encoding.offset, "expected encoding " + std::string(expected));
  }
}

void CheckKnownKeys(const Header& header,
                    std::initializer_list<std::string_view> known) {
  for (const auto& [key, line] : header.entries) {
    if (std::find(known.begin(), known.end(), key) == known.end()) {
      HeaderError(line.offset, "unknown key " + key);
    }
  }
}

void AppendPose(std::string& out, std::string_view key, const Pose2& pose) {
  out += key;
  out += ' ' + FormatDouble(pose.x()) + ' ' + FormatDouble(pose.y()) + ' ' +
         FormatDouble(pose.theta()) + '\n';
}

void AppendGeometry(std::string& out, const GridGeometry& geometry) {
  out += "width " + std::to_string(geometry.width) + '\n';
  out += "height " + std::to_string(geometry.height) + '\n';
  out += "resolution " + FormatDouble(geometry.resolution) + '\n';
  AppendPose(out, "origin", geometry.origin);
}

void CheckPayloadSize(std::string_view bytes, std::size_t offset,
                      std::size_t expected) {
  if (bytes.size() - offset < expected) {
    throw ParseError(ParseError::Kind::kTruncatedPayload, bytes.size(),
                     "truncated payload: expected " + std::to_string(expected) +
                         " bytes, found " + std::to_string(bytes.size() - offset));
  }
  if (bytes.size() - offset > expected) {
    throw ParseError(ParseError::Kind::kMalformedRecord, offset + expected,
                     "trailing bytes after payload");
  }
}

}  // namespace

std::string FormatDouble(double value) {
  char buffer[64];
  const auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof(buffer), value);
  return std::string(buffer, ptr);
}

std::string ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path + " for reading");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) throw IoError("failed reading " + path);
  return std::move(buffer).str();
}

void WriteFile(const std::string& path, std::string_view bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path + " for writing");
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  out.close();
  if (!out) throw IoError("failed writing " + path);
}

std::string SerializeGrid(const Submap& submap) {
  const OccupancyGrid& grid = submap.grid;
  if (submap.id.find_first_of(" \t\r\n") != std::string::npos) {
    throw std::invalid_argument("submap id must not contain whitespace");
  }
  std::string out(kMagic);
  out += '\n';
  if (!submap.id.empty()) out += "id " + submap.id + '\n';
  AppendPose(out, "pose", submap.pose);
  AppendGeometry(out, grid.geometry());
  out += "encoding ";
  out += kOccupancyEncoding;
  out += "\n\n";
  out.reserve(out.size() + grid.cells().size() * 4);
  for (const float p : grid.cells()) AppendFloat32(out, p);
  return out;
}

Submap ParseGrid(std::string_view bytes) {
  const Header header = ParseHeader(bytes, true);
  CheckKnownKeys(header, {"id", "pose", "width", "height", "resolution",
                          "origin", "encoding"});
  CheckEncoding(header, kOccupancyEncoding);
  const GridGeometry geometry = ParseGeometry(header);
  Submap submap;
  if (const auto it = header.entries.find("id"); it != header.entries.end()) {
    if (it->second.tokens.size() != 1) HeaderError(it->second.offset, "bad id");
    submap.id = std::string(it->second.tokens[0]);
  }
  if (header.entries.count("pose")) {
    submap.pose = ParsePoseLine(Require(header, "pose", 3));
  }
  const std::size_t n = geometry.size();
  CheckPayloadSize(bytes, header.payload_offset, n * 4);
  std::vector<float> cells(n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t offset = header.payload_offset + 4 * i;
    const float p = ReadFloat32(bytes, offset);
    if (p != kUnknownProbability && !(p >= 0.0f && p <= 1.0f)) {
      throw ParseError(ParseError::Kind::kValueOutOfRange, offset,
                       "value out of range: " + FormatDouble(p));
    }
    cells[i] = p;
  }
  submap.grid = OccupancyGrid(geometry, std::move(cells));
  return submap;
}

void SaveGrid(const Submap& submap, const std::string& path) {
  WriteFile(path, SerializeGrid(submap));
}

Submap LoadGrid(const std::string& path) { return ParseGrid(ReadFile(path)); }

std::string SerializeSdf(const SdfGrid& sdf) {
  std::string out(kMagic);
  out += '\n';
  AppendGeometry(out, sdf.geometry);
  out += "encoding ";
  out += kSdfEncoding;
  out += "\n\n";
  for (const double v : sdf.values) AppendFloat32(out, static_cast<float>(v));
  const std::size_t n = sdf.values.size();
  std::string mask((n + 7) / 8, '\0');
  for (std::size_t i = 0; i < n; ++i) {
    if (sdf.valid[i]) mask[i / 8] = static_cast<char>(mask[i / 8] | (1 << (i % 8)));
  }
  out += mask;
  return out;
}

SdfGrid ParseSdf(std::string_view bytes) {
  const Header header = ParseHeader(bytes, true);
  CheckKnownKeys(header, {"id", "pose", "width", "height", "resolution",
                          "origin", "encoding"});
  CheckEncoding(header, kSdfEncoding);
  SdfGrid sdf;
  sdf.geometry = ParseGeometry(header);
  const std::size_t n = sdf.geometry.size();
  const std::size_t mask_bytes = (n + 7) / 8;
  CheckPayloadSize(bytes, header.payload_offset, n * 4 + mask_bytes);
  sdf.values.resize(n);
  sdf.valid.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t offset = header.payload_offset + 4 * i;
    const float v = ReadFloat32(bytes, offset);
    if (!std::isfinite(v)) {
      throw ParseError(ParseError::Kind::kValueOutOfRange, offset,
                       "value out of range: non-finite distance");
    }
    sdf.values[i] = v;
  }
  const std::size_t mask_offset = header.payload_offset + 4 * n;
  for (std::size_t i = 0; i < n; ++i) {
    const auto byte = static_cast<unsigned char>(bytes[mask_offset + i / 8]);
    sdf.valid[i] = (byte >> (i % 8)) & 1;
  }
  return sdf;
}

void SaveSdf(const SdfGrid& sdf, const std::string& path) {
  WriteFile(path, SerializeSdf(sdf));
}

SdfGrid LoadSdf(const std::string& path) { return ParseSdf(ReadFile(path)); }

namespace {

// Reads the next whitespace-delimited PGM header token, skipping comments.
std::string_view NextPgmToken(std::string_view bytes, std::size_t& pos) {
  while (pos < bytes.size()) {
    const char c = bytes[pos];
    if (c == '#') {
      while (pos < bytes.size() && bytes[pos] != '\n') ++pos;
    } else if (c == ' ' || c == '\t' || c == '\n' || c == '\r') {
      ++pos;
    } else {
      break;
    }
  }
  const std::size_t start = pos;
  while (pos < bytes.size() && !std::isspace(static_cast<unsigned char>(bytes[pos]))) {
    ++pos;
  }
  if (start == pos) HeaderError(start, "truncated PGM header");
  return bytes.substr(start, pos - start);
}

}  // namespace

Submap ImportPgm(const std::string& pgm_path, const std::string& header_path,
                 std::optional<int> unknown_byte) {
  const std::string sidecar = ReadFile(header_path);
  const Header header = ParseHeader(sidecar, false);
  CheckKnownKeys(header, {"id", "pose", "width", "height", "resolution",
                          "origin", "encoding", "unknown_byte"});
  CheckEncoding(header, kPgmEncoding);
  const GridGeometry geometry = ParseGeometry(header);
  int sentinel = kDefaultUnknownByte;
  if (const auto it = header.entries.find("unknown_byte");
      it != header.entries.end()) {
    const HeaderLine& line = Require(header, "unknown_byte", 1);
    sentinel = ParseIntToken(line.tokens[0], line.offset);
  }
  if (unknown_byte) sentinel = *unknown_byte;
  if (sentinel < 0 || sentinel > 255) {
    throw std::invalid_argument("unknown_byte must lie in [0, 255]");
  }

  const std::string pgm = ReadFile(pgm_path);
  std::size_t pos = 0;
  if (NextPgmToken(pgm, pos) != "P5") HeaderError(0, "expected binary PGM (P5)");
  const std::size_t dims_offset = pos;
  const int width = ParseIntToken(NextPgmToken(pgm, pos), dims_offset);
  const int height = ParseIntToken(NextPgmToken(pgm, pos), dims_offset);
  const int maxval = ParseIntToken(NextPgmToken(pgm, pos), dims_offset);
  if (width != geometry.width || height != geometry.height) {
    HeaderError(dims_offset, "PGM dimensions disagree with sidecar header");
  }
  if (maxval != 255) HeaderError(dims_offset, "only 8-bit PGM is supported");
  ++pos;  // single whitespace byte before the raster
  CheckPayloadSize(pgm, pos, geometry.size());

  std::vector<float> cells(geometry.size());
  for (int pgm_row = 0; pgm_row < height; ++pgm_row) {
    const int row = height - 1 - pgm_row;
    for (int col = 0; col < width; ++col) {
      const auto byte = static_cast<unsigned char>(
          pgm[pos + static_cast<std::size_t>(pgm_row) * width + col]);
      cells[geometry.Index(col, row)] =
          byte == sentinel ? kUnknownProbability
                           : static_cast<float>(byte) / 255.0f;
    }
  }
  Submap submap;
  if (const auto it = header.entries.find("id"); it != header.entries.end()) {
    if (it->second.tokens.size() != 1) HeaderError(it->second.offset, "bad id");
    submap.id = std::string(it->second.tokens[0]);
  }
  if (header.entries.count("pose")) {
    submap.pose = ParsePoseLine(Require(header, "pose", 3));
  }
  submap.grid = OccupancyGrid(geometry, std::move(cells));
  return submap;
}

void WritePgm(const std::string& path, int width, int height,
              const std::vector<std::uint8_t>& pixels) {
  std::string out = "P5\n" + std::to_string(width) + ' ' +
                    std::to_string(height) + "\n255\n";
  out.append(reinterpret_cast<const char*>(pixels.data()), pixels.size());
  WriteFile(path, out);
}

std::vector<std::uint8_t> SdfToPixels(const SdfGrid& sdf) {
  const GridGeometry& g = sdf.geometry;
  double lo = 0.0, hi = 0.0;
  bool any = false;
  for (std::size_t i = 0; i < sdf.values.size(); ++i) {
    if (!sdf.valid[i]) continue;
    lo = any ? std::min(lo, sdf.values[i]) : sdf.values[i];
    hi = any ? std::max(hi, sdf.values[i]) : sdf.values[i];
    any = true;
  }
  const double span = hi > lo ? hi - lo : 1.0;
  std::vector<std::uint8_t> pixels(g.size(), 128);
  for (int row = 0; row < g.height; ++row) {
    for (int col = 0; col < g.width; ++col) {
      const std::size_t i = g.Index(col, row);
      if (!sdf.valid[i]) continue;
      const double t = (sdf.values[i] - lo) / span;
      pixels[static_cast<std::size_t>(g.height - 1 - row) * g.width + col] =
          static_cast<std::uint8_t>(std::lround(255.0 * t));
    }
  }
  return pixels;
}

void ExportSdfPgm(const SdfGrid& sdf, const std::string& path) {
  WritePgm(path, sdf.geometry.width, sdf.geometry.height, SdfToPixels(sdf));
}

}  // namespace locus
