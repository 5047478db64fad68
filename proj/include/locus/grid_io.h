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

#ifndef LOCUS_GRID_IO_H_
#define LOCUS_GRID_IO_H_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "locus/grid.h"
#include "locus/sdf.h"

namespace locus {

// Grid container: a text header of "key value" lines terminated by a blank
// line, followed by width*height little-endian float32 values in row-major
// order.
//
//   locus-grid 1
//   id <token>                 (optional)
//   pose <x> <y> <theta>       (optional)
//   width <int>
//   height <int>
//   resolution <m/cell>
//   origin <x> <y> <theta>
//   encoding float32 | float32-sdf
//
// Occupancy payloads encode unknown cells as -1.0. SDF payloads are followed
// by a validity bitmask of ceil(width*height/8) bytes, least significant bit
// first.
std::string SerializeGrid(const Submap& submap);
Submap ParseGrid(std::string_view bytes);

void SaveGrid(const Submap& submap, const std::string& path);
Submap LoadGrid(const std::string& path);

std::string SerializeSdf(const SdfGrid& sdf);
SdfGrid ParseSdf(std::string_view bytes);
void SaveSdf(const SdfGrid& sdf, const std::string& path);
SdfGrid LoadSdf(const std::string& path);

inline constexpr int kDefaultUnknownByte = 205;

// Imports an 8-bit binary PGM with a sidecar header carrying the same keys as
// the container (encoding pgm8, optional "unknown_byte <0-255>"). Byte 255
// maps to occupancy 1.0 and 0 to 0.0, linearly in between; the sentinel byte
// maps to unknown. An explicit unknown_byte overrides the sidecar. PGM rows
// run top to bottom, so the first PGM row becomes grid row height-1.
Submap ImportPgm(const std::string& pgm_path, const std::string& header_path,
                 std::optional<int> unknown_byte = std::nullopt);

// Writes an 8-bit binary PGM. pixels are row-major, top row first.
void WritePgm(const std::string& path, int width, int height,
              const std::vector<std::uint8_t>& pixels);

// Debug rendering: observed distances mapped linearly onto [0, 255] over the
// observed range, unknown cells mid-gray (128).
std::vector<std::uint8_t> SdfToPixels(const SdfGrid& sdf);
void ExportSdfPgm(const SdfGrid& sdf, const std::string& path);

std::string ReadFile(const std::string& path);
void WriteFile(const std::string& path, std::string_view bytes);

// Shortest decimal representation that parses back to the same double.
std::string FormatDouble(double value);

}  // namespace locus

#endif  // LOCUS_GRID_IO_H_
