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

#include "locus/feature_io.h"

#include <cmath>

#include "locus/config.h"
#include "locus/errors.h"
#include "locus/grid_io.h"

namespace locus {
namespace {

struct Row {
  std::size_t offset;
  std::vector<std::string> fields;
};

// Splits CSV text without quoting; the first row is the header.
std::vector<Row> SplitRows(std::string_view text) {
  std::vector<Row> rows;
  std::size_t start = 0;
  while (start < text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (!line.empty()) {
      Row row{start, {}};
      std::size_t field_start = 0;
      while (true) {
        const std::size_t comma = line.find(',', field_start);
        row.fields.push_back(Trim(line.substr(
            field_start, comma == std::string_view::npos ? std::string_view::npos
                                                         : comma - field_start)));
        if (comma == std::string_view::npos) break;
        field_start = comma + 1;
      }
      rows.push_back(std::move(row));
    }
    start = end + 1;
  }
  return rows;
}

double FieldDouble(const Row& row, std::size_t index) {
  try {
    const double v = ParseDouble(row.fields.at(index));
    if (!std::isfinite(v)) throw ConfigError("non-finite");
    return v;
  } catch (const ConfigError&) {
    throw ParseError(ParseError::Kind::kValueOutOfRange, row.offset,
                     "field " + std::to_string(index) + " is not a finite number");
  }
}

KeypointClass FieldClass(const Row& row, std::size_t index) {
  const auto cls = ParseKeypointClass(row.fields.at(index));
  if (!cls) {
    throw ParseError(ParseError::Kind::kValueOutOfRange, row.offset,
                     "unknown keypoint class '" + row.fields.at(index) + "'");
  }
  return *cls;
}

void ExpectColumns(const Row& row, std::size_t n) {
  if (row.fields.size() != n) {
    throw ParseError(ParseError::Kind::kMalformedRecord, row.offset,
                     "expected " + std::to_string(n) + " columns, found " +
                         std::to_string(row.fields.size()));
  }
}

std::string Join(const std::vector<std::string>& fields) {
  std::string out;
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i > 0) out += ',';
    out += fields[i];
  }
  return out + "\n";
}

constexpr std::string_view kKeypointHeader = "x_m,y_m,class,response,sdf_value";

}  // namespace

std::string KeypointsToCsv(std::span<const Keypoint> keypoints) {
  std::string out = std::string(kKeypointHeader) + "\n";
  for (const Keypoint& k : keypoints) {
    out += Join({FormatDouble(k.position.x), FormatDouble(k.position.y),
                 std::string(ToString(k.cls)), FormatDouble(k.response),
                 FormatDouble(k.sdf_value)});
  }
  return out;
}

std::vector<Keypoint> ParseKeypointsCsv(std::string_view text, const GridGeometry& geometry) {
  const std::vector<Row> rows = SplitRows(text);
  if (rows.empty() || Join(rows[0].fields) != std::string(kKeypointHeader) + "\n") {
    throw ParseError(ParseError::Kind::kMalformedHeader, 0,
                     "keypoint CSV must start with '" + std::string(kKeypointHeader) + "'");
  }
  std::vector<Keypoint> keypoints;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const Row& row = rows[i];
    ExpectColumns(row, 5);
    Keypoint k;
    k.position = {FieldDouble(row, 0), FieldDouble(row, 1)};
    k.grid = geometry.MetricToGrid(k.position);
    k.cls = FieldClass(row, 2);
    k.response = FieldDouble(row, 3);
    k.sdf_value = FieldDouble(row, 4);
    keypoints.push_back(k);
  }
  return keypoints;
}

std::string DescriptorsToCsv(std::span<const Descriptor> descriptors,
                             std::span<const int> indices) {
  const std::size_t n_bins = descriptors.empty() ? 0 : descriptors[0].histogram.size();
  std::vector<std::string> header = {"index", "class", "dominant_orientation"};
  for (std::size_t b = 0; b < n_bins; ++b) header.push_back("bin_" + std::to_string(b));
  header.push_back("distance_term");
  std::string out = Join(header);
  for (std::size_t i = 0; i < descriptors.size(); ++i) {
    const Descriptor& d = descriptors[i];
    std::vector<std::string> fields = {
        std::to_string(indices.empty() ? static_cast<int>(i) : indices[i]),
        std::string(ToString(d.cls)),
        FormatDouble(d.dominant_orientation)};
    for (double v : d.histogram) fields.push_back(FormatDouble(v));
    fields.push_back(FormatDouble(d.distance_term));
    out += Join(fields);
  }
  return out;
}

std::vector<Descriptor> ParseDescriptorsCsv(std::string_view text) {
  const std::vector<Row> rows = SplitRows(text);
  if (rows.empty() || rows[0].fields.size() < 4 || rows[0].fields[0] != "index" ||
      rows[0].fields[1] != "class" || rows[0].fields[2] != "dominant_orientation" ||
      rows[0].fields.back() != "distance_term") {
    throw ParseError(ParseError::Kind::kMalformedHeader, 0, "malformed descriptor CSV header");
  }
  const std::size_t columns = rows[0].fields.size();
  std::vector<Descriptor> descriptors;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const Row& row = rows[i];
    ExpectColumns(row, columns);
    Descriptor d;
    d.cls = FieldClass(row, 1);
    d.dominant_orientation = FieldDouble(row, 2);
    for (std::size_t b = 3; b + 1 < columns; ++b) d.histogram.push_back(FieldDouble(row, b));
    d.distance_term = FieldDouble(row, columns - 1);
    descriptors.push_back(std::move(d));
  }
  return descriptors;
}

std::string MatchResultToCsv(const MatchResult& result) {
  return "accepted,tx,ty,theta,n_inliers,n_correspondences\n" +
         Join({result.accepted ? "1" : "0", FormatDouble(result.transform.x()),
               FormatDouble(result.transform.y()), FormatDouble(result.transform.theta()),
               std::to_string(result.inliers.size()),
               std::to_string(result.total_correspondences)});
}

std::string InliersToCsv(const MatchResult& result, std::span<const Keypoint> a,
                         std::span<const Keypoint> b) {
  std::string out = "index_a,index_b,xa,ya,xb,yb,xb_in_a,yb_in_a,ratio\n";
  for (const Correspondence& c : result.inliers) {
    const Vec2 pa = a[c.index_a].position;
    const Vec2 pb = b[c.index_b].position;
    const Vec2 mapped = result.transform * pb;
    out += Join({std::to_string(c.index_a), std::to_string(c.index_b), FormatDouble(pa.x),
                 FormatDouble(pa.y), FormatDouble(pb.x), FormatDouble(pb.y),
                 FormatDouble(mapped.x), FormatDouble(mapped.y), FormatDouble(c.ratio)});
  }
  return out;
}

std::string CurveToCsv(const PrCurve& curve) {
  std::string out = "min_inliers,tp,fp,fn,precision,recall\n";
  for (const PrPoint& p : curve.points) {
    out += Join({std::to_string(p.min_inliers), std::to_string(p.tp), std::to_string(p.fp),
                 std::to_string(p.fn), FormatDouble(p.precision), FormatDouble(p.recall)});
  }
  return out;
}

std::string PairOutcomesToCsv(std::span<const Submap> submaps,
                              std::span<const LabeledPair> pairs,
                              std::span<const PairOutcome> outcomes) {
  std::string out =
      "id_a,id_b,rotation,overlap,is_match,n_inliers,n_correspondences,transform_ok,"
      "tx,ty,theta,error\n";
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    const LabeledPair& p = pairs[k];
    const PairOutcome& o = outcomes[k];
    std::string error = o.error;
    for (char& ch : error) {
      if (ch == ',' || ch == '\n') ch = ' ';
    }
    out += Join({submaps[p.index_a].id, submaps[p.index_b].id, FormatDouble(p.rotation),
                 FormatDouble(p.overlap), p.is_match ? "1" : "0", std::to_string(o.n_inliers),
                 std::to_string(o.n_correspondences), o.transform_ok ? "1" : "0",
                 FormatDouble(o.estimate.x()), FormatDouble(o.estimate.y()),
                 FormatDouble(o.estimate.theta()), error});
  }
  return out;
}

}  // namespace locus
