// Copyright 2026 The Pedscan Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef PEDSCAN_SCAN_HPP_
#define PEDSCAN_SCAN_HPP_

#include <optional>
#include <utility>
#include <vector>

#include "pedscan/geometry.hpp"

namespace pedscan {

struct ScanConfig {
  int lines = 72;              // radial lines per foot; 72 keeps the step at 5 degrees
  int step_left = 4;           // sample spacing on the left foot, pixels
  int compare_threshold = 5;   // intensity delta that flags a point (~1 C at 0.2 C/level)
  int exclude_edge_margin = 1; // samples nearest the edge dropped from comparison

  void validate() const;  // throws ConfigError
};

struct Sample {
  Pixel pixel;
  std::uint8_t intensity = 0;
};

// One radial line: centroid-to-edge raster plus the picked samples.
struct RadialLine {
  int index = 0;
  double angle = 0.0;       // radians from the reference (centroid-to-heel) direction
  Pixel edge_point;
  std::vector<Pixel> raster;
  int length = 0;           // raster pixel count
  double sample_step = 0.0; // spacing used for this line
  std::vector<Sample> samples;
};

struct RadialGrid {
  FootSide side = FootSide::kLeft;
  std::vector<RadialLine> lines;
  ScanConfig config;
};

// 2*pi / lines. Throws ConfigError("angle step exceeds five degrees") when
// lines < 72.
double angle_step(int lines);

// Absolute polar angle of line i: reference direction (centroid to heel)
// plus i * step, normalized to [0, 2*pi). Angles grow counter-clockwise in
// the same shoelace-positive sense the edge is ordered in.
double line_angle(const FootRegion& region, int i, double step);

// Edge point whose polar angle about the centroid is nearest theta. Angular
// ties within 1e-9 take the larger radius, then the smaller edge index.
Pixel edge_intersection(const FootRegion& region, double theta);

// Sample positions along a raster of the given length: round(k * step_px),
// clamped to length - 1, for k = 0..n-1 where n = floor((length-1)/step_px)+1
// unless an explicit count forces n. Duplicates from clamping are kept.
std::vector<int> sample_indices(int length, double step_px, std::optional<int> count);

// Right-foot spacing for one line pair: step_r = step_l * len_r / len_l.
inline double scaled_step(double step_left, int len_left, int len_right) {
  return step_left * (static_cast<double>(len_right) / static_cast<double>(len_left));
}

// Rasterizes line i from the rounded centroid to its edge intersection and
// samples it every step_px pixels (or exactly `count` samples when forced).
RadialLine sample_line(const FootRegion& region, int i, double step, double step_px,
                       std::optional<int> count);

// Builds the paired grids. The left foot is sampled at config.step_left; each
// right line reuses the left line's sample count with spacing scaled by the
// length ratio, so corresponding samples sit at the same relative position.
// Throws ContentError("degenerate radial line <i>") when a left raster has
// fewer than 2 pixels.
std::pair<RadialGrid, RadialGrid> build_grids(const FootRegion& left, const FootRegion& right,
                                              const ScanConfig& config);

}  // namespace pedscan

#endif  // PEDSCAN_SCAN_HPP_
