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

#ifndef PEDSCAN_GEOMETRY_HPP_
#define PEDSCAN_GEOMETRY_HPP_

#include <numbers>
#include <utility>
#include <vector>

#include "pedscan/image.hpp"

namespace pedscan {

enum class FootSide { kLeft, kRight };

// Angular window for the heel search, in the y-down raster frame where
// straight down is pi/2. The default covers the open lower half-plane.
struct HeelSector {
  double center_angle = std::numbers::pi / 2.0;
  double half_width = std::numbers::pi / 2.0;
};

// One segmented foot. The edge is the outer contour, counter-clockwise by
// the positive-shoelace convention in the y-down frame, rotated so that
// edge[0] is the heel point. The stored image keeps the source intensities
// (unmasked); mask covers the full image frame.
struct FootRegion {
  FootSide side = FootSide::kLeft;
  BinaryMask mask;
  Vec2 centroid;
  Pixel heel;
  std::vector<Pixel> edge;
  ThermalImage image;
};

// Mean of foreground coordinates. Throws ContentError on an empty mask.
Vec2 centroid(const BinaryMask& mask);

// Moore-neighbor trace of the outer contour. Every returned pixel appears
// once; the set equals {foreground pixels with a background 4-neighbor or on
// the image border} for hole-free masks. Orientation is counter-clockwise
// (signed shoelace area >= 0).
std::vector<Pixel> trace_edge(const BinaryMask& mask);

// Twice the signed shoelace area of the pixel polygon.
long long shoelace2(const std::vector<Pixel>& poly);

// Index into edge of the farthest point from the centroid whose direction
// falls strictly inside the sector. Ties take the smallest index. Throws
// ContentError("heel sector empty; check orientation") when no edge point
// qualifies.
std::size_t heel_index(const Vec2& centroid, const std::vector<Pixel>& edge,
                       const HeelSector& sector = {});

inline Pixel heel_point(const Vec2& c, const std::vector<Pixel>& edge,
                        const HeelSector& sector = {}) {
  return edge[heel_index(c, edge, sector)];
}

// All-octant integer Bresenham. Returns max(|dx|, |dy|) + 1 pixels including
// both endpoints; along the driving axis each cross-axis value is the nearest
// integer to the real line, with exact .5 ties rounded toward the start point.
std::vector<Pixel> bresenham_line(Pixel a, Pixel b);

// Builds a FootRegion from a single-component mask: centroid, contour, heel,
// and the heel-first edge rotation.
FootRegion make_foot_region(const BinaryMask& mask, const ThermalImage& image, FootSide side,
                            const HeelSector& sector = {});

// Labels 8-connected components, keeps the two largest as feet, and assigns
// side by centroid x (smaller is left). Throws ContentError on fewer than two
// components ("single-foot or empty image") or when the two largest areas
// differ by more than 10x ("implausible segmentation").
std::pair<FootRegion, FootRegion> split_feet(const BinaryMask& mask, const ThermalImage& image,
                                             const HeelSector& sector = {});

}  // namespace pedscan

#endif  // PEDSCAN_GEOMETRY_HPP_
