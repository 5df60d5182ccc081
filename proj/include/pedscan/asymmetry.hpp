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

#ifndef PEDSCAN_ASYMMETRY_HPP_
#define PEDSCAN_ASYMMETRY_HPP_

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "pedscan/scan.hpp"

namespace pedscan {

enum class Method { kScanning, kOverlapping };

struct AbnormalPoint {
  FootSide side = FootSide::kLeft;  // the hotter side
  int line = -1;    // scanning only; -1 for overlap points
  int sample = -1;  // scanning only
  Pixel pixel;      // hotter side's pixel in the original image frame
  int delta = 0;    // absolute intensity difference, > threshold
  bool edge_adjacent = false;
};

struct AsymmetryReport {
  Method method = Method::kScanning;
  int threshold = 0;
  int edge_margin = 0;
  bool edge_excluded = false;
  std::vector<AbnormalPoint> points;
  int left_count = 0;   // points per hotter side; sums to points.size()
  int right_count = 0;
};

// Pairwise sample comparison of two grids built as a pair. Samples within
// edge_margin positions of a line's edge end are dropped when the margin is
// positive; with margin 0 everything is compared and the final (edge) sample
// is flagged edge_adjacent. Throws ContentError("grids not built as a pair")
// on mismatched line or sample counts.
AsymmetryReport compare_scan(const RadialGrid& left, const RadialGrid& right, int threshold,
                             int edge_margin);

// Baseline technique: mirrors the right foot horizontally, aligns rounded
// centroids with an integer translation, and compares pixel-wise. Pixels
// covered by exactly one mask become edge_adjacent points on the present side
// (delta against the masked background, 0) — the false-edge failure mode this
// baseline is known for. No edge exclusion is applied.
AsymmetryReport compare_overlap(const FootRegion& left, const FootRegion& right, int threshold);

enum class Category {
  kHealthySameSize,
  kHealthyDifferentSize,
  kAbnormalSameSize,
  kAbnormalDifferentSize,
};

std::string category_name(Category c);

struct HotspotDisk {
  FootSide side = FootSide::kLeft;
  Vec2 center;
  double radius = 0.0;
};

struct LabeledReport {
  Category category = Category::kHealthySameSize;
  AsymmetryReport report;
  std::optional<HotspotDisk> hotspot;  // ground truth, when the image has one
};

struct MethodTally {
  int images = 0;
  int images_with_detections = 0;
  int images_without_detections = 0;
  int images_with_hotspot_hit = 0;
  long long total_false_points = 0;
  double mean_false_points = 0.0;
  std::string false_points_label;  // none | small | high
};

struct CorpusMetrics {
  int corpus_size = 0;
  // category -> method -> tally
  std::map<Category, std::map<Method, MethodTally>> tallies;
};

// Folds labeled per-image reports into the four-category table. A point
// qualifies if it survives the method's own edge policy: scanning counts
// non-edge points only, overlapping counts everything (its edge ring is the
// false-area phenomenon being measured). A hotspot hit is a qualifying point
// on the hotspot side inside the ground-truth disk; all other qualifying
// points count as false.
CorpusMetrics corpus_metrics(const std::vector<LabeledReport>& reports);

}  // namespace pedscan

#endif  // PEDSCAN_ASYMMETRY_HPP_
