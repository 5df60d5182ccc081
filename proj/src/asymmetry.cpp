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

#include "pedscan/asymmetry.hpp"

#include <algorithm>
#include <cmath>

namespace pedscan {

namespace {

void tally_sides(AsymmetryReport* report) {
  report->left_count = 0;
  report->right_count = 0;
  for (const AbnormalPoint& p : report->points)
    (p.side == FootSide::kLeft ? report->left_count : report->right_count)++;
}

bool qualifies(const AbnormalPoint& p, Method m) {
  return m == Method::kOverlapping || !p.edge_adjacent;
}

bool inside_disk(const AbnormalPoint& p, const HotspotDisk& disk) {
  if (p.side != disk.side) return false;
  double dx = p.pixel.x - disk.center.x;
  double dy = p.pixel.y - disk.center.y;
  return dx * dx + dy * dy <= disk.radius * disk.radius;
}

}  // namespace

AsymmetryReport compare_scan(const RadialGrid& left, const RadialGrid& right, int threshold,
                             int edge_margin) {
  if (threshold < 0 || threshold > 255) throw ConfigError("threshold must be in [0, 255]");
  if (edge_margin < 0) throw ConfigError("edge_margin must be non-negative");
  if (left.lines.size() != right.lines.size()) throw ContentError("grids not built as a pair");

  AsymmetryReport report;
  report.method = Method::kScanning;
  report.threshold = threshold;
  report.edge_margin = edge_margin;
  report.edge_excluded = edge_margin > 0;

  for (std::size_t i = 0; i < left.lines.size(); ++i) {
    const RadialLine& ll = left.lines[i];
    const RadialLine& rl = right.lines[i];
    if (ll.samples.size() != rl.samples.size()) throw ContentError("grids not built as a pair");
    int n = static_cast<int>(ll.samples.size());
    for (int k = 0; k < n; ++k) {
      int from_edge = n - 1 - k;
      if (edge_margin > 0 && from_edge < edge_margin) continue;  // edge window dropped
      int diff = static_cast<int>(ll.samples[k].intensity) - static_cast<int>(rl.samples[k].intensity);
      if (std::abs(diff) <= threshold) continue;
      AbnormalPoint pt;
      pt.side = diff > 0 ? FootSide::kLeft : FootSide::kRight;
      pt.line = static_cast<int>(i);
      pt.sample = k;
      pt.pixel = diff > 0 ? ll.samples[k].pixel : rl.samples[k].pixel;
      pt.delta = std::abs(diff);
      pt.edge_adjacent = from_edge == 0;
      report.points.push_back(pt);
    }
  }
  tally_sides(&report);
  return report;
}

AsymmetryReport compare_overlap(const FootRegion& left, const FootRegion& right, int threshold) {
  if (threshold < 0 || threshold > 255) throw ConfigError("threshold must be in [0, 255]");
  const int w = left.mask.width;
  if (w != right.mask.width || left.mask.height != right.mask.height)
    throw ContentError("grids not built as a pair");

  AsymmetryReport report;
  report.method = Method::kOverlapping;
  report.threshold = threshold;
  report.edge_margin = 0;
  report.edge_excluded = false;

  // Mirror the right mask about the vertical axis, then translate so the
  // rounded centroids coincide. p is a position in the left foot's frame; the
  // matching right-foot pixel is q(p).
  int tx = static_cast<int>(std::lround(left.centroid.x)) -
           (w - 1 - static_cast<int>(std::lround(right.centroid.x)));
  int ty = static_cast<int>(std::lround(left.centroid.y)) -
           static_cast<int>(std::lround(right.centroid.y));

  // Scan a box covering the left mask and the aligned mirrored-right mask.
  int x0 = std::min(0, tx), x1 = std::max(w - 1, w - 1 + tx);
  int y0 = std::min(0, ty), y1 = std::max(left.mask.height - 1, left.mask.height - 1 + ty);

  for (int y = y0; y <= y1; ++y) {
    for (int x = x0; x <= x1; ++x) {
      bool on_left = left.mask.in_bounds(x, y) && left.mask.at(x, y);
      int qx = w - 1 - (x - tx);
      int qy = y - ty;
      bool on_right = right.mask.in_bounds(qx, qy) && right.mask.at(qx, qy);
      if (!on_left && !on_right) continue;

      AbnormalPoint pt;
      if (on_left && on_right) {
        int diff = static_cast<int>(left.image.at(x, y)) - static_cast<int>(right.image.at(qx, qy));
        if (std::abs(diff) <= threshold) continue;
        pt.side = diff > 0 ? FootSide::kLeft : FootSide::kRight;
        pt.pixel = diff > 0 ? Pixel{x, y} : Pixel{qx, qy};
        pt.delta = std::abs(diff);
      } else {
        // Single-mask pixel: compared against suppressed background (0).
        int present = on_left ? left.image.at(x, y) : right.image.at(qx, qy);
        if (present <= threshold) continue;
        pt.side = on_left ? FootSide::kLeft : FootSide::kRight;
        pt.pixel = on_left ? Pixel{x, y} : Pixel{qx, qy};
        pt.delta = present;
        pt.edge_adjacent = true;
      }
      report.points.push_back(pt);
    }
  }
  tally_sides(&report);
  return report;
}

std::string category_name(Category c) {
  switch (c) {
    case Category::kHealthySameSize: return "healthy_same_size";
    case Category::kHealthyDifferentSize: return "healthy_different_size";
    case Category::kAbnormalSameSize: return "abnormal_same_size";
    case Category::kAbnormalDifferentSize: return "abnormal_different_size";
  }
  return "unknown";
}

CorpusMetrics corpus_metrics(const std::vector<LabeledReport>& reports) {
  CorpusMetrics metrics;
  for (const LabeledReport& lr : reports) {
    MethodTally& t = metrics.tallies[lr.category][lr.report.method];
    t.images++;
    int qualifying = 0;
    bool hit = false;
    long long false_points = 0;
    for (const AbnormalPoint& p : lr.report.points) {
      if (!qualifies(p, lr.report.method)) continue;
      qualifying++;
      if (lr.hotspot && inside_disk(p, *lr.hotspot)) {
        hit = true;
      } else {
        false_points++;
      }
    }
    if (qualifying > 0) t.images_with_detections++;
    if (hit) t.images_with_hotspot_hit++;
    t.total_false_points += false_points;
  }

  int corpus = 0;
  for (auto& [cat, methods] : metrics.tallies) {
    int cat_images = 0;
    for (auto& [m, t] : methods) {
      t.images_without_detections = t.images - t.images_with_detections;
      t.mean_false_points =
          t.images > 0 ? static_cast<double>(t.total_false_points) / t.images : 0.0;
      if (t.total_false_points == 0) {
        t.false_points_label = "none";
      } else if (t.mean_false_points < 10.0) {
        t.false_points_label = "small";
      } else {
        t.false_points_label = "high";
      }
      cat_images = std::max(cat_images, t.images);
    }
    corpus += cat_images;
  }
  metrics.corpus_size = corpus;
  return metrics;
}

}  // namespace pedscan
