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

#include "pedscan/scan.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace pedscan {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double wrap_angle(double a) {
  a = std::fmod(a, kTwoPi);
  if (a < 0.0) a += kTwoPi;
  return a;
}

double circular_diff(double a, double b) {
  double d = std::fabs(wrap_angle(a) - wrap_angle(b));
  return d > std::numbers::pi ? kTwoPi - d : d;
}

Pixel rounded(const Vec2& v) {
  return {static_cast<int>(std::lround(v.x)), static_cast<int>(std::lround(v.y))};
}

}  // namespace

void ScanConfig::validate() const {
  if (lines < 72) throw ConfigError("angle step exceeds five degrees");
  if (step_left < 1) throw ConfigError("step_left must be at least 1 pixel");
  if (compare_threshold < 0 || compare_threshold > 255)
    throw ConfigError("compare_threshold must be in [0, 255]");
  if (exclude_edge_margin < 0) throw ConfigError("exclude_edge_margin must be non-negative");
}

double angle_step(int lines) {
  if (lines < 72) throw ConfigError("angle step exceeds five degrees");
  return kTwoPi / static_cast<double>(lines);
}

double line_angle(const FootRegion& region, int i, double step) {
  int lines = static_cast<int>(std::lround(kTwoPi / step));
  if (i < 0 || i >= lines) throw ConfigError("line index out of range");
  double ref = std::atan2(region.heel.y - region.centroid.y, region.heel.x - region.centroid.x);
  return wrap_angle(ref + static_cast<double>(i) * step);
}

Pixel edge_intersection(const FootRegion& region, double theta) {
  double best_diff = 1e300;
  double best_r2 = -1.0;
  Pixel best = region.edge.front();
  for (const Pixel& p : region.edge) {
    double dx = p.x - region.centroid.x;
    double dy = p.y - region.centroid.y;
    double ang = std::atan2(dy, dx);
    double diff = circular_diff(ang, theta);
    double r2 = dx * dx + dy * dy;
    if (diff < best_diff - 1e-9 ||
        (std::fabs(diff - best_diff) <= 1e-9 && r2 > best_r2)) {
      best_diff = diff;
      best_r2 = r2;
      best = p;
    }
  }
  return best;
}

std::vector<int> sample_indices(int length, double step_px, std::optional<int> count) {
  if (length < 1) throw ConfigError("raster length must be at least 1");
  if (step_px <= 0.0) throw ConfigError("sample step must be positive");
  int n = count ? *count
                : static_cast<int>(std::floor(static_cast<double>(length - 1) / step_px)) + 1;
  std::vector<int> idx;
  idx.reserve(static_cast<std::size_t>(std::max(n, 0)));
  for (int k = 0; k < n; ++k) {
    long pos = std::lround(static_cast<double>(k) * step_px);
    if (pos > length - 1) pos = length - 1;
    idx.push_back(static_cast<int>(pos));
  }
  return idx;
}

RadialLine sample_line(const FootRegion& region, int i, double step, double step_px,
                       std::optional<int> count) {
  RadialLine line;
  line.index = i;
  line.angle = static_cast<double>(i) * step;
  double theta = line_angle(region, i, step);
  line.edge_point = edge_intersection(region, theta);
  line.raster = bresenham_line(rounded(region.centroid), line.edge_point);
  line.length = static_cast<int>(line.raster.size());
  line.sample_step = step_px;
  for (int k : sample_indices(line.length, step_px, count)) {
    const Pixel& p = line.raster[static_cast<std::size_t>(k)];
    line.samples.push_back({p, region.image.at(p.x, p.y)});
  }
  return line;
}

std::pair<RadialGrid, RadialGrid> build_grids(const FootRegion& left, const FootRegion& right,
                                              const ScanConfig& config) {
  config.validate();
  double step = angle_step(config.lines);
  RadialGrid gl{FootSide::kLeft, {}, config};
  RadialGrid gr{FootSide::kRight, {}, config};
  gl.lines.reserve(config.lines);
  gr.lines.reserve(config.lines);

  for (int i = 0; i < config.lines; ++i) {
    RadialLine ll = sample_line(left, i, step, static_cast<double>(config.step_left), std::nullopt);
    if (ll.length < 2) throw ContentError("degenerate radial line " + std::to_string(i));
    // The right line reuses the left count; its spacing stretches by the
    // length ratio so sample k lands at the same relative position.
    double theta_r = line_angle(right, i, step);
    Pixel edge_r = edge_intersection(right, theta_r);
    std::vector<Pixel> raster_r = bresenham_line(rounded(right.centroid), edge_r);
    int len_r = static_cast<int>(raster_r.size());
    double step_r = scaled_step(static_cast<double>(config.step_left), ll.length, len_r);
    RadialLine rl;
    rl.index = i;
    rl.angle = static_cast<double>(i) * step;
    rl.edge_point = edge_r;
    rl.raster = std::move(raster_r);
    rl.length = len_r;
    rl.sample_step = step_r;
    int n = static_cast<int>(ll.samples.size());
    for (int k : sample_indices(len_r, step_r, n)) {
      const Pixel& p = rl.raster[static_cast<std::size_t>(k)];
      rl.samples.push_back({p, right.image.at(p.x, p.y)});
    }
    gl.lines.push_back(std::move(ll));
    gr.lines.push_back(std::move(rl));
  }
  return {std::move(gl), std::move(gr)};
}

}  // namespace pedscan
