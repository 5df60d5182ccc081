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

#include "pedscan/synth.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace pedscan {
namespace synth {

namespace {

// Foot template, local units: x lateral, y longitudinal, heel toward +y.
// Everything is symmetric about x = 0. The union is star-shaped about the
// foot centroid (toe and heel bumps overlap their base shapes deeply), so a
// straight segment from the centroid to any contour pixel stays inside the
// foot — radial rasters never cross background.
constexpr double kSoleCx = 0.0;  // forefoot disk
constexpr double kSoleCy = -12.0;
constexpr double kSoleR = 20.0;
constexpr double kBodyCy = 20.0;  // rearfoot ellipse
constexpr double kBodyA = 14.0;   // lateral semi-axis
constexpr double kBodyB = 30.0;   // longitudinal semi-axis

struct Circle {
  double cx, cy, r;
};
// Toe centers sit on a radius-17 arc of the forefoot disk, 18 degrees apart,
// so each bump protrudes only r - 3 units past the disk.
constexpr Circle kToes[5] = {{0.0, -29.0, 6.5},
                             {-5.2533, -28.1683, 6.0},
                             {5.2533, -28.1683, 6.0},
                             {-9.9924, -25.7530, 5.5},
                             {9.9924, -25.7530, 5.5}};
constexpr Circle kHeel = {0.0, 44.0, 7.0};

// Template bounding box (with a hair of slack), used for the in-frame check.
constexpr double kBoundX = 20.5;
constexpr double kBoundYLo = -36.0;  // central toe tip at -35.5
constexpr double kBoundYHi = 51.5;   // heel apex at 51

bool inside_template(double x, double y) {
  double sx = x - kSoleCx, sy = y - kSoleCy;
  if (sx * sx + sy * sy <= kSoleR * kSoleR) return true;
  double ex = x / kBodyA;
  double ey = (y - kBodyCy) / kBodyB;
  if (ex * ex + ey * ey <= 1.0) return true;
  for (const Circle& c : kToes) {
    double dx = x - c.cx, dy = y - c.cy;
    if (dx * dx + dy * dy <= c.r * c.r) return true;
  }
  double dx = x - kHeel.cx, dy = y - kHeel.cy;
  return dx * dx + dy * dy <= kHeel.r * kHeel.r;
}

struct FootFrame {
  Vec2 center;
  double cosr, sinr, scale;

  // Image to template coordinates.
  Vec2 to_local(double px, double py) const {
    double dx = (px - center.x) / scale;
    double dy = (py - center.y) / scale;
    return {dx * cosr + dy * sinr, -dx * sinr + dy * cosr};
  }
  Vec2 to_image(double lx, double ly) const {
    return {center.x + scale * (lx * cosr - ly * sinr),
            center.y + scale * (lx * sinr + ly * cosr)};
  }
};

FootFrame make_frame(const FootSpec& f) {
  return {f.center, std::cos(f.rotation), std::sin(f.rotation), f.scale};
}

// Noiseless intensity at a template-local position inside the foot.
double foot_value(const FootSpec& f, const Vec2& local) {
  double v = f.base_intensity + f.longitudinal_gradient * local.y;
  for (const HotspotSpec& h : f.hotspots) {
    double dx = local.x - h.offset.x, dy = local.y - h.offset.y;
    double d2 = dx * dx + dy * dy;
    double r2 = h.radius * h.radius;
    if (d2 <= r2) v += h.delta * (1.0 - d2 / r2);
  }
  return v;
}

void check_in_frame(const SynthSpec& spec, const FootSpec& f) {
  FootFrame frame = make_frame(f);
  const double xs[2] = {-kBoundX, kBoundX};
  const double ys[2] = {kBoundYLo, kBoundYHi};
  for (double x : xs) {
    for (double y : ys) {
      Vec2 p = frame.to_image(x, y);
      if (p.x < 0.0 || p.x > spec.width - 1 || p.y < 0.0 || p.y > spec.height - 1)
        throw ContentError("foot extends outside image");
    }
  }
}

bool mask_boundary(const BinaryMask& m, int x, int y) {
  if (!m.at(x, y)) return false;
  if (x == 0 || y == 0 || x == m.width - 1 || y == m.height - 1) return true;
  return !m.at(x - 1, y) || !m.at(x + 1, y) || !m.at(x, y - 1) || !m.at(x, y + 1);
}

// Ground-truth heel: the analytic heel apex transformed into the image, then
// snapped to the farthest-from-centroid boundary pixel in a small window
// around it. Ties take the smaller x, then the smaller y.
Pixel truth_heel(const BinaryMask& mask, const FootFrame& frame) {
  Vec2 apex = frame.to_image(kHeel.cx, kHeel.cy + kHeel.r);
  Vec2 c = centroid(mask);
  int win = std::max(6, static_cast<int>(std::ceil(3.0 * frame.scale)));
  int ax = static_cast<int>(std::lround(apex.x));
  int ay = static_cast<int>(std::lround(apex.y));
  Pixel best{ax, ay};
  double best_d2 = -1.0;
  for (int y = std::max(0, ay - win); y <= std::min(mask.height - 1, ay + win); ++y) {
    for (int x = std::max(0, ax - win); x <= std::min(mask.width - 1, ax + win); ++x) {
      if (!mask_boundary(mask, x, y)) continue;
      double dx = x - c.x, dy = y - c.y;
      double d2 = dx * dx + dy * dy;
      if (d2 > best_d2) {
        best_d2 = d2;
        best = {x, y};
      }
    }
  }
  if (best_d2 < 0.0) throw ContentError("heel sector empty; check orientation");
  return best;
}

std::uint8_t clamp_u8(int v) { return static_cast<std::uint8_t>(std::clamp(v, 0, 255)); }

}  // namespace

std::pair<ThermalImage, GroundTruth> generate(const SynthSpec& spec) {
  if (spec.width < 16 || spec.height < 16) throw ConfigError("image too small for feet");
  if (spec.noise_amplitude < 0) throw ConfigError("noise_amplitude must be non-negative");
  for (const FootSpec* f : {&spec.left, &spec.right}) {
    if (f->scale <= 0.0) throw ConfigError("scale must be positive");
    for (const HotspotSpec& h : f->hotspots) {
      if (h.radius <= 0.0) throw ConfigError("hotspot radius must be positive");
      if (h.delta < 0) throw ConfigError("hotspot delta must be non-negative");
    }
  }
  check_in_frame(spec, spec.left);
  check_in_frame(spec, spec.right);

  FootFrame lf = make_frame(spec.left);
  FootFrame rf = make_frame(spec.right);

  ThermalImage img = make_image(spec.width, spec.height);
  GroundTruth truth;
  truth.left_mask = make_mask(spec.width, spec.height);
  truth.right_mask = make_mask(spec.width, spec.height);

  SplitMix64 rng(spec.rng_seed);
  int amp = spec.noise_amplitude;
  double min_foot = std::numeric_limits<double>::max();
  double max_bg = std::numeric_limits<double>::lowest();

  for (int y = 0; y < spec.height; ++y) {
    for (int x = 0; x < spec.width; ++x) {
      Vec2 ll = lf.to_local(x, y);
      Vec2 rl = rf.to_local(x, y);
      double v;
      if (inside_template(ll.x, ll.y)) {
        truth.left_mask.set(x, y, true);
        v = foot_value(spec.left, ll);
        min_foot = std::min(min_foot, v);
      } else if (inside_template(rl.x, rl.y)) {
        truth.right_mask.set(x, y, true);
        v = foot_value(spec.right, rl);
        min_foot = std::min(min_foot, v);
      } else {
        v = spec.background_base + spec.background_gradient * (spec.height - 1 - y);
        max_bg = std::max(max_bg, v);
      }
      int noise = amp > 0 ? static_cast<int>(rng.next_below(2 * amp + 1)) - amp : 0;
      img.at(x, y) = clamp_u8(static_cast<int>(std::lround(v)) + noise);
    }
  }

  if (truth.left_mask.count() == 0 || truth.right_mask.count() == 0)
    throw ContentError("single-foot or empty image");
  if (min_foot - max_bg < 20.0)
    throw ConfigError("foot/background contrast below segmentability margin");

  truth.left_heel = truth_heel(truth.left_mask, lf);
  truth.right_heel = truth_heel(truth.right_mask, rf);
  for (const HotspotSpec& h : spec.left.hotspots)
    truth.hotspots.push_back(
        {FootSide::kLeft, lf.to_image(h.offset.x, h.offset.y), h.radius * lf.scale});
  for (const HotspotSpec& h : spec.right.hotspots)
    truth.hotspots.push_back(
        {FootSide::kRight, rf.to_image(h.offset.x, h.offset.y), h.radius * rf.scale});
  return {std::move(img), std::move(truth)};
}

std::vector<CorpusEntry> corpus_specs(std::uint64_t seed) {
  std::vector<CorpusEntry> out;
  out.reserve(140);
  SplitMix64 rng(seed);

  struct Block {
    Category cat;
    int count;
  };
  const Block blocks[4] = {{Category::kHealthySameSize, 40},
                           {Category::kHealthyDifferentSize, 40},
                           {Category::kAbnormalSameSize, 30},
                           {Category::kAbnormalDifferentSize, 30}};

  for (const Block& b : blocks) {
    bool different_size = b.cat == Category::kHealthyDifferentSize ||
                          b.cat == Category::kAbnormalDifferentSize;
    bool abnormal =
        b.cat == Category::kAbnormalSameSize || b.cat == Category::kAbnormalDifferentSize;
    for (int i = 0; i < b.count; ++i) {
      SynthSpec s;
      s.rng_seed = rng.next();
      s.background_base = 35 + static_cast<int>(rng.next_below(11));
      s.background_gradient = rng.next_range(0.06, 0.12);
      s.noise_amplitude = 1;

      double base_scale = rng.next_range(0.95, 1.05);
      double rot = rng.next_range(-0.12, 0.12);
      double cy = rng.next_range(110.0, 124.0);
      double lx = rng.next_range(88.0, 100.0);
      int base_int = 148 + static_cast<int>(rng.next_below(13));
      double grad = rng.next_range(0.35, 0.55) * (rng.next_below(2) ? 1.0 : -1.0);

      s.left.center = {lx, cy};
      s.left.scale = base_scale;
      s.left.rotation = rot;
      s.left.base_intensity = base_int;
      s.left.longitudinal_gradient = grad;

      s.right.base_intensity = base_int;
      s.right.longitudinal_gradient = grad;
      if (different_size) {
        // One foot scaled up; geometry drawn independently per foot.
        double ratio = rng.next_range(1.1, 1.4);
        bool right_bigger = rng.next_below(2) != 0;
        s.right.center = {static_cast<double>(s.width) - 1.0 - rng.next_range(88.0, 100.0),
                          rng.next_range(110.0, 124.0)};
        s.right.scale = right_bigger ? base_scale * ratio : base_scale;
        if (!right_bigger) s.left.scale = base_scale * ratio;
        s.right.rotation = rng.next_range(-0.12, 0.12);
      } else {
        // Exact geometric mirror about the vertical midline.
        s.right.center = {static_cast<double>(s.width) - 1.0 - lx, cy};
        s.right.scale = base_scale;
        s.right.rotation = -rot;
      }

      if (abnormal) {
        HotspotSpec h;
        h.radius = 8.0 + rng.next_range(0.0, 4.0);
        // Keep the disk at least 3 units inside the forefoot disk.
        double lim = kSoleR - (h.radius + 3.0);
        double ang = rng.next_range(0.0, 6.283185307179586);
        double rad = lim * std::sqrt(rng.next_unit());
        h.offset = {kSoleCx + rad * std::cos(ang), kSoleCy + rad * std::sin(ang)};
        h.delta = 15 + static_cast<int>(rng.next_below(16));  // 3x..6x default threshold
        if (rng.next_below(2)) {
          s.left.hotspots.push_back(h);
        } else {
          s.right.hotspots.push_back(h);
        }
      }
      out.push_back({b.cat, s});
    }
  }
  return out;
}

std::vector<CorpusImage> generate_corpus(std::uint64_t seed) {
  std::vector<CorpusImage> out;
  out.reserve(140);
  for (const CorpusEntry& e : corpus_specs(seed)) {
    auto [img, truth] = generate(e.spec);
    out.push_back({e.category, std::move(img), std::move(truth)});
  }
  return out;
}

}  // namespace synth
}  // namespace pedscan
