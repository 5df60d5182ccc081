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

#include "pedscan/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <unordered_set>

namespace pedscan {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Clockwise Moore ring in the y-down frame, starting east.
constexpr int kRingX[8] = {1, 1, 0, -1, -1, -1, 0, 1};
constexpr int kRingY[8] = {0, 1, 1, 1, 0, -1, -1, -1};

double wrap_angle(double a) {
  a = std::fmod(a, kTwoPi);
  if (a < 0.0) a += kTwoPi;
  return a;
}

double circular_diff(double a, double b) {
  double d = std::fabs(wrap_angle(a) - wrap_angle(b));
  return d > std::numbers::pi ? kTwoPi - d : d;
}

struct Component {
  std::vector<Pixel> pixels;
  Vec2 center;
};

std::vector<Component> label_components(const BinaryMask& mask) {
  std::vector<int> label(mask.bits.size(), -1);
  std::vector<Component> comps;
  std::deque<Pixel> queue;
  for (int y = 0; y < mask.height; ++y) {
    for (int x = 0; x < mask.width; ++x) {
      std::size_t idx = static_cast<std::size_t>(y) * mask.width + x;
      if (!mask.bits[idx] || label[idx] >= 0) continue;
      int id = static_cast<int>(comps.size());
      comps.emplace_back();
      label[idx] = id;
      queue.push_back({x, y});
      while (!queue.empty()) {
        Pixel p = queue.front();
        queue.pop_front();
        comps[id].pixels.push_back(p);
        for (int k = 0; k < 8; ++k) {
          int nx = p.x + kRingX[k], ny = p.y + kRingY[k];
          if (!mask.in_bounds(nx, ny)) continue;
          std::size_t nidx = static_cast<std::size_t>(ny) * mask.width + nx;
          if (mask.bits[nidx] && label[nidx] < 0) {
            label[nidx] = id;
            queue.push_back({nx, ny});
          }
        }
      }
    }
  }
  return comps;
}

bool fg(const BinaryMask& mask, int x, int y) { return mask.in_bounds(x, y) && mask.at(x, y); }

}  // namespace

Vec2 centroid(const BinaryMask& mask) {
  double sx = 0.0, sy = 0.0;
  std::size_t n = 0;
  for (int y = 0; y < mask.height; ++y) {
    for (int x = 0; x < mask.width; ++x) {
      if (mask.at(x, y)) {
        sx += x;
        sy += y;
        ++n;
      }
    }
  }
  if (n == 0) throw ContentError("single-foot or empty image");
  return {sx / static_cast<double>(n), sy / static_cast<double>(n)};
}

long long shoelace2(const std::vector<Pixel>& poly) {
  long long a2 = 0;
  std::size_t n = poly.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Pixel& p = poly[i];
    const Pixel& q = poly[(i + 1) % n];
    a2 += static_cast<long long>(p.x) * q.y - static_cast<long long>(q.x) * p.y;
  }
  return a2;
}

std::vector<Pixel> trace_edge(const BinaryMask& mask) {
  Pixel start{-1, -1};
  for (int y = 0; y < mask.height && start.x < 0; ++y)
    for (int x = 0; x < mask.width; ++x)
      if (mask.at(x, y)) {
        start = {x, y};
        break;
      }
  if (start.x < 0) throw ContentError("single-foot or empty image");

  // Walk boundary states (pixel, entry direction) until a state repeats. The
  // state cycle covers the whole outer contour even on shapes where the
  // classic start-pixel stopping rules loop forever (thin diagonal bridges).
  std::vector<Pixel> out;
  std::unordered_set<std::uint64_t> seen;
  auto push_unique = [&](Pixel p) {
    for (auto it = out.rbegin(); it != out.rend(); ++it)
      if (*it == p) return;  // cheap for the short revisit runs Moore produces
    out.push_back(p);
  };

  Pixel cur = start;
  int back = 4;  // direction from cur to its backtrack pixel; start west (background by scan order)
  while (true) {
    std::uint64_t state =
        (static_cast<std::uint64_t>(static_cast<std::uint32_t>(cur.y)) << 35) |
        (static_cast<std::uint64_t>(static_cast<std::uint32_t>(cur.x)) << 3) |
        static_cast<std::uint64_t>(back);
    if (!seen.insert(state).second) break;
    push_unique(cur);

    int found = -1;
    for (int s = 1; s <= 8; ++s) {
      int d = (back + s) % 8;
      if (fg(mask, cur.x + kRingX[d], cur.y + kRingY[d])) {
        found = d;
        break;
      }
    }
    if (found < 0) break;  // isolated pixel
    int before = (found + 7) % 8;  // last background scanned, neighbor of the new pixel
    Pixel next{cur.x + kRingX[found], cur.y + kRingY[found]};
    // Express that background pixel as a direction from the new pixel.
    Pixel bg{cur.x + kRingX[before], cur.y + kRingY[before]};
    int nb = 0;
    for (int d = 0; d < 8; ++d) {
      if (next.x + kRingX[d] == bg.x && next.y + kRingY[d] == bg.y) {
        nb = d;
        break;
      }
    }
    cur = next;
    back = nb;
  }

  // Canonical counter-clockwise orientation: positive shoelace in y-down frame.
  if (out.size() >= 3 && shoelace2(out) < 0) std::reverse(out.begin() + 1, out.end());
  return out;
}

std::size_t heel_index(const Vec2& c, const std::vector<Pixel>& edge, const HeelSector& sector) {
  if (edge.empty()) throw ContentError("heel sector empty; check orientation");
  bool found = false;
  std::size_t best = 0;
  double best_d2 = -1.0;
  for (std::size_t i = 0; i < edge.size(); ++i) {
    double dx = edge[i].x - c.x;
    double dy = edge[i].y - c.y;
    if (dx == 0.0 && dy == 0.0) continue;
    double ang = std::atan2(dy, dx);
    if (circular_diff(ang, sector.center_angle) >= sector.half_width) continue;
    double d2 = dx * dx + dy * dy;
    if (d2 > best_d2) {
      best_d2 = d2;
      best = i;
      found = true;
    }
  }
  if (!found) throw ContentError("heel sector empty; check orientation");
  return best;
}

std::vector<Pixel> bresenham_line(Pixel a, Pixel b) {
  int dx = b.x - a.x, dy = b.y - a.y;
  int adx = std::abs(dx), ady = std::abs(dy);
  int sx = dx >= 0 ? 1 : -1, sy = dy >= 0 ? 1 : -1;
  std::vector<Pixel> out;
  out.reserve(static_cast<std::size_t>(std::max(adx, ady)) + 1);
  if (adx >= ady) {
    int d = 2 * ady - adx;
    int y = 0;
    for (int i = 0; i <= adx; ++i) {
      out.push_back({a.x + sx * i, a.y + sy * y});
      if (d > 0) {
        ++y;
        d -= 2 * adx;
      }
      d += 2 * ady;
    }
  } else {
    int d = 2 * adx - ady;
    int x = 0;
    for (int i = 0; i <= ady; ++i) {
      out.push_back({a.x + sx * x, a.y + sy * i});
      if (d > 0) {
        ++x;
        d -= 2 * ady;
      }
      d += 2 * adx;
    }
  }
  return out;
}

FootRegion make_foot_region(const BinaryMask& mask, const ThermalImage& image, FootSide side,
                            const HeelSector& sector) {
  if (mask.width != image.width || mask.height != image.height)
    throw ConfigError("image/mask dimension mismatch");
  FootRegion region;
  region.side = side;
  region.mask = mask;
  region.image = image;
  region.centroid = centroid(mask);
  region.edge = trace_edge(mask);
  std::size_t hi = heel_index(region.centroid, region.edge, sector);
  std::rotate(region.edge.begin(), region.edge.begin() + static_cast<std::ptrdiff_t>(hi),
              region.edge.end());
  region.heel = region.edge.front();
  return region;
}

std::pair<FootRegion, FootRegion> split_feet(const BinaryMask& mask, const ThermalImage& image,
                                             const HeelSector& sector) {
  if (mask.width != image.width || mask.height != image.height)
    throw ConfigError("image/mask dimension mismatch");
  std::vector<Component> comps = label_components(mask);
  if (comps.size() < 2) throw ContentError("single-foot or empty image");
  std::sort(comps.begin(), comps.end(), [](const Component& a, const Component& b) {
    return a.pixels.size() > b.pixels.size();
  });
  if (comps[0].pixels.size() > 10 * comps[1].pixels.size())
    throw ContentError("implausible segmentation");

  BinaryMask m0 = make_mask(mask.width, mask.height);
  BinaryMask m1 = make_mask(mask.width, mask.height);
  double cx0 = 0.0, cx1 = 0.0, cy0 = 0.0, cy1 = 0.0;
  for (const Pixel& p : comps[0].pixels) {
    m0.set(p.x, p.y, true);
    cx0 += p.x;
    cy0 += p.y;
  }
  for (const Pixel& p : comps[1].pixels) {
    m1.set(p.x, p.y, true);
    cx1 += p.x;
    cy1 += p.y;
  }
  cx0 /= static_cast<double>(comps[0].pixels.size());
  cy0 /= static_cast<double>(comps[0].pixels.size());
  cx1 /= static_cast<double>(comps[1].pixels.size());
  cy1 /= static_cast<double>(comps[1].pixels.size());

  bool zero_is_left = cx0 < cx1 || (cx0 == cx1 && cy0 < cy1);
  const BinaryMask& left_mask = zero_is_left ? m0 : m1;
  const BinaryMask& right_mask = zero_is_left ? m1 : m0;
  return {make_foot_region(left_mask, image, FootSide::kLeft, sector),
          make_foot_region(right_mask, image, FootSide::kRight, sector)};
}

}  // namespace pedscan
