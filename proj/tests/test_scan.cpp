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
#include <optional>
#include <vector>

#include "doctest.h"
#include "pedscan/ga.hpp"
#include "pedscan/geometry.hpp"
#include "pedscan/synth.hpp"
#include "test_util.hpp"

namespace pedscan {
namespace {

// Filled disk region: radius r around (cx, cy).
FootRegion disk_region(int w, int h, int cx, int cy, int r) {
  BinaryMask m = make_mask(w, h);
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x)
      if ((x - cx) * (x - cx) + (y - cy) * (y - cy) <= r * r) m.set(x, y, true);
  ThermalImage img = make_image(w, h, 80);
  return make_foot_region(m, img, FootSide::kLeft);
}

TEST_CASE("angle_step honors the five-degree cap") {
  CHECK(angle_step(72) == doctest::Approx(0.0872665).epsilon(1e-6));
  CHECK(angle_step(360) == doctest::Approx(0.0174533).epsilon(1e-6));
  CHECK_THROWS_WITH_AS(angle_step(71), "angle step exceeds five degrees", ConfigError);
}

TEST_CASE("scan config validation") {
  ScanConfig c;
  CHECK_NOTHROW(c.validate());
  SUBCASE("too few lines") {
    c.lines = 60;
    CHECK_THROWS_AS(c.validate(), ConfigError);
  }
  SUBCASE("zero step") {
    c.step_left = 0;
    CHECK_THROWS_AS(c.validate(), ConfigError);
  }
  SUBCASE("negative margin") {
    c.exclude_edge_margin = -1;
    CHECK_THROWS_AS(c.validate(), ConfigError);
  }
}

TEST_CASE("line_angle starts at the heel reference and wraps") {
  FootRegion region = disk_region(41, 41, 20, 20, 15);
  double step = angle_step(72);
  double ref = std::atan2(region.heel.y - region.centroid.y,
                          region.heel.x - region.centroid.x);
  if (ref < 0.0) ref += 2.0 * std::numbers::pi;
  CHECK(line_angle(region, 0, step) == doctest::Approx(ref));
  double mid = line_angle(region, 36, step);
  double expect = ref + std::numbers::pi;
  if (expect >= 2.0 * std::numbers::pi) expect -= 2.0 * std::numbers::pi;
  CHECK(mid == doctest::Approx(expect));
  CHECK_THROWS_AS(line_angle(region, 72, step), ConfigError);
  CHECK_THROWS_AS(line_angle(region, -1, step), ConfigError);
}

TEST_CASE("edge_intersection matches the analytic circle") {
  const int r = 15;
  FootRegion region = disk_region(41, 41, 20, 20, r);
  for (int deg = 0; deg < 360; deg += 15) {
    double theta = deg * std::numbers::pi / 180.0;
    Pixel p = edge_intersection(region, theta);
    double ex = region.centroid.x + r * std::cos(theta);
    double ey = region.centroid.y + r * std::sin(theta);
    CAPTURE(deg);
    CHECK(std::hypot(p.x - ex, p.y - ey) <= 1.0);
  }
}

TEST_CASE("edge_intersection picks extreme and reference points") {
  SUBCASE("square corner") {
    BinaryMask m = make_mask(12, 12);
    for (int y = 3; y <= 8; ++y)
      for (int x = 3; x <= 8; ++x) m.set(x, y, true);
    ThermalImage img = make_image(12, 12, 10);
    FootRegion region = make_foot_region(m, img, FootSide::kLeft);
    // Centroid (5.5, 5.5); the down-right corner lies at 45 degrees.
    Pixel p = edge_intersection(region, std::numbers::pi / 4.0);
    CHECK(p == Pixel{8, 8});
  }
  SUBCASE("reference angle returns the heel itself") {
    FootRegion region = disk_region(41, 41, 20, 20, 15);
    double ref = line_angle(region, 0, angle_step(72));
    Pixel p = edge_intersection(region, ref);
    CHECK(p == region.heel);
  }
}

TEST_CASE("sample_indices arithmetic") {
  SUBCASE("even fit") {
    std::vector<int> idx = sample_indices(13, 4.0, std::nullopt);
    CHECK(idx == std::vector<int>{0, 4, 8, 12});
  }
  SUBCASE("scaled step with forced count clamps and keeps duplicates") {
    std::vector<int> idx = sample_indices(10, 4.5, 4);
    CHECK(idx == std::vector<int>{0, 5, 9, 9});
  }
  SUBCASE("single-pixel budget") {
    std::vector<int> idx = sample_indices(3, 4.0, std::nullopt);
    CHECK(idx == std::vector<int>{0});
  }
}

TEST_CASE("scaled_step is the plain length ratio") {
  CHECK(scaled_step(4.0, 100, 150) == doctest::Approx(6.0));
  CHECK(scaled_step(4.0, 80, 80) == doctest::Approx(4.0));
}

TEST_CASE("build_grids pairs counts and stays inside the masks") {
  synth::SynthSpec spec;
  spec.left.center = {90, 120};
  spec.right.center = {229, 120};
  spec.right.scale = 1.25;  // different projection sizes
  spec.noise_amplitude = 0;
  auto [img, truth] = synth::generate(spec);
  auto [left, right] = split_feet(segment(img, exhaustive_best_threshold(img).threshold), img);
  ScanConfig config;
  auto [gl, gr] = build_grids(left, right, config);

  REQUIRE(gl.lines.size() == 72);
  REQUIRE(gr.lines.size() == 72);
  Pixel lc{static_cast<int>(std::lround(left.centroid.x)),
           static_cast<int>(std::lround(left.centroid.y))};
  Pixel rc{static_cast<int>(std::lround(right.centroid.x)),
           static_cast<int>(std::lround(right.centroid.y))};
  for (int i = 0; i < 72; ++i) {
    CAPTURE(i);
    const RadialLine& ll = gl.lines[i];
    const RadialLine& rl = gr.lines[i];
    REQUIRE(ll.samples.size() == rl.samples.size());
    CHECK(ll.samples.front().pixel == lc);
    CHECK(rl.samples.front().pixel == rc);
    CHECK(ll.raster.back() == ll.edge_point);
    CHECK(ll.length == static_cast<int>(ll.raster.size()));
    CHECK(rl.sample_step ==
          doctest::Approx(scaled_step(config.step_left, ll.length, rl.length)));
    for (const Sample& s : ll.samples) CHECK(left.mask.at(s.pixel.x, s.pixel.y));
    for (const Sample& s : rl.samples) CHECK(right.mask.at(s.pixel.x, s.pixel.y));
    // Samples are a subsequence of the raster carrying the image intensity.
    for (const Sample& s : ll.samples) CHECK(img.at(s.pixel.x, s.pixel.y) == s.intensity);
  }

  SUBCASE("length ratio tracks the scale ratio") {
    double ratio_sum = 0.0;
    for (int i = 0; i < 72; ++i)
      ratio_sum += static_cast<double>(gr.lines[i].length) / gl.lines[i].length;
    CHECK(ratio_sum / 72.0 == doctest::Approx(1.25).epsilon(0.05));
  }
}

TEST_CASE("degenerate radial lines are reported with their index") {
  // Left foot is a 1x2 domino: the ray toward the heel has a one-pixel
  // raster. The right blob keeps split_feet happy (within the 10x ratio).
  ThermalImage img = make_image(16, 8, 40);
  BinaryMask m = make_mask(16, 8);
  m.set(1, 3, true);
  m.set(1, 4, true);
  for (int y = 2; y <= 6; ++y)
    for (int x = 10; x <= 13; ++x) m.set(x, y, true);
  auto [left, right] = split_feet(m, img);
  REQUIRE(left.mask.count() == 2);
  ScanConfig config;
  CHECK_THROWS_WITH_AS(build_grids(left, right, config), "degenerate radial line 0",
                       ContentError);
}

}  // namespace
}  // namespace pedscan
