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

#ifndef PEDSCAN_SYNTH_HPP_
#define PEDSCAN_SYNTH_HPP_

#include <cstdint>
#include <utility>
#include <vector>

#include "pedscan/asymmetry.hpp"
#include "pedscan/image.hpp"

namespace pedscan {
namespace synth {

// Hotspot in foot-local template units. The bump is quadratic: +delta at the
// disk center, fading to 0 at the radius.
struct HotspotSpec {
  Vec2 offset;
  double radius = 10.0;
  int delta = 15;
};

// One foot. The template shape (forefoot disk, rearfoot ellipse, five toe
// lobes, heel bulge) is bilaterally symmetric about its long axis; scale and
// rotation map template coordinates into the image. The longitudinal gradient
// is per template pixel, so intensity is a function of relative position
// within the foot.
struct FootSpec {
  Vec2 center;
  double scale = 1.0;
  double rotation = 0.0;  // radians, positive rotates the heel off straight-down
  int base_intensity = 150;
  double longitudinal_gradient = 0.4;
  std::vector<HotspotSpec> hotspots;
};

struct SynthSpec {
  int width = 320;
  int height = 240;
  FootSpec left;
  FootSpec right;
  int background_base = 40;
  double background_gradient = 0.1;  // per pixel, warmer toward the top (leg heat)
  int noise_amplitude = 1;           // uniform integer noise in [-amp, +amp]
  std::uint64_t rng_seed = 0;
};

struct GroundTruth {
  BinaryMask left_mask;
  BinaryMask right_mask;
  Pixel left_heel;
  Pixel right_heel;
  std::vector<HotspotDisk> hotspots;  // image frame
};

// Renders the image and its ground truth. Deterministic for a fixed spec.
// Throws ContentError when a foot extends outside the image and ConfigError
// when the foot/background contrast drops below the 20-level margin.
std::pair<ThermalImage, GroundTruth> generate(const SynthSpec& spec);

struct CorpusEntry {
  Category category;
  SynthSpec spec;
};

// Parameter draws for the 140-image corpus: 40 healthy same-size, 40 healthy
// different-size (one foot scaled by 1.1-1.4), 30 abnormal same-size, 30
// abnormal different-size (one hotspot, delta at least twice the default
// compare threshold). Same-size pairs are exact geometric mirrors.
std::vector<CorpusEntry> corpus_specs(std::uint64_t seed);

struct CorpusImage {
  Category category;
  ThermalImage image;
  GroundTruth truth;
};

std::vector<CorpusImage> generate_corpus(std::uint64_t seed);

}  // namespace synth
}  // namespace pedscan

#endif  // PEDSCAN_SYNTH_HPP_
