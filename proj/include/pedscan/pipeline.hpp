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

#ifndef PEDSCAN_PIPELINE_HPP_
#define PEDSCAN_PIPELINE_HPP_

#include <optional>

#include "pedscan/asymmetry.hpp"
#include "pedscan/ga.hpp"
#include "pedscan/scan.hpp"
#include "pedscan/synth.hpp"

namespace pedscan {

enum class MethodChoice { kScanning, kOverlapping, kBoth };

struct PipelineConfig {
  GaConfig ga;
  ScanConfig scan;
  HeelSector heel;
  MethodChoice method = MethodChoice::kBoth;
  double default_celsius_per_level = 0.2;  // report labeling only
};

struct AnalysisResult {
  GaResult ga;
  BinaryMask mask;
  FootRegion left;
  FootRegion right;
  RadialGrid grid_left;
  RadialGrid grid_right;
  std::optional<AsymmetryReport> scanning;
  std::optional<AsymmetryReport> overlapping;
  double celsius_per_level = 0.2;
};

// Full chain: GA threshold, segmentation, foot split, radial grids, and the
// selected comparison(s).
AnalysisResult analyze(const ThermalImage& image, const PipelineConfig& config);

}  // namespace pedscan

#endif  // PEDSCAN_PIPELINE_HPP_
