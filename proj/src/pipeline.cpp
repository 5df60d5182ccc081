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

#include "pedscan/pipeline.hpp"

#include <utility>

namespace pedscan {

AnalysisResult analyze(const ThermalImage& image,
                       const PipelineConfig& config) {
  config.ga.validate();
  config.scan.validate();

  GaResult ga = evolve(image, config.ga);
  BinaryMask mask = segment(image, ga.threshold);
  auto [left, right] = split_feet(mask, image, config.heel);
  auto [grid_left, grid_right] =
      build_grids(left, right, config.scan);

  AnalysisResult result{std::move(ga),
                        std::move(mask),
                        std::move(left),
                        std::move(right),
                        std::move(grid_left),
                        std::move(grid_right),
                        std::nullopt,
                        std::nullopt,
                        image.celsius_per_level.value_or(
                            config.default_celsius_per_level)};

  if (config.method != MethodChoice::kOverlapping) {
    result.scanning = compare_scan(result.grid_left, result.grid_right,
                                   config.scan.compare_threshold,
                                   config.scan.exclude_edge_margin);
  }
  if (config.method != MethodChoice::kScanning) {
    result.overlapping = compare_overlap(result.left, result.right,
                                         config.scan.compare_threshold);
  }
  return result;
}

}  // namespace pedscan
