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

#ifndef PEDSCAN_IMAGE_HPP_
#define PEDSCAN_IMAGE_HPP_

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "pedscan/core.hpp"

namespace pedscan {

// 8-bit grayscale thermal image, row-major. Intensity is a relative
// temperature level; celsius_per_level (from an optional sidecar) is used
// for report labeling only, never for computation.
struct ThermalImage {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> intensities;
  std::optional<double> celsius_per_level;

  bool in_bounds(int x, int y) const { return x >= 0 && x < width && y >= 0 && y < height; }
  std::uint8_t at(int x, int y) const { return intensities[static_cast<std::size_t>(y) * width + x]; }
  std::uint8_t& at(int x, int y) { return intensities[static_cast<std::size_t>(y) * width + x]; }
  std::size_t pixel_count() const { return static_cast<std::size_t>(width) * height; }
};

ThermalImage make_image(int width, int height, std::uint8_t fill = 0);

// Same frame as ThermalImage; one byte per pixel, 0 = background, 1 = foreground.
struct BinaryMask {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> bits;

  bool in_bounds(int x, int y) const { return x >= 0 && x < width && y >= 0 && y < height; }
  bool at(int x, int y) const { return bits[static_cast<std::size_t>(y) * width + x] != 0; }
  void set(int x, int y, bool v) { bits[static_cast<std::size_t>(y) * width + x] = v ? 1 : 0; }
  std::size_t count() const;
};

BinaryMask make_mask(int width, int height);

enum class MarkColor { kRed, kGreen, kBlue, kYellow, kCyan, kMagenta };

struct OverlayPoint {
  Pixel pixel;
  MarkColor color = MarkColor::kRed;
};

struct Overlay {
  std::vector<OverlayPoint> points;
  std::map<MarkColor, std::string> legend;
};

// Decoded RGB frame, used to verify annotated output.
struct RgbImage {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> rgb;  // 3 bytes per pixel, row-major
};

// Reads PGM (P2/P5) or PNG (8-bit gray or RGB; RGB collapses by BT.601 luminance).
// A sidecar <stem>.json with {"celsius_per_level": number} fills the calibration
// field when present. Throws IoError on missing/garbled files, on maxval or bit
// depth above 8 bits ("unsupported bit depth"), and on unsupported PNG color types.
ThermalImage load_image(const std::string& path);

// P5 output, maxval 255. Byte-deterministic.
void write_pgm(const ThermalImage& image, const std::string& path);

// Grayscale base with overlay points recolored, written as 8-bit RGB PNG.
// Later overlays draw over earlier ones. Byte-deterministic for fixed inputs.
// Throws ConfigError if any overlay point is out of bounds.
void save_annotated(const ThermalImage& image, const std::vector<Overlay>& overlays,
                    const std::string& path);

RgbImage load_png_rgb(const std::string& path);

// Foreground keeps its intensity, background drops to 0.
ThermalImage apply_mask(const ThermalImage& image, const BinaryMask& mask);

}  // namespace pedscan

#endif  // PEDSCAN_IMAGE_HPP_
