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

#include "pedscan/image.hpp"

#include <png.h>

#include <array>
#include <cctype>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include "json.hpp"

namespace pedscan {

namespace {

constexpr int kMaxDimension = 1 << 15;

void check_dims(int w, int h) {
  if (w < 1 || h < 1) throw IoError("zero-dimension image");
  if (w > kMaxDimension || h > kMaxDimension) throw IoError("image dimensions too large");
}

// Token reader for PNM headers: skips whitespace and # comments.
int next_pnm_int(std::istream& in, const std::string& path) {
  int c = in.get();
  while (c != EOF) {
    if (c == '#') {
      while (c != EOF && c != '\n') c = in.get();
    } else if (std::isspace(c)) {
      c = in.get();
    } else {
      break;
    }
  }
  if (c == EOF || !std::isdigit(c)) throw IoError("malformed PGM header: " + path);
  long v = 0;
  while (c != EOF && std::isdigit(c)) {
    v = v * 10 + (c - '0');
    if (v > 1L << 30) throw IoError("malformed PGM header: " + path);
    c = in.get();
  }
  if (c != EOF) in.unget();
  return static_cast<int>(v);
}

ThermalImage load_pgm(std::ifstream& in, const std::string& path, bool ascii) {
  int w = next_pnm_int(in, path);
  int h = next_pnm_int(in, path);
  int maxval = next_pnm_int(in, path);
  check_dims(w, h);
  if (maxval > 255) throw IoError("unsupported bit depth: " + path);
  if (maxval < 1) throw IoError("malformed PGM header: " + path);

  ThermalImage img = make_image(w, h);
  if (ascii) {
    for (std::size_t i = 0; i < img.pixel_count(); ++i) {
      int v = next_pnm_int(in, path);
      if (v > maxval) throw IoError("pixel value exceeds maxval: " + path);
      img.intensities[i] = static_cast<std::uint8_t>(v);
    }
  } else {
    int sep = in.get();  // single whitespace byte after maxval
    if (sep == EOF || !std::isspace(sep)) throw IoError("malformed PGM header: " + path);
    in.read(reinterpret_cast<char*>(img.intensities.data()),
            static_cast<std::streamsize>(img.pixel_count()));
    if (in.gcount() != static_cast<std::streamsize>(img.pixel_count()))
      throw IoError("truncated PGM data: " + path);
    for (std::uint8_t v : img.intensities)
      if (v > maxval) throw IoError("pixel value exceeds maxval: " + path);
  }
  return img;
}

struct PngReadCtx {
  png_structp png = nullptr;
  png_infop info = nullptr;
  std::FILE* fp = nullptr;
  ~PngReadCtx() {
    if (png) png_destroy_read_struct(&png, info ? &info : nullptr, nullptr);
    if (fp) std::fclose(fp);
  }
};

// Decodes a PNG to rows, validating 8-bit depth and gray/RGB color type.
void read_png_rows(const std::string& path, int* w, int* h, int* channels,
                   std::vector<std::uint8_t>* data) {
  PngReadCtx ctx;
  ctx.fp = std::fopen(path.c_str(), "rb");
  if (!ctx.fp) throw IoError("cannot open image: " + path);

  ctx.png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  if (!ctx.png) throw IoError("png init failed");
  ctx.info = png_create_info_struct(ctx.png);
  if (!ctx.info) throw IoError("png init failed");
  if (setjmp(png_jmpbuf(ctx.png))) throw IoError("malformed PNG: " + path);

  png_init_io(ctx.png, ctx.fp);
  png_read_info(ctx.png, ctx.info);

  png_uint_32 width = 0, height = 0;
  int bit_depth = 0, color_type = 0;
  png_get_IHDR(ctx.png, ctx.info, &width, &height, &bit_depth, &color_type, nullptr, nullptr,
               nullptr);
  if (bit_depth != 8) throw IoError("unsupported bit depth: " + path);
  int ch;
  if (color_type == PNG_COLOR_TYPE_GRAY) {
    ch = 1;
  } else if (color_type == PNG_COLOR_TYPE_RGB) {
    ch = 3;
  } else {
    throw IoError("unsupported color type: " + path);
  }
  check_dims(static_cast<int>(width), static_cast<int>(height));

  int passes = png_set_interlace_handling(ctx.png);
  png_read_update_info(ctx.png, ctx.info);

  data->assign(static_cast<std::size_t>(width) * height * ch, 0);
  std::vector<png_bytep> rows(height);
  for (png_uint_32 y = 0; y < height; ++y)
    rows[y] = data->data() + static_cast<std::size_t>(y) * width * ch;
  for (int p = 0; p < passes; ++p) png_read_rows(ctx.png, rows.data(), nullptr, height);
  png_read_end(ctx.png, nullptr);

  *w = static_cast<int>(width);
  *h = static_cast<int>(height);
  *channels = ch;
}

ThermalImage load_png(const std::string& path) {
  int w = 0, h = 0, ch = 0;
  std::vector<std::uint8_t> data;
  read_png_rows(path, &w, &h, &ch, &data);

  ThermalImage img = make_image(w, h);
  if (ch == 1) {
    img.intensities = std::move(data);
  } else {
    for (std::size_t i = 0; i < img.pixel_count(); ++i) {
      int r = data[i * 3], g = data[i * 3 + 1], b = data[i * 3 + 2];
      img.intensities[i] = static_cast<std::uint8_t>((299 * r + 587 * g + 114 * b + 500) / 1000);
    }
  }
  return img;
}

void load_sidecar(ThermalImage* img, const std::string& image_path) {
  std::filesystem::path sidecar(image_path);
  sidecar.replace_extension(".json");
  std::error_code ec;
  if (!std::filesystem::exists(sidecar, ec) || ec) return;
  std::ifstream in(sidecar);
  if (!in) throw IoError("cannot open sidecar: " + sidecar.string());
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::parse_error&) {
    throw IoError("malformed sidecar JSON: " + sidecar.string());
  }
  if (j.contains("celsius_per_level")) {
    if (!j["celsius_per_level"].is_number())
      throw IoError("celsius_per_level must be a number: " + sidecar.string());
    img->celsius_per_level = j["celsius_per_level"].get<double>();
  }
}

struct PngWriteCtx {
  png_structp png = nullptr;
  png_infop info = nullptr;
  std::FILE* fp = nullptr;
  ~PngWriteCtx() {
    if (png) png_destroy_write_struct(&png, info ? &info : nullptr);
    if (fp) std::fclose(fp);
  }
};

void write_png_rgb(const std::string& path, int w, int h, const std::vector<std::uint8_t>& rgb) {
  PngWriteCtx ctx;
  ctx.fp = std::fopen(path.c_str(), "wb");
  if (!ctx.fp) throw IoError("cannot write image: " + path);

  ctx.png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  if (!ctx.png) throw IoError("png init failed");
  ctx.info = png_create_info_struct(ctx.png);
  if (!ctx.info) throw IoError("png init failed");
  if (setjmp(png_jmpbuf(ctx.png))) throw IoError("cannot write image: " + path);

  png_init_io(ctx.png, ctx.fp);
  // Fixed encoder settings keep the output byte-identical between runs.
  png_set_compression_level(ctx.png, 6);
  png_set_filter(ctx.png, 0, PNG_FILTER_NONE);
  png_set_IHDR(ctx.png, ctx.info, w, h, 8, PNG_COLOR_TYPE_RGB, PNG_INTERLACE_NONE,
               PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
  png_write_info(ctx.png, ctx.info);
  std::vector<png_const_bytep> rows(h);
  for (int y = 0; y < h; ++y) rows[y] = rgb.data() + static_cast<std::size_t>(y) * w * 3;
  for (int y = 0; y < h; ++y) png_write_row(ctx.png, rows[y]);
  png_write_end(ctx.png, ctx.info);
}

std::array<std::uint8_t, 3> color_rgb(MarkColor c) {
  switch (c) {
    case MarkColor::kRed: return {230, 30, 30};
    case MarkColor::kGreen: return {40, 200, 60};
    case MarkColor::kBlue: return {50, 90, 230};
    case MarkColor::kYellow: return {235, 210, 40};
    case MarkColor::kCyan: return {60, 210, 210};
    case MarkColor::kMagenta: return {220, 60, 200};
  }
  return {255, 255, 255};
}

}  // namespace

ThermalImage make_image(int width, int height, std::uint8_t fill) {
  check_dims(width, height);
  ThermalImage img;
  img.width = width;
  img.height = height;
  img.intensities.assign(static_cast<std::size_t>(width) * height, fill);
  return img;
}

BinaryMask make_mask(int width, int height) {
  check_dims(width, height);
  BinaryMask m;
  m.width = width;
  m.height = height;
  m.bits.assign(static_cast<std::size_t>(width) * height, 0);
  return m;
}

std::size_t BinaryMask::count() const {
  std::size_t n = 0;
  for (std::uint8_t b : bits) n += b ? 1 : 0;
  return n;
}

ThermalImage load_image(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open image: " + path);
  int m0 = in.get();
  int m1 = in.get();
  ThermalImage img;
  if (m0 == 'P' && (m1 == '2' || m1 == '5')) {
    img = load_pgm(in, path, m1 == '2');
  } else if (m0 == 0x89 && m1 == 'P') {
    in.close();
    img = load_png(path);
  } else {
    throw IoError("unsupported image format: " + path);
  }
  load_sidecar(&img, path);
  return img;
}

void write_pgm(const ThermalImage& image, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write image: " + path);
  out << "P5\n" << image.width << " " << image.height << "\n255\n";
  out.write(reinterpret_cast<const char*>(image.intensities.data()),
            static_cast<std::streamsize>(image.pixel_count()));
  if (!out) throw IoError("cannot write image: " + path);
}

void save_annotated(const ThermalImage& image, const std::vector<Overlay>& overlays,
                    const std::string& path) {
  std::vector<std::uint8_t> rgb(image.pixel_count() * 3);
  for (std::size_t i = 0; i < image.pixel_count(); ++i) {
    rgb[i * 3] = rgb[i * 3 + 1] = rgb[i * 3 + 2] = image.intensities[i];
  }
  for (const Overlay& ov : overlays) {
    for (const OverlayPoint& pt : ov.points) {
      if (!image.in_bounds(pt.pixel.x, pt.pixel.y))
        throw ConfigError("overlay point out of bounds");
      auto c = color_rgb(pt.color);
      std::size_t i = static_cast<std::size_t>(pt.pixel.y) * image.width + pt.pixel.x;
      rgb[i * 3] = c[0];
      rgb[i * 3 + 1] = c[1];
      rgb[i * 3 + 2] = c[2];
    }
  }
  write_png_rgb(path, image.width, image.height, rgb);
}

RgbImage load_png_rgb(const std::string& path) {
  RgbImage out;
  int ch = 0;
  std::vector<std::uint8_t> data;
  read_png_rows(path, &out.width, &out.height, &ch, &data);
  if (ch == 3) {
    out.rgb = std::move(data);
  } else {
    out.rgb.resize(data.size() * 3);
    for (std::size_t i = 0; i < data.size(); ++i)
      out.rgb[i * 3] = out.rgb[i * 3 + 1] = out.rgb[i * 3 + 2] = data[i];
  }
  return out;
}

ThermalImage apply_mask(const ThermalImage& image, const BinaryMask& mask) {
  if (image.width != mask.width || image.height != mask.height)
    throw ConfigError("image/mask dimension mismatch");
  ThermalImage out = image;
  for (std::size_t i = 0; i < out.pixel_count(); ++i)
    if (!mask.bits[i]) out.intensities[i] = 0;
  return out;
}

}  // namespace pedscan
