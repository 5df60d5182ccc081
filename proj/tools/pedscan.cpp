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

// pedscan: plantar thermal asymmetry scanner.
//
// Subcommands:
//   segment  — GA threshold segmentation of one image
//   analyze  — full pipeline: segment, split feet, radial grids, comparison
//   synth    — deterministic 140-image synthetic corpus + manifest
//   batch    — run both comparison methods over a manifest, fold metrics
//
// Exit codes: 0 ok, 2 I/O error, 3 configuration error, 4 content error.

#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "pedscan/asymmetry.hpp"
#include "pedscan/image.hpp"
#include "pedscan/json_io.hpp"
#include "pedscan/pipeline.hpp"
#include "pedscan/synth.hpp"

namespace {

using nlohmann::json;

struct Options {
  std::string input;
  std::string out_dir = ".";
  std::string method = "both";
  pedscan::GaConfig ga;
  pedscan::ScanConfig scan;
  double celsius_per_level = 0.2;
  bool celsius_given = false;
};

void add_ga_flags(CLI::App* cmd, Options* opts) {
  cmd->add_option("--seed", opts->ga.rng_seed, "GA random seed")
      ->envname("PEDSCAN_SEED");
  cmd->add_option("--population", opts->ga.population_size, "GA population size");
  cmd->add_option("--generations", opts->ga.max_generations, "GA generation count");
  cmd->add_option("--cross-rate", opts->ga.cross_rate, "GA crossover rate");
  cmd->add_option("--mutation-rate", opts->ga.mutation_rate, "GA per-bit mutation rate");
}

void add_scan_flags(CLI::App* cmd, Options* opts) {
  cmd->add_option("--lines", opts->scan.lines, "radial lines per foot (>= 72)");
  cmd->add_option("--step", opts->scan.step_left, "left-foot sample spacing, pixels");
  cmd->add_option("--threshold", opts->scan.compare_threshold,
                  "intensity delta that flags a point (the clinical 2.2 C "
                  "difference is ~11 levels at the default 0.2 C/level)");
  cmd->add_option("--edge-margin", opts->scan.exclude_edge_margin,
                  "edge samples excluded from the scanning comparison");
}

void add_out_flag(CLI::App* cmd, Options* opts) {
  cmd->add_option("--out", opts->out_dir, "output directory")
      ->capture_default_str();
}

std::filesystem::path ensure_out_dir(const std::string& dir) {
  std::filesystem::path p(dir);
  std::error_code ec;
  std::filesystem::create_directories(p, ec);
  if (ec) throw pedscan::IoError("cannot create output directory: " + dir);
  return p;
}

pedscan::MethodChoice parse_method(const std::string& name) {
  if (name == "scan") return pedscan::MethodChoice::kScanning;
  if (name == "overlap") return pedscan::MethodChoice::kOverlapping;
  if (name == "both") return pedscan::MethodChoice::kBoth;
  throw pedscan::ConfigError("unknown method: " + name);
}

pedscan::ThermalImage mask_to_image(const pedscan::BinaryMask& mask) {
  pedscan::ThermalImage img = pedscan::make_image(mask.width, mask.height);
  for (int y = 0; y < mask.height; ++y)
    for (int x = 0; x < mask.width; ++x)
      if (mask.at(x, y)) img.at(x, y) = 255;
  return img;
}

pedscan::Overlay grid_overlay(const pedscan::RadialGrid& grid) {
  pedscan::Overlay overlay;
  overlay.legend[pedscan::MarkColor::kRed] = "radial grid sample";
  for (const auto& line : grid.lines)
    for (const auto& s : line.samples)
      overlay.points.push_back({s.pixel, pedscan::MarkColor::kRed});
  return overlay;
}

pedscan::Overlay report_overlay(const pedscan::AsymmetryReport& report) {
  pedscan::Overlay overlay;
  overlay.legend[pedscan::MarkColor::kRed] = "asymmetric point";
  overlay.legend[pedscan::MarkColor::kYellow] = "edge-adjacent asymmetric point";
  for (const auto& p : report.points)
    overlay.points.push_back({p.pixel, p.edge_adjacent ? pedscan::MarkColor::kYellow
                                                       : pedscan::MarkColor::kRed});
  return overlay;
}

int cmd_segment(const Options& opts) {
  pedscan::ThermalImage image = pedscan::load_image(opts.input);
  pedscan::GaResult result = pedscan::evolve(image, opts.ga);
  pedscan::BinaryMask mask = pedscan::segment(image, result.threshold);

  std::filesystem::path out = ensure_out_dir(opts.out_dir);
  pedscan::write_pgm(mask_to_image(mask), (out / "mask.pgm").string());
  pedscan::write_pgm(pedscan::apply_mask(image, mask), (out / "segmented.pgm").string());

  json doc;
  doc["config"] = pedscan::ga_config_to_json(opts.ga);
  doc["result"] = pedscan::ga_result_to_json(result);
  pedscan::write_json(doc, (out / "threshold.json").string());
  return 0;
}

int cmd_analyze(const Options& opts) {
  pedscan::ThermalImage image = pedscan::load_image(opts.input);
  if (opts.celsius_given) image.celsius_per_level = opts.celsius_per_level;

  pedscan::PipelineConfig config;
  config.ga = opts.ga;
  config.scan = opts.scan;
  config.method = parse_method(opts.method);
  pedscan::AnalysisResult res = pedscan::analyze(image, config);

  std::filesystem::path out = ensure_out_dir(opts.out_dir);
  pedscan::save_annotated(image, {grid_overlay(res.grid_left), grid_overlay(res.grid_right)},
                          (out / "overlay_grid.png").string());

  if (res.scanning) {
    pedscan::write_json(pedscan::report_to_json(*res.scanning, res.celsius_per_level),
                        (out / "report_scanning.json").string());
    pedscan::save_annotated(image, {report_overlay(*res.scanning)},
                            (out / "overlay_scanning.png").string());
  }
  if (res.overlapping) {
    pedscan::write_json(pedscan::report_to_json(*res.overlapping, res.celsius_per_level),
                        (out / "report_overlapping.json").string());
    pedscan::save_annotated(image, {report_overlay(*res.overlapping)},
                            (out / "overlay_overlapping.png").string());
  }
  return 0;
}

std::string corpus_file_name(int index) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "corpus_%03d.pgm", index);
  return buf;
}

int cmd_synth(const Options& opts) {
  std::vector<pedscan::synth::CorpusImage> corpus =
      pedscan::synth::generate_corpus(opts.ga.rng_seed);
  std::filesystem::path out = ensure_out_dir(opts.out_dir);

  json images = json::array();
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    const auto& entry = corpus[i];
    std::string name = corpus_file_name(static_cast<int>(i));
    pedscan::write_pgm(entry.image, (out / name).string());

    json rec;
    rec["file"] = name;
    rec["category"] = pedscan::category_name(entry.category);
    rec["heel_left"] = {entry.truth.left_heel.x, entry.truth.left_heel.y};
    rec["heel_right"] = {entry.truth.right_heel.x, entry.truth.right_heel.y};
    if (entry.truth.hotspots.empty()) {
      rec["hotspot"] = nullptr;
    } else {
      const auto& h = entry.truth.hotspots.front();
      rec["hotspot"] = {{"side", pedscan::side_name(h.side)},
                        {"x", pedscan::round6(h.center.x)},
                        {"y", pedscan::round6(h.center.y)},
                        {"radius", pedscan::round6(h.radius)}};
    }
    images.push_back(rec);
  }

  json manifest;
  manifest["seed"] = opts.ga.rng_seed;
  manifest["images"] = images;
  pedscan::write_json(manifest, (out / "manifest.json").string());
  return 0;
}

pedscan::Category category_from_name(const std::string& name) {
  for (pedscan::Category c : {pedscan::Category::kHealthySameSize,
                              pedscan::Category::kHealthyDifferentSize,
                              pedscan::Category::kAbnormalSameSize,
                              pedscan::Category::kAbnormalDifferentSize}) {
    if (pedscan::category_name(c) == name) return c;
  }
  throw pedscan::ConfigError("unknown category: " + name);
}

pedscan::FootSide side_from_name(const std::string& name) {
  if (name == "left") return pedscan::FootSide::kLeft;
  if (name == "right") return pedscan::FootSide::kRight;
  throw pedscan::ConfigError("unknown side: " + name);
}

int cmd_batch(const Options& opts) {
  std::ifstream in(opts.input);
  if (!in) throw pedscan::IoError("cannot open file: " + opts.input);
  json manifest;
  try {
    in >> manifest;
  } catch (const json::exception& e) {
    throw pedscan::IoError("malformed manifest: " + std::string(e.what()));
  }
  if (!manifest.contains("images") || !manifest["images"].is_array())
    throw pedscan::IoError("malformed manifest: missing images array");

  std::filesystem::path base = std::filesystem::path(opts.input).parent_path();
  pedscan::PipelineConfig config;
  config.ga = opts.ga;
  config.scan = opts.scan;
  config.method = pedscan::MethodChoice::kBoth;  // the metrics table needs both

  std::vector<pedscan::LabeledReport> reports;
  for (const auto& rec : manifest["images"]) {
    std::string file = rec.at("file").get<std::string>();
    pedscan::Category category =
        category_from_name(rec.at("category").get<std::string>());
    std::optional<pedscan::HotspotDisk> hotspot;
    if (rec.contains("hotspot") && !rec["hotspot"].is_null()) {
      const auto& h = rec["hotspot"];
      hotspot = pedscan::HotspotDisk{
          side_from_name(h.at("side").get<std::string>()),
          {h.at("x").get<double>(), h.at("y").get<double>()},
          h.at("radius").get<double>()};
    }

    pedscan::ThermalImage image = pedscan::load_image((base / file).string());
    pedscan::AnalysisResult res = pedscan::analyze(image, config);
    reports.push_back({category, *res.scanning, hotspot});
    reports.push_back({category, *res.overlapping, hotspot});
  }

  pedscan::CorpusMetrics metrics = pedscan::corpus_metrics(reports);
  std::filesystem::path out = ensure_out_dir(opts.out_dir);
  pedscan::write_json(pedscan::metrics_to_json(metrics), (out / "metrics.json").string());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"pedscan: plantar thermal asymmetry scanner"};
  app.require_subcommand(1);

  Options seg_opts, ana_opts, syn_opts, bat_opts;

  CLI::App* seg = app.add_subcommand("segment", "GA threshold segmentation");
  seg->add_option("input", seg_opts.input, "input image (PGM or PNG)")->required();
  add_ga_flags(seg, &seg_opts);
  add_out_flag(seg, &seg_opts);

  CLI::App* ana = app.add_subcommand("analyze", "full asymmetry analysis");
  ana->add_option("input", ana_opts.input, "input image (PGM or PNG)")->required();
  add_ga_flags(ana, &ana_opts);
  add_scan_flags(ana, &ana_opts);
  ana->add_option("--method", ana_opts.method, "scan | overlap | both")
      ->capture_default_str();
  ana->add_option("--celsius-per-level", ana_opts.celsius_per_level,
                  "calibration override for report labeling");
  add_out_flag(ana, &ana_opts);

  CLI::App* syn = app.add_subcommand("synth", "generate the synthetic corpus");
  syn->add_option("--seed", syn_opts.ga.rng_seed, "corpus seed")
      ->envname("PEDSCAN_SEED");
  add_out_flag(syn, &syn_opts);

  CLI::App* bat = app.add_subcommand("batch", "metrics over a corpus manifest");
  bat->add_option("manifest", bat_opts.input, "manifest.json from synth")->required();
  add_ga_flags(bat, &bat_opts);
  add_scan_flags(bat, &bat_opts);
  add_out_flag(bat, &bat_opts);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 3;
  }
  ana_opts.celsius_given = ana->count("--celsius-per-level") > 0;

  try {
    if (seg->parsed()) return cmd_segment(seg_opts);
    if (ana->parsed()) return cmd_analyze(ana_opts);
    if (syn->parsed()) return cmd_synth(syn_opts);
    if (bat->parsed()) return cmd_batch(bat_opts);
  } catch (const pedscan::IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const pedscan::ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const pedscan::ContentError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
