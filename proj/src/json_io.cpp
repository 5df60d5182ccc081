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

#include "pedscan/json_io.hpp"

#include <cmath>
#include <fstream>

namespace pedscan {

using nlohmann::json;

double round6(double v) { return std::round(v * 1e6) / 1e6; }

nlohmann::json ga_config_to_json(const GaConfig& c) {
  return json{{"population", c.population_size},
              {"cross_rate", round6(c.cross_rate)},
              {"mutation_rate", round6(c.mutation_rate)},
              {"max_generations", c.max_generations},
              {"rate_reduction_factor", round6(c.rate_reduction_factor)},
              {"chromosome_bits", c.chromosome_bits},
              {"seed", c.rng_seed}};
}

GaConfig ga_config_from_json(const nlohmann::json& j) {
  GaConfig c;
  c.population_size = j.value("population", c.population_size);
  c.cross_rate = j.value("cross_rate", c.cross_rate);
  c.mutation_rate = j.value("mutation_rate", c.mutation_rate);
  c.max_generations = j.value("max_generations", c.max_generations);
  c.rate_reduction_factor = j.value("rate_reduction_factor", c.rate_reduction_factor);
  c.chromosome_bits = j.value("chromosome_bits", c.chromosome_bits);
  c.rng_seed = j.value("seed", c.rng_seed);
  return c;
}

nlohmann::json ga_result_to_json(const GaResult& r) {
  json hist = json::array();
  for (double f : r.best_fitness_history) hist.push_back(round6(f));
  return json{{"threshold", r.threshold},
              {"fitness", round6(r.stats.fitness)},
              {"foreground_pixels", r.stats.num_f},
              {"background_pixels", r.stats.num_b},
              {"foreground_mean", round6(r.stats.m_f)},
              {"background_mean", round6(r.stats.m_b)},
              {"generations", r.generations_run},
              {"best_fitness_history", hist}};
}

nlohmann::json scan_config_to_json(const ScanConfig& c) {
  return json{{"lines", c.lines},
              {"step", c.step_left},
              {"threshold", c.compare_threshold},
              {"edge_margin", c.exclude_edge_margin}};
}

ScanConfig scan_config_from_json(const nlohmann::json& j) {
  ScanConfig c;
  c.lines = j.value("lines", c.lines);
  c.step_left = j.value("step", c.step_left);
  c.compare_threshold = j.value("threshold", c.compare_threshold);
  c.exclude_edge_margin = j.value("edge_margin", c.exclude_edge_margin);
  return c;
}

std::string side_name(FootSide side) { return side == FootSide::kLeft ? "left" : "right"; }

std::string method_name(Method method) {
  return method == Method::kScanning ? "scanning" : "overlapping";
}

nlohmann::json region_to_json(const FootRegion& region) {
  json edge = json::array();
  for (const Pixel& p : region.edge) edge.push_back(json::array({p.x, p.y}));
  return json{{"side", side_name(region.side)},
              {"centroid", {{"x", round6(region.centroid.x)}, {"y", round6(region.centroid.y)}}},
              {"heel", {{"x", region.heel.x}, {"y", region.heel.y}}},
              {"area", static_cast<std::int64_t>(region.mask.count())},
              {"edge", edge}};
}

nlohmann::json grid_to_json(const RadialGrid& grid) {
  json lines = json::array();
  for (const RadialLine& l : grid.lines) {
    json samples = json::array();
    for (const Sample& s : l.samples)
      samples.push_back(json::array({s.pixel.x, s.pixel.y, s.intensity}));
    lines.push_back(json{{"index", l.index},
                         {"angle", round6(l.angle)},
                         {"edge", {{"x", l.edge_point.x}, {"y", l.edge_point.y}}},
                         {"length", l.length},
                         {"step", round6(l.sample_step)},
                         {"samples", samples}});
  }
  return json{{"side", side_name(grid.side)},
              {"config", scan_config_to_json(grid.config)},
              {"lines", lines}};
}

nlohmann::json report_to_json(const AsymmetryReport& report, double celsius_per_level) {
  json points = json::array();
  for (const AbnormalPoint& p : report.points) {
    json pt{{"side", side_name(p.side)},
            {"x", p.pixel.x},
            {"y", p.pixel.y},
            {"delta", p.delta},
            {"edge", p.edge_adjacent}};
    if (report.method == Method::kScanning) {
      pt["line"] = p.line;
      pt["sample"] = p.sample;
    } else {
      pt["line"] = nullptr;
      pt["sample"] = nullptr;
    }
    points.push_back(std::move(pt));
  }
  return json{{"method", method_name(report.method)},
              {"threshold", report.threshold},
              {"approx_threshold_celsius", round6(report.threshold * celsius_per_level)},
              {"edge_margin", report.edge_margin},
              {"edge_excluded", report.edge_excluded},
              {"points", points},
              {"counts", {{"left", report.left_count}, {"right", report.right_count}}}};
}

nlohmann::json metrics_to_json(const CorpusMetrics& metrics) {
  json categories = json::object();
  for (const auto& [cat, methods] : metrics.tallies) {
    json per_method = json::object();
    int images = 0;
    for (const auto& [m, t] : methods) {
      images = std::max(images, t.images);
      per_method[method_name(m)] =
          json{{"images_with_detections", t.images_with_detections},
               {"images_without_detections", t.images_without_detections},
               {"images_with_hotspot_hit", t.images_with_hotspot_hit},
               {"total_false_points", t.total_false_points},
               {"mean_false_points_per_image", round6(t.mean_false_points)},
               {"false_points_label", t.false_points_label}};
    }
    categories[category_name(cat)] = json{{"images", images}, {"methods", per_method}};
  }
  return json{{"corpus_size", metrics.corpus_size}, {"categories", categories}};
}

std::string to_json_text(const nlohmann::json& j) { return j.dump(2) + "\n"; }

void write_json(const nlohmann::json& j, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write JSON: " + path);
  out << to_json_text(j);
  if (!out) throw IoError("cannot write JSON: " + path);
}

}  // namespace pedscan
