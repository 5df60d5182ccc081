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

// End-to-end tests that drive the installed binary through std::system. The
// test harness exports PEDSCAN_BIN with the freshly built executable.

#include <sys/wait.h>

#include <cstdlib>
#include <fstream>
#include <string>

#include "doctest.h"
#include "json.hpp"
#include "pedscan/ga.hpp"
#include "pedscan/image.hpp"
#include "pedscan/synth.hpp"
#include "test_util.hpp"

namespace pedscan {
namespace {

using nlohmann::json;
using testutil::read_bytes;
using testutil::TempDir;
using testutil::write_text;

std::string cli_binary() {
  const char* bin = std::getenv("PEDSCAN_BIN");
  REQUIRE_MESSAGE(bin != nullptr, "PEDSCAN_BIN must point at the pedscan executable");
  return bin;
}

int run_cli(const std::string& args) {
  std::string cmd = "\"" + cli_binary() + "\" " + args + " > /dev/null 2>&1";
  int status = std::system(cmd.c_str());
  REQUIRE(status != -1);
  return WEXITSTATUS(status);
}

json read_json(const std::string& path) {
  std::ifstream in(path);
  REQUIRE_MESSAGE(in.good(), path);
  return json::parse(in);
}

ThermalImage bimodal_noisy(int w, int h) {
  ThermalImage img;
  img.width = w;
  img.height = h;
  img.intensities.resize(static_cast<std::size_t>(w) * h);
  for (int i = 0; i < w * h; ++i)
    img.intensities[i] = static_cast<std::uint8_t>(i % 2 == 0 ? 40 + i % 17 : 180 + i % 31);
  return img;
}

synth::SynthSpec mirrored_spec() {
  synth::SynthSpec spec;
  spec.left.center = {92, 118};
  spec.right.center = {227, 118};
  spec.left.rotation = 0.07;
  spec.right.rotation = -0.07;
  spec.noise_amplitude = 1;
  return spec;
}

TEST_CASE("segment is deterministic and lands on the fitness plateau") {
  TempDir tmp("cli_segment");
  ThermalImage img = bimodal_noisy(24, 16);
  write_pgm(img, tmp.file("in.pgm"));

  REQUIRE(run_cli("segment " + tmp.file("in.pgm") + " --out " + tmp.file("a")) == 0);
  REQUIRE(run_cli("segment " + tmp.file("in.pgm") + " --out " + tmp.file("b")) == 0);
  CHECK(read_bytes(tmp.file("a/threshold.json")) == read_bytes(tmp.file("b/threshold.json")));
  CHECK(read_bytes(tmp.file("a/mask.pgm")) == read_bytes(tmp.file("b/mask.pgm")));
  CHECK(read_bytes(tmp.file("a/segmented.pgm")).size() > 0);

  GaResult best = exhaustive_best_threshold(img);
  json doc = read_json(tmp.file("a/threshold.json"));
  CHECK(doc["result"]["fitness"].get<double>() ==
        doctest::Approx(best.stats.fitness).epsilon(1e-6));

  // Any threshold on the wide bimodal plateau yields the same partition.
  ThermalImage mask_img = load_image(tmp.file("a/mask.pgm"));
  BinaryMask want = segment(img, best.threshold);
  for (int y = 0; y < img.height; ++y)
    for (int x = 0; x < img.width; ++x)
      REQUIRE((mask_img.at(x, y) == 255) == want.at(x, y));
}

TEST_CASE("segment reports a missing input as an I/O failure") {
  TempDir tmp("cli_noinput");
  CHECK(run_cli("segment " + tmp.file("ghost.pgm") + " --out " + tmp.file("o")) == 2);
}

TEST_CASE("analyze finds nothing on a healthy mirrored pair") {
  TempDir tmp("cli_healthy");
  auto [img, truth] = synth::generate(mirrored_spec());
  write_pgm(img, tmp.file("pair.pgm"));
  REQUIRE(run_cli("analyze " + tmp.file("pair.pgm") + " --out " + tmp.file("o")) == 0);

  json scan_doc = read_json(tmp.file("o/report_scanning.json"));
  json over_doc = read_json(tmp.file("o/report_overlapping.json"));
  CHECK(scan_doc["method"] == "scanning");
  CHECK(over_doc["method"] == "overlapping");
  CHECK(scan_doc["points"].empty());
  CHECK(over_doc["points"].empty());
  CHECK(scan_doc["counts"]["left"].get<int>() == 0);
  CHECK(scan_doc["counts"]["right"].get<int>() == 0);
  CHECK(scan_doc["approx_threshold_celsius"].get<double>() == doctest::Approx(1.0));
  CHECK(read_bytes(tmp.file("o/overlay_grid.png")).size() > 0);
  CHECK(read_bytes(tmp.file("o/overlay_scanning.png")).size() > 0);

  SUBCASE("the calibration flag rescales the threshold label") {
    REQUIRE(run_cli("analyze " + tmp.file("pair.pgm") + " --celsius-per-level 0.5 --out " +
                    tmp.file("c")) == 0);
    json doc = read_json(tmp.file("c/report_scanning.json"));
    CHECK(doc["approx_threshold_celsius"].get<double>() == doctest::Approx(2.5));
  }
}

TEST_CASE("analyze --method selects the report set") {
  TempDir tmp("cli_method");
  synth::SynthSpec spec = mirrored_spec();
  spec.noise_amplitude = 0;
  spec.right.hotspots.push_back({{2.0, -10.0}, 9.0, 25});
  auto [img, truth] = synth::generate(spec);
  write_pgm(img, tmp.file("pair.pgm"));

  SUBCASE("scan only") {
    REQUIRE(run_cli("analyze " + tmp.file("pair.pgm") + " --method scan --out " +
                    tmp.file("s")) == 0);
    json doc = read_json(tmp.file("s/report_scanning.json"));
    REQUIRE(!doc["points"].empty());
    for (const auto& p : doc["points"]) {
      CHECK(p["side"] == "right");
      CHECK(p["delta"].get<int>() > 5);
      CHECK(p["line"].is_number());
      CHECK(p["sample"].is_number());
    }
    CHECK(doc["counts"]["right"].get<std::size_t>() == doc["points"].size());
    CHECK(!std::ifstream(tmp.file("s/report_overlapping.json")).good());
  }
  SUBCASE("overlap only") {
    REQUIRE(run_cli("analyze " + tmp.file("pair.pgm") + " --method overlap --out " +
                    tmp.file("v")) == 0);
    json doc = read_json(tmp.file("v/report_overlapping.json"));
    CHECK(!doc["points"].empty());
    for (const auto& p : doc["points"]) CHECK(p["line"].is_null());
    CHECK(!std::ifstream(tmp.file("v/report_scanning.json")).good());
  }
}

TEST_CASE("analyze rejects a single-foot image with the content code") {
  TempDir tmp("cli_onefoot");
  ThermalImage img;
  img.width = 64;
  img.height = 64;
  img.intensities.assign(64 * 64, 30);
  for (int y = 20; y < 44; ++y)
    for (int x = 26; x < 38; ++x) img.at(x, y) = 200;
  write_pgm(img, tmp.file("one.pgm"));
  CHECK(run_cli("analyze " + tmp.file("one.pgm") + " --out " + tmp.file("o")) == 4);
}

TEST_CASE("bad flags exit with the config code") {
  TempDir tmp("cli_flags");
  auto [img, truth] = synth::generate(mirrored_spec());
  write_pgm(img, tmp.file("pair.pgm"));
  std::string input = tmp.file("pair.pgm") + " --out " + tmp.file("o");
  CHECK(run_cli("analyze " + input + " --lines 10") == 3);
  CHECK(run_cli("analyze " + input + " --method sideways") == 3);
  CHECK(run_cli("analyze " + input + " --population 1") == 3);
  CHECK(run_cli("analyze " + input + " --no-such-flag") == 3);
}

TEST_CASE("synth writes a deterministic corpus with a manifest") {
  TempDir tmp("cli_synth");
  REQUIRE(run_cli("synth --seed 5 --out " + tmp.file("a")) == 0);
  REQUIRE(run_cli("synth --seed 5 --out " + tmp.file("b")) == 0);
  REQUIRE(run_cli("synth --seed 6 --out " + tmp.file("c")) == 0);

  CHECK(read_bytes(tmp.file("a/manifest.json")) == read_bytes(tmp.file("b/manifest.json")));
  CHECK(read_bytes(tmp.file("a/manifest.json")) != read_bytes(tmp.file("c/manifest.json")));
  CHECK(read_bytes(tmp.file("a/corpus_000.pgm")) == read_bytes(tmp.file("b/corpus_000.pgm")));

  json manifest = read_json(tmp.file("a/manifest.json"));
  REQUIRE(manifest["images"].size() == 140);
  int healthy = 0, abnormal = 0;
  for (const auto& rec : manifest["images"]) {
    CHECK(read_bytes(tmp.file("a/" + rec["file"].get<std::string>())).size() > 0);
    bool has_hotspot = !rec["hotspot"].is_null();
    std::string cat = rec["category"].get<std::string>();
    CHECK(has_hotspot == (cat == "abnormal_same_size" || cat == "abnormal_different_size"));
    (has_hotspot ? abnormal : healthy)++;
    if (has_hotspot) {
      CHECK(rec["hotspot"]["radius"].get<double>() > 0.0);
      std::string side = rec["hotspot"]["side"].get<std::string>();
      CHECK((side == "left" || side == "right"));
    }
    REQUIRE(rec["heel_left"].size() == 2);
    REQUIRE(rec["heel_right"].size() == 2);
  }
  CHECK(healthy == 80);
  CHECK(abnormal == 60);
}

TEST_CASE("batch folds a manifest into metrics") {
  TempDir tmp("cli_batch");

  auto [healthy_img, healthy_truth] = synth::generate(mirrored_spec());
  write_pgm(healthy_img, tmp.file("h.pgm"));

  synth::SynthSpec abnormal = mirrored_spec();
  abnormal.right.hotspots.push_back({{0.0, -10.0}, 9.0, 25});
  auto [ab_img, ab_truth] = synth::generate(abnormal);
  write_pgm(ab_img, tmp.file("ab.pgm"));
  REQUIRE(ab_truth.hotspots.size() == 1);

  json manifest;
  manifest["images"] = json::array();
  manifest["images"].push_back({{"file", "h.pgm"}, {"category", "healthy_same_size"}, {"hotspot", nullptr}});
  manifest["images"].push_back(
      {{"file", "ab.pgm"},
       {"category", "abnormal_same_size"},
       {"hotspot",
        {{"side", "right"},
         {"x", ab_truth.hotspots[0].center.x},
         {"y", ab_truth.hotspots[0].center.y},
         {"radius", ab_truth.hotspots[0].radius}}}});
  write_text(tmp.file("manifest.json"), manifest.dump(2) + "\n");

  REQUIRE(run_cli("batch " + tmp.file("manifest.json") + " --out " + tmp.file("m1")) == 0);
  REQUIRE(run_cli("batch " + tmp.file("manifest.json") + " --out " + tmp.file("m2")) == 0);
  CHECK(read_bytes(tmp.file("m1/metrics.json")) == read_bytes(tmp.file("m2/metrics.json")));

  json metrics = read_json(tmp.file("m1/metrics.json"));
  CHECK(metrics["corpus_size"].get<int>() == 2);
  const json& healthy_cat = metrics["categories"]["healthy_same_size"];
  CHECK(healthy_cat["images"].get<int>() == 1);
  CHECK(healthy_cat["methods"]["scanning"]["images_without_detections"].get<int>() == 1);
  CHECK(healthy_cat["methods"]["overlapping"]["images_without_detections"].get<int>() == 1);
  const json& ab_cat = metrics["categories"]["abnormal_same_size"];
  CHECK(ab_cat["methods"]["scanning"]["images_with_hotspot_hit"].get<int>() == 1);
  CHECK(ab_cat["methods"]["overlapping"]["images_with_hotspot_hit"].get<int>() == 1);
  CHECK(ab_cat["methods"]["scanning"]["false_points_label"].is_string());
}

TEST_CASE("batch manifest error handling") {
  TempDir tmp("cli_batcherr");
  SUBCASE("empty corpus still writes metrics") {
    write_text(tmp.file("m.json"), "{\"images\": []}\n");
    REQUIRE(run_cli("batch " + tmp.file("m.json") + " --out " + tmp.file("o")) == 0);
    json metrics = read_json(tmp.file("o/metrics.json"));
    CHECK(metrics["corpus_size"].get<int>() == 0);
    CHECK(metrics["categories"].empty());
  }
  SUBCASE("missing manifest") {
    CHECK(run_cli("batch " + tmp.file("nope.json") + " --out " + tmp.file("o")) == 2);
  }
  SUBCASE("malformed manifest") {
    write_text(tmp.file("m.json"), "{oops");
    CHECK(run_cli("batch " + tmp.file("m.json") + " --out " + tmp.file("o")) == 2);
  }
  SUBCASE("manifest without images") {
    write_text(tmp.file("m.json"), "{\"seed\": 1}\n");
    CHECK(run_cli("batch " + tmp.file("m.json") + " --out " + tmp.file("o")) == 2);
  }
  SUBCASE("manifest referencing a missing image") {
    write_text(tmp.file("m.json"),
               "{\"images\": [{\"file\": \"ghost.pgm\", \"category\": "
               "\"healthy_same_size\", \"hotspot\": null}]}\n");
    CHECK(run_cli("batch " + tmp.file("m.json") + " --out " + tmp.file("o")) == 2);
  }
}

}  // namespace
}  // namespace pedscan
