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

#ifndef PEDSCAN_JSON_IO_HPP_
#define PEDSCAN_JSON_IO_HPP_

#include "json.hpp"

#include "pedscan/asymmetry.hpp"
#include "pedscan/ga.hpp"
#include "pedscan/scan.hpp"

namespace pedscan {

// All emitted JSON goes through these builders: object keys come out sorted
// (nlohmann's default map) and every floating value is rounded to 6 decimals,
// so identical inputs serialize byte-identically.
double round6(double v);

nlohmann::json ga_config_to_json(const GaConfig& config);
GaConfig ga_config_from_json(const nlohmann::json& j);  // missing keys keep defaults

nlohmann::json ga_result_to_json(const GaResult& result);
nlohmann::json scan_config_to_json(const ScanConfig& config);
ScanConfig scan_config_from_json(const nlohmann::json& j);

nlohmann::json region_to_json(const FootRegion& region);
nlohmann::json grid_to_json(const RadialGrid& grid);
nlohmann::json report_to_json(const AsymmetryReport& report, double celsius_per_level);
nlohmann::json metrics_to_json(const CorpusMetrics& metrics);

std::string side_name(FootSide side);
std::string method_name(Method method);

// Serializes with a trailing newline; deterministic byte output.
std::string to_json_text(const nlohmann::json& j);
void write_json(const nlohmann::json& j, const std::string& path);

}  // namespace pedscan

#endif  // PEDSCAN_JSON_IO_HPP_
