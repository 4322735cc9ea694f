// SPDX-License-Identifier: Apache-2.0
//
// semota - multi-sensor remote state estimation over MIMO fading channels
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "semota/config.hpp"
#include "semota/experiments.hpp"
#include "semota/monte_carlo.hpp"

namespace semota {

// Library version recorded in manifests.
std::string code_version();

// %.17g, so a double survives a text round trip. NaN is written as an empty
// field (for example a standard error with a single run).
std::string format_number(double value);

// Columns: slot, mean_nmse, se_nmse, mean_power, se_power, mean_trace_sigma.
void write_slot_csv(const std::filesystem::path& path, const MonteCarloResult& result);

// Columns: M, policy, mean_nmse, se_nmse, mean_power, se_power, sigma1, sigma2.
// Thresholds that do not apply to a policy are left empty.
void write_sweep_csv(const std::filesystem::path& path, const SweepResult& result);

void write_json(const std::filesystem::path& path, const nlohmann::json& doc);

// Manifest skeleton: version, command, code version, full config echo and
// master seed. Feeding it back through load_config reproduces the run.
nlohmann::json make_manifest(const std::string& command, const ExperimentConfig& cfg);

// Suite seed, channel constants and tuned thresholds for one M.
nlohmann::json sweep_point_to_json(const SweepPoint& point);

nlohmann::json run_summary_to_json(const PolicyRun& run);

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  std::size_t column(const std::string& name) const;
  // Parsed numeric cell; empty cells give NaN.
  double number(std::size_t row, const std::string& name) const;
};

CsvTable read_csv(const std::filesystem::path& path);

}  // namespace semota
