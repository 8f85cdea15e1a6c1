/*
   Copyright 2026 The cic Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

       http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "config.hpp"
#include "svg.hpp"
#include "table.hpp"

namespace cli {

struct Artifact {
  std::string file_name;
  std::string contents;
};

// Files and console summary produced by one run. `failed` is set when a
// validation rule was violated; the artifacts are still written.
struct RunOutput {
  Table table;
  std::vector<Artifact> artifacts;
  std::string summary;
  bool failed = false;
  std::string failure;
};

RunOutput run_analytic(const ExperimentSpec& spec);
RunOutput run_simulate(const ExperimentSpec& spec);
RunOutput run_validate(const ExperimentSpec& spec);
RunOutput run_fig2(const ExperimentSpec& spec);
RunOutput run_optimize(const ExperimentSpec& spec);  // also fig3

RunOutput run(const ExperimentSpec& spec, bool svg);

// Writes every artifact under `dir` (created if missing).
void write_artifacts(const RunOutput& out, const std::filesystem::path& dir);

// Scheme CSV as written by optimize: subset_rank, packet_indices (1-based,
// comma separated), density.
Table read_scheme_table(const std::filesystem::path& path);

Plot fig2_plot(const Table& t);
Plot fig3_plot(const Table& t);

}  // namespace cli
