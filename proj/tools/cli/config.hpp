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

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cic/cic.h"

namespace cli {

enum class Kind { analytic, simulate, optimize, validate, fig2, fig3 };

const char* kind_name(Kind k);
std::optional<Kind> parse_kind(std::string_view name);

// Everything one run needs. Defaults are the reference deployment; a config
// file overrides individual keys.
struct ExperimentSpec {
  Kind kind = Kind::analytic;
  cic_network_params params{};  // r_b_m unused; see r_b_grid
  std::vector<double> r_b_grid;
  std::vector<double> eta_grid;

  std::size_t library_size = 100;
  double zipf_gamma = 0.8;
  std::filesystem::path popularity_file;  // overrides the Zipf library when set
  std::size_t cache_size = 3;
  std::filesystem::path scheme_file;      // analytic: also report the network average

  std::uint64_t trials = 100000;
  std::uint64_t seed = 1;
  double window_radius_m = 0.0;
  unsigned workers = 1;
  bool column_generation = false;

  double sigma_rule = 3.0;        // validate: pass iff |Δ| <= max(k·σ, floor)
  double tolerance_floor = 0.005;

  // Throws CliError(config) when a kind-specific requirement is unmet.
  void validate() const;
};

ExperimentSpec default_spec(Kind kind);
ExperimentSpec preset(std::string_view name);  // "fig2" or "fig3"

// key = value lines; '#' starts a comment. Relative paths resolve against
// `base_dir`. Unknown or repeated keys are errors.
void apply_config(ExperimentSpec& spec, std::string_view text,
                  const std::filesystem::path& base_dir = {});
void load_config(ExperimentSpec& spec, const std::filesystem::path& path);

// "0, 60, inf" or "start:step:stop" (inclusive).
std::vector<double> parse_grid(std::string_view text);

// Whitespace, comma or newline separated probabilities; '#' comments.
std::vector<double> read_popularity(const std::filesystem::path& path);

}  // namespace cli
