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

#include <CLI11.hpp>

#include <iostream>
#include <optional>
#include <string>

#include "cli/api.hpp"
#include "cli/config.hpp"
#include "cli/runner.hpp"

namespace {

struct Flags {
  std::string config;
  std::string out = ".";
  std::optional<std::uint64_t> trials;
  std::optional<std::uint64_t> seed;
  std::optional<unsigned> workers;
  bool svg = false;
  bool column_generation = false;
  std::string preset;
};

void add_common(CLI::App* cmd, Flags& f, bool monte_carlo) {
  cmd->add_option("--config", f.config, "key = value experiment file")->check(CLI::ExistingFile);
  cmd->add_option("--out", f.out, "output directory (default: current)");
  cmd->add_flag("--svg", f.svg, "also write an SVG chart");
  cmd->add_option("--workers", f.workers, "worker threads (0: all cores)");
  if (monte_carlo) {
    cmd->add_option("--trials", f.trials, "Monte Carlo trials per grid point")->check(CLI::PositiveNumber);
    cmd->add_option("--seed", f.seed, "top-level random seed");
  }
}

int execute(cli::Kind kind, const Flags& f) {
  using namespace cli;
  ExperimentSpec spec = f.preset.empty() ? default_spec(kind) : preset(f.preset);
  if (!f.config.empty()) load_config(spec, f.config);
  if (f.trials) spec.trials = *f.trials;
  if (f.seed) spec.seed = *f.seed;
  if (f.workers) spec.workers = *f.workers;
  if (f.column_generation) spec.column_generation = true;
  const RunOutput out = run(spec, f.svg);
  write_artifacts(out, f.out);
  std::cout << out.summary;
  for (const auto& a : out.artifacts) std::cout << "wrote " << (std::filesystem::path(f.out) / a.file_name).string() << "\n";
  if (out.failed) throw CliError(Category::disagreement, out.failure);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Packet loss analysis for cache-aided interference cancellation"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string("cic ") + cic_version());
  Flags flags;
  std::optional<cli::Kind> kind;

  auto* analytic = app.add_subcommand("analytic", "analytic PLR over an r_b x eta grid");
  add_common(analytic, flags, false);
  analytic->callback([&] { kind = cli::Kind::analytic; });

  auto* simulate = app.add_subcommand("simulate", "Monte Carlo PLR over an r_b x eta grid");
  add_common(simulate, flags, true);
  simulate->callback([&] { kind = cli::Kind::simulate; });

  auto* validate = app.add_subcommand("validate", "compare analytic and simulated PLR point by point");
  add_common(validate, flags, true);
  validate->callback([&] { kind = cli::Kind::validate; });

  auto* optimize = app.add_subcommand("optimize", "optimal caching densities for a library");
  add_common(optimize, flags, false);
  optimize->add_flag("--column-generation", flags.column_generation,
                     "price subsets instead of enumerating all of them");
  optimize->callback([&] { kind = cli::Kind::optimize; });

  auto* presets = app.add_subcommand("preset", "reference experiments: fig2 (PLR vs r_b), fig3 (caching scheme)");
  presets->add_option("name", flags.preset, "fig2 or fig3")->required()->check(CLI::IsMember({"fig2", "fig3"}));
  add_common(presets, flags, true);
  presets->add_flag("--column-generation", flags.column_generation, "fig3: price subsets by column generation");
  presets->callback([&] { kind = *cli::parse_kind(flags.preset); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : cli::exit_code(cli::Category::usage);
  }
  try {
    return execute(*kind, flags);
  } catch (const cli::CliError& e) {
    std::cerr << "error [" << cli::category_name(e.category()) << "]: " << e.what() << "\n";
    return cli::exit_code(e.category());
  } catch (const std::exception& e) {
    std::cerr << "error [internal]: " << e.what() << "\n";
    return cli::exit_code(cli::Category::internal);
  }
}
