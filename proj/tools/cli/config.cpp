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

#include "config.hpp"

#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "api.hpp"
#include "table.hpp"

namespace cli {

namespace {

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

[[noreturn]] void bad(std::size_t line, const std::string& msg) {
  throw CliError(Category::config, "config line " + std::to_string(line) + ": " + msg);
}

double number_at(std::size_t line, std::string_view v) {
  try {
    return parse_number(v);
  } catch (const CliError&) {
    bad(line, "expected a number, got '" + std::string(v) + "'");
  }
}

std::uint64_t count_at(std::size_t line, std::string_view v) {
  const double x = number_at(line, v);
  if (!(x >= 0.0) || x != std::floor(x) || x > 1e18) {
    bad(line, "expected a non-negative integer, got '" + std::string(v) + "'");
  }
  return static_cast<std::uint64_t>(x);
}

bool flag_at(std::size_t line, std::string_view v) {
  if (v == "true" || v == "yes" || v == "1" || v == "on") return true;
  if (v == "false" || v == "no" || v == "0" || v == "off") return false;
  bad(line, "expected true or false, got '" + std::string(v) + "'");
}

double dbm_to_w(double dbm) {
  if (dbm == -INFINITY) return 0.0;
  double w = 0.0;
  check(cic_dbm_to_watts(dbm, &w), "dBm conversion");
  return w;
}

}  // namespace

const char* kind_name(Kind k) {
  switch (k) {
    case Kind::analytic: return "analytic";
    case Kind::simulate: return "simulate";
    case Kind::optimize: return "optimize";
    case Kind::validate: return "validate";
    case Kind::fig2: return "fig2";
    case Kind::fig3: return "fig3";
  }
  return "?";
}

std::optional<Kind> parse_kind(std::string_view name) {
  for (Kind k : {Kind::analytic, Kind::simulate, Kind::optimize, Kind::validate, Kind::fig2,
                 Kind::fig3}) {
    if (name == kind_name(k)) return k;
  }
  if (name == "analytic_sweep") return Kind::analytic;
  if (name == "mc_validate") return Kind::validate;
  return std::nullopt;
}

std::vector<double> parse_grid(std::string_view text) {
  text = trim(text);
  std::vector<double> out;
  if (text.empty()) return out;
  if (text.find(':') != std::string_view::npos) {
    std::vector<double> parts;
    std::size_t start = 0;
    while (true) {
      const auto colon = text.find(':', start);
      parts.push_back(parse_number(trim(text.substr(start, colon - start))));
      if (colon == std::string_view::npos) break;
      start = colon + 1;
    }
    if (parts.size() != 3 || !(parts[1] > 0.0) || !std::isfinite(parts[0]) ||
        !std::isfinite(parts[2]) || parts[2] < parts[0]) {
      throw CliError(Category::config, "range must be start:step:stop with step > 0 and stop >= start");
    }
    const auto n = static_cast<std::size_t>(std::floor((parts[2] - parts[0]) / parts[1] + 1e-9));
    if (n > 100000) throw CliError(Category::config, "range has too many points");
    for (std::size_t k = 0; k <= n; ++k) out.push_back(parts[0] + static_cast<double>(k) * parts[1]);
    return out;
  }
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto comma = text.find(',', start);
    const auto item = trim(text.substr(start, comma == std::string_view::npos ? comma : comma - start));
    if (item.empty()) throw CliError(Category::config, "empty grid entry");
    out.push_back(parse_number(item));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

ExperimentSpec default_spec(Kind kind) {
  ExperimentSpec s;
  s.kind = kind;
  check(cic_reference_network(&s.params), "reference network");
  s.r_b_grid = parse_grid("0:30:300");
  s.eta_grid = {0.05, 0.15};
  return s;
}

ExperimentSpec preset(std::string_view name) {
  if (name == "fig2") return default_spec(Kind::fig2);
  if (name == "fig3") return default_spec(Kind::fig3);
  throw CliError(Category::usage, "unknown preset '" + std::string(name) + "' (expected fig2 or fig3)");
}

void apply_config(ExperimentSpec& spec, std::string_view text, const std::filesystem::path& base_dir) {
  std::set<std::string> seen;
  std::map<std::string, std::pair<double, std::size_t>> disk;  // bs/users per disk + radius
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto nl = text.find('\n', pos);
    std::string_view line = text.substr(pos, nl == std::string_view::npos ? nl : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) bad(line_no, "expected key = value");
    const std::string key(trim(line.substr(0, eq)));
    const std::string_view value = trim(line.substr(eq + 1));
    if (key.empty()) bad(line_no, "missing key");
    if (value.empty()) bad(line_no, "missing value for '" + key + "'");
    if (!seen.insert(key).second) bad(line_no, "key '" + key + "' given twice");

    auto& p = spec.params;
    if (key == "kind") {
      const auto k = parse_kind(value);
      if (!k) bad(line_no, "unknown kind '" + std::string(value) + "'");
      if (*k != spec.kind) {
        bad(line_no, std::string("config is for kind '") + kind_name(*k) + "' but the command runs '" +
                         kind_name(spec.kind) + "'");
      }
    } else if (key == "bs_density_per_m2") {
      p.lambda_b = number_at(line_no, value);
    } else if (key == "user_density_per_m2") {
      p.lambda_u = number_at(line_no, value);
    } else if (key == "bs_per_disk" || key == "users_per_disk" || key == "disk_radius_m") {
      disk[key] = {number_at(line_no, value), line_no};
    } else if (key == "tx_power_dbm") {
      p.tx_power_w = dbm_to_w(number_at(line_no, value));
    } else if (key == "tx_power_w") {
      p.tx_power_w = number_at(line_no, value);
    } else if (key == "noise_power_dbm") {
      p.noise_power_w = dbm_to_w(number_at(line_no, value));
    } else if (key == "noise_power_w") {
      p.noise_power_w = number_at(line_no, value);
    } else if (key == "path_loss_exponent") {
      p.beta = number_at(line_no, value);
    } else if (key == "bandwidth_mhz") {
      p.bandwidth_mhz = number_at(line_no, value);
    } else if (key == "slot_s") {
      p.slot_s = number_at(line_no, value);
    } else if (key == "packet_size_mb") {
      p.packet_size_mb = number_at(line_no, value);
    } else if (key == "r_b_m") {
      try {
        spec.r_b_grid = parse_grid(value);
      } catch (const CliError& e) {
        bad(line_no, e.what());
      }
    } else if (key == "eta") {
      try {
        spec.eta_grid = parse_grid(value);
      } catch (const CliError& e) {
        bad(line_no, e.what());
      }
    } else if (key == "library_size") {
      spec.library_size = count_at(line_no, value);
    } else if (key == "zipf_gamma") {
      spec.zipf_gamma = number_at(line_no, value);
    } else if (key == "popularity_file") {
      spec.popularity_file = base_dir / std::filesystem::path(std::string(value));
    } else if (key == "cache_size") {
      spec.cache_size = count_at(line_no, value);
    } else if (key == "scheme_file") {
      spec.scheme_file = base_dir / std::filesystem::path(std::string(value));
    } else if (key == "trials") {
      spec.trials = count_at(line_no, value);
    } else if (key == "seed") {
      spec.seed = count_at(line_no, value);
    } else if (key == "window_radius_m") {
      spec.window_radius_m = number_at(line_no, value);
    } else if (key == "workers") {
      spec.workers = static_cast<unsigned>(count_at(line_no, value));
    } else if (key == "column_generation") {
      spec.column_generation = flag_at(line_no, value);
    } else if (key == "sigma_rule") {
      spec.sigma_rule = number_at(line_no, value);
    } else if (key == "tolerance_floor") {
      spec.tolerance_floor = number_at(line_no, value);
    } else {
      bad(line_no, "unknown key '" + key + "'");
    }
  }
  if (!disk.empty()) {
    const double radius = disk.count("disk_radius_m") ? disk["disk_radius_m"].first : 500.0;
    if (!(radius > 0.0) || !std::isfinite(radius)) {
      bad(disk["disk_radius_m"].second, "disk_radius_m must be positive");
    }
    const double area = M_PI * radius * radius;
    if (disk.count("bs_per_disk")) {
      if (seen.count("bs_density_per_m2")) {
        bad(disk["bs_per_disk"].second, "give bs_per_disk or bs_density_per_m2, not both");
      }
      spec.params.lambda_b = disk["bs_per_disk"].first / area;
    }
    if (disk.count("users_per_disk")) {
      if (seen.count("user_density_per_m2")) {
        bad(disk["users_per_disk"].second, "give users_per_disk or user_density_per_m2, not both");
      }
      spec.params.lambda_u = disk["users_per_disk"].first / area;
    }
  }
  if (seen.count("tx_power_dbm") && seen.count("tx_power_w")) {
    throw CliError(Category::config, "give tx_power_dbm or tx_power_w, not both");
  }
  if (seen.count("noise_power_dbm") && seen.count("noise_power_w")) {
    throw CliError(Category::config, "give noise_power_dbm or noise_power_w, not both");
  }
}

void load_config(ExperimentSpec& spec, const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CliError(Category::io, "cannot read config '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  apply_config(spec, ss.str(), path.parent_path());
}

std::vector<double> read_popularity(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CliError(Category::io, "cannot read popularity file '" + path.string() + "'");
  std::vector<double> out;
  std::string line;
  while (std::getline(in, line)) {
    if (const auto h = line.find('#'); h != std::string::npos) line.resize(h);
    for (char& c : line) {
      if (c == ',' || c == ';' || c == '\t' || c == '\r') c = ' ';
    }
    std::istringstream ls(line);
    std::string tok;
    while (ls >> tok) out.push_back(parse_number(tok));
  }
  return out;
}

void ExperimentSpec::validate() const {
  auto fail = [](const std::string& m) { throw CliError(Category::config, m); };
  if (cic_network_validate(&params) != CIC_OK) fail(std::string("network parameters: ") + cic_last_error());
  const bool grid_kind = kind == Kind::analytic || kind == Kind::simulate || kind == Kind::validate ||
                         kind == Kind::fig2;
  if (grid_kind) {
    if (r_b_grid.empty()) fail("r_b_m grid is empty");
    if (eta_grid.empty()) fail("eta grid is empty");
    for (double r : r_b_grid) {
      if (!(r >= 0.0)) fail("r_b_m values must be >= 0 (inf allowed)");
    }
    for (double e : eta_grid) {
      if (!(e >= 0.0 && e <= 1.0)) fail("eta values must lie in [0, 1]");
    }
  }
  if ((kind == Kind::simulate || kind == Kind::validate || kind == Kind::fig2) && trials == 0) {
    fail("trials must be at least 1");
  }
  if (!(window_radius_m >= 0.0) || !std::isfinite(window_radius_m)) {
    fail("window_radius_m must be finite and >= 0 (0 picks the default)");
  }
  if (!(sigma_rule > 0.0) || !(tolerance_floor >= 0.0)) fail("sigma_rule must be > 0 and tolerance_floor >= 0");
  if (popularity_file.empty() && library_size == 0) fail("library_size must be at least 1");
  if (!(zipf_gamma >= 0.0) || !std::isfinite(zipf_gamma)) fail("zipf_gamma must be finite and >= 0");
  if (!popularity_file.empty() && !std::filesystem::exists(popularity_file)) {
    fail("popularity_file '" + popularity_file.string() + "' does not exist");
  }
  if (!scheme_file.empty() && !std::filesystem::exists(scheme_file)) {
    fail("scheme_file '" + scheme_file.string() + "' does not exist");
  }
  if ((kind == Kind::optimize || kind == Kind::fig3) && popularity_file.empty() &&
      cache_size > library_size) {
    fail("cache_size must not exceed library_size");
  }
}

}  // namespace cli
