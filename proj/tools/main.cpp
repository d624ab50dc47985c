#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "bellkit/chsh.hpp"
#include "bellkit/correlation.hpp"
#include "bellkit/domination.hpp"
#include "bellkit/io.hpp"
#include "bellkit/montecarlo.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitError = 2;
constexpr int kExitWitness = 3;

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw std::invalid_argument("cannot write " + out_path);
  out << text;
}

double g12_round(double v) {
  return std::strtod(bellkit::format_g12(v).c_str(), nullptr);
}

std::uint64_t parse_u64(const std::string& field, const std::string& what) {
  if (field.empty() || field[0] == '-') {
    throw std::invalid_argument(what + " must be a non-negative integer");
  }
  char* end = nullptr;
  const unsigned long long v = std::strtoull(field.c_str(), &end, 10);
  if (end != field.c_str() + field.size()) {
    throw std::invalid_argument(what + ": malformed integer '" + field + "'");
  }
  return v;
}

bellkit::AxisMode parse_axis_mode(const std::string& name) {
  if (name == "sphere") return bellkit::AxisMode::UniformSphere;
  if (name == "coplanar") return bellkit::AxisMode::CoplanarUniform;
  throw std::invalid_argument("axis mode must be 'sphere' or 'coplanar', got '" +
                              name + "'");
}

int run_eval(const std::string& model_spec, std::vector<double> thetas,
             bool degrees, const std::string& out_path) {
  const bellkit::CorrelationModel model = bellkit::parse_model_spec(model_spec);
  std::vector<bellkit::TableSample> rows;
  rows.reserve(thetas.size());
  for (double t : thetas) {
    const double rad = degrees ? t * bellkit::kPi / 180.0 : t;
    rows.push_back({rad, model(rad)});
  }
  emit(bellkit::write_table_csv(rows), out_path);
  return kExitOk;
}

int run_scan(const std::string& model_spec, const std::string& family,
             int grid, double theta_min, double theta_max, bool have_range,
             bool degrees, const std::string& out_path) {
  if (grid < 1) throw std::invalid_argument("--grid must be at least 1");
  const bellkit::CorrelationModel model = bellkit::parse_model_spec(model_spec);
  std::vector<double> thetas;
  thetas.reserve(grid);
  if (have_range) {
    double lo = degrees ? theta_min * bellkit::kPi / 180.0 : theta_min;
    double hi = degrees ? theta_max * bellkit::kPi / 180.0 : theta_max;
    if (!(lo < hi)) {
      throw std::invalid_argument("--theta-min must be below --theta-max");
    }
    if (grid == 1) {
      thetas.push_back(0.5 * (lo + hi));
    } else {
      for (int k = 0; k < grid; ++k) {
        thetas.push_back(lo + (hi - lo) * k / (grid - 1));
      }
    }
  } else {
    // Default grid: evenly spaced strictly inside the family domain.
    const double step = (bellkit::kPi / 2.0) / (grid + 1);
    for (int k = 1; k <= grid; ++k) thetas.push_back(k * step);
  }
  std::vector<bellkit::ChshRecord> records;
  if (family == "chsh1" || family == "both") {
    for (double t : thetas) records.push_back(bellkit::chsh1(model, t));
  }
  if (family == "chsh2" || family == "both") {
    for (double t : thetas) records.push_back(bellkit::chsh2(model, t));
  }
  if (records.empty()) {
    throw std::invalid_argument("--family must be chsh1, chsh2, or both");
  }
  emit(bellkit::write_scan_csv(records), out_path);
  return kExitOk;
}

int run_maximize(const std::string& model_spec, std::uint64_t budget,
                 bool no_coplanar, const std::string& out_path) {
  const bellkit::CorrelationModel model = bellkit::parse_model_spec(model_spec);
  const bellkit::MaximizeResult result =
      bellkit::maximize_chsh(model, !no_coplanar, budget);
  nlohmann::ordered_json j;
  j["value"] = g12_round(result.record.value);
  j["quantum_reference"] = g12_round(result.record.quantum_reference);
  j["separations"] = {g12_round(result.separations[0]),
                      g12_round(result.separations[1]),
                      g12_round(result.separations[2])};
  j["coplanar"] = !no_coplanar;
  j["evaluations"] = result.evaluations;
  const auto vec = [](const bellkit::Vec3& v) {
    return nlohmann::ordered_json{g12_round(v.x), g12_round(v.y),
                                  g12_round(v.z)};
  };
  j["axes"] = {{"a", vec(result.axes.a)},
               {"a_prime", vec(result.axes.a_prime)},
               {"b", vec(result.axes.b)},
               {"b_prime", vec(result.axes.b_prime)}};
  emit(j.dump(2) + "\n", out_path);
  return kExitOk;
}

int run_simulate(bellkit::ExperimentConfig config, const std::string& out_path) {
  const bellkit::ExperimentEstimate estimate = bellkit::run_experiment(config);
  emit(bellkit::write_estimate_csv(estimate), out_path);
  return kExitOk;
}

int run_dominate(const std::string& model_spec, double tolerance, int grid,
                 bool verbose, const std::string& out_path) {
  const bellkit::CorrelationModel model = bellkit::parse_model_spec(model_spec);
  const bellkit::DominationVerdict verdict =
      bellkit::find_domination_witness(model, tolerance, grid);
  emit(bellkit::verdict_to_json(verdict, verbose), out_path);
  return verdict.outcome == bellkit::VerdictOutcome::WitnessFound ? kExitWitness
                                                                  : kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "bellkit: bipartite correlation models, CHSH families, and "
      "singlet-domination analysis"};
  app.require_subcommand(1);

  std::string model_spec;
  std::string out_path;
  bool degrees = false;

  auto* eval_cmd = app.add_subcommand(
      "eval", "Evaluate a model's correlation at given separations");
  std::vector<double> eval_thetas;
  eval_cmd->add_option("--model", model_spec, "Model spec")->required();
  eval_cmd->add_option("--theta", eval_thetas, "Separation angles")
      ->required()
      ->expected(-1);
  eval_cmd->add_flag("--degrees", degrees, "Angles are in degrees");
  eval_cmd->add_option("--out", out_path, "Write output to a file");

  auto* scan_cmd = app.add_subcommand(
      "scan", "Tabulate a CHSH family over a parameter grid");
  std::string scan_family = "both";
  int scan_grid = 101;
  double scan_min = 0.0;
  double scan_max = 0.0;
  scan_cmd->add_option("--model", model_spec, "Model spec")->required();
  scan_cmd->add_option("--family", scan_family, "chsh1, chsh2, or both");
  scan_cmd->add_option("--grid", scan_grid, "Number of grid points");
  auto* opt_min =
      scan_cmd->add_option("--theta-min", scan_min, "Lower end of the grid");
  auto* opt_max =
      scan_cmd->add_option("--theta-max", scan_max, "Upper end of the grid");
  opt_min->needs(opt_max);
  opt_max->needs(opt_min);
  scan_cmd->add_flag("--degrees", degrees, "Range is in degrees");
  scan_cmd->add_option("--out", out_path, "Write output to a file");

  auto* max_cmd =
      app.add_subcommand("maximize", "Search axis layouts for the peak CHSH");
  std::uint64_t budget = 100000;
  bool no_coplanar = false;
  max_cmd->add_option("--model", model_spec, "Model spec")->required();
  max_cmd->add_option("--budget", budget, "Objective evaluation budget");
  max_cmd->add_flag("--no-coplanar", no_coplanar,
                    "Search all axis directions, not just coplanar layouts");
  max_cmd->add_option("--out", out_path, "Write output to a file");

  auto* sim_cmd = app.add_subcommand(
      "simulate", "Monte Carlo outcome sampling binned over separations");
  std::string sim_trials = "10000";
  std::string sim_bins = "50";
  std::string sim_axis = "sphere";
  std::string sim_seed = "1";
  std::string sim_config;
  sim_cmd->add_option("--model", model_spec, "Model spec");
  sim_cmd->add_option("--trials", sim_trials, "Trials per bin");
  sim_cmd->add_option("--bins", sim_bins, "Number of separation bins");
  sim_cmd->add_option("--axis-mode", sim_axis, "sphere or coplanar");
  sim_cmd->add_option("--seed", sim_seed, "Base RNG seed");
  sim_cmd->add_option("--config", sim_config,
                      "Key-value file; explicit flags take precedence");
  sim_cmd->add_option("--out", out_path, "Write output to a file");

  auto* dom_cmd = app.add_subcommand(
      "dominate", "Test whether a model dominates the singlet correlations");
  double tolerance = 1e-6;
  int dom_grid = 2048;
  bool verbose = false;
  dom_cmd->add_option("--model", model_spec, "Model spec")->required();
  dom_cmd->add_option("--tolerance", tolerance, "Coincidence tolerance");
  dom_cmd->add_option("--grid", dom_grid, "Scan grid size");
  dom_cmd->add_flag("--verbose", verbose,
                    "Include the contraction certificate in the verdict");
  dom_cmd->add_option("--out", out_path, "Write output to a file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitError;
  }

  try {
    if (eval_cmd->parsed()) {
      return run_eval(model_spec, eval_thetas, degrees, out_path);
    }
    if (scan_cmd->parsed()) {
      const bool have_range = opt_min->count() > 0;
      return run_scan(model_spec, scan_family, scan_grid, scan_min, scan_max,
                      have_range, degrees, out_path);
    }
    if (max_cmd->parsed()) {
      return run_maximize(model_spec, budget, no_coplanar, out_path);
    }
    if (sim_cmd->parsed()) {
      std::map<std::string, std::string> file_kv;
      if (!sim_config.empty()) file_kv = bellkit::read_config_kv(sim_config);
      const auto pick = [&](const char* flag, const char* key,
                            const std::string& cli_value) {
        if (sim_cmd->count(flag) == 0 && file_kv.count(key)) {
          return file_kv.at(key);
        }
        return cli_value;
      };
      for (const auto& [key, value] : file_kv) {
        (void)value;
        if (key != "model" && key != "trials_per_bin" && key != "bin_count" &&
            key != "axis_mode" && key != "seed") {
          throw std::invalid_argument("unknown config key '" + key + "'");
        }
      }
      const std::string spec = pick("--model", "model", model_spec);
      if (spec.empty()) {
        throw std::invalid_argument(
            "simulate needs a model (--model or config file)");
      }
      bellkit::ExperimentConfig config;
      config.model = bellkit::parse_model_spec(spec);
      config.trials_per_bin =
          parse_u64(pick("--trials", "trials_per_bin", sim_trials), "--trials");
      const std::uint64_t bins =
          parse_u64(pick("--bins", "bin_count", sim_bins), "--bins");
      if (bins > 1000000) throw std::invalid_argument("--bins is too large");
      config.bin_count = static_cast<std::uint32_t>(bins);
      config.axis_mode =
          parse_axis_mode(pick("--axis-mode", "axis_mode", sim_axis));
      config.seed = parse_u64(pick("--seed", "seed", sim_seed), "--seed");
      return run_simulate(config, out_path);
    }
    if (dom_cmd->parsed()) {
      return run_dominate(model_spec, tolerance, dom_grid, verbose, out_path);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
  return kExitError;
}
