// entdyn command-line runner: trajectories, stationary analysis, event
// classification and Monte Carlo probabilities, emitted as CSV/JSON.

#include <charconv>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "entdyn/events.hpp"
#include "entdyn/scenarios.hpp"

using nlohmann::ordered_json;

namespace {

using namespace entdyn;

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitIndeterminate = 3;
constexpr int kExitNumerical = 4;

std::string fmt_double(double v) {
  char buf[40];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

struct Options {
  std::string config_path;
  std::string scenario = "case1a";
  std::vector<std::string> rate_overrides;  // key=value
  std::uint64_t seed = 0;
  double eps = kEps;
  double t_max = 0.0;
  int checkpoints = 256;
  std::string state = "mix";
  std::string state_file;
  long samples = 1000;
  std::string measure = "hilbert_schmidt";
  int threads = 1;
  int probes = 64;
  std::string out;
};

std::uint64_t env_seed() {
  const char* raw = std::getenv("ENTDYN_SEED");
  if (!raw) return 0;
  std::uint64_t value = 0;
  auto res = std::from_chars(raw, raw + std::string(raw).size(), value);
  if (res.ec != std::errc())
    throw std::invalid_argument("ENTDYN_SEED is not an unsigned integer");
  return value;
}

// Fill any option the command line left untouched from the config file.
void merge_config(const CLI::App& cmd, const ordered_json& cfg, Options& opt) {
  auto missing = [&](const std::string& flag) {
    const CLI::Option* o = cmd.get_option_no_throw(flag);
    return o != nullptr && o->count() == 0;
  };
  auto pull = [&](const std::string& flag, const char* key, auto& target) {
    if (missing(flag) && cfg.contains(key)) target = cfg.at(key).get<std::decay_t<decltype(target)>>();
  };
  pull("--scenario", "scenario", opt.scenario);
  pull("--seed", "seed", opt.seed);
  pull("--eps", "eps", opt.eps);
  pull("--t-max", "t_max", opt.t_max);
  pull("--checkpoints", "checkpoints", opt.checkpoints);
  pull("--state", "state", opt.state);
  pull("--state-file", "state_file", opt.state_file);
  pull("--samples", "samples", opt.samples);
  pull("--measure", "measure", opt.measure);
  pull("--threads", "threads", opt.threads);
  pull("--probes", "probes", opt.probes);
  pull("--out", "out", opt.out);
  if (cfg.contains("rates")) {
    std::vector<std::string> from_file;
    for (const auto& [key, value] : cfg.at("rates").items())
      from_file.push_back(key + "=" + fmt_double(value.get<double>()));
    // File-sourced rates go first so explicit --rate flags win on conflicts.
    opt.rate_overrides.insert(opt.rate_overrides.begin(), from_file.begin(), from_file.end());
  }
}

std::map<std::string, double> parse_rates(const std::vector<std::string>& raw) {
  std::map<std::string, double> rates;
  for (const std::string& kv : raw) {
    auto eq = kv.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("--rate expects key=value, got '" + kv + "'");
    rates[kv.substr(0, eq)] = std::stod(kv.substr(eq + 1));
  }
  return rates;
}

Scenario build_scenario(const Options& opt) {
  auto id = scenario_from_name(opt.scenario);
  if (!id) {
    std::string names;
    for (const std::string& n : scenario_names()) names += " " + n;
    throw std::invalid_argument("unknown scenario '" + opt.scenario + "'; available:" + names);
  }
  return make_scenario(*id, parse_rates(opt.rate_overrides));
}

DensityMatrix load_state(const Options& opt) {
  if (!opt.state_file.empty()) {
    std::ifstream in(opt.state_file);
    if (!in) throw std::invalid_argument("cannot open state file '" + opt.state_file + "'");
    ordered_json j = ordered_json::parse(in);
    const ordered_json& rows = j.contains("matrix") ? j.at("matrix") : j;
    if (!rows.is_array() || rows.size() != 4)
      throw std::invalid_argument("state file must hold a 4x4 matrix");
    Mat m(4, 4);
    for (int i = 0; i < 4; ++i) {
      const auto& row = rows.at(i);
      if (!row.is_array() || row.size() != 4)
        throw std::invalid_argument("state file must hold a 4x4 matrix");
      for (int k = 0; k < 4; ++k) {
        const auto& cell = row.at(k);
        if (cell.is_array())
          m(i, k) = cd(cell.at(0).get<double>(), cell.at(1).get<double>());
        else
          m(i, k) = cd(cell.get<double>(), 0.0);
      }
    }
    return validate_density(m);
  }
  return parse_named_state(opt.state).state;
}

MeasureSpec parse_measure(const Options& opt) {
  const std::string& m = opt.measure;
  if (m == "hilbert_schmidt" || m == "hs") return MeasureSpec::hilbert_schmidt(opt.seed);
  if (m == "haar_pure" || m == "haar") return MeasureSpec::haar_pure(opt.seed);
  if (m.rfind("rank", 0) == 0 && m.size() == 5)
    return MeasureSpec::rank_k(m[4] - '0', opt.seed);
  throw std::invalid_argument("unknown measure '" + m +
                              "' (hilbert_schmidt, haar_pure, rank1..rank4)");
}

ClassifyOptions classify_options(const Options& opt) {
  ClassifyOptions copts;
  copts.eps = opt.eps;
  copts.t_max = opt.t_max;
  copts.n_checkpoints = opt.checkpoints;
  return copts;
}

void write_output(const Options& opt, const std::string& payload) {
  if (opt.out.empty()) {
    std::cout << payload;
    return;
  }
  std::ofstream out(opt.out, std::ios::binary);
  if (!out) throw std::invalid_argument("cannot open output file '" + opt.out + "'");
  out << payload;
}

ordered_json params_json(const Scenario& scenario) {
  ordered_json j = ordered_json::object();
  for (const auto& [key, value] : scenario.params) j[key] = value;
  return j;
}

ordered_json matrix_json(const Mat& m) {
  ordered_json rows = ordered_json::array();
  for (int i = 0; i < m.rows(); ++i) {
    ordered_json row = ordered_json::array();
    for (int k = 0; k < m.cols(); ++k)
      row.push_back(ordered_json::array({m(i, k).real(), m(i, k).imag()}));
    rows.push_back(std::move(row));
  }
  return rows;
}

ordered_json localization_json(const LocalizationReport& report) {
  return {{"det_rho", report.d},
          {"det_pt", report.d_pt},
          {"region", region_name(report.region)},
          {"verdict", verdict_name(report.verdict)}};
}

double singlet_population(const DensityMatrix& rho) {
  Vec psi = states::bell_psi_minus();
  return (psi.adjoint() * rho.mat() * psi)(0).real();
}

int run_trajectory(const Options& opt) {
  Scenario scenario = build_scenario(opt);
  DensityMatrix rho0 = load_state(opt);
  TrajectoryOracle oracle(scenario.spec, classify_options(opt));

  std::string csv = "t,det_rho,det_pt,negativity,p00,p01,p10,p11,rho44\n";
  for (std::size_t k = 0; k < oracle.times().size(); ++k) {
    DensityMatrix s = oracle.state_at(rho0, static_cast<int>(k));
    LocalizationReport loc = localize(s, opt.eps);
    csv += fmt_double(oracle.times()[k]);
    csv += "," + fmt_double(loc.d);
    csv += "," + fmt_double(loc.d_pt);
    csv += "," + fmt_double(negativity(s));
    for (int d = 0; d < 4; ++d) csv += "," + fmt_double(s(d, d).real());
    csv += "," + fmt_double(singlet_population(s));
    csv += "\n";
  }
  write_output(opt, csv);
  return kExitOk;
}

int run_stationary(const Options& opt) {
  Scenario scenario = build_scenario(opt);
  GeneratorSpec constant = scenario.spec;
  constant.schedule = CouplingSchedule::constant();
  StationarySet set = kernel(build_superoperator(constant));

  RngStream rng(opt.seed, 0);
  DynamicsClass cls = classify_dynamics(scenario.spec, opt.probes, rng);

  ordered_json j;
  j["command"] = "stationary";
  j["scenario"] = scenario.name;
  j["params"] = params_json(scenario);
  j["seed"] = opt.seed;
  j["probes"] = opt.probes;
  j["kernel_dimension"] = set.dimension;
  j["class_label"] = class_label_name(cls.label);
  j["cardinality"] = cls.cardinality == Cardinality::Singleton ? "singleton" : "family";
  j["geometry"] = cls.geometry == Geometry::AllIntS
                      ? "all_interior_separable"
                      : (cls.geometry == Geometry::AllE ? "all_entangled" : "touches_boundary");
  ordered_json reps = ordered_json::array();
  ordered_json locs = ordered_json::array();
  for (std::size_t i = 0; i < cls.representatives.size(); ++i) {
    reps.push_back(matrix_json(cls.representatives[i].mat()));
    locs.push_back(localization_json(cls.evidence[i]));
  }
  j["representative_states"] = std::move(reps);
  j["localizations"] = std::move(locs);
  write_output(opt, j.dump(2) + "\n");
  return kExitOk;
}

ordered_json stats_json(const EventStats& stats) {
  return {{"hits", stats.hits},
          {"estimate", stats.estimate},
          {"wilson95", ordered_json::array({stats.wilson_lo, stats.wilson_hi})}};
}

int run_probabilities(const Options& opt) {
  Scenario scenario = build_scenario(opt);
  MeasureSpec measure = parse_measure(opt);
  ProbabilityReport report = estimate_probabilities(scenario.spec, measure, opt.samples,
                                                    classify_options(opt), opt.threads);
  report.scenario = scenario.name;

  ordered_json j;
  j["command"] = "probabilities";
  j["scenario"] = scenario.name;
  j["params"] = params_json(scenario);
  j["measure"] = measure_name(measure.kind);
  j["seed"] = measure.seed;
  j["n_samples"] = report.n_samples;
  j["options"] = {{"eps", report.opts.eps},
                  {"t_max", report.opts.t_max},
                  {"checkpoints", report.opts.n_checkpoints}};
  j["n_initial_entangled"] = report.n_initial_entangled;
  j["n_indeterminate"] = report.n_indeterminate;
  j["events"] = {{"SDE", stats_json(report.sde)},     {"ADE", stats_json(report.ade)},
                 {"SDE_prime", stats_json(report.sde_prime)},
                 {"ADE_prime", stats_json(report.ade_prime)},
                 {"AE", stats_json(report.ae)},       {"SBE", stats_json(report.sbe)}};
  write_output(opt, j.dump(2) + "\n");
  return kExitOk;
}

int run_classify(const Options& opt) {
  Scenario scenario = build_scenario(opt);
  DensityMatrix rho0 = load_state(opt);
  TrajectoryOracle oracle(scenario.spec, classify_options(opt));
  EventRecord rec = oracle.classify(rho0);

  ordered_json j;
  j["command"] = "classify";
  j["scenario"] = scenario.name;
  j["params"] = params_json(scenario);
  j["state"] = opt.state_file.empty() ? opt.state : opt.state_file;
  j["options"] = {{"eps", oracle.options().eps},
                  {"t_max", oracle.options().t_max},
                  {"checkpoints", oracle.options().n_checkpoints}};
  j["initial_entangled"] = rec.initial_entangled;
  j["ever_entangled"] = rec.ever_entangled;
  ordered_json flags = ordered_json::array();
  if (rec.flags.sde) flags.push_back("SDE");
  if (rec.flags.ade) flags.push_back("ADE");
  if (rec.flags.ae) flags.push_back("AE");
  if (rec.flags.sbe) flags.push_back("SBE");
  j["flags"] = std::move(flags);
  j["death_time"] = rec.death_time ? ordered_json(*rec.death_time) : ordered_json(nullptr);
  j["asymptotic_negativity"] = rec.asymptotic_negativity;
  j["asymptotic_region"] = localization_json(rec.asymptotic_region);
  write_output(opt, j.dump(2) + "\n");
  return kExitOk;
}

void add_common(CLI::App* cmd, Options& opt) {
  cmd->add_option("--config", opt.config_path, "JSON config file; flags override its values");
  cmd->add_option("--scenario", opt.scenario,
                  "scenario id: case1a case1b case2a case2b_phase collective_zero_t "
                  "collective_inf_t case2b_hybrid case3a case3b");
  cmd->add_option("--rate", opt.rate_overrides, "rate override key=value (repeatable)");
  cmd->add_option("--seed", opt.seed, "RNG seed (default from ENTDYN_SEED)");
  cmd->add_option("--eps", opt.eps, "sign/zero threshold for verdicts");
  cmd->add_option("--t-max", opt.t_max, "trajectory horizon (0 = 30/min-rate)");
  cmd->add_option("--checkpoints", opt.checkpoints, "number of geometric checkpoints");
  cmd->add_option("--out", opt.out, "output path (default stdout)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"two-qubit open-system entanglement dynamics toolkit"};
  app.require_subcommand(1);

  Options opt;
  try {
    opt.seed = env_seed();
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  }

  CLI::App* trajectory = app.add_subcommand("trajectory", "time series as CSV");
  add_common(trajectory, opt);
  trajectory->add_option("--state", opt.state, "named initial state, e.g. werner:0.1");
  trajectory->add_option("--state-file", opt.state_file, "JSON file with an explicit 4x4 state");

  CLI::App* stationary = app.add_subcommand("stationary", "kernel and classification as JSON");
  add_common(stationary, opt);
  stationary->add_option("--probes", opt.probes, "random probes for the geometry verdict");

  CLI::App* probabilities =
      app.add_subcommand("probabilities", "Monte Carlo event probabilities as JSON");
  add_common(probabilities, opt);
  probabilities->add_option("--samples", opt.samples, "number of random initial states");
  probabilities->add_option("--measure", opt.measure,
                            "hilbert_schmidt | haar_pure | rank1..rank4");
  probabilities->add_option("--threads", opt.threads, "worker threads (output is identical)");

  CLI::App* classify = app.add_subcommand("classify", "event record of one trajectory as JSON");
  add_common(classify, opt);
  classify->add_option("--state", opt.state, "named initial state");
  classify->add_option("--state-file", opt.state_file, "JSON file with an explicit 4x4 state");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  CLI::App* cmd = app.get_subcommands().front();
  try {
    if (!opt.config_path.empty()) {
      std::ifstream in(opt.config_path);
      if (!in) throw std::invalid_argument("cannot open config file '" + opt.config_path + "'");
      merge_config(*cmd, ordered_json::parse(in), opt);
    }
    if (cmd == trajectory) return run_trajectory(opt);
    if (cmd == stationary) return run_stationary(opt);
    if (cmd == probabilities) return run_probabilities(opt);
    return run_classify(opt);
  } catch (const IndeterminateTail& e) {
    std::cerr << "indeterminate: " << e.what() << "\n";
    return kExitIndeterminate;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::out_of_range& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  }
}
