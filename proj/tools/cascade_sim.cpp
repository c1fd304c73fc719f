// cascade-sim: experiment runner and single-instance evaluator.
//
// Exit codes: 0 ok, 2 bad arguments or config, 3 runtime failure.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "cascade/experiment.hpp"
#include "cascade/result_io.hpp"

namespace {

using nlohmann::ordered_json;
using namespace cascade;

constexpr int kExitBadArgs = 2;
constexpr int kExitRuntime = 3;

struct BadArgs : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw BadArgs("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t");
  if (a == std::string::npos) return "";
  return s.substr(a, s.find_last_not_of(" \t") - a + 1);
}

double parse_number(const std::string& text, const std::string& what) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != text.size() || !std::isfinite(v)) {
    throw BadArgs("malformed " + what + " '" + text + "'");
  }
  return v;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(s);
  while (std::getline(in, item, sep)) out.push_back(trim(item));
  if (!s.empty() && s.back() == sep) out.emplace_back();
  return out;
}

// "0..15", "1,2,4", "0..3,8"; ranges are inclusive integer ranges.
std::vector<double> parse_bits(const std::string& spec) {
  std::vector<double> out;
  for (const std::string& item : split(spec, ',')) {
    const auto dots = item.find("..");
    if (dots == std::string::npos) {
      out.push_back(parse_number(item, "bit value"));
      continue;
    }
    const double a = parse_number(trim(item.substr(0, dots)), "range start");
    const double b = parse_number(trim(item.substr(dots + 2)), "range end");
    if (a != std::floor(a) || b != std::floor(b) || b < a) {
      throw BadArgs("bit range '" + item + "' must be a..b with integers a <= b");
    }
    for (double v = a; v <= b; v += 1.0) out.push_back(v);
  }
  if (out.empty()) throw BadArgs("empty bit sweep");
  return out;
}

std::vector<double> parse_rates(const std::string& spec) {
  std::vector<double> out;
  for (const std::string& item : split(spec, ',')) {
    const double v = parse_number(item, "rate");
    if (v < 0.0) throw BadArgs("rates must be nonnegative, got '" + item + "'");
    out.push_back(v);
  }
  return out;
}

std::vector<SchemeId> parse_schemes(const std::string& spec) {
  std::vector<SchemeId> out;
  for (const std::string& item : split(spec, ',')) {
    const auto id = parse_scheme(item);
    if (!id) throw BadArgs("unknown scheme '" + item + "'");
    out.push_back(*id);
  }
  return out;
}

// Topology flags shared by every subcommand.
struct TopologyFlags {
  std::optional<std::size_t> users, rrus, antennas;
  std::optional<double> snr_db;

  void add(CLI::App* app) {
    app->add_option("--users", users, "Number of single-antenna users (default 15)")
        ->check(CLI::PositiveNumber);
    app->add_option("--rrus", rrus, "Number of RRUs in the cascade, L (default 4)")
        ->check(CLI::PositiveNumber);
    app->add_option("--antennas", antennas, "Antennas per RRU (default 7)")
        ->check(CLI::PositiveNumber);
    app->add_option("--snr-db", snr_db, "Per-user SNR in dB (default 10 dB)");
  }

  void apply(ExperimentConfig& cfg) const {
    if (users) cfg.n_users = *users;
    if (rrus) cfg.n_rrus = *rrus;
    if (antennas) cfg.antennas_per_rru = *antennas;
    if (snr_db) cfg.snr_db = *snr_db;
  }
};

struct RunFlags {
  std::string config_path;
  TopologyFlags topo;
  std::string profile, bits, schemes, out, format = "csv";
  std::optional<std::size_t> trials, grid_steps;
  std::optional<std::uint64_t> seed;
  std::size_t workers = 0;
  bool quiet = false;
};

struct EvalFlags {
  TopologyFlags topo;
  std::uint64_t seed = 42;
  std::optional<std::size_t> trial;
  std::string instance_path, rate_vector, scheme;
  std::size_t grid_steps = 32;
};

struct DumpFlags {
  TopologyFlags topo;
  std::uint64_t seed = 42;
  std::optional<std::size_t> trial;
  std::string out;
};

void write_output(const std::string& text, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw IoFailure("cannot open '" + path + "' for writing");
  f << text;
  if (!f.flush()) throw IoFailure("write to '" + path + "' failed");
}

ExperimentConfig run_config(const RunFlags& f) {
  ExperimentConfig cfg =
      f.config_path.empty() ? ExperimentConfig{} : config_from_json(read_file(f.config_path));
  f.topo.apply(cfg);
  if (!f.profile.empty()) {
    const auto p = parse_profile(f.profile);
    if (!p) throw BadArgs("unknown profile '" + f.profile + "'");
    cfg.fh_profile = *p;
  }
  if (!f.bits.empty()) cfg.bits_per_user_sweep = parse_bits(f.bits);
  if (!f.schemes.empty()) cfg.schemes = parse_schemes(f.schemes);
  if (f.trials) cfg.n_trials = *f.trials;
  if (f.seed) cfg.base_seed = *f.seed;
  if (f.grid_steps) cfg.grid_steps = *f.grid_steps;
  cfg.validate();
  return cfg;
}

int cmd_run(const RunFlags& f) {
  const ExperimentConfig cfg = run_config(f);
  const ResultFormat format = f.format == "json" ? ResultFormat::Json : ResultFormat::Csv;
  ProgressSink progress;
  if (!f.quiet) {
    progress = [](std::size_t done, std::size_t total) {
      std::fprintf(stderr, "\rtrials %zu/%zu", done, total);
      if (done == total) std::fputc('\n', stderr);
    };
  }
  const ResultTable table = run_experiment(cfg, progress, f.workers);
  if (f.out.empty() || f.out == "-") {
    std::cout << (format == ResultFormat::Csv ? results_to_csv(table) : results_to_json(table));
  } else {
    write_results(table, f.out, format);
  }
  return 0;
}

SystemInstance make_instance(const TopologyFlags& topo, std::uint64_t seed,
                             std::optional<std::size_t> trial) {
  ExperimentConfig cfg;
  topo.apply(cfg);
  cfg.validate();
  return sample_instance(cfg.topology(), trial ? trial_seed(seed, *trial) : seed);
}

ordered_json description_json(const ReducedDescription& d) {
  ordered_json j;
  j["active"] = d.size();
  j["water_level"] = d.waterfill.water_level;
  j["bits"] = d.waterfill.total_bits();
  j["distortion"] = d.waterfill.total_distortion();
  j["noise_var"] = std::vector<double>(d.noise_var.data(), d.noise_var.data() + d.size());
  return j;
}

int cmd_eval_one(const EvalFlags& f) {
  const SchemeId id = parse_schemes(f.scheme).at(0);
  const std::vector<double> rates = parse_rates(f.rate_vector);
  std::optional<SystemInstance> inst;
  if (!f.instance_path.empty()) {
    try {
      inst.emplace(instance_from_json(read_file(f.instance_path)));
    } catch (const nlohmann::json::exception& e) {
      throw BadArgs("malformed instance file: " + std::string(e.what()));
    }
  } else {
    inst.emplace(make_instance(f.topo, f.seed, f.trial));
  }
  if (rates.size() != inst->topology().n_rrus) {
    throw BadArgs("--rate-vector needs " + std::to_string(inst->topology().n_rrus) +
                  " entries, got " + std::to_string(rates.size()));
  }
  if (f.grid_steps == 0) throw BadArgs("--grid-steps must be positive");

  const SchemeEvaluation ev = evaluate_scheme(id, *inst, rates, f.grid_steps);
  ordered_json j;
  j["scheme"] = scheme_name(id);
  const Topology& t = inst->topology();
  j["topology"] = {{"n_users", t.n_users},
                   {"n_rrus", t.n_rrus},
                   {"antennas_per_rru", t.antennas_per_rru},
                   {"snr", t.snr}};
  if (f.instance_path.empty()) {
    j["seed"] = f.seed;
    j["trial"] = f.trial ? ordered_json(*f.trial) : ordered_json(nullptr);
  }
  j["fronthaul"] = ev.fronthaul;
  j["sum_distortion"] = ev.sum_distortion;
  j["zero_rate_distortion"] = target_cov(*inst).trace();
  j["grid_steps"] = id == SchemeId::SR || id == SchemeId::IR ? ordered_json(f.grid_steps)
                                                             : ordered_json(nullptr);
  j["allocation"] = ev.allocation ? ordered_json(ev.allocation->per_rru_bits)
                                  : ordered_json(nullptr);
  ordered_json stages = ordered_json::array();
  for (std::size_t l = 0; l < ev.routing.size(); ++l) {
    ordered_json s = description_json(ev.routing[l].description);
    s["rru"] = l + 1;
    stages.push_back(s);
  }
  if (ev.ip_chain) {
    for (std::size_t l = 0; l < ev.ip_chain->stages.size(); ++l) {
      const IPStage& st = ev.ip_chain->stages[l];
      ordered_json s = description_json(st.description);
      s["rru"] = l + 1;
      s["stage_distortion"] = st.stage_distortion;
      stages.push_back(s);
    }
  }
  j["descriptions"] = stages;
  j["cut_distortions"] = ev.cut_distortions;
  std::cout << j.dump(2) << '\n';
  return 0;
}

int cmd_validate(const std::string& path) {
  const ExperimentConfig cfg = config_from_json(read_file(path));
  std::cout << config_to_json(cfg) << '\n';
  return 0;
}

int cmd_dump(const DumpFlags& f) {
  write_output(instance_to_json(make_instance(f.topo, f.seed, f.trial)) + "\n", f.out);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cascade C-RAN fronthaul compression simulator"};
  app.require_subcommand(1);

  RunFlags run;
  CLI::App* run_cmd = app.add_subcommand("run", "Monte Carlo sweep over bits per user");
  run_cmd->add_option("--config", run.config_path,
                      "JSON config file; inline flags override its values")
      ->check(CLI::ExistingFile);
  run.topo.add(run_cmd);
  run_cmd->add_option("--profile", run.profile,
                      "Fronthaul profile: balanced (R_l = U*B bits) or increasing (R_l = l*U*B bits)")
      ->check(CLI::IsMember({"balanced", "increasing"}, CLI::ignore_case));
  run_cmd->add_option("--bits", run.bits,
                      "Bits per user B per sample: a..b inclusive integer range and/or comma list "
                      "(default 0..15)");
  run_cmd->add_option("--trials", run.trials, "Number of channel draws (default 200)");
  run_cmd->add_option("--seed", run.seed, "Base seed, unsigned 64-bit (default 42)");
  run_cmd->add_option("--schemes", run.schemes,
                      "Comma list of SR, IR (alias WZR), IP, LOWER_BOUND (default all)");
  run_cmd->add_option("--grid-steps", run.grid_steps,
                      "Levels per cumulative sum in the SR/IR bit-allocation grid (default 32)");
  run_cmd->add_option("--out", run.out, "Output path; '-' or omitted writes to stdout");
  run_cmd->add_option("--format", run.format, "csv or json (default csv)")
      ->check(CLI::IsMember({"csv", "json"}));
  run_cmd->add_option("--workers", run.workers,
                      "Worker threads; 0 uses all available cores (default 0)");
  run_cmd->add_flag("--quiet", run.quiet, "Suppress the progress line on stderr");

  EvalFlags eval;
  CLI::App* eval_cmd =
      app.add_subcommand("eval-one", "Evaluate one scheme on one instance and print JSON");
  eval.topo.add(eval_cmd);
  eval_cmd->add_option("--seed", eval.seed, "Instance seed, unsigned 64-bit (default 42)");
  eval_cmd->add_option("--trial", eval.trial,
                       "Use the instance of this trial index of a run with --seed as base seed");
  eval_cmd->add_option("--instance", eval.instance_path,
                       "Instance JSON from dump-instance (overrides the topology flags and seed)")
      ->check(CLI::ExistingFile);
  eval_cmd->add_option("--rate-vector", eval.rate_vector,
                       "Fronthaul rates R_1,...,R_L in bits per sample")
      ->required();
  eval_cmd->add_option("--scheme", eval.scheme, "SR, IR (alias WZR), IP or LOWER_BOUND")
      ->required();
  eval_cmd->add_option("--grid-steps", eval.grid_steps,
                       "Levels per cumulative sum in the SR/IR bit-allocation grid (default 32)");

  std::string validate_path;
  CLI::App* validate_cmd =
      app.add_subcommand("validate-config", "Check a JSON config and print it with defaults");
  validate_cmd->add_option("--config", validate_path, "JSON config file")->required();

  DumpFlags dump;
  CLI::App* dump_cmd = app.add_subcommand("dump-instance", "Write one channel draw as JSON");
  dump.topo.add(dump_cmd);
  dump_cmd->add_option("--seed", dump.seed, "Instance seed, unsigned 64-bit (default 42)");
  dump_cmd->add_option("--trial", dump.trial,
                       "Use the instance of this trial index of a run with --seed as base seed");
  dump_cmd->add_option("--out", dump.out, "Output path; '-' or omitted writes to stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitBadArgs;
  }

  try {
    if (*run_cmd) return cmd_run(run);
    if (*eval_cmd) return cmd_eval_one(eval);
    if (*validate_cmd) return cmd_validate(validate_path);
    if (*dump_cmd) return cmd_dump(dump);
  } catch (const BadArgs& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitBadArgs;
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitBadArgs;
  } catch (const InfeasibleAllocation& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitBadArgs;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
  return kExitBadArgs;
}
