#include "cascade/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <cmath>
#include <exception>
#include <mutex>
#include <set>
#include <thread>

#include <json.hpp>

namespace cascade {

std::string_view profile_name(FronthaulProfile p) {
  return p == FronthaulProfile::Balanced ? "balanced" : "increasing";
}

std::optional<FronthaulProfile> parse_profile(std::string_view name) {
  std::string low(name);
  std::transform(low.begin(), low.end(), low.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (low == "balanced") return FronthaulProfile::Balanced;
  if (low == "increasing") return FronthaulProfile::Increasing;
  return std::nullopt;
}

std::vector<double> ExperimentConfig::default_sweep() {
  std::vector<double> s;
  for (int b = 0; b <= 15; ++b) s.push_back(b);
  return s;
}

Topology ExperimentConfig::topology() const {
  return Topology{n_users, n_rrus, antennas_per_rru, db_to_linear(snr_db)};
}

std::vector<double> ExperimentConfig::fronthaul(double bits_per_user) const {
  std::vector<double> r(n_rrus);
  const double base = static_cast<double>(n_users) * bits_per_user;
  for (std::size_t l = 0; l < n_rrus; ++l) {
    r[l] = fh_profile == FronthaulProfile::Balanced ? base : static_cast<double>(l + 1) * base;
  }
  return r;
}

void ExperimentConfig::validate() const {
  try {
    topology().validate();
  } catch (const InvalidTopology& e) {
    throw ConfigError(e.what());
  }
  if (!std::isfinite(snr_db)) throw ConfigError("snr_db must be finite");
  if (n_trials == 0) throw ConfigError("n_trials must be positive");
  if (grid_steps == 0) throw ConfigError("grid_steps must be positive");
  if (schemes.empty()) throw ConfigError("at least one scheme is required");
  std::set<SchemeId> seen;
  for (SchemeId s : schemes) {
    if (!seen.insert(s).second) {
      throw ConfigError("duplicate scheme " + std::string(scheme_name(s)));
    }
  }
  for (std::size_t i = 0; i < bits_per_user_sweep.size(); ++i) {
    const double b = bits_per_user_sweep[i];
    if (!std::isfinite(b) || b < 0.0) {
      throw ConfigError("bits per user must be finite and nonnegative");
    }
    if (i > 0 && !(b > bits_per_user_sweep[i - 1])) {
      throw ConfigError("bits_per_user_sweep must be strictly ascending");
    }
  }
}

namespace {

using nlohmann::ordered_json;

template <typename T>
T get_field(const ordered_json& j, const char* key) {
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("config field '") + key + "': " + e.what());
  }
}

}  // namespace

ExperimentConfig config_from_json(const std::string& text) {
  ordered_json j;
  try {
    j = ordered_json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  static const std::set<std::string> known{
      "n_users",  "n_rrus",   "antennas_per_rru", "snr_db",  "fh_profile",
      "bits_per_user_sweep", "n_trials", "base_seed", "schemes", "grid_steps"};
  for (const auto& [key, _] : j.items()) {
    if (!known.contains(key)) throw ConfigError("unknown config key '" + key + "'");
  }

  ExperimentConfig cfg;
  if (j.contains("n_users")) cfg.n_users = get_field<std::size_t>(j, "n_users");
  if (j.contains("n_rrus")) cfg.n_rrus = get_field<std::size_t>(j, "n_rrus");
  if (j.contains("antennas_per_rru")) {
    cfg.antennas_per_rru = get_field<std::size_t>(j, "antennas_per_rru");
  }
  if (j.contains("snr_db")) cfg.snr_db = get_field<double>(j, "snr_db");
  if (j.contains("fh_profile")) {
    const auto name = get_field<std::string>(j, "fh_profile");
    const auto p = parse_profile(name);
    if (!p) throw ConfigError("unknown fh_profile '" + name + "'");
    cfg.fh_profile = *p;
  }
  if (j.contains("bits_per_user_sweep")) {
    cfg.bits_per_user_sweep = get_field<std::vector<double>>(j, "bits_per_user_sweep");
  }
  if (j.contains("n_trials")) cfg.n_trials = get_field<std::size_t>(j, "n_trials");
  if (j.contains("base_seed")) cfg.base_seed = get_field<std::uint64_t>(j, "base_seed");
  if (j.contains("schemes")) {
    cfg.schemes.clear();
    for (const auto& name : get_field<std::vector<std::string>>(j, "schemes")) {
      const auto s = parse_scheme(name);
      if (!s) throw ConfigError("unknown scheme '" + name + "'");
      cfg.schemes.push_back(*s);
    }
  }
  if (j.contains("grid_steps")) cfg.grid_steps = get_field<std::size_t>(j, "grid_steps");
  cfg.validate();
  return cfg;
}

namespace {

ordered_json config_json(const ExperimentConfig& cfg) {
  ordered_json j;
  j["n_users"] = cfg.n_users;
  j["n_rrus"] = cfg.n_rrus;
  j["antennas_per_rru"] = cfg.antennas_per_rru;
  j["snr_db"] = cfg.snr_db;
  j["fh_profile"] = profile_name(cfg.fh_profile);
  j["bits_per_user_sweep"] = cfg.bits_per_user_sweep;
  j["n_trials"] = cfg.n_trials;
  j["base_seed"] = cfg.base_seed;
  ordered_json schemes = ordered_json::array();
  for (SchemeId s : cfg.schemes) schemes.push_back(scheme_name(s));
  j["schemes"] = schemes;
  j["grid_steps"] = cfg.grid_steps;
  return j;
}

}  // namespace

std::string config_to_json(const ExperimentConfig& cfg) { return config_json(cfg).dump(2); }

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t trial_seed(std::uint64_t base_seed, std::uint64_t trial_index) {
  return splitmix64(base_seed ^ splitmix64(trial_index));
}

TrialSamples run_trials(const ExperimentConfig& cfg, const ProgressSink& progress,
                        std::size_t workers) {
  cfg.validate();
  const Topology topology = cfg.topology();
  const std::size_t n = cfg.n_trials;
  TrialSamples out;
  out.distortion.resize(n);
  out.zero_rate_distortion.resize(n);

  std::vector<std::vector<double>> fronthauls;
  for (double b : cfg.bits_per_user_sweep) fronthauls.push_back(cfg.fronthaul(b));

  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  std::mutex mu;
  std::size_t done = 0;
  std::exception_ptr error;
  std::size_t error_trial = n;

  const auto work = [&] {
    for (;;) {
      const std::size_t t = next.fetch_add(1);
      if (t >= n || failed.load()) return;
      try {
        const SystemInstance inst = sample_instance(topology, trial_seed(cfg.base_seed, t));
        auto& row = out.distortion[t];
        row.assign(cfg.schemes.size(), std::vector<double>(fronthauls.size(), 0.0));
        for (std::size_t s = 0; s < cfg.schemes.size(); ++s) {
          for (std::size_t b = 0; b < fronthauls.size(); ++b) {
            row[s][b] =
                evaluate_scheme(cfg.schemes[s], inst, fronthauls[b], cfg.grid_steps).sum_distortion;
          }
        }
        out.zero_rate_distortion[t] = target_cov(inst).trace();
      } catch (...) {
        std::lock_guard lock(mu);
        // Keep the lowest failing trial so the reported error is deterministic.
        if (t < error_trial) {
          error_trial = t;
          error = std::current_exception();
        }
        failed.store(true);
        return;
      }
      if (progress) {
        std::lock_guard lock(mu);
        progress(++done, n);
      }
    }
  };

  if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
  workers = std::min(workers, n);
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t i = 0; i < workers; ++i) pool.emplace_back(work);
    for (auto& th : pool) th.join();
  }

  if (error) {
    try {
      std::rethrow_exception(error);
    } catch (const std::exception& e) {
      throw TrialError(error_trial, e.what());
    }
  }
  return out;
}

ResultTable aggregate(const ExperimentConfig& cfg, const TrialSamples& samples) {
  ResultTable table;
  table.config = cfg;
  const std::size_t n = samples.distortion.size();
  for (std::size_t s = 0; s < cfg.schemes.size(); ++s) {
    for (std::size_t b = 0; b < cfg.bits_per_user_sweep.size(); ++b) {
      double sum = 0.0;
      for (std::size_t t = 0; t < n; ++t) sum += samples.distortion[t][s][b];
      const double mean = n ? sum / static_cast<double>(n) : 0.0;
      double sq = 0.0;
      for (std::size_t t = 0; t < n; ++t) {
        const double d = samples.distortion[t][s][b] - mean;
        sq += d * d;
      }
      const double sd = n > 1 ? std::sqrt(sq / static_cast<double>(n - 1)) : 0.0;
      table.rows.push_back(ResultRow{cfg.schemes[s], cfg.bits_per_user_sweep[b], mean, sd, n});
    }
  }
  return table;
}

ResultTable run_experiment(const ExperimentConfig& cfg, const ProgressSink& progress,
                           std::size_t workers) {
  return aggregate(cfg, run_trials(cfg, progress, workers));
}

}  // namespace cascade
