// Monte Carlo sweep over bit budgets with paired channel draws.
#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string_view>
#include <string>
#include <vector>

#include "cascade/schemes.hpp"
#include "cascade/system_model.hpp"

namespace cascade {

inline constexpr const char* kArtifactVersion = "1.0.0";
inline constexpr const char* kSeedRule =
    "trial_seed = splitmix64(base_seed ^ splitmix64(trial_index)); "
    "channel drawn with std::mt19937_64(trial_seed)";

enum class FronthaulProfile { Balanced, Increasing };

std::string_view profile_name(FronthaulProfile p);
std::optional<FronthaulProfile> parse_profile(std::string_view name);

class ConfigError : public Error {
 public:
  using Error::Error;
};

struct ExperimentConfig {
  std::size_t n_users = 15;
  std::size_t n_rrus = 4;
  std::size_t antennas_per_rru = 7;
  double snr_db = 10.0;
  FronthaulProfile fh_profile = FronthaulProfile::Balanced;
  std::vector<double> bits_per_user_sweep = default_sweep();
  std::size_t n_trials = 200;
  std::uint64_t base_seed = 42;
  std::vector<SchemeId> schemes{kAllSchemes, kAllSchemes + 4};
  std::size_t grid_steps = 32;

  static std::vector<double> default_sweep();
  Topology topology() const;
  /// Fronthaul tuple for `bits_per_user`: R_l = U B (balanced) or l U B (increasing).
  std::vector<double> fronthaul(double bits_per_user) const;
  /// Throws ConfigError.
  void validate() const;
};

/// Parses a JSON config; every key is optional (defaults above), unknown keys
/// are rejected. Throws ConfigError.
ExperimentConfig config_from_json(const std::string& text);
std::string config_to_json(const ExperimentConfig& cfg);

std::uint64_t splitmix64(std::uint64_t x);
std::uint64_t trial_seed(std::uint64_t base_seed, std::uint64_t trial_index);

/// Raw per-trial output: distortion[trial][scheme][b] in cfg order.
struct TrialSamples {
  std::vector<std::vector<std::vector<double>>> distortion;
  /// Tr{Sigma_z} of each trial's instance.
  std::vector<double> zero_rate_distortion;
};

struct ResultRow {
  SchemeId scheme = SchemeId::SR;
  double bits_per_user = 0.0;
  double mean_distortion = 0.0;
  double std_distortion = 0.0;
  std::size_t n_trials = 0;

  bool operator==(const ResultRow&) const = default;
};

struct ResultTable {
  ExperimentConfig config;
  std::vector<ResultRow> rows;
  std::string version = kArtifactVersion;
  std::string seed_rule = kSeedRule;
};

/// Failure on a specific trial; message carries the trial index.
class TrialError : public Error {
 public:
  TrialError(std::size_t trial, const std::string& what)
      : Error("trial " + std::to_string(trial) + ": " + what), trial_(trial) {}
  std::size_t trial() const { return trial_; }

 private:
  std::size_t trial_;
};

using ProgressSink = std::function<void(std::size_t done, std::size_t total)>;

/// Runs every trial on `workers` threads (0 = hardware concurrency). Results
/// do not depend on the worker count.
TrialSamples run_trials(const ExperimentConfig& cfg, const ProgressSink& progress = {},
                        std::size_t workers = 1);

/// Mean / sample standard deviation per (scheme, B), schemes in cfg order.
ResultTable aggregate(const ExperimentConfig& cfg, const TrialSamples& samples);

ResultTable run_experiment(const ExperimentConfig& cfg, const ProgressSink& progress = {},
                           std::size_t workers = 1);

}  // namespace cascade
