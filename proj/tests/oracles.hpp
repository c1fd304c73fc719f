// Independent reference computations used by the unit and acceptance tests.
// None of these share code paths with the library beyond the public types.
#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "cascade/schemes.hpp"

namespace oracle {

using cascade::CMatrix;
using cascade::Complex;
using cascade::RVector;

struct ScanResult {
  double level = 0.0;
  double distortion = 0.0;
  double bits = 0.0;
};

/// Water level found by scanning `points` log-spaced candidate levels, then
/// bisecting the bracketing interval. Total distortion sum_k min(level, eig_k).
ScanResult scan_waterfill(const std::vector<double>& eigs, double budget,
                          std::size_t points = 100000);

/// Draws `n` columns of i.i.d. CN(0, var) entries.
CMatrix complex_gaussian(std::mt19937_64& rng, Eigen::Index rows, Eigen::Index n,
                         double var = 1.0);

/// Samples of the observation S = H X + N and target Z = W S.
struct SourceSamples {
  CMatrix s;
  CMatrix z;
};
SourceSamples draw_sources(const cascade::SystemInstance& inst, std::mt19937_64& rng,
                           Eigen::Index n);

/// Colored noise with independent entries of variance var(k).
CMatrix diag_noise(std::mt19937_64& rng, const RVector& var, Eigen::Index n);

/// Accumulates second moments of (target, observation) pairs and reports the
/// in-sample residual of the fitted linear estimator.
class EmpiricalLmmse {
 public:
  void add(const CMatrix& target, const CMatrix& obs);
  double residual() const;
  double target_power() const;

 private:
  CMatrix tt_, to_, oo_;
  double count_ = 0.0;
};

/// Quantize-and-forward simulations with explicit Gaussian test channels.
/// Each returns the empirical distortion of the best linear estimate of Z.
double simulate_sr(const cascade::SystemInstance& inst, const cascade::SchemeEvaluation& ev,
                   std::size_t samples, std::uint64_t seed);
double simulate_ir(const cascade::SystemInstance& inst, const cascade::SchemeEvaluation& ev,
                   std::size_t samples, std::uint64_t seed);
double simulate_ip(const cascade::SystemInstance& inst, const cascade::SchemeEvaluation& ev,
                   std::size_t samples, std::uint64_t seed);

/// Small instance for sampling checks: 1-2 users, 1-2 antennas per RRU.
cascade::SystemInstance small_instance(std::size_t n_rrus, std::uint64_t seed);

double rel_diff(double a, double b);

}  // namespace oracle
