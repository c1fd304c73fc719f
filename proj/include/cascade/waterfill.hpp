// Reverse water-filling over independent Gaussian components.
#pragma once

#include <limits>
#include <vector>

#include "cascade/linalg.hpp"

namespace cascade {

/// Result of distributing a bit budget over components with variances
/// `eigenvalues`. Component k is reconstructed with distortion
/// d_k = min(water_level, eigenvalues[k]) at cost log2(eigenvalues[k] / d_k).
struct WaterfillSolution {
  double water_level = 0.0;
  std::vector<double> eigenvalues;
  std::vector<double> distortions;
  std::vector<double> bit_loads;
  /// d_k / (lambda_k - d_k) for active components, +infinity otherwise.
  std::vector<double> noise_eigs;
  std::vector<bool> active;

  double total_distortion() const;
  double total_bits() const;
  std::size_t active_count() const;
};

inline constexpr double kInactiveNoise = std::numeric_limits<double>::infinity();

/// Exact piecewise closed-form solver. Eigenvalues must be finite and >= 0,
/// budget finite and >= 0; violations throw std::invalid_argument.
WaterfillSolution reverse_waterfill(const std::vector<double>& eigs, double budget);

/// Achieving test channel in reduced form: description = projector^H x + noise,
/// noise ~ CN(0, diag(noise_var)). Only components that receive bits appear.
/// noise_ratio holds lambda_k^Q (noise power relative to the component
/// variance); noise_var = lambda_k * lambda_k^Q = d_k lambda_k / (lambda_k - d_k).
struct ReducedDescription {
  CMatrix projector;
  RVector noise_ratio;
  RVector noise_var;
  WaterfillSolution waterfill;

  Eigen::Index size() const { return projector.cols(); }
  bool empty() const { return projector.cols() == 0; }
};

/// `basis` must be the eigensystem whose eigenvalues were water-filled
/// (same length and order as sol.eigenvalues).
ReducedDescription build_noise_cov(const WaterfillSolution& sol, const EigenSystem& basis);

/// Convenience: eigendecompose `cov`, water-fill `budget` bits, and build the
/// reduced description. `reference_scale` is forwarded to eig_hermitian.
ReducedDescription describe(const HermitianCov& cov, double budget, double reference_scale = 0.0);

}  // namespace cascade
