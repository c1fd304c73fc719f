#include "cascade/waterfill.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace cascade {

double WaterfillSolution::total_distortion() const {
  return std::accumulate(distortions.begin(), distortions.end(), 0.0);
}

double WaterfillSolution::total_bits() const {
  return std::accumulate(bit_loads.begin(), bit_loads.end(), 0.0);
}

std::size_t WaterfillSolution::active_count() const {
  return static_cast<std::size_t>(std::count(active.begin(), active.end(), true));
}

WaterfillSolution reverse_waterfill(const std::vector<double>& eigs, double budget) {
  if (!std::isfinite(budget) || budget < 0.0) {
    throw std::invalid_argument("reverse_waterfill: budget must be finite and >= 0");
  }
  for (double e : eigs) {
    if (!std::isfinite(e) || e < 0.0) {
      throw std::invalid_argument("reverse_waterfill: eigenvalues must be finite and >= 0");
    }
  }

  const std::size_t n = eigs.size();
  WaterfillSolution sol;
  sol.eigenvalues = eigs;
  sol.distortions = eigs;
  sol.bit_loads.assign(n, 0.0);
  sol.noise_eigs.assign(n, kInactiveNoise);
  sol.active.assign(n, false);

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return eigs[a] > eigs[b]; });
  const auto positive = static_cast<std::size_t>(
      std::count_if(eigs.begin(), eigs.end(), [](double e) { return e > 0.0; }));

  if (positive == 0) {
    sol.water_level = 0.0;
    return sol;
  }
  if (budget == 0.0) {
    sol.water_level = eigs[order[0]];
    return sol;
  }

  // Active set = the m largest eigenvalues; lambda = (prod lambda_k * 2^-B)^(1/m),
  // accepted once it falls in [lambda_{m+1}, lambda_m].
  double log_sum = 0.0;
  double level = 0.0;
  std::size_t m = 0;
  for (std::size_t k = 1; k <= positive; ++k) {
    log_sum += std::log2(eigs[order[k - 1]]);
    level = std::exp2((log_sum - budget) / static_cast<double>(k));
    const double next = k < positive ? eigs[order[k]] : 0.0;
    if (level >= next) {
      m = k;
      break;
    }
  }
  if (m == 0) {
    // Only reachable through round-off at the last candidate.
    m = positive;
  }

  sol.water_level = level;
  for (std::size_t i = 0; i < m; ++i) {
    const std::size_t k = order[i];
    const double lam = eigs[k];
    if (lam > level) {
      sol.distortions[k] = level;
      sol.bit_loads[k] = std::log2(lam / level);
      sol.noise_eigs[k] = level / (lam - level);
      sol.active[k] = true;
    }
  }
  return sol;
}

ReducedDescription build_noise_cov(const WaterfillSolution& sol, const EigenSystem& basis) {
  if (static_cast<Eigen::Index>(sol.eigenvalues.size()) != basis.dim()) {
    throw DimensionMismatch("build_noise_cov: basis dimension does not match water-fill size");
  }
  const auto active = static_cast<Eigen::Index>(sol.active_count());
  ReducedDescription desc;
  desc.projector.resize(basis.eigenvectors.rows(), active);
  desc.noise_ratio.resize(active);
  desc.noise_var.resize(active);
  Eigen::Index col = 0;
  for (std::size_t k = 0; k < sol.active.size(); ++k) {
    if (!sol.active[k]) continue;
    desc.projector.col(col) = basis.eigenvectors.col(static_cast<Eigen::Index>(k));
    desc.noise_ratio(col) = sol.noise_eigs[k];
    desc.noise_var(col) = sol.eigenvalues[k] * sol.noise_eigs[k];
    ++col;
  }
  desc.waterfill = sol;
  return desc;
}

ReducedDescription describe(const HermitianCov& cov, double budget, double reference_scale) {
  const EigenSystem es = eig_hermitian(cov, reference_scale);
  const std::vector<double> eigs(es.eigenvalues.data(), es.eigenvalues.data() + es.dim());
  return build_noise_cov(reverse_waterfill(eigs, budget), es);
}

}  // namespace cascade
