// Sum-distortion of the compress-and-forward strategies over a cascade of
// RRUs, plus the cut-set lower bound. All evaluations use Gaussian test
// channels and MMSE reconstruction; rates are in bits per sample.
#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "cascade/linalg.hpp"
#include "cascade/system_model.hpp"
#include "cascade/waterfill.hpp"

namespace cascade {

enum class SchemeId { SR, IR, IP, LowerBound };

inline constexpr SchemeId kAllSchemes[] = {SchemeId::SR, SchemeId::IR, SchemeId::IP,
                                           SchemeId::LowerBound};

/// "SR", "IR", "IP", "LOWER_BOUND".
std::string_view scheme_name(SchemeId id);
/// Accepts the canonical names (case-insensitive) plus "WZR" (routes to IR) and "LB".
std::optional<SchemeId> parse_scheme(std::string_view name);

class InfeasibleAllocation : public Error {
 public:
  using Error::Error;
};

/// Slack allowed on the cumulative constraints B_1 + ... + B_l <= R_l.
inline constexpr double kFeasibilitySlack = 1e-12;

struct RateAllocation {
  std::vector<double> per_rru_bits;
  std::vector<double> fronthaul;

  /// Throws InfeasibleAllocation unless sizes match `n_rrus`, all entries are
  /// finite and nonnegative and every cumulative constraint holds.
  void validate(std::size_t n_rrus) const;
};

/// One routed description (SR or IR). For IR the RRU compresses its
/// innovation J_l = S_l - prior_gain * [U_1; ...; U_{l-1}] (earlier routed
/// descriptions stacked in order); for SR prior_gain is empty and the RRU
/// compresses S_l itself. The description is projector^H (.) + noise.
struct RoutingStage {
  ReducedDescription description;
  CMatrix prior_gain;
};

/// One in-network processing stage. The RRU forms F_l = [U_{l-1}; W_l S_l],
/// combines R_l = combiner * F_l, and sends U_l = projector^H R_l + Q_l.
/// Maps are expressed against the stacked sources S and the stacked
/// quantization noises of all earlier stages.
struct IPStage {
  CMatrix combiner;
  CMatrix source_map;  // R_l = source_map * S + noise_map * q_{<l}
  CMatrix noise_map;
  ReducedDescription description;
  CMatrix description_source_map;  // U_l = description_source_map * S + description_noise_map * q_{<=l}
  CMatrix description_noise_map;
  double stage_distortion = 0.0;

  /// P_l^U: the columns of the combiner acting on U_{l-1}.
  CMatrix combiner_prev() const;
  /// P_l^S: the columns acting on W_l S_l.
  CMatrix combiner_local() const;
};

struct IPChainState {
  std::vector<IPStage> stages;
  /// Variances of every stage's quantization noise, stacked in stage order.
  RVector stacked_noise_var;
};

struct SchemeEvaluation {
  SchemeId scheme = SchemeId::SR;
  double sum_distortion = 0.0;
  std::vector<double> fronthaul;
  std::optional<RateAllocation> allocation;
  std::vector<RoutingStage> routing;
  std::optional<IPChainState> ip_chain;
  /// LOWER_BOUND: distortion of each cut l = 1..L.
  std::vector<double> cut_distortions;
};

/// Standard routing: every RRU compresses its own observation at B_l bits,
/// CP estimates Z from all descriptions jointly.
SchemeEvaluation eval_sr(const SystemInstance& inst, const RateAllocation& alloc);

/// Improved routing via separate decompression, innovation computation and
/// independent innovation compression.
SchemeEvaluation eval_ir(const SystemInstance& inst, const RateAllocation& alloc);

/// Improved routing via the joint test channel U_l = S_l + Q_l, conditioning on
/// earlier descriptions through the full joint covariance. Same distortion as
/// eval_ir; kept as an independent code path.
SchemeEvaluation eval_ir_joint(const SystemInstance& inst, const RateAllocation& alloc);

/// Best eval_ir over the cumulative-sum grid (see README). The uniform split
/// B_l = min_j R_j / j is always among the candidates.
SchemeEvaluation optimize_ir_allocation(const SystemInstance& inst,
                                        const std::vector<double>& fronthaul,
                                        std::size_t grid_steps);

/// eval_sr searched over the same grid as optimize_ir_allocation.
SchemeEvaluation optimize_sr_allocation(const SystemInstance& inst,
                                        const std::vector<double>& fronthaul,
                                        std::size_t grid_steps);

/// In-network processing with partial beamforming and Wyner-Ziv compression
/// against the next RRU's observation.
SchemeEvaluation eval_ip(const SystemInstance& inst, const std::vector<double>& fronthaul);

/// Cut-set lower bound max_l D_l.
SchemeEvaluation eval_lower_bound(const SystemInstance& inst, const std::vector<double>& fronthaul);

/// Dispatches on scheme id; SR and IR run their allocation search.
SchemeEvaluation evaluate_scheme(SchemeId id, const SystemInstance& inst,
                                 const std::vector<double>& fronthaul, std::size_t grid_steps);

}  // namespace cascade
