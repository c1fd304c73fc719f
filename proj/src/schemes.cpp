#include "cascade/schemes.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>
#include <string>

namespace cascade {

std::string_view scheme_name(SchemeId id) {
  switch (id) {
    case SchemeId::SR:
      return "SR";
    case SchemeId::IR:
      return "IR";
    case SchemeId::IP:
      return "IP";
    case SchemeId::LowerBound:
      return "LOWER_BOUND";
  }
  return "?";
}

std::optional<SchemeId> parse_scheme(std::string_view name) {
  std::string up(name);
  std::transform(up.begin(), up.end(), up.begin(),
                 [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
  if (up == "SR") return SchemeId::SR;
  if (up == "IR" || up == "WZR") return SchemeId::IR;
  if (up == "IP") return SchemeId::IP;
  if (up == "LOWER_BOUND" || up == "LB") return SchemeId::LowerBound;
  return std::nullopt;
}

void RateAllocation::validate(std::size_t n_rrus) const {
  if (per_rru_bits.size() != n_rrus || fronthaul.size() != n_rrus) {
    throw InfeasibleAllocation("allocation must have one entry per RRU (" +
                               std::to_string(n_rrus) + ")");
  }
  double cumulative = 0.0;
  for (std::size_t l = 0; l < n_rrus; ++l) {
    const double b = per_rru_bits[l];
    const double r = fronthaul[l];
    if (!std::isfinite(b) || b < 0.0 || !std::isfinite(r) || r < 0.0) {
      throw InfeasibleAllocation("bits and fronthaul rates must be finite and nonnegative");
    }
    cumulative += b;
    if (cumulative > r + kFeasibilitySlack * std::max(1.0, r)) {
      throw InfeasibleAllocation("B_1 + ... + B_" + std::to_string(l + 1) + " = " +
                                 std::to_string(cumulative) + " exceeds R_" +
                                 std::to_string(l + 1) + " = " + std::to_string(r));
    }
  }
}

CMatrix IPStage::combiner_prev() const {
  return combiner.leftCols(combiner.cols() - combiner.rows());
}

CMatrix IPStage::combiner_local() const { return combiner.rightCols(combiner.rows()); }

namespace {

void check_fronthaul(const SystemInstance& inst, const std::vector<double>& fronthaul) {
  if (fronthaul.size() != inst.topology().n_rrus) {
    throw InfeasibleAllocation("fronthaul vector must have one rate per RRU");
  }
  for (double r : fronthaul) {
    if (!std::isfinite(r) || r < 0.0) {
      throw InfeasibleAllocation("fronthaul rates must be finite and nonnegative");
    }
  }
}

double target_scale(const SystemInstance& inst) {
  return target_cov(inst).trace() / static_cast<double>(inst.topology().n_users);
}

/// Stacked linear model: X = source_map * S + noise_map * q, q ~ CN(0, diag(noise_var)).
CMatrix model_cov(const SystemInstance& inst, const CMatrix& source_map, const CMatrix& noise_map,
                  const RVector& noise_var) {
  CMatrix c = source_map * inst.source_cov().matrix() * source_map.adjoint();
  if (noise_map.cols() > 0) {
    c += noise_map * noise_var.cast<Complex>().asDiagonal() * noise_map.adjoint();
  }
  return hermitian_part(c);
}

/// Tr{Sigma_z - Sigma_{z,u} Sigma_u^+ Sigma_{u,z}} for U = map * S + noise (noise independent).
double final_mmse(const SystemInstance& inst, const CMatrix& source_map, const CMatrix& noise_map,
                  const RVector& noise_var) {
  const HermitianCov sz = target_cov(inst);
  if (source_map.rows() == 0) return sz.trace();
  const CMatrix& w = inst.beamformer();
  const CMatrix cross = w * inst.source_cov().matrix() * source_map.adjoint();
  const HermitianCov su(model_cov(inst, source_map, noise_map, noise_var));
  return std::max(0.0, mmse_residual_trace(sz, cross, su));
}

CMatrix selector_rows(const SystemInstance& inst, std::size_t rru, const CMatrix& left) {
  // left * delta_l, with delta_l selecting RRU l's antennas out of S.
  const auto n = static_cast<Eigen::Index>(inst.topology().n_antennas());
  CMatrix out = CMatrix::Zero(left.rows(), n);
  out.middleCols(inst.rru_offset(rru), inst.rru_size()) = left;
  return out;
}

RVector append(const RVector& a, const RVector& b) {
  RVector out(a.size() + b.size());
  out << a, b;
  return out;
}

/// Routed descriptions made mutually independent by successive
/// orthogonalization. For IR the pushed descriptions are already independent
/// innovations; for SR each push removes its projection on earlier ones.
/// Either way the orthogonalized part of RRU l's description is
/// projector^H J_l + noise with J_l = S_l - E[S_l | earlier descriptions].
class InnovationChain {
 public:
  /// Innovation statistics of one RRU given the descriptions pushed so far.
  struct Innovation {
    std::size_t rru = 0;
    CMatrix cov;          // Sigma_{s_l | descriptions}
    CMatrix cross;        // cov(S, J_l)
    CMatrix target_cross; // cov(Z, J_l) = W cov(S, J_l)
  };

  /// `own_basis`: every pushed description is built on the eigenbasis of the
  /// innovation it describes (IR).
  InnovationChain(const SystemInstance& inst, bool own_basis)
      : inst_(inst),
        own_basis_(own_basis),
        w_sigma_(inst.beamformer() * inst.source_cov().matrix()),
        distortion_(target_cov(inst).trace()) {}

  /// `with_cross` = false skips cov(S, J_l), which only push() needs.
  Innovation innovation(std::size_t rru, bool with_cross = true) const {
    const Eigen::Index off = inst_.rru_offset(rru);
    const Eigen::Index a = inst_.rru_size();
    const CMatrix& sigma = inst_.source_cov().matrix();
    Innovation in;
    in.rru = rru;
    in.cov = sigma.block(off, off, a, a);
    if (with_cross) in.cross = sigma.middleCols(off, a);
    in.target_cross = w_sigma_.middleCols(off, a);
    for (const Entry& e : entries_) {
      if (e.cross.cols() == 0) continue;
      const CMatrix gain = e.inv_cov.lazyProduct(e.cross.middleRows(off, a).adjoint());
      in.cov.noalias() -= e.cross.middleRows(off, a).lazyProduct(gain);
      if (with_cross) in.cross.noalias() -= e.cross.lazyProduct(gain);
      in.target_cross.noalias() -= e.target_cross.lazyProduct(gain);
    }
    in.cov = hermitian_part(in.cov);
    return in;
  }

  /// Gain applied to the stacked earlier descriptions to form E[S_l | .].
  CMatrix prior_gain(std::size_t rru) const {
    const Eigen::Index off = inst_.rru_offset(rru);
    const Eigen::Index a = inst_.rru_size();
    Eigen::Index total = 0;
    for (const Entry& e : entries_) total += e.cross.cols();
    CMatrix g(a, total);
    Eigen::Index col = 0;
    for (const Entry& e : entries_) {
      g.middleCols(col, e.cross.cols()) = e.cross.middleRows(off, a) * e.inv_cov;
      col += e.cross.cols();
    }
    return g;
  }

  /// Distortion reduction the description would bring, without pushing it.
  double reduction(const Innovation& in, const ReducedDescription& desc) const {
    if (desc.empty()) return 0.0;
    const CMatrix inv = inverse_cov(in, desc);
    const CMatrix wc = in.target_cross.lazyProduct(desc.projector);
    return (wc.lazyProduct(inv).cwiseProduct(wc.conjugate())).sum().real();
  }

  void push(const Innovation& in, const ReducedDescription& desc) {
    Entry e;
    if (!desc.empty()) {
      e.cross = in.cross.lazyProduct(desc.projector);
      e.inv_cov = inverse_cov(in, desc);
      e.target_cross = in.target_cross.lazyProduct(desc.projector);
      e.reduction =
          (e.target_cross.lazyProduct(e.inv_cov).cwiseProduct(e.target_cross.conjugate()))
              .sum()
              .real();
    }
    distortion_ -= e.reduction;
    entries_.push_back(std::move(e));
  }

  void pop() {
    distortion_ += entries_.back().reduction;
    entries_.pop_back();
  }

  double distortion() const { return std::max(0.0, distortion_); }

 private:
  struct Entry {
    CMatrix cross;
    CMatrix target_cross;
    CMatrix inv_cov;
    double reduction = 0.0;
  };

  CMatrix inverse_cov(const Innovation& in, const ReducedDescription& desc) const {
    if (own_basis_) {
      // Projector columns are eigenvectors of in.cov, so the projected
      // covariance is diag(lambda_k) over the active components.
      RVector d(desc.size());
      Eigen::Index col = 0;
      for (std::size_t k = 0; k < desc.waterfill.active.size(); ++k) {
        if (!desc.waterfill.active[k]) continue;
        d(col) = 1.0 / (desc.waterfill.eigenvalues[k] + desc.noise_var(col));
        ++col;
      }
      return d.cast<Complex>().asDiagonal();
    }
    const CMatrix& v = desc.projector;
    CMatrix cov = v.adjoint().lazyProduct(in.cov.lazyProduct(v));
    cov.diagonal() += desc.noise_var.cast<Complex>();
    return Eigen::LLT<CMatrix>(hermitian_part(cov)).solve(
        CMatrix::Identity(cov.rows(), cov.cols()));
  }

  const SystemInstance& inst_;
  bool own_basis_;
  CMatrix w_sigma_;
  std::vector<Entry> entries_;
  double distortion_;
};

ReducedDescription describe_eigs(const EigenSystem& es, double budget) {
  const std::vector<double> eigs(es.eigenvalues.data(), es.eigenvalues.data() + es.dim());
  return build_noise_cov(reverse_waterfill(eigs, budget), es);
}

}  // namespace

SchemeEvaluation eval_sr(const SystemInstance& inst, const RateAllocation& alloc) {
  const std::size_t l_count = inst.topology().n_rrus;
  alloc.validate(l_count);
  SchemeEvaluation ev;
  ev.scheme = SchemeId::SR;
  ev.fronthaul = alloc.fronthaul;
  ev.allocation = alloc;

  const auto n = static_cast<Eigen::Index>(inst.topology().n_antennas());
  CMatrix source_map(0, n);
  RVector noise_var(0);
  for (std::size_t l = 0; l < l_count; ++l) {
    const HermitianCov block = inst.source_cov().block(inst.rru_indices(l));
    RoutingStage stage;
    stage.description = describe(block, alloc.per_rru_bits[l]);
    const CMatrix rows = selector_rows(inst, l, stage.description.projector.adjoint());
    CMatrix grown(source_map.rows() + rows.rows(), n);
    grown << source_map, rows;
    source_map = std::move(grown);
    noise_var = append(noise_var, stage.description.noise_var);
    ev.routing.push_back(std::move(stage));
  }
  const CMatrix noise_map = CMatrix::Identity(source_map.rows(), source_map.rows());
  ev.sum_distortion = final_mmse(inst, source_map, noise_map, noise_var);
  return ev;
}

SchemeEvaluation eval_ir(const SystemInstance& inst, const RateAllocation& alloc) {
  const std::size_t l_count = inst.topology().n_rrus;
  alloc.validate(l_count);
  SchemeEvaluation ev;
  ev.scheme = SchemeId::IR;
  ev.fronthaul = alloc.fronthaul;
  ev.allocation = alloc;

  const double scale = inst.source_cov().trace() / static_cast<double>(inst.source_cov().dim());
  InnovationChain chain(inst, true);
  for (std::size_t l = 0; l < l_count; ++l) {
    RoutingStage stage;
    stage.prior_gain = chain.prior_gain(l);
    const auto innov = chain.innovation(l);
    stage.description = describe_eigs(eig_hermitian(HermitianCov(innov.cov), scale),
                                      alloc.per_rru_bits[l]);
    chain.push(innov, stage.description);
    ev.routing.push_back(std::move(stage));
  }
  ev.sum_distortion = chain.distortion();
  return ev;
}

SchemeEvaluation eval_ir_joint(const SystemInstance& inst, const RateAllocation& alloc) {
  const std::size_t l_count = inst.topology().n_rrus;
  alloc.validate(l_count);
  SchemeEvaluation ev;
  ev.scheme = SchemeId::IR;
  ev.fronthaul = alloc.fronthaul;
  ev.allocation = alloc;

  const double scale = inst.source_cov().trace() / static_cast<double>(inst.source_cov().dim());
  const auto n = static_cast<Eigen::Index>(inst.topology().n_antennas());
  const Eigen::Index a = inst.rru_size();
  CMatrix source_map(0, n);  // stacked U_m = V_m^H S_m + Q_m
  RVector noise_var(0);
  for (std::size_t l = 0; l < l_count; ++l) {
    // Joint covariance of [S_l; U_1..U_{l-1}], then Schur-complement on the U block.
    const CMatrix sel = selector_rows(inst, l, CMatrix::Identity(a, a));
    CMatrix map(a + source_map.rows(), n);
    map << sel, source_map;
    CMatrix noise = CMatrix::Zero(map.rows(), source_map.rows());
    noise.bottomRows(source_map.rows()).setIdentity();
    const HermitianCov joint(model_cov(inst, map, noise, noise_var));
    const HermitianCov innov =
        conditional_cov(joint, index_range(0, a), index_range(a, source_map.rows()));

    RoutingStage stage;
    stage.description = describe(innov, alloc.per_rru_bits[l], scale);
    const CMatrix rows = selector_rows(inst, l, stage.description.projector.adjoint());
    CMatrix grown(source_map.rows() + rows.rows(), n);
    grown << source_map, rows;
    source_map = std::move(grown);
    noise_var = append(noise_var, stage.description.noise_var);
    ev.routing.push_back(std::move(stage));
  }
  const CMatrix noise_map = CMatrix::Identity(source_map.rows(), source_map.rows());
  ev.sum_distortion = final_mmse(inst, source_map, noise_map, noise_var);
  return ev;
}

namespace {

enum class RoutingKind { Standard, Innovation };

/// Depth-first enumeration of cumulative sums c_1 <= ... <= c_L on the grid
/// k * h, h = R_L / grid_steps, with c_l <= min_{j >= l} R_j and c_L = R_L.
class AllocationSearch {
 public:
  AllocationSearch(const SystemInstance& inst, const std::vector<double>& fronthaul,
                   std::size_t grid_steps, RoutingKind kind)
      : inst_(inst),
        fronthaul_(fronthaul),
        steps_(grid_steps),
        kind_(kind),
        chain_(inst, kind == RoutingKind::Innovation),
        scale_(inst.source_cov().trace() / static_cast<double>(inst.source_cov().dim())) {
    const std::size_t l_count = fronthaul.size();
    step_ = fronthaul.back() / static_cast<double>(steps_);
    max_level_.resize(l_count);
    double tail_min = std::numeric_limits<double>::infinity();
    for (std::size_t l = l_count; l-- > 0;) {
      tail_min = std::min(tail_min, fronthaul[l]);
      max_level_[l] =
          step_ > 0.0 ? std::min<std::size_t>(
                            steps_, static_cast<std::size_t>(std::floor(tail_min / step_ + 1e-9)))
                      : 0;
    }
    if (kind_ == RoutingKind::Standard) {
      sr_cache_.resize(l_count);
      for (std::size_t l = 0; l < l_count; ++l) {
        sr_blocks_.push_back(inst.source_cov().block(inst.rru_indices(l)));
      }
    }
    bits_.assign(l_count, 0.0);
  }

  std::vector<double> run() {
    best_ = std::numeric_limits<double>::infinity();
    visit(0, 0);
    return best_bits_;
  }

 private:
  double bits_for(std::size_t delta) const { return static_cast<double>(delta) * step_; }

  using Innovation = InnovationChain::Innovation;

  /// Per-parent work shared by every child: the IR eigenbasis of the innovation.
  struct Expansion {
    Innovation innovation;
    EigenSystem basis;
  };

  Expansion expand(std::size_t l) const {
    Expansion ex{chain_.innovation(l, l + 1 < fronthaul_.size()), {}};
    if (kind_ == RoutingKind::Innovation) {
      ex.basis = eig_hermitian(HermitianCov(ex.innovation.cov), scale_);
    }
    return ex;
  }

  const ReducedDescription& stage_description(const Expansion& ex, std::size_t l,
                                              std::size_t delta, double bits) {
    if (kind_ == RoutingKind::Innovation) {
      scratch_ = describe_eigs(ex.basis, bits);
      return scratch_;
    }
    auto& cache = sr_cache_[l];
    if (cache.size() <= delta) cache.resize(delta + 1);
    if (!cache[delta]) cache[delta] = describe(sr_blocks_[l], bits);
    return *cache[delta];
  }

  void visit(std::size_t l, std::size_t prev_level) {
    const std::size_t l_count = fronthaul_.size();
    const Expansion ex = expand(l);
    if (l + 1 == l_count) {
      // Last RRU uses all remaining capacity: c_L = R_L.
      const std::size_t delta = steps_ - prev_level;
      const double bits = std::max(0.0, fronthaul_.back() - bits_for(prev_level));
      bits_[l] = bits;
      const double d =
          std::max(0.0, chain_.distortion() -
                            chain_.reduction(ex.innovation, stage_description(ex, l, delta, bits)));
      if (d < best_) {
        best_ = d;
        best_bits_ = bits_;
      }
      return;
    }
    for (std::size_t level = prev_level; level <= max_level_[l]; ++level) {
      const std::size_t delta = level - prev_level;
      bits_[l] = bits_for(delta);
      chain_.push(ex.innovation, stage_description(ex, l, delta, bits_[l]));
      visit(l + 1, level);
      chain_.pop();
    }
  }

  const SystemInstance& inst_;
  const std::vector<double>& fronthaul_;
  std::size_t steps_;
  RoutingKind kind_;
  InnovationChain chain_;
  double scale_;
  double step_ = 0.0;
  std::vector<std::size_t> max_level_;
  std::vector<HermitianCov> sr_blocks_;
  std::vector<std::vector<std::optional<ReducedDescription>>> sr_cache_;
  std::vector<double> bits_;
  std::vector<double> best_bits_;
  double best_ = 0.0;
  ReducedDescription scratch_;
};

SchemeEvaluation optimize_routing(const SystemInstance& inst, const std::vector<double>& fronthaul,
                                  std::size_t grid_steps, RoutingKind kind) {
  check_fronthaul(inst, fronthaul);
  if (grid_steps < 1) throw std::invalid_argument("grid_steps must be >= 1");
  const auto evaluate = [&](const RateAllocation& a) {
    return kind == RoutingKind::Innovation ? eval_ir(inst, a) : eval_sr(inst, a);
  };

  AllocationSearch search(inst, fronthaul, grid_steps, kind);
  SchemeEvaluation best = evaluate(RateAllocation{search.run(), fronthaul});

  double uniform = std::numeric_limits<double>::infinity();
  for (std::size_t l = 0; l < fronthaul.size(); ++l) {
    uniform = std::min(uniform, fronthaul[l] / static_cast<double>(l + 1));
  }
  SchemeEvaluation split =
      evaluate(RateAllocation{std::vector<double>(fronthaul.size(), uniform), fronthaul});
  if (split.sum_distortion < best.sum_distortion) best = std::move(split);
  return best;
}

}  // namespace

SchemeEvaluation optimize_ir_allocation(const SystemInstance& inst,
                                        const std::vector<double>& fronthaul,
                                        std::size_t grid_steps) {
  return optimize_routing(inst, fronthaul, grid_steps, RoutingKind::Innovation);
}

SchemeEvaluation optimize_sr_allocation(const SystemInstance& inst,
                                        const std::vector<double>& fronthaul,
                                        std::size_t grid_steps) {
  return optimize_routing(inst, fronthaul, grid_steps, RoutingKind::Standard);
}

SchemeEvaluation eval_ip(const SystemInstance& inst, const std::vector<double>& fronthaul) {
  check_fronthaul(inst, fronthaul);
  const std::size_t l_count = inst.topology().n_rrus;
  const auto n = static_cast<Eigen::Index>(inst.topology().n_antennas());
  const auto u = static_cast<Eigen::Index>(inst.topology().n_users);
  const Eigen::Index a = inst.rru_size();
  const double scale = target_scale(inst);
  const CMatrix& w = inst.beamformer();

  SchemeEvaluation ev;
  ev.scheme = SchemeId::IP;
  ev.fronthaul = fronthaul;
  IPChainState chain;
  chain.stacked_noise_var.resize(0);

  CMatrix prev_source(0, n);  // U_{l-1} = prev_source * S + prev_noise * q
  CMatrix prev_noise(0, 0);
  CMatrix partial_target = CMatrix::Zero(u, n);  // W_bar_l

  for (std::size_t l = 0; l < l_count; ++l) {
    const Eigen::Index off = inst.rru_offset(l);
    partial_target.middleCols(off, a) = w.middleCols(off, a);
    const Eigen::Index q = chain.stacked_noise_var.size();
    const Eigen::Index prev = prev_source.rows();
    const Eigen::Index f_dim = prev + u;
    const bool has_side = l + 1 < l_count;
    const Eigen::Index y_dim = has_side ? a : 0;

    // F_l = [U_{l-1}; W_l S_l] as a linear model in (S, q).
    CMatrix f_source(f_dim, n);
    f_source << prev_source, selector_rows(inst, l, w.middleCols(off, a));
    CMatrix f_noise = CMatrix::Zero(f_dim, q);
    f_noise.topRows(prev) = prev_noise;

    // Joint model of [Z_bar_l; F_l; S_{l+1}].
    CMatrix joint_source(u + f_dim + y_dim, n);
    joint_source.topRows(u) = partial_target;
    joint_source.middleRows(u, f_dim) = f_source;
    if (has_side) {
      joint_source.bottomRows(y_dim) = selector_rows(inst, l + 1, CMatrix::Identity(a, a));
    }
    CMatrix joint_noise = CMatrix::Zero(joint_source.rows(), q);
    joint_noise.middleRows(u, f_dim) = f_noise;
    const HermitianCov joint(model_cov(inst, joint_source, joint_noise, chain.stacked_noise_var));

    const IndexSet z_idx = index_range(0, u);
    const IndexSet f_idx = index_range(u, f_dim);
    const IndexSet y_idx = index_range(u + f_dim, y_dim);
    IndexSet fy_idx = f_idx;
    fy_idx.insert(fy_idx.end(), y_idx.begin(), y_idx.end());

    const HermitianCov sigma_f = joint.block(f_idx);
    const CMatrix cross_zf = joint.matrix().block(0, u, u, f_dim);
    const CMatrix t = mmse_filter(cross_zf, sigma_f);
    const HermitianCov f_given_y = conditional_cov(joint, f_idx, y_idx);
    const HermitianCov residual = conditional_cov(joint, z_idx, fy_idx);

    IPStage stage;
    stage.combiner = t;
    stage.source_map = t * f_source;
    stage.noise_map = t * f_noise;
    const HermitianCov described(hermitian_part(t * f_given_y.matrix() * t.adjoint()));
    stage.description = describe(described, fronthaul[l], scale);
    stage.stage_distortion =
        stage.description.waterfill.total_distortion() + std::max(0.0, residual.trace());

    const CMatrix vh = stage.description.projector.adjoint();
    const Eigen::Index act = vh.rows();
    stage.description_source_map = vh * stage.source_map;
    stage.description_noise_map = CMatrix::Zero(act, q + act);
    stage.description_noise_map.leftCols(q) = vh * stage.noise_map;
    stage.description_noise_map.rightCols(act).setIdentity();

    prev_source = stage.description_source_map;
    prev_noise = stage.description_noise_map;
    chain.stacked_noise_var = append(chain.stacked_noise_var, stage.description.noise_var);
    chain.stages.push_back(std::move(stage));
  }

  ev.sum_distortion = final_mmse(inst, prev_source, prev_noise, chain.stacked_noise_var);
  ev.ip_chain = std::move(chain);
  return ev;
}

SchemeEvaluation eval_lower_bound(const SystemInstance& inst,
                                  const std::vector<double>& fronthaul) {
  check_fronthaul(inst, fronthaul);
  const double scale = target_scale(inst);
  SchemeEvaluation ev;
  ev.scheme = SchemeId::LowerBound;
  ev.fronthaul = fronthaul;
  ev.sum_distortion = 0.0;
  for (std::size_t cut = 1; cut <= fronthaul.size(); ++cut) {
    const HermitianCov c = cut_conditional_target_cov(inst, cut);
    const EigenSystem es = eig_hermitian(c, scale);
    const std::vector<double> eigs(es.eigenvalues.data(), es.eigenvalues.data() + es.dim());
    const double d = reverse_waterfill(eigs, fronthaul[cut - 1]).total_distortion();
    ev.cut_distortions.push_back(d);
    ev.sum_distortion = std::max(ev.sum_distortion, d);
  }
  return ev;
}

SchemeEvaluation evaluate_scheme(SchemeId id, const SystemInstance& inst,
                                 const std::vector<double>& fronthaul, std::size_t grid_steps) {
  switch (id) {
    case SchemeId::SR:
      return optimize_sr_allocation(inst, fronthaul, grid_steps);
    case SchemeId::IR:
      return optimize_ir_allocation(inst, fronthaul, grid_steps);
    case SchemeId::IP:
      return eval_ip(inst, fronthaul);
    case SchemeId::LowerBound:
      return eval_lower_bound(inst, fronthaul);
  }
  throw std::invalid_argument("unknown scheme");
}

}  // namespace cascade
