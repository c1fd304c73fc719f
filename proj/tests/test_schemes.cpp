#include <doctest.h>

#include <cmath>
#include <random>

#include "cascade/schemes.hpp"
#include "oracles.hpp"

using namespace cascade;

namespace {

RateAllocation alloc(std::vector<double> bits, std::vector<double> fh) {
  return RateAllocation{std::move(bits), std::move(fh)};
}

double tr_z(const SystemInstance& inst) { return target_cov(inst).trace(); }

}  // namespace

TEST_CASE("scheme names") {
  CHECK(scheme_name(SchemeId::LowerBound) == "LOWER_BOUND");
  CHECK(parse_scheme("wzr") == SchemeId::IR);
  CHECK(parse_scheme("lb") == SchemeId::LowerBound);
  CHECK_FALSE(parse_scheme("MMSE").has_value());
}

TEST_CASE("allocation feasibility") {
  CHECK_NOTHROW(alloc({1, 1}, {1, 2}).validate(2));
  CHECK_THROWS_AS(alloc({1, 1.5}, {1, 2}).validate(2), InfeasibleAllocation);
  CHECK_THROWS_AS(alloc({1.1, 0}, {1, 2}).validate(2), InfeasibleAllocation);
  CHECK_THROWS_AS(alloc({1}, {1, 2}).validate(2), InfeasibleAllocation);
  CHECK_THROWS_AS(alloc({-1, 0}, {1, 2}).validate(2), InfeasibleAllocation);
  const auto inst = sample_instance(Topology{2, 2, 1, 10.0}, 1);
  CHECK_THROWS_AS(eval_sr(inst, alloc({3, 0}, {2, 2})), InfeasibleAllocation);
  CHECK_THROWS_AS(eval_ip(inst, {1.0}), InfeasibleAllocation);
}

TEST_CASE("scalar system closed form") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto inst = sample_instance(Topology{1, 1, 1, 10.0}, seed);
    const double w2 = std::norm(inst.beamformer()(0, 0));
    const double ss = inst.source_cov()(0, 0).real();
    for (double b : {0.0, 0.5, 2.0, 9.0}) {
      const double expected = w2 * ss * std::exp2(-b);
      CHECK(oracle::rel_diff(eval_sr(inst, alloc({b}, {b})).sum_distortion, expected) < 1e-9);
      CHECK(oracle::rel_diff(eval_ir(inst, alloc({b}, {b})).sum_distortion, expected) < 1e-9);
    }
  }
}

TEST_CASE("zero rates give the zero-rate distortion") {
  const auto inst = sample_instance(Topology{6, 3, 3, 10.0}, 2);
  const std::vector<double> zero(3, 0.0);
  const double tz = tr_z(inst);
  CHECK(eval_sr(inst, alloc(zero, zero)).sum_distortion == doctest::Approx(tz));
  CHECK(eval_ir(inst, alloc(zero, zero)).sum_distortion == doctest::Approx(tz));
  CHECK(eval_ip(inst, zero).sum_distortion == doctest::Approx(tz));
  const auto lb = eval_lower_bound(inst, zero);
  CHECK(lb.sum_distortion == doctest::Approx(tz));
  CHECK(lb.cut_distortions.back() == doctest::Approx(tz));
  CHECK(optimize_ir_allocation(inst, zero, 8).sum_distortion == doctest::Approx(tz));
}

TEST_CASE("single RRU degeneracies") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto inst = sample_instance(Topology{3, 1, 4, 10.0}, seed);
    for (double r : {0.5, 3.0, 12.0}) {
      const double sr = eval_sr(inst, alloc({r}, {r})).sum_distortion;
      const double ir = eval_ir(inst, alloc({r}, {r})).sum_distortion;
      CHECK(oracle::rel_diff(sr, ir) < 1e-12);
      const auto best = optimize_ir_allocation(inst, {r}, 16);
      CHECK(best.allocation->per_rru_bits[0] == r);
      const double ip = eval_ip(inst, {r}).sum_distortion;
      const double lb = eval_lower_bound(inst, {r}).sum_distortion;
      CHECK(oracle::rel_diff(ip, lb) < 1e-9);
    }
  }
}

TEST_CASE("large rates drive every scheme to zero") {
  const auto inst = sample_instance(Topology{3, 1, 4, 10.0}, 5);
  const double tz = tr_z(inst);
  const std::vector<double> big{1000.0};
  CHECK(eval_lower_bound(inst, big).sum_distortion < 1e-9 * tz);
  CHECK(eval_ip(inst, big).sum_distortion < 1e-9 * tz);
  CHECK(eval_sr(inst, alloc(big, big)).sum_distortion < 1e-9 * tz);
  CHECK(eval_ir(inst, alloc(big, big)).sum_distortion < 1e-9 * tz);

  const auto cascade4 = sample_instance(Topology{6, 4, 3, 10.0}, 5);
  CHECK(eval_lower_bound(cascade4, {1000, 1000, 1000, 1000}).sum_distortion <
        1e-9 * tr_z(cascade4));
}

TEST_CASE("two RRUs with the whole budget on one side") {
  // B = (R, 0): the second RRU sends nothing, so IR and SR coincide.
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto inst = sample_instance(Topology{3, 2, 2, 10.0}, seed);
    const auto a = alloc({4.0, 0.0}, {4.0, 4.0});
    CHECK(oracle::rel_diff(eval_sr(inst, a).sum_distortion, eval_ir(inst, a).sum_distortion) <
          1e-9);
  }
}

TEST_CASE("joint and innovation forms of IR agree") {
  std::mt19937_64 rng(77);
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const std::size_t l_count = 2 + seed % 3;
    const auto inst = sample_instance(Topology{5, l_count, 3, 10.0}, seed);
    std::vector<double> bits(l_count), fh(l_count);
    double cum = 0.0;
    for (std::size_t l = 0; l < l_count; ++l) {
      bits[l] = static_cast<double>(rng() % 120) / 10.0;
      cum += bits[l];
      fh[l] = cum;
    }
    const auto a = alloc(bits, fh);
    CHECK(oracle::rel_diff(eval_ir(inst, a).sum_distortion,
                           eval_ir_joint(inst, a).sum_distortion) < 1e-9);
  }
}

TEST_CASE("IP stacked maps follow the recursion") {
  const auto inst = sample_instance(Topology{4, 3, 2, 10.0}, 9);
  const auto ev = eval_ip(inst, {6.0, 5.0, 7.0});
  const auto& stages = ev.ip_chain->stages;
  REQUIRE(stages.size() == 3);
  const Eigen::Index a = inst.rru_size();
  const Eigen::Index n = 6;
  for (std::size_t l = 0; l < stages.size(); ++l) {
    const auto& st = stages[l];
    // R_l = P^U U_{l-1} + P^S W_l S_l, with U_{l-1} from the previous stage's maps.
    CMatrix local = CMatrix::Zero(4, n);
    local.middleCols(inst.rru_offset(l), a) = inst.beamformer().middleCols(inst.rru_offset(l), a);
    CMatrix src = st.combiner_local() * local;
    CMatrix noise = CMatrix::Zero(4, st.noise_map.cols());
    if (l > 0) {
      const auto& prev = stages[l - 1];
      src += st.combiner_prev() * prev.description_source_map;
      noise.leftCols(prev.description_noise_map.cols()) +=
          st.combiner_prev() * prev.description_noise_map;
    }
    CHECK((src - st.source_map).cwiseAbs().maxCoeff() < 1e-9);
    if (noise.size() > 0) CHECK((noise - st.noise_map).cwiseAbs().maxCoeff() < 1e-9);
  }
  // The last stage has no side information, so its stage distortion is the final one.
  CHECK(oracle::rel_diff(stages.back().stage_distortion, ev.sum_distortion) < 1e-9);
}

TEST_CASE("IP stage distortion is nonincreasing and continuous in its rate") {
  const auto inst = sample_instance(Topology{4, 2, 3, 10.0}, 12);
  double prev = eval_ip(inst, {0.0, 4.0}).ip_chain->stages[0].stage_distortion;
  for (int i = 1; i <= 200; ++i) {
    const double d = eval_ip(inst, {0.05 * i, 4.0}).ip_chain->stages[0].stage_distortion;
    CHECK(d <= prev + 1e-9);
    CHECK(prev - d < 0.05 * std::log(2.0) * tr_z(inst));
    prev = d;
  }
}

TEST_CASE("lower bound cuts match the scan oracle") {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const auto inst = sample_instance(Topology{3, 2, 2, 10.0}, seed);
    const std::vector<double> fh{3.0, 7.0};
    const auto lb = eval_lower_bound(inst, fh);
    for (std::size_t cut = 1; cut <= 2; ++cut) {
      const auto es = eig_hermitian(cut_conditional_target_cov(inst, cut));
      const std::vector<double> eigs(es.eigenvalues.data(), es.eigenvalues.data() + es.dim());
      const auto scan = oracle::scan_waterfill(eigs, fh[cut - 1]);
      CHECK(oracle::rel_diff(lb.cut_distortions[cut - 1], scan.distortion) < 1e-6);
    }
  }
}

TEST_CASE("ordering against the bound and between routing schemes") {
  for (std::uint64_t seed = 0; seed < 6; ++seed) {
    const auto inst = sample_instance(Topology{6, 3, 3, 10.0}, seed);
    for (double b : {0.5, 2.0, 6.0}) {
      const std::vector<double> fh{6 * b, 6 * b, 6 * b};
      const double tz = tr_z(inst);
      const double lb = eval_lower_bound(inst, fh).sum_distortion;
      const double ip = eval_ip(inst, fh).sum_distortion;
      const double ir = optimize_ir_allocation(inst, fh, 12).sum_distortion;
      const double sr = optimize_sr_allocation(inst, fh, 12).sum_distortion;
      CHECK(lb <= ip + 1e-9);
      CHECK(lb <= ir + 1e-9);
      CHECK(ir <= sr + 1e-9);
      CHECK(sr <= tz + 1e-9);
      CHECK(ip <= tz + 1e-9);
    }
  }
}

TEST_CASE("allocation search") {
  const auto inst = sample_instance(Topology{4, 2, 3, 10.0}, 21);
  SUBCASE("grid refinement converges") {
    const std::vector<double> fh{6.0, 10.0};
    const double coarse = optimize_ir_allocation(inst, fh, 64).sum_distortion;
    const double fine = optimize_ir_allocation(inst, fh, 256).sum_distortion;
    CHECK(oracle::rel_diff(coarse, fine) <= 1e-3);
    CHECK(fine <= coarse + 1e-12);
  }
  SUBCASE("never worse than the uniform split") {
    for (const auto& fh : {std::vector<double>{3.0, 4.0}, std::vector<double>{9.0, 5.0}}) {
      const double u = std::min(fh[0], fh[1] / 2.0);
      for (std::size_t g : {1, 3, 8}) {
        const auto ir = optimize_ir_allocation(inst, fh, g);
        CHECK(ir.sum_distortion <= eval_ir(inst, alloc({u, u}, fh)).sum_distortion + 1e-12);
        CHECK_NOTHROW(ir.allocation->validate(2));
        const auto sr = optimize_sr_allocation(inst, fh, g);
        CHECK(sr.sum_distortion <= eval_sr(inst, alloc({u, u}, fh)).sum_distortion + 1e-12);
      }
    }
  }
  SUBCASE("search result is reproduced by direct evaluation") {
    const std::vector<double> fh{5.0, 8.0};
    const auto best = optimize_ir_allocation(inst, fh, 16);
    CHECK(eval_ir(inst, *best.allocation).sum_distortion == best.sum_distortion);
    CHECK_THROWS_AS(optimize_ir_allocation(inst, fh, 0), std::invalid_argument);
  }
}

TEST_CASE("scaling the rates up never hurts") {
  const auto inst = sample_instance(Topology{4, 2, 3, 10.0}, 4);
  const std::vector<double> base{2.0, 3.0};
  for (SchemeId id : kAllSchemes) {
    double prev = evaluate_scheme(id, inst, base, 8).sum_distortion;
    for (double c : {1.5, 2.0, 4.0}) {
      const double d = evaluate_scheme(id, inst, {c * base[0], c * base[1]}, 8).sum_distortion;
      CHECK(d <= prev + 1e-9);
      prev = d;
    }
  }
}

TEST_CASE("evaluations are bit-identical when repeated") {
  const auto inst = sample_instance(Topology{6, 3, 3, 10.0}, 3);
  const std::vector<double> fh{10.0, 12.0, 14.0};
  for (SchemeId id : kAllSchemes) {
    CHECK(evaluate_scheme(id, inst, fh, 8).sum_distortion ==
          evaluate_scheme(id, inst, fh, 8).sum_distortion);
  }
}

TEST_CASE("sampling oracles on small cascades") {
  for (std::uint64_t seed = 0; seed < 3; ++seed) {
    const auto inst = oracle::small_instance(2, seed);
    const auto a = alloc({1.5, 1.0}, {2.0, 2.5});
    const auto sr = eval_sr(inst, a);
    const auto ir = eval_ir(inst, a);
    const auto ip = eval_ip(inst, {2.0, 2.5});
    CHECK(oracle::rel_diff(oracle::simulate_sr(inst, sr, 300000, seed), sr.sum_distortion) <
          0.02);
    CHECK(oracle::rel_diff(oracle::simulate_ir(inst, ir, 300000, seed), ir.sum_distortion) <
          0.02);
    CHECK(oracle::rel_diff(oracle::simulate_ip(inst, ip, 300000, seed), ip.sum_distortion) <
          0.02);
  }
}
