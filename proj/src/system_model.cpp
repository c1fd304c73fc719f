#include "cascade/system_model.hpp"

#include <cmath>
#include <random>

#include <json.hpp>

namespace cascade {

void Topology::validate() const {
  if (n_users == 0 || n_rrus == 0 || antennas_per_rru == 0) {
    throw InvalidTopology("users, RRUs and antennas per RRU must all be positive");
  }
  if (!(snr > 0.0) || !std::isfinite(snr)) {
    throw InvalidTopology("snr must be a positive finite linear ratio");
  }
  if (n_antennas() < n_users) {
    throw InvalidTopology("zero-forcing needs n_rrus * antennas_per_rru >= n_users (" +
                          std::to_string(n_antennas()) + " < " + std::to_string(n_users) + ")");
  }
}

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

SystemInstance::SystemInstance(Topology topology, CMatrix channel)
    : topology_(topology), channel_(std::move(channel)) {
  topology_.validate();
  const auto n = static_cast<Eigen::Index>(topology_.n_antennas());
  const auto u = static_cast<Eigen::Index>(topology_.n_users);
  if (channel_.rows() != n || channel_.cols() != u) {
    throw DimensionMismatch("channel must be " + std::to_string(n) + "x" + std::to_string(u));
  }
  Eigen::ColPivHouseholderQR<CMatrix> qr(channel_);
  if (qr.rank() < u) {
    throw RankDeficientChannel("channel rank " + std::to_string(qr.rank()) + " < " +
                               std::to_string(u) + " users");
  }
  source_cov_ = HermitianCov(topology_.snr * channel_ * channel_.adjoint() +
                             CMatrix::Identity(n, n));
  // W = (H^H H)^{-1} H^H so that W H = I.
  const CMatrix gram = channel_.adjoint() * channel_;
  beamformer_ = gram.ldlt().solve(channel_.adjoint());
}

Eigen::Index SystemInstance::rru_offset(std::size_t rru) const {
  if (rru >= topology_.n_rrus) {
    throw IndexOutOfRange("RRU index " + std::to_string(rru) + " out of range");
  }
  return static_cast<Eigen::Index>(rru * topology_.antennas_per_rru);
}

IndexSet SystemInstance::rru_indices(std::size_t rru) const {
  return index_range(rru_offset(rru), rru_size());
}

IndexSet SystemInstance::rru_span(std::size_t first, std::size_t last) const {
  if (first > last || last > topology_.n_rrus) {
    throw IndexOutOfRange("RRU span [" + std::to_string(first) + ", " + std::to_string(last) +
                          ") out of range");
  }
  return index_range(static_cast<Eigen::Index>(first * topology_.antennas_per_rru),
                     static_cast<Eigen::Index>((last - first) * topology_.antennas_per_rru));
}

CMatrix SystemInstance::beamformer_block(std::size_t rru) const {
  return beamformer_.middleCols(rru_offset(rru), rru_size());
}

SystemInstance sample_instance(const Topology& topology, std::uint64_t seed) {
  topology.validate();
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> half(0.0, std::sqrt(0.5));
  const auto n = static_cast<Eigen::Index>(topology.n_antennas());
  const auto u = static_cast<Eigen::Index>(topology.n_users);
  CMatrix h(n, u);
  for (Eigen::Index c = 0; c < u; ++c) {
    for (Eigen::Index r = 0; r < n; ++r) {
      const double re = half(rng);
      const double im = half(rng);
      h(r, c) = Complex(re, im);
    }
  }
  return SystemInstance(topology, std::move(h));
}

HermitianCov target_cov(const SystemInstance& inst) {
  const CMatrix& w = inst.beamformer();
  return HermitianCov(hermitian_part(w * inst.source_cov().matrix() * w.adjoint()));
}

HermitianCov cut_conditional_target_cov(const SystemInstance& inst, std::size_t cut) {
  const std::size_t l = inst.topology().n_rrus;
  if (cut < 1 || cut > l) {
    throw IndexOutOfRange("cut must lie in [1, " + std::to_string(l) + "]");
  }
  if (cut == l) return target_cov(inst);
  const CMatrix& s = inst.source_cov().matrix();
  const IndexSet side = inst.rru_span(cut, l);
  const auto first = side.front();
  const auto count = static_cast<Eigen::Index>(side.size());
  const CMatrix s_sy = s.middleCols(first, count);
  const CMatrix s_y = s.block(first, first, count, count);
  const CMatrix cond = s - s_sy * pinv_hermitian(s_y) * s_sy.adjoint();
  const CMatrix& w = inst.beamformer();
  return HermitianCov(hermitian_part(w * cond * w.adjoint()));
}

namespace {

using nlohmann::ordered_json;

ordered_json matrix_to_json(const CMatrix& m) {
  ordered_json rows = ordered_json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    ordered_json row = ordered_json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      row.push_back({m(r, c).real(), m(r, c).imag()});
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

CMatrix matrix_from_json(const ordered_json& j) {
  const auto rows = static_cast<Eigen::Index>(j.size());
  const auto cols = rows == 0 ? Eigen::Index{0} : static_cast<Eigen::Index>(j.at(0).size());
  CMatrix m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    const auto& row = j.at(static_cast<std::size_t>(r));
    if (static_cast<Eigen::Index>(row.size()) != cols) {
      throw DimensionMismatch("ragged matrix in instance JSON");
    }
    for (Eigen::Index c = 0; c < cols; ++c) {
      const auto& e = row.at(static_cast<std::size_t>(c));
      m(r, c) = Complex(e.at(0).get<double>(), e.at(1).get<double>());
    }
  }
  return m;
}

}  // namespace

std::string instance_to_json(const SystemInstance& inst) {
  ordered_json j;
  const Topology& t = inst.topology();
  j["topology"] = {{"n_users", t.n_users},
                   {"n_rrus", t.n_rrus},
                   {"antennas_per_rru", t.antennas_per_rru},
                   {"snr", t.snr}};
  j["channel"] = matrix_to_json(inst.channel());
  j["source_cov"] = matrix_to_json(inst.source_cov().matrix());
  j["beamformer"] = matrix_to_json(inst.beamformer());
  return j.dump(2);
}

SystemInstance instance_from_json(const std::string& text) {
  const ordered_json j = ordered_json::parse(text);
  const auto& tj = j.at("topology");
  Topology t;
  t.n_users = tj.at("n_users").get<std::size_t>();
  t.n_rrus = tj.at("n_rrus").get<std::size_t>();
  t.antennas_per_rru = tj.at("antennas_per_rru").get<std::size_t>();
  t.snr = tj.at("snr").get<double>();
  SystemInstance inst(t, matrix_from_json(j.at("channel")));
  if (j.contains("source_cov")) {
    const CMatrix stored = matrix_from_json(j.at("source_cov"));
    if (stored.rows() != inst.source_cov().dim() ||
        (stored - inst.source_cov().matrix()).cwiseAbs().maxCoeff() >
            1e-9 * inst.source_cov().matrix().cwiseAbs().maxCoeff()) {
      throw Error("instance JSON: stored source_cov does not match the channel");
    }
  }
  return inst;
}

}  // namespace cascade
