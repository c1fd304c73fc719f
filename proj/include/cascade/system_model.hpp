// One channel realization of the chained-MIMO uplink.
#pragma once

#include <cstdint>
#include <string>

#include "cascade/linalg.hpp"

namespace cascade {

class InvalidTopology : public Error {
 public:
  using Error::Error;
};

class RankDeficientChannel : public Error {
 public:
  using Error::Error;
};

struct Topology {
  std::size_t n_users = 15;
  std::size_t n_rrus = 4;
  std::size_t antennas_per_rru = 7;
  /// Linear SNR (per-user transmit power over unit noise power).
  double snr = 10.0;

  std::size_t n_antennas() const { return n_rrus * antennas_per_rru; }
  /// Throws InvalidTopology.
  void validate() const;
};

double db_to_linear(double db);

/// S = H X + N with X ~ CN(0, snr I), N ~ CN(0, I); target Z = W S.
class SystemInstance {
 public:
  /// Assembles source covariance and zero-forcing beamformer from a given
  /// channel (n_antennas x n_users). Throws RankDeficientChannel if the channel
  /// does not have full column rank.
  SystemInstance(Topology topology, CMatrix channel);

  const Topology& topology() const { return topology_; }
  const CMatrix& channel() const { return channel_; }
  const HermitianCov& source_cov() const { return source_cov_; }
  const CMatrix& beamformer() const { return beamformer_; }

  Eigen::Index rru_offset(std::size_t rru) const;
  Eigen::Index rru_size() const { return static_cast<Eigen::Index>(topology_.antennas_per_rru); }
  /// Antenna indices observed by RRU `rru` (0-based).
  IndexSet rru_indices(std::size_t rru) const;
  /// Antenna indices of RRUs [first, last) (0-based, half-open).
  IndexSet rru_span(std::size_t first, std::size_t last) const;
  /// Columns of W acting on RRU `rru`'s observation (the W_l block).
  CMatrix beamformer_block(std::size_t rru) const;

 private:
  Topology topology_;
  CMatrix channel_;
  HermitianCov source_cov_;
  CMatrix beamformer_;
};

/// Deterministic in `seed`: H entries i.i.d. CN(0, 1), drawn as two N(0, 1/2)
/// parts per entry in column-major order from a std::mt19937_64 seeded with
/// `seed`.
SystemInstance sample_instance(const Topology& topology, std::uint64_t seed);

/// Sigma_z = W Sigma_s W^H.
HermitianCov target_cov(const SystemInstance& inst);

/// Covariance of Z given the observations of RRUs cut+1..L, for cut in [1, L].
/// cut == L conditions on nothing and returns target_cov.
HermitianCov cut_conditional_target_cov(const SystemInstance& inst, std::size_t cut);

/// Instance fixture as JSON: topology, channel, source covariance and
/// beamformer, matrices as nested arrays of [re, im] pairs.
std::string instance_to_json(const SystemInstance& inst);
/// Rebuilds the instance from its topology and channel; the stored source
/// covariance and beamformer are checked against the reassembled ones.
SystemInstance instance_from_json(const std::string& text);

}  // namespace cascade
