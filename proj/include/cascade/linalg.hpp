// Complex Hermitian linear algebra and Gaussian conditioning primitives.
//
// Every covariance in the simulator is a dense complex matrix of modest size
// (at most a few tens of rows), normalized so the receiver noise power is 1.
#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace cascade {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RVector = Eigen::VectorXd;
using IndexSet = std::vector<Eigen::Index>;

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IndexOutOfRange : public Error {
 public:
  using Error::Error;
};

class NonHermitianInput : public Error {
 public:
  using Error::Error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

class ConvergenceFailure : public Error {
 public:
  using Error::Error;
};

/// Raised when a matrix that must be PSD has an eigenvalue below -tol_psd.
class NotPositiveSemidefinite : public Error {
 public:
  using Error::Error;
};

/// Relative threshold below which singular values are dropped by pinv.
inline constexpr double kPinvRelTol = 1e-12;
/// Relative PSD tolerance: tol_psd = kPsdRelTol * trace / dim.
inline constexpr double kPsdRelTol = 1e-10;

/// Hermitian covariance matrix. Construction symmetrizes the stored entries
/// so that entry(i, j) == conj(entry(j, i)) holds exactly.
class HermitianCov {
 public:
  HermitianCov() = default;

  /// Validates that `m` is square and Hermitian up to round-off
  /// (1e-9 relative to the largest entry); throws NonHermitianInput otherwise.
  explicit HermitianCov(const CMatrix& m);

  static HermitianCov identity(Eigen::Index dim);
  /// Real-valued convenience constructor, row-major initializer.
  static HermitianCov from_real(Eigen::Index dim, std::span<const double> row_major);

  Eigen::Index dim() const { return m_.rows(); }
  const CMatrix& matrix() const { return m_; }
  Complex operator()(Eigen::Index i, Eigen::Index j) const { return m_(i, j); }
  double trace() const { return m_.trace().real(); }

  /// tol_psd used by the PSD checks, 1e-10 * trace / dim.
  double psd_tolerance() const;

  HermitianCov block(const IndexSet& idx) const;

 private:
  CMatrix m_;
};

/// Eigen-decomposition of a Hermitian matrix, eigenvalues sorted descending.
struct EigenSystem {
  RVector eigenvalues;
  CMatrix eigenvectors;

  Eigen::Index dim() const { return eigenvalues.size(); }
  CMatrix reconstruct() const;
};

/// Hermitian eigendecomposition with PSD repair: eigenvalues in
/// [-tol, 0) are clamped to zero, anything below -tol throws
/// NotPositiveSemidefinite. tol = 1e-10 * max(trace/dim, reference_scale);
/// pass the scale of the problem the matrix was derived from when the matrix
/// itself may be numerically zero.
EigenSystem eig_hermitian(const HermitianCov& m, double reference_scale = 0.0);

/// Same as above but without the PSD check (eigenvalues may be negative).
EigenSystem eig_hermitian_indefinite(const HermitianCov& m);

/// Moore-Penrose pseudoinverse of a Hermitian PSD matrix; eigenvalues below
/// kPinvRelTol * (largest) are treated as zero.
CMatrix pinv_hermitian(const CMatrix& m);

/// Sigma_{x|y} = Sigma_x - Sigma_{x,y} Sigma_y^+ Sigma_{y,x}.
HermitianCov conditional_cov(const HermitianCov& joint, const IndexSet& target_idx,
                             const IndexSet& given_idx);

/// Linear MMSE filter T = cross * cov_obs^+ where cross = Sigma_{x,y}.
CMatrix mmse_filter(const CMatrix& cross, const HermitianCov& cov_obs);

/// Tr{Sigma_x - T cross^H}, the residual MSE of the LMMSE estimate.
double mmse_residual_trace(const HermitianCov& cov_target, const CMatrix& cross,
                           const HermitianCov& cov_obs);

/// Contiguous index range [first, first + count).
IndexSet index_range(Eigen::Index first, Eigen::Index count);

/// (m + m^H) / 2.
CMatrix hermitian_part(const CMatrix& m);

}  // namespace cascade
