#include "cascade/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace cascade {

namespace {

void check_indices(const IndexSet& idx, Eigen::Index dim, const char* what) {
  for (auto i : idx) {
    if (i < 0 || i >= dim) {
      throw IndexOutOfRange(std::string(what) + " index " + std::to_string(i) +
                            " outside [0, " + std::to_string(dim) + ")");
    }
  }
}

CMatrix gather(const CMatrix& m, const IndexSet& rows, const IndexSet& cols) {
  CMatrix out(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(cols.size()));
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (std::size_t c = 0; c < cols.size(); ++c) {
      out(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = m(rows[r], cols[c]);
    }
  }
  return out;
}

EigenSystem decompose(const CMatrix& m) {
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(m);
  if (solver.info() != Eigen::Success) {
    throw ConvergenceFailure("Hermitian eigensolver did not converge");
  }
  const Eigen::Index n = m.rows();
  EigenSystem es;
  es.eigenvalues.resize(n);
  es.eigenvectors.resize(n, n);
  // Eigen returns ascending order.
  for (Eigen::Index k = 0; k < n; ++k) {
    es.eigenvalues(k) = solver.eigenvalues()(n - 1 - k);
    es.eigenvectors.col(k) = solver.eigenvectors().col(n - 1 - k);
  }
  return es;
}

}  // namespace

CMatrix hermitian_part(const CMatrix& m) { return 0.5 * (m + m.adjoint()); }

HermitianCov::HermitianCov(const CMatrix& m) {
  if (m.rows() != m.cols()) {
    throw DimensionMismatch("covariance must be square, got " + std::to_string(m.rows()) + "x" +
                            std::to_string(m.cols()));
  }
  const double scale = m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
  const double skew = m.size() == 0 ? 0.0 : (m - m.adjoint()).cwiseAbs().maxCoeff();
  if (skew > 1e-9 * std::max(scale, 1e-300)) {
    throw NonHermitianInput("matrix is not Hermitian (max |m - m^H| = " + std::to_string(skew) +
                            ")");
  }
  m_ = hermitian_part(m);
}

HermitianCov HermitianCov::identity(Eigen::Index dim) {
  return HermitianCov(CMatrix::Identity(dim, dim));
}

HermitianCov HermitianCov::from_real(Eigen::Index dim, std::span<const double> row_major) {
  if (static_cast<Eigen::Index>(row_major.size()) != dim * dim) {
    throw DimensionMismatch("from_real: expected " + std::to_string(dim * dim) + " entries");
  }
  CMatrix m(dim, dim);
  for (Eigen::Index i = 0; i < dim; ++i) {
    for (Eigen::Index j = 0; j < dim; ++j) {
      m(i, j) = row_major[static_cast<std::size_t>(i * dim + j)];
    }
  }
  return HermitianCov(m);
}

double HermitianCov::psd_tolerance() const {
  if (dim() == 0) return 0.0;
  return kPsdRelTol * std::max(trace(), 0.0) / static_cast<double>(dim());
}

HermitianCov HermitianCov::block(const IndexSet& idx) const {
  check_indices(idx, dim(), "block");
  return HermitianCov(gather(m_, idx, idx));
}

CMatrix EigenSystem::reconstruct() const {
  return eigenvectors * eigenvalues.cast<Complex>().asDiagonal() * eigenvectors.adjoint();
}

EigenSystem eig_hermitian_indefinite(const HermitianCov& m) { return decompose(m.matrix()); }

EigenSystem eig_hermitian(const HermitianCov& m, double reference_scale) {
  EigenSystem es = decompose(m.matrix());
  if (es.dim() == 0) return es;
  const double scale =
      std::max(std::max(m.trace(), 0.0) / static_cast<double>(m.dim()), reference_scale);
  const double tol = kPsdRelTol * scale;
  for (Eigen::Index k = 0; k < es.dim(); ++k) {
    double& ev = es.eigenvalues(k);
    if (ev < 0.0) {
      if (ev < -tol) {
        throw NotPositiveSemidefinite("eigenvalue " + std::to_string(ev) + " below -tol_psd " +
                                      std::to_string(-tol));
      }
      ev = 0.0;
    }
  }
  return es;
}

CMatrix pinv_hermitian(const CMatrix& m) {
  const Eigen::Index n = m.rows();
  if (n == 0) return CMatrix(0, 0);
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(hermitian_part(m));
  if (solver.info() != Eigen::Success) {
    throw ConvergenceFailure("pseudoinverse eigensolver did not converge");
  }
  const RVector& ev = solver.eigenvalues();
  const double largest = ev.cwiseAbs().maxCoeff();
  const double cutoff = kPinvRelTol * largest;
  RVector inv(n);
  for (Eigen::Index k = 0; k < n; ++k) {
    inv(k) = (largest > 0.0 && ev(k) > cutoff) ? 1.0 / ev(k) : 0.0;
  }
  const CMatrix& v = solver.eigenvectors();
  return v * inv.cast<Complex>().asDiagonal() * v.adjoint();
}

HermitianCov conditional_cov(const HermitianCov& joint, const IndexSet& target_idx,
                             const IndexSet& given_idx) {
  check_indices(target_idx, joint.dim(), "target");
  check_indices(given_idx, joint.dim(), "given");
  for (auto t : target_idx) {
    if (std::find(given_idx.begin(), given_idx.end(), t) != given_idx.end()) {
      throw IndexOutOfRange("target and given index sets overlap at " + std::to_string(t));
    }
  }
  const CMatrix sx = gather(joint.matrix(), target_idx, target_idx);
  if (given_idx.empty()) return HermitianCov(sx);
  const CMatrix sxy = gather(joint.matrix(), target_idx, given_idx);
  const CMatrix sy = gather(joint.matrix(), given_idx, given_idx);
  return HermitianCov(hermitian_part(sx - sxy * pinv_hermitian(sy) * sxy.adjoint()));
}

CMatrix mmse_filter(const CMatrix& cross, const HermitianCov& cov_obs) {
  if (cross.cols() != cov_obs.dim()) {
    throw DimensionMismatch("mmse_filter: cross has " + std::to_string(cross.cols()) +
                            " columns, observation dim is " + std::to_string(cov_obs.dim()));
  }
  return cross * pinv_hermitian(cov_obs.matrix());
}

double mmse_residual_trace(const HermitianCov& cov_target, const CMatrix& cross,
                           const HermitianCov& cov_obs) {
  if (cross.rows() != cov_target.dim()) {
    throw DimensionMismatch("mmse_residual_trace: cross rows do not match target dim");
  }
  const CMatrix t = mmse_filter(cross, cov_obs);
  return cov_target.trace() - (t * cross.adjoint()).trace().real();
}

IndexSet index_range(Eigen::Index first, Eigen::Index count) {
  IndexSet idx(static_cast<std::size_t>(count));
  std::iota(idx.begin(), idx.end(), first);
  return idx;
}

}  // namespace cascade
