#include "bdvp/bd.hpp"

#include <Eigen/SVD>
#include <string>

#include "bdvp/errors.hpp"

namespace bdvp {

namespace {

// Singular values at or below this fraction of the largest one count as
// zero when splitting a spectrum into signal and null parts.
constexpr double kRankTol = 1e-10;

}  // namespace

Eigen::MatrixXcd null_space_basis(const Eigen::MatrixXcd& a) {
  const Eigen::Index m = a.rows(), n = a.cols();
  if (m == 0) {
    return Eigen::MatrixXcd::Identity(n, n);
  }
  if (m >= n) {
    throw DimensionError("null space basis requires a wide matrix");
  }
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(a, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  const double cutoff = kRankTol * sv(0);
  for (Eigen::Index i = 0; i < sv.size(); ++i) {
    if (sv(i) <= cutoff) {
      throw DegenerateChannelError(
          "matrix is rank deficient: singular value " + std::to_string(i) +
          " below tolerance");
    }
  }
  // Full row rank: the null space is spanned by exactly the n - m trailing
  // right singular vectors.
  return svd.matrixV().rightCols(n - m);
}

Eigen::MatrixXcd user_beamformer(const Eigen::MatrixXcd& h_i,
                                 const Eigen::MatrixXcd& v0) {
  const Eigen::Index n_r = h_i.rows();
  if (v0.rows() != h_i.cols() || v0.cols() < n_r) {
    throw DimensionError("beamformer inputs do not conform");
  }
  const Eigen::MatrixXcd projected = h_i * v0;  // n_r x k
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(projected, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  const double cutoff = kRankTol * sv(0);
  for (Eigen::Index i = 0; i < n_r; ++i) {
    if (!(sv(i) > cutoff)) {
      throw DegenerateChannelError(
          "projected channel is rank deficient for one user");
    }
  }
  return v0 * svd.matrixV().leftCols(n_r);
}

BdResult block_diagonalize(const StackedChannel& h) {
  const SystemDims& d = h.dims();
  BdResult result;
  result.beamformers.resize(d.n_u);
  result.effective_channels.resize(d.n_u);
  result.composite.resize(d.n_t, d.n_t);
  for (int user = 1; user <= d.n_u; ++user) {
    const Eigen::MatrixXcd h_i = user_submatrix(h, user);
    const Eigen::MatrixXcd v0 = null_space_basis(complement_matrix(h, user));
    Eigen::MatrixXcd b_i = user_beamformer(h_i, v0);
    result.effective_channels[user - 1] = h_i * b_i;
    result.composite.middleCols(static_cast<Eigen::Index>(user - 1) * d.n_r,
                                d.n_r) = b_i;
    result.beamformers[user - 1] = std::move(b_i);
  }
  return result;
}

BlockDiagonalCheck verify_block_diagonal(const StackedChannel& h,
                                         const Eigen::MatrixXcd& composite,
                                         double tol) {
  const SystemDims& d = h.dims();
  if (composite.rows() != d.n_t || composite.cols() != d.n_t) {
    throw DimensionError("composite beamformer must be n_t x n_t");
  }
  BlockDiagonalCheck check;
  for (int i = 1; i <= d.n_u; ++i) {
    const Eigen::MatrixXcd h_i = user_submatrix(h, i);
    const double denom = std::max(1.0, h_i.norm());
    for (int j = 1; j <= d.n_u; ++j) {
      if (i == j) continue;
      const Eigen::MatrixXcd b_j = composite.middleCols(
          static_cast<Eigen::Index>(j - 1) * d.n_r, d.n_r);
      check.worst_ratio =
          std::max(check.worst_ratio, (h_i * b_j).norm() / denom);
    }
  }
  check.ok = check.worst_ratio <= tol;
  return check;
}

}  // namespace bdvp
