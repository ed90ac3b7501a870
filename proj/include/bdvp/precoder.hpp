#pragma once

#include <Eigen/Dense>

namespace bdvp {

enum class Criterion { kZf, kMmse };

/// Real-valued search factor for the perturbation tree. `lower` is the
/// exactly lower-triangular matrix whose rows drive the per-level metric,
/// `precode` is the matrix actually applied to the perturbed vector.
///
/// ZF:   H_r^T = Q R (positive diagonal), lower = (R^-1)^T, so
///       ||lower * x|| == ||H_r^-1 x||.
/// MMSE: the stacked (2N x N) matrix [H_r^T; sqrt(alpha) I] = [Q1; Q2] R
///       and lower = Q2^T; the 1/sqrt(alpha) scale is omitted since it
///       does not change the argmin.
struct SearchFactor {
  Eigen::MatrixXd lower;
  Eigen::MatrixXd precode;
  Criterion criterion = Criterion::kZf;
  double alpha = 0.0;
  double tau = 0.0;
};

/// Channel inversion, G = H_r^-1. Throws SingularMatrixError when the
/// condition number exceeds 1e12.
Eigen::MatrixXd zf_matrix(const Eigen::MatrixXd& h_r);

/// Regularization factor alpha = N * sigma2 / power.
double mmse_alpha(int n, double sigma2, double power);

/// Regularized inversion, G = H_r^T (H_r H_r^T + alpha I)^-1; reduces to
/// zf_matrix at alpha = 0.
Eigen::MatrixXd mmse_matrix(const Eigen::MatrixXd& h_r, double alpha);

/// Builds the triangular search factor and the precoding matrix for the
/// requested criterion.
SearchFactor search_factor(const Eigen::MatrixXd& h_r, Criterion criterion,
                           double alpha, double tau);

}  // namespace bdvp
