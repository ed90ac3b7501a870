#include "bdvp/precoder.hpp"

#include <cmath>

#include "bdvp/errors.hpp"

namespace bdvp {

namespace {

constexpr double kMaxCondition = 1e12;

void check_square(const Eigen::MatrixXd& h_r, const char* what) {
  if (h_r.rows() != h_r.cols() || h_r.rows() == 0) {
    throw DimensionError(std::string(what) + ": matrix must be square and non-empty, got " +
                         std::to_string(h_r.rows()) + "x" + std::to_string(h_r.cols()));
  }
}

void check_condition(const Eigen::MatrixXd& h_r, const char* what) {
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(h_r);
  const double s_max = svd.singularValues()(0);
  const double s_min = svd.singularValues()(svd.singularValues().size() - 1);
  if (!(s_min > 0.0) || s_max / s_min > kMaxCondition) {
    throw SingularMatrixError(std::string(what) + ": matrix is singular or near-singular");
  }
}

// QR with the sign convention fixed so diag(R) > 0; makes the factor unique
// and the search results reproducible across backends.
void positive_qr(const Eigen::MatrixXd& a, Eigen::MatrixXd& q, Eigen::MatrixXd& r) {
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(a);
  q = qr.householderQ() * Eigen::MatrixXd::Identity(a.rows(), a.cols());
  r = qr.matrixQR().topRows(a.cols()).triangularView<Eigen::Upper>();
  for (Eigen::Index j = 0; j < r.rows(); ++j) {
    if (r(j, j) < 0.0) {
      r.row(j) = -r.row(j);
      q.col(j) = -q.col(j);
    }
  }
}

}  // namespace

Eigen::MatrixXd zf_matrix(const Eigen::MatrixXd& h_r) {
  check_square(h_r, "zf_matrix");
  check_condition(h_r, "zf_matrix");
  return h_r.partialPivLu().solve(Eigen::MatrixXd::Identity(h_r.rows(), h_r.cols()));
}

double mmse_alpha(int n, double sigma2, double power) {
  if (n <= 0) {
    throw ParameterError("mmse_alpha: dimension must be positive");
  }
  if (sigma2 < 0.0) {
    throw ParameterError("mmse_alpha: noise variance must be non-negative");
  }
  if (power <= 0.0) {
    throw ParameterError("mmse_alpha: power must be positive");
  }
  return static_cast<double>(n) * sigma2 / power;
}

Eigen::MatrixXd mmse_matrix(const Eigen::MatrixXd& h_r, double alpha) {
  check_square(h_r, "mmse_matrix");
  if (alpha < 0.0) {
    throw ParameterError("mmse_matrix: alpha must be non-negative");
  }
  if (alpha == 0.0) {
    return zf_matrix(h_r);
  }
  const Eigen::Index n = h_r.rows();
  Eigen::MatrixXd gram =
      h_r * h_r.transpose() + alpha * Eigen::MatrixXd::Identity(n, n);
  Eigen::LLT<Eigen::MatrixXd> llt(gram);
  if (llt.info() != Eigen::Success) {
    throw SingularMatrixError("mmse_matrix: regularized Gram matrix is not positive definite");
  }
  // G = H^T (H H^T + alpha I)^-1, computed as the solve gram X = H then X^T.
  return llt.solve(h_r).transpose();
}

SearchFactor search_factor(const Eigen::MatrixXd& h_r, Criterion criterion,
                           double alpha, double tau) {
  check_square(h_r, "search_factor");
  if (tau <= 0.0) {
    throw ParameterError("search_factor: tau must be positive");
  }
  const Eigen::Index n = h_r.rows();

  SearchFactor out;
  out.criterion = criterion;
  out.alpha = alpha;
  out.tau = tau;

  if (criterion == Criterion::kZf) {
    check_condition(h_r, "search_factor");
    Eigen::MatrixXd q, r;
    positive_qr(h_r.transpose(), q, r);
    // lower = (R^-1)^T so that ||lower x|| = ||R^-T x|| = ||H_r^-1 x||.
    Eigen::MatrixXd r_inv = r.triangularView<Eigen::Upper>().solve(
        Eigen::MatrixXd::Identity(n, n));
    out.lower = r_inv.transpose();
    out.precode = zf_matrix(h_r);
  } else {
    if (alpha <= 0.0) {
      throw ParameterError("search_factor: mmse criterion needs alpha > 0");
    }
    Eigen::MatrixXd stacked(2 * n, n);
    stacked.topRows(n) = h_r.transpose();
    stacked.bottomRows(n) = std::sqrt(alpha) * Eigen::MatrixXd::Identity(n, n);
    Eigen::MatrixXd q, r;
    positive_qr(stacked, q, r);
    // Rows n..2n-1 of Q give Q2; lower = Q2^T = sqrt(alpha) R^-T, which is
    // lower triangular because the bottom block of `stacked` is diagonal.
    out.lower = q.bottomRows(n).transpose();
    out.precode = mmse_matrix(h_r, alpha);
  }

  // The factor is mathematically lower triangular; zero the rounding dust in
  // the upper part so downstream code can rely on exact triangularity.
  out.lower = out.lower.triangularView<Eigen::Lower>();
  return out;
}

}  // namespace bdvp
