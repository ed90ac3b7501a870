#include "bdvp/channel.hpp"

#include <string>
#include <utility>

#include "bdvp/errors.hpp"

namespace bdvp {

void SystemDims::validate() const {
  if (n_t <= 0 || n_u <= 0 || n_r <= 0) {
    throw DimensionError("antenna counts must be positive");
  }
  if (n_t != n_u * n_r) {
    throw DimensionError("n_t must equal n_u * n_r, got n_t=" +
                         std::to_string(n_t) + ", n_u=" + std::to_string(n_u) +
                         ", n_r=" + std::to_string(n_r));
  }
}

StackedChannel::StackedChannel(Eigen::MatrixXcd entries, SystemDims dims)
    : entries_(std::move(entries)), dims_(dims) {
  dims_.validate();
  if (entries_.rows() != dims_.total_rx() || entries_.cols() != dims_.n_t) {
    throw DimensionError("channel matrix must be (n_u*n_r) x n_t");
  }
}

StackedChannel draw_channel(const SystemDims& dims, Philox& rng) {
  dims.validate();
  Eigen::MatrixXcd h(dims.total_rx(), dims.n_t);
  for (Eigen::Index r = 0; r < h.rows(); ++r) {
    for (Eigen::Index c = 0; c < h.cols(); ++c) {
      h(r, c) = rng.next_cgaussian(1.0);
    }
  }
  return {std::move(h), dims};
}

StackedChannel generate_channel(const SystemDims& dims, std::uint64_t seed) {
  Philox rng(seed);
  return draw_channel(dims, rng);
}

namespace {

void check_user_index(const SystemDims& dims, int user) {
  if (user < 1 || user > dims.n_u) {
    throw IndexError("user index " + std::to_string(user) +
                     " outside 1.." + std::to_string(dims.n_u));
  }
}

}  // namespace

Eigen::MatrixXcd user_submatrix(const StackedChannel& h, int user) {
  const SystemDims& d = h.dims();
  check_user_index(d, user);
  return h.matrix().middleRows(static_cast<Eigen::Index>(user - 1) * d.n_r,
                               d.n_r);
}

Eigen::MatrixXcd complement_matrix(const StackedChannel& h, int user) {
  const SystemDims& d = h.dims();
  check_user_index(d, user);
  Eigen::MatrixXcd out((d.n_u - 1) * d.n_r, d.n_t);
  const Eigen::Index start = static_cast<Eigen::Index>(user - 1) * d.n_r;
  out.topRows(start) = h.matrix().topRows(start);
  out.bottomRows(out.rows() - start) =
      h.matrix().bottomRows(h.matrix().rows() - start - d.n_r);
  return out;
}

Eigen::MatrixXd complex_to_real(const Eigen::MatrixXcd& m) {
  const Eigen::Index rows = m.rows(), cols = m.cols();
  Eigen::MatrixXd out(2 * rows, 2 * cols);
  out.topLeftCorner(rows, cols) = m.real();
  out.topRightCorner(rows, cols) = -m.imag();
  out.bottomLeftCorner(rows, cols) = m.imag();
  out.bottomRightCorner(rows, cols) = m.real();
  return out;
}

Eigen::VectorXd complex_to_real(const Eigen::VectorXcd& v) {
  Eigen::VectorXd out(2 * v.size());
  out.head(v.size()) = v.real();
  out.tail(v.size()) = v.imag();
  return out;
}

Eigen::VectorXcd real_to_complex(const Eigen::VectorXd& v) {
  if (v.size() % 2 != 0) {
    throw DimensionError("embedded vector length must be even");
  }
  const Eigen::Index n = v.size() / 2;
  Eigen::VectorXcd out(n);
  out.real() = v.head(n);
  out.imag() = v.tail(n);
  return out;
}

}  // namespace bdvp
