#pragma once

#include <Eigen/Dense>
#include <cstdint>

#include "bdvp/rng.hpp"

namespace bdvp {

/// Antenna layout of the downlink: n_t transmit antennas serving n_u users
/// with n_r receive antennas each. Requires n_t == n_u * n_r.
struct SystemDims {
  int n_t = 0;
  int n_u = 0;
  int n_r = 0;

  /// Dimension of the per-user real-valued search problem (2 * n_r).
  int search_dim() const { return 2 * n_r; }

  int total_rx() const { return n_u * n_r; }

  /// Throws DimensionError unless the layout is admissible.
  void validate() const;
};

/// The stacked multi-user channel H; row block i (1-based) is user i's
/// n_r x n_t channel.
class StackedChannel {
 public:
  StackedChannel(Eigen::MatrixXcd entries, SystemDims dims);

  const Eigen::MatrixXcd& matrix() const { return entries_; }
  const SystemDims& dims() const { return dims_; }

 private:
  Eigen::MatrixXcd entries_;
  SystemDims dims_;
};

/// i.i.d. CN(0,1) channel draw, deterministic in the seed.
StackedChannel generate_channel(const SystemDims& dims, std::uint64_t seed);

/// Same statistics, drawing from a caller-owned stream in row-major
/// entry order (real part then imaginary part).
StackedChannel draw_channel(const SystemDims& dims, Philox& rng);

/// Rows of user `user` (1-based, 1 <= user <= n_u).
Eigen::MatrixXcd user_submatrix(const StackedChannel& h, int user);

/// All rows except user `user`, order preserved; 0 x n_t when n_u == 1.
Eigen::MatrixXcd complement_matrix(const StackedChannel& h, int user);

/// Real embedding [[Re, -Im], [Im, Re]] of a complex matrix.
Eigen::MatrixXd complex_to_real(const Eigen::MatrixXcd& m);

/// Companion vector embedding [Re; Im].
Eigen::VectorXd complex_to_real(const Eigen::VectorXcd& v);

/// Inverse of the vector embedding.
Eigen::VectorXcd real_to_complex(const Eigen::VectorXd& v);

}  // namespace bdvp
