#pragma once

#include <Eigen/Dense>
#include <vector>

#include "bdvp/channel.hpp"

namespace bdvp {

/// Block-diagonalizing beamformer set and the per-user effective channels.
struct BdResult {
  std::vector<Eigen::MatrixXcd> beamformers;         // B_i, n_t x n_r
  std::vector<Eigen::MatrixXcd> effective_channels;  // H_i * B_i, n_r x n_r
  Eigen::MatrixXcd composite;                        // [B_1 ... B_nu], n_t x n_t
};

struct BlockDiagonalCheck {
  bool ok = false;
  double worst_ratio = 0.0;
};

/// Orthonormal basis of the right null space of a full-row-rank matrix,
/// taken from the singular vectors of the zero singular values. Returns
/// the n x n identity for an empty (0 x n) input. Throws
/// DegenerateChannelError when the input is rank deficient.
Eigen::MatrixXcd null_space_basis(const Eigen::MatrixXcd& a);

/// Beamformer for one user: the null-space basis v0 combined with the
/// dominant right singular vectors of h_i * v0.
Eigen::MatrixXcd user_beamformer(const Eigen::MatrixXcd& h_i,
                                 const Eigen::MatrixXcd& v0);

/// Two-stage SVD block diagonalization of the stacked channel.
BdResult block_diagonalize(const StackedChannel& h);

/// True iff every cross-user block of H*B is below tol:
/// max_{i != j} ||H_i B_j||_F / max(1, ||H_i||_F) <= tol.
BlockDiagonalCheck verify_block_diagonal(const StackedChannel& h,
                                         const Eigen::MatrixXcd& composite,
                                         double tol);

}  // namespace bdvp
