#pragma once

#include <vector>

#include <Eigen/Dense>

namespace bdvp {

/// Symmetric truncated integer candidate set [-a, a], T = 2a+1 values.
/// `preferred()` lists the values in tie-break order: smaller |t| first,
/// negative before positive (0, -1, +1, -2, +2, ...).
class CandidateSet {
 public:
  explicit CandidateSet(int a);

  int radius() const { return a_; }
  int size() const { return 2 * a_ + 1; }
  const std::vector<int>& preferred() const { return preferred_; }
  /// Position of `value` in the preference order (0 = most preferred).
  int rank(int value) const;

 private:
  int a_;
  std::vector<int> preferred_;
};

struct PerturbationResult {
  Eigen::VectorXi t;          // chosen offsets, entries in [-a, a]
  Eigen::VectorXd perturbed;  // s + tau * t
  double metric = 0.0;        // ||lower * perturbed||^2
  long long evals = 0;        // candidate metric evaluations performed
};

enum class Encoder { kThp, kFse, kQrdm, kExhaustive };

/// Squared level-`level` term of the accumulated metric: with x_j = s_j +
/// tau*t_j for j < level and x_level = s_level + tau*t_n,
/// returns (sum_{j<=level} lower(level,j) * x_j)^2. `level` is 1-based.
double metric_increment(const Eigen::MatrixXd& lower, const Eigen::VectorXd& s,
                        double tau, const Eigen::VectorXi& t_prefix, int t_n,
                        int level);

/// Full enumeration of A^N; the optimum over the truncated set. Guarded by
/// T^N <= 1e7 (SearchSpaceError beyond that).
PerturbationResult exhaustive_encode(const Eigen::MatrixXd& lower,
                                     const Eigen::VectorXd& s, double tau,
                                     const CandidateSet& set);

/// Fixed-complexity search: full expansion through level p, then one
/// greedy child per surviving branch; best leaf wins.
PerturbationResult fse_encode(const Eigen::MatrixXd& lower,
                              const Eigen::VectorXd& s, double tau,
                              const CandidateSet& set, int p = 1);

/// Breadth-first search keeping the best m branches per level.
PerturbationResult qrdm_encode(const Eigen::MatrixXd& lower,
                               const Eigen::VectorXd& s, double tau,
                               const CandidateSet& set, int m);

/// Successive greedy choice per level (breadth-1 special case).
PerturbationResult thp_encode(const Eigen::MatrixXd& lower,
                              const Eigen::VectorXd& s, double tau,
                              const CandidateSet& set);

/// Dispatch by encoder tag; `m` is used by kQrdm, `p` by kFse.
PerturbationResult encode(Encoder encoder, const Eigen::MatrixXd& lower,
                          const Eigen::VectorXd& s, double tau,
                          const CandidateSet& set, int m = 1, int p = 1);

/// Predicted count of candidate metric evaluations (matches the
/// instrumented PerturbationResult::evals exactly).
long long eval_count(Encoder encoder, int n, int t, int m = 1, int p = 1);

/// Alternative complexity currency: branches retained per level, summed.
long long retained_node_count(Encoder encoder, int n, int t, int m = 1,
                              int p = 1);

}  // namespace bdvp
