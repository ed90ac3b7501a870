#include "bdvp/perturbation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "bdvp/errors.hpp"

namespace bdvp {

namespace {

constexpr long long kSearchSpaceLimit = 10'000'000;

void check_problem(const Eigen::MatrixXd& lower, const Eigen::VectorXd& s,
                   double tau) {
  if (lower.rows() != lower.cols() || lower.rows() == 0) {
    throw DimensionError("encode: search factor must be square and non-empty");
  }
  if (s.size() != lower.rows()) {
    throw DimensionError("encode: vector length " + std::to_string(s.size()) +
                         " does not match factor dimension " +
                         std::to_string(lower.rows()));
  }
  if (!(tau > 0.0)) {
    throw ParameterError("encode: tau must be positive");
  }
}

long long checked_mul(long long a, long long b) {
  if (a != 0 && b > std::numeric_limits<long long>::max() / a) {
    throw ParameterError("node count overflows 64-bit integer");
  }
  return a * b;
}

// T^p with an overflow check.
long long int_pow(long long base, int exp) {
  long long out = 1;
  for (int i = 0; i < exp; ++i) out = checked_mul(out, base);
  return out;
}

// One search branch: chosen offsets so far, the perturbed values they imply,
// and the accumulated metric.
struct Branch {
  std::vector<int> t;
  std::vector<double> x;
  double metric = 0.0;
};

// Lexicographic comparison of offset vectors under the preference order
// (smaller |t| first, then smaller t). Used wherever metrics tie.
bool preferred_before(const CandidateSet& set, const std::vector<int>& a,
                      const std::vector<int>& b) {
  for (std::size_t i = 0; i < a.size() && i < b.size(); ++i) {
    const int ra = set.rank(a[i]);
    const int rb = set.rank(b[i]);
    if (ra != rb) return ra < rb;
  }
  return a.size() < b.size();
}

bool branch_before(const CandidateSet& set, const Branch& a, const Branch& b) {
  if (a.metric != b.metric) return a.metric < b.metric;
  return preferred_before(set, a.t, b.t);
}

// Shared inner product of row `level` (0-based) with the already-fixed
// perturbed values; computed once per branch, reused by all T candidates.
double prefix_dot(const Eigen::MatrixXd& lower, const Branch& branch,
                  int level) {
  double acc = 0.0;
  for (int j = 0; j < level; ++j) acc += lower(level, j) * branch.x[j];
  return acc;
}

PerturbationResult finish(const Branch& branch, const Eigen::VectorXd& s,
                          double tau, long long evals) {
  PerturbationResult out;
  const int n = static_cast<int>(branch.t.size());
  out.t.resize(n);
  out.perturbed.resize(n);
  for (int i = 0; i < n; ++i) {
    out.t(i) = branch.t[i];
    out.perturbed(i) = s(i) + tau * branch.t[i];
  }
  out.metric = branch.metric;
  out.evals = evals;
  return out;
}

}  // namespace

CandidateSet::CandidateSet(int a) : a_(a) {
  if (a < 0) {
    throw ParameterError("CandidateSet: radius must be non-negative, got " +
                         std::to_string(a));
  }
  preferred_.push_back(0);
  for (int v = 1; v <= a; ++v) {
    preferred_.push_back(-v);
    preferred_.push_back(v);
  }
}

int CandidateSet::rank(int value) const {
  if (value < -a_ || value > a_) {
    throw ParameterError("CandidateSet: value " + std::to_string(value) +
                         " outside [-" + std::to_string(a_) + ", " +
                         std::to_string(a_) + "]");
  }
  if (value == 0) return 0;
  return 2 * std::abs(value) - (value < 0 ? 1 : 0);
}

double metric_increment(const Eigen::MatrixXd& lower, const Eigen::VectorXd& s,
                        double tau, const Eigen::VectorXi& t_prefix, int t_n,
                        int level) {
  check_problem(lower, s, tau);
  if (level < 1 || level > lower.rows()) {
    throw IndexError("metric_increment: level " + std::to_string(level) +
                     " outside 1.." + std::to_string(lower.rows()));
  }
  if (t_prefix.size() < level - 1) {
    throw DimensionError("metric_increment: prefix shorter than level-1");
  }
  const int row = level - 1;
  double acc = 0.0;
  for (int j = 0; j < row; ++j) acc += lower(row, j) * (s(j) + tau * t_prefix(j));
  acc += lower(row, row) * (s(row) + tau * t_n);
  return acc * acc;
}

PerturbationResult exhaustive_encode(const Eigen::MatrixXd& lower,
                                     const Eigen::VectorXd& s, double tau,
                                     const CandidateSet& set) {
  check_problem(lower, s, tau);
  const int n = static_cast<int>(lower.rows());
  if (int_pow(set.size(), n) > kSearchSpaceLimit) {
    throw SearchSpaceError("exhaustive_encode: T^N = " +
                           std::to_string(set.size()) + "^" +
                           std::to_string(n) + " exceeds the 1e7 guard");
  }

  long long evals = 0;
  Branch current;
  current.t.resize(n);
  current.x.resize(n);
  Branch best;
  double best_metric = std::numeric_limits<double>::infinity();

  // Depth-first, candidates visited in preference order, no pruning: the
  // first leaf reaching a strictly smaller metric is automatically the
  // preferred one among ties.
  auto descend = [&](auto&& self, int level, double metric_so_far) -> void {
    double shared = 0.0;
    for (int j = 0; j < level; ++j) shared += lower(level, j) * current.x[j];
    for (int cand : set.preferred()) {
      ++evals;
      const double x = s(level) + tau * cand;
      const double term = shared + lower(level, level) * x;
      const double total = metric_so_far + term * term;
      current.t[level] = cand;
      current.x[level] = x;
      if (level + 1 == n) {
        if (total < best_metric) {
          best_metric = total;
          best = current;
          best.metric = total;
        }
      } else {
        self(self, level + 1, total);
      }
    }
  };
  descend(descend, 0, 0.0);
  return finish(best, s, tau, evals);
}

PerturbationResult fse_encode(const Eigen::MatrixXd& lower,
                              const Eigen::VectorXd& s, double tau,
                              const CandidateSet& set, int p) {
  check_problem(lower, s, tau);
  const int n = static_cast<int>(lower.rows());
  if (p < 1 || p > n) {
    throw ParameterError("fse_encode: expansion depth " + std::to_string(p) +
                         " outside 1.." + std::to_string(n));
  }
  if (int_pow(set.size(), p) > kSearchSpaceLimit) {
    throw SearchSpaceError("fse_encode: T^p exceeds the 1e7 guard");
  }

  long long evals = 0;
  std::vector<Branch> branches(1);

  // Full expansion: every branch keeps all T children through level p.
  for (int level = 0; level < p; ++level) {
    std::vector<Branch> next;
    next.reserve(branches.size() * set.size());
    for (const Branch& parent : branches) {
      const double shared = prefix_dot(lower, parent, level);
      for (int cand : set.preferred()) {
        ++evals;
        const double x = s(level) + tau * cand;
        const double term = shared + lower(level, level) * x;
        Branch child = parent;
        child.t.push_back(cand);
        child.x.push_back(x);
        child.metric += term * term;
        next.push_back(std::move(child));
      }
    }
    branches = std::move(next);
  }

  // Single expansion: each surviving branch extends greedily, keeping only
  // its best child per level.
  for (int level = p; level < n; ++level) {
    for (Branch& branch : branches) {
      const double shared = prefix_dot(lower, branch, level);
      int best_cand = 0;
      double best_x = 0.0;
      double best_inc = std::numeric_limits<double>::infinity();
      for (int cand : set.preferred()) {
        ++evals;
        const double x = s(level) + tau * cand;
        const double term = shared + lower(level, level) * x;
        const double inc = term * term;
        if (inc < best_inc) {
          best_inc = inc;
          best_cand = cand;
          best_x = x;
        }
      }
      branch.t.push_back(best_cand);
      branch.x.push_back(best_x);
      branch.metric += best_inc;
    }
  }

  const Branch* best = &branches.front();
  for (const Branch& branch : branches) {
    if (branch_before(set, branch, *best)) best = &branch;
  }
  return finish(*best, s, tau, evals);
}

PerturbationResult qrdm_encode(const Eigen::MatrixXd& lower,
                               const Eigen::VectorXd& s, double tau,
                               const CandidateSet& set, int m) {
  check_problem(lower, s, tau);
  if (m < 1) {
    throw ParameterError("qrdm_encode: breadth must be at least 1, got " +
                         std::to_string(m));
  }
  const int n = static_cast<int>(lower.rows());

  long long evals = 0;
  std::vector<Branch> beam(1);
  for (int level = 0; level < n; ++level) {
    std::vector<Branch> children;
    children.reserve(beam.size() * set.size());
    for (const Branch& parent : beam) {
      const double shared = prefix_dot(lower, parent, level);
      for (int cand : set.preferred()) {
        ++evals;
        const double x = s(level) + tau * cand;
        const double term = shared + lower(level, level) * x;
        Branch child = parent;
        child.t.push_back(cand);
        child.x.push_back(x);
        child.metric += term * term;
        children.push_back(std::move(child));
      }
    }
    std::sort(children.begin(), children.end(),
              [&](const Branch& a, const Branch& b) {
                return branch_before(set, a, b);
              });
    const std::size_t keep =
        std::min<std::size_t>(static_cast<std::size_t>(m), children.size());
    children.resize(keep);
    beam = std::move(children);
  }
  return finish(beam.front(), s, tau, evals);
}

PerturbationResult thp_encode(const Eigen::MatrixXd& lower,
                              const Eigen::VectorXd& s, double tau,
                              const CandidateSet& set) {
  check_problem(lower, s, tau);
  const int n = static_cast<int>(lower.rows());

  long long evals = 0;
  Branch branch;
  for (int level = 0; level < n; ++level) {
    const double shared = prefix_dot(lower, branch, level);
    int best_cand = 0;
    double best_x = 0.0;
    double best_inc = std::numeric_limits<double>::infinity();
    for (int cand : set.preferred()) {
      ++evals;
      const double x = s(level) + tau * cand;
      const double term = shared + lower(level, level) * x;
      const double inc = term * term;
      if (inc < best_inc) {
        best_inc = inc;
        best_cand = cand;
        best_x = x;
      }
    }
    branch.t.push_back(best_cand);
    branch.x.push_back(best_x);
    branch.metric += best_inc;
  }
  return finish(branch, s, tau, evals);
}

PerturbationResult encode(Encoder encoder, const Eigen::MatrixXd& lower,
                          const Eigen::VectorXd& s, double tau,
                          const CandidateSet& set, int m, int p) {
  switch (encoder) {
    case Encoder::kThp:
      return thp_encode(lower, s, tau, set);
    case Encoder::kFse:
      return fse_encode(lower, s, tau, set, p);
    case Encoder::kQrdm:
      return qrdm_encode(lower, s, tau, set, m);
    case Encoder::kExhaustive:
      return exhaustive_encode(lower, s, tau, set);
  }
  throw ParameterError("encode: unknown encoder");
}

long long eval_count(Encoder encoder, int n, int t, int m, int p) {
  if (n < 1 || t < 1) {
    throw ParameterError("eval_count: need n >= 1 and t >= 1");
  }
  switch (encoder) {
    case Encoder::kThp:
      return checked_mul(n, t);
    case Encoder::kFse: {
      if (p < 1 || p > n) {
        throw ParameterError("eval_count: expansion depth out of range");
      }
      long long total = 0;
      for (int level = 1; level <= p; ++level) total += int_pow(t, level);
      total += checked_mul(checked_mul(n - p, int_pow(t, p)), t);
      return total;
    }
    case Encoder::kQrdm: {
      if (m < 1) {
        throw ParameterError("eval_count: breadth must be at least 1");
      }
      long long total = 0;
      long long width = 1;
      for (int level = 0; level < n; ++level) {
        total += checked_mul(width, t);
        width = std::min<long long>(m, checked_mul(width, t));
      }
      return total;
    }
    case Encoder::kExhaustive: {
      long long total = 0;
      for (int level = 1; level <= n; ++level) total += int_pow(t, level);
      return total;
    }
  }
  throw ParameterError("eval_count: unknown encoder");
}

long long retained_node_count(Encoder encoder, int n, int t, int m, int p) {
  if (n < 1 || t < 1) {
    throw ParameterError("retained_node_count: need n >= 1 and t >= 1");
  }
  switch (encoder) {
    case Encoder::kThp:
      return n;
    case Encoder::kFse: {
      if (p < 1 || p > n) {
        throw ParameterError("retained_node_count: expansion depth out of range");
      }
      long long total = 0;
      for (int level = 1; level <= p; ++level) total += int_pow(t, level);
      total += checked_mul(n - p, int_pow(t, p));
      return total;
    }
    case Encoder::kQrdm: {
      if (m < 1) {
        throw ParameterError("retained_node_count: breadth must be at least 1");
      }
      long long total = 0;
      long long width = 1;
      for (int level = 0; level < n; ++level) {
        width = std::min<long long>(m, checked_mul(width, t));
        total += width;
      }
      return total;
    }
    case Encoder::kExhaustive: {
      long long total = 0;
      for (int level = 1; level <= n; ++level) total += int_pow(t, level);
      return total;
    }
  }
  throw ParameterError("retained_node_count: unknown encoder");
}

}  // namespace bdvp
