#ifndef SFMAP_ORACLES_HPP
#define SFMAP_ORACLES_HPP

#include "sfmap/core.hpp"

namespace sfmap {

// Slow, independent certification oracles. Frank-Wolfe shares nothing with
// the Wolfe min-norm path beyond the greedy linear oracle, so disagreement
// between the two localizes bugs.

struct OracleReport {
  double max_violation = 0.0;       // worst base-membership slack
  double variational_residual = 0.0;
  double distance_to_reference = 0.0;
  int iterations = 0;
};

struct FwResult {
  Vec point;
  double gap = 0.0;  // Frank-Wolfe gap; ||s - s*||^2 <= 2 * gap
  int iterations = 0;
};

// Away-step conditional gradient with exact line search for
// min 0.5 ||s - z||^2 over B(F_r); linearly convergent on polytopes.
FwResult fw_project(const SimpleComponent& c, const Vec& z, int iters);

struct BaseMembership {
  bool ok = true;
  double worst_violation = 0.0;
  std::uint32_t worst_set = 0;  // mask over support positions
};

// Exhaustive check of s(A) <= F(A) + tol for all A and |s(V) - F(V)| <= tol.
BaseMembership check_in_base(const SimpleComponent& c, const Vec& s, double tol);

// Max over random unit directions x of (z - s)^T (greedy(c, x) - s) and of
// the support-function slack s^T x - f(x); small iff s is the Euclidean
// projection of z onto B(F_r).
double variational_check(const SimpleComponent& c, const Vec& z, const Vec& s, int trials,
                         unsigned seed = 20240901);

}  // namespace sfmap

#endif  // SFMAP_ORACLES_HPP
