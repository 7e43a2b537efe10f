#ifndef SFMAP_SOLVER_HPP
#define SFMAP_SOLVER_HPP

#include <optional>

#include "sfmap/core.hpp"
#include "sfmap/projections.hpp"

namespace sfmap {

struct SolveOptions {
  int max_iters = 20000;
  double tol_pair = 1e-10;         // on ||a_k - a_{k-1}||
  double tol_discrete_gap = 1e-6;  // primary stopping criterion
  bool record_trace = false;
  bool parallel = false;
  std::optional<unsigned> seed;    // random a_0 when set; a_0 = 0 otherwise
  WolfeOptions wolfe;

  void validate() const {
    if (max_iters < 1) throw std::invalid_argument("max_iters must be >= 1");
    if (tol_pair <= 0 || tol_discrete_gap <= 0)
      throw std::invalid_argument("tolerances must be > 0");
  }
};

struct TraceRow {
  int k = 0;
  double dist_ab = 0.0;        // ||a_k - b_k||
  double primal_obj = 0.0;     // f(x_k) + 0.5 ||x_k||^2
  double cont_gap = 0.0;       // f(x_k) + ||x_k||^2
  double best_discrete = 0.0;  // best rounded value so far
  double discrete_gap = 0.0;   // F(A_best) - sum_i min(-x_i, 0)
  double ratio = 0.0;          // dist_ab_k / dist_ab_{k-1}, 0 at k = 0
};

struct SolveTrace {
  std::vector<TraceRow> rows;
  // a_k history for rate estimation; filled only when record_trace is set.
  std::vector<Vec> a_history;
};

enum class SolveStatus { Converged, MaxIters, NumericError };

struct SolveResult {
  BlockVec a_final, b_final;
  Vec x_final;
  Subset minimizer_set;
  double min_value = 0.0;
  double discrete_gap = 0.0;
  int iterations = 0;
  SolveStatus status = SolveStatus::Converged;
  double dist_b0_bfinal = 0.0;  // usable proxy for ||b_0 - b_*||
};

// Alternating projections between the zero-sum subspace and the product of
// base polytopes: b_k = Pi_B(a_k), a_{k+1} = Pi_A(b_k).
SolveResult run_ap(const DecomposableProblem& p, const SolveOptions& opts,
                   SolveTrace* trace = nullptr);

// x = -sum_r b_r.
Vec primal_point(const BlockVec& b);

double primal_objective(const DecomposableProblem& p, const Vec& x);

// Duality gap f(x) + ||x||^2 for the primal-dual pair (x, -x); asserts
// -x in B(F) (exhaustively when N is small enough, blockwise trust otherwise).
double continuous_gap(const DecomposableProblem& p, const Vec& x);

// Best of the N+1 suplevel sets of x (plus the empty set); ties go to the
// smaller set.
BruteForceResult round_suplevel(const DecomposableProblem& p, const Vec& x);

// F(A) - sum_i min(-x_i, 0); zero certifies optimality of A.
double discrete_gap(const DecomposableProblem& p, const Vec& x, const Subset& a);

// Geometric-mean contraction of ||a_k - a_final|| over the last half of the
// recorded trace; 0 when the run converged before producing a usable window.
double estimate_rate(const SolveTrace& trace, const BlockVec& a_final);

// 2 N^2 R^2 log(sqrt(6 F_max N sqrt(R) dist0) / eps).
double iteration_bound(int n, int r, double fmax, double dist0, double eps);

}  // namespace sfmap

#endif  // SFMAP_SOLVER_HPP
