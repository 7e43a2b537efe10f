#include "sfmap/solver.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace sfmap {

Vec primal_point(const BlockVec& b) {
  Vec x = Vec::Zero(b.n);
  for (int i = 0; i < b.r; ++i) x -= b.block(i);
  return x;
}

double primal_objective(const DecomposableProblem& p, const Vec& x) {
  return lovasz(p, x) + 0.5 * x.squaredNorm();
}

namespace {

// min_A F(A) + x(A) >= -tol and |sum x + F(V)| <= tol  <=>  -x in B(F)
void assert_neg_in_base(const DecomposableProblem& p, const Vec& x, double tol) {
  int n = p.n();
  if (n > kExhaustiveSubsetLimit) return;  // trusted: x comes from b in B
  std::vector<char> in(static_cast<size_t>(n), 0);
  double worst = 0.0;
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    double xa = 0.0;
    for (int i = 0; i < n; ++i) {
      in[static_cast<size_t>(i)] = (mask >> i) & 1u;
      if (in[static_cast<size_t>(i)]) xa += x[i];
    }
    worst = std::min(worst, p.eval(in) + xa);
  }
  std::fill(in.begin(), in.end(), 1);
  double eq = std::abs(x.sum() + p.eval(in));
  if (worst < -tol || eq > tol)
    throw std::invalid_argument("-x is not in B(F) within tolerance");
}

double neg_part_sum(const Vec& x) {
  double s = 0.0;
  for (int i = 0; i < x.size(); ++i) s += std::min(-x[i], 0.0);
  return s;
}

}  // namespace

double continuous_gap(const DecomposableProblem& p, const Vec& x) {
  assert_neg_in_base(p, x, 1e-6);
  return lovasz(p, x) + x.squaredNorm();
}

BruteForceResult round_suplevel(const DecomposableProblem& p, const Vec& x) {
  int n = p.n();
  std::vector<int> order(static_cast<size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return x[a] > x[b]; });

  std::vector<char> in(static_cast<size_t>(n), 0);
  Subset best_set;
  double best = p.eval(in);  // empty set
  int best_card = 0;
  Subset cur;
  for (int k = 0; k < n; ++k) {
    cur.push_back(order[static_cast<size_t>(k)]);
    in[static_cast<size_t>(order[static_cast<size_t>(k)])] = 1;
    // only threshold at distinct values: extend while next value ties
    if (k + 1 < n && x[order[static_cast<size_t>(k + 1)]] == x[order[static_cast<size_t>(k)]])
      continue;
    double v = p.eval(in);
    if (v < best || (v == best && static_cast<int>(cur.size()) < best_card)) {
      best = v;
      best_set = cur;
      best_card = static_cast<int>(cur.size());
    }
  }
  std::sort(best_set.begin(), best_set.end());
  return BruteForceResult{std::move(best_set), best};
}

double discrete_gap(const DecomposableProblem& p, const Vec& x, const Subset& a) {
  assert_neg_in_base(p, x, 1e-6);
  return p.eval(a) - neg_part_sum(x);
}

SolveResult run_ap(const DecomposableProblem& p, const SolveOptions& opts, SolveTrace* trace) {
  opts.validate();
  int n = p.n(), r = p.r();

  BlockVec a(n, r);
  if (opts.seed) {
    std::mt19937 rng(*opts.seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (Eigen::Index i = 0; i < a.data.size(); ++i) a.data[i] = u(rng);
    a = project_subspace(a);
  }

  SolveResult res;
  res.a_final = a;
  res.status = SolveStatus::MaxIters;

  Subset best_set;
  double best_value = p.eval(Subset{});  // empty set = 0 by normalization
  double prev_dist_ab = 0.0;
  BlockVec b;
  bool have_b0 = false;
  Vec b0;

  for (int k = 0; k < opts.max_iters; ++k) {
    try {
      b = project_product(p, a, opts.parallel, opts.wolfe);
    } catch (const numeric_error&) {
      res.status = SolveStatus::NumericError;
      res.iterations = k;
      break;
    }
    if (!have_b0) {
      b0 = b.data;
      have_b0 = true;
    }

    Vec x = primal_point(b);
    BruteForceResult rounded = round_suplevel(p, x);
    if (rounded.value < best_value) {
      best_value = rounded.value;
      best_set = rounded.minimizer;
    }
    double dgap = p.eval(best_set) - neg_part_sum(x);
    double dist_ab = (a.data - b.data).norm();

    if (trace) {
      TraceRow row;
      row.k = k;
      row.dist_ab = dist_ab;
      row.primal_obj = primal_objective(p, x);
      row.cont_gap = lovasz(p, x) + x.squaredNorm();
      row.best_discrete = best_value;
      row.discrete_gap = dgap;
      row.ratio = (k > 0 && prev_dist_ab > 0.0) ? dist_ab / prev_dist_ab : 0.0;
      trace->rows.push_back(row);
      if (opts.record_trace) trace->a_history.push_back(a.data);
    }
    prev_dist_ab = dist_ab;

    res.b_final = b;
    res.x_final = x;
    res.minimizer_set = best_set;
    res.min_value = best_value;
    res.discrete_gap = dgap;
    res.iterations = k + 1;

    if (dgap <= opts.tol_discrete_gap) {
      res.a_final = a;
      res.status = SolveStatus::Converged;
      break;
    }
    BlockVec a_next = project_subspace(b);
    double step = (a_next.data - a.data).norm();
    a = std::move(a_next);
    res.a_final = a;
    if (step <= opts.tol_pair) {
      res.status = SolveStatus::Converged;
      break;
    }
  }

  if (have_b0 && res.b_final.data.size() > 0)
    res.dist_b0_bfinal = (b0 - res.b_final.data).norm();
  return res;
}

double estimate_rate(const SolveTrace& trace, const BlockVec& a_final) {
  if (trace.a_history.size() < 10)
    throw std::invalid_argument("estimate_rate needs at least 10 recorded iterations");
  std::vector<double> d;
  d.reserve(trace.a_history.size());
  for (const Vec& ak : trace.a_history) d.push_back((ak - a_final.data).norm());

  // drop the tail where a_k is indistinguishable from a_final
  double d0 = d.front();
  size_t last = d.size();
  while (last > 0 && (d[last - 1] < 1e-13 || d[last - 1] < 1e-6 * std::max(d0, 1e-30))) --last;
  if (last < 2) return 0.0;
  size_t first = last / 2;
  if (d[first] <= 0.0 || d[last - 1] <= 0.0 || last - 1 == first) return 0.0;
  return std::pow(d[last - 1] / d[first], 1.0 / static_cast<double>(last - 1 - first));
}

double iteration_bound(int n, int r, double fmax, double dist0, double eps) {
  if (n < 1 || r < 1 || fmax < 0 || dist0 < 0 || eps <= 0)
    throw std::invalid_argument("iteration_bound: bad arguments");
  double inner = std::sqrt(6.0 * fmax * n * std::sqrt(static_cast<double>(r)) * dist0);
  if (inner <= 0.0) return 0.0;
  double nn = static_cast<double>(n), rr = static_cast<double>(r);
  return 2.0 * nn * nn * rr * rr * std::log(inner / eps);
}

}  // namespace sfmap
