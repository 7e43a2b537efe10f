#include "sfmap/projections.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace sfmap {

namespace {

void require_finite(const Vec& z, const char* who) {
  if (!z.allFinite()) throw std::invalid_argument(std::string(who) + ": non-finite input");
}

Vec shift_full(const SimpleComponent& c, int n) {
  Vec s = Vec::Zero(n);
  if (!c.shift().empty())
    for (size_t i = 0; i < c.support().size(); ++i) s[c.support()[i]] = c.shift()[i];
  return s;
}

bool edges_vertex_disjoint(const std::vector<Edge>& edges) {
  std::vector<int> seen;
  for (const Edge& e : edges) {
    seen.push_back(e.u);
    seen.push_back(e.v);
  }
  std::sort(seen.begin(), seen.end());
  return std::adjacent_find(seen.begin(), seen.end()) == seen.end();
}

}  // namespace

BlockVec project_subspace(const BlockVec& w) {
  require_finite(w.data, "project_subspace");
  BlockVec out(w.n, w.r);
  Vec mean = Vec::Zero(w.n);
  for (int i = 0; i < w.r; ++i) mean += w.block(i);
  mean /= static_cast<double>(w.r);
  for (int i = 0; i < w.r; ++i) out.block(i) = w.block(i) - mean;
  return out;
}

Vec project_edge_cut(int u, int v, double weight, const Vec& z) {
  require_finite(z, "project_edge_cut");
  if (weight < 0) throw std::invalid_argument("project_edge_cut: negative weight");
  double t = std::clamp((z[u] - z[v]) / 2.0, -weight, weight);
  Vec out = Vec::Zero(z.size());
  out[u] = t;
  out[v] = -t;
  return out;
}

std::vector<double> pav_nonincreasing(const std::vector<double>& v) {
  std::vector<double> sum, cnt;
  for (double x : v) {
    sum.push_back(x);
    cnt.push_back(1.0);
    // merge while a later block mean exceeds the previous one
    while (sum.size() >= 2) {
      size_t m = sum.size();
      if (sum[m - 1] / cnt[m - 1] <= sum[m - 2] / cnt[m - 2] + 0.0) break;
      sum[m - 2] += sum[m - 1];
      cnt[m - 2] += cnt[m - 1];
      sum.pop_back();
      cnt.pop_back();
    }
  }
  std::vector<double> out;
  out.reserve(v.size());
  for (size_t b = 0; b < sum.size(); ++b) {
    double mean = sum[b] / cnt[b];
    for (int k = 0; k < static_cast<int>(cnt[b]); ++k) out.push_back(mean);
  }
  return out;
}

Vec project_concave_cardinality(const std::vector<double>& g, const std::vector<int>& support,
                                const Vec& z) {
  require_finite(z, "project_concave_cardinality");
  size_t q = support.size();
  if (g.size() != q + 1 || g[0] != 0.0)
    throw std::invalid_argument("project_concave_cardinality: bad g");
  for (size_t k = 2; k < g.size(); ++k)
    if (g[k] - g[k - 1] > g[k - 1] - g[k - 2] + 1e-12)
      throw std::invalid_argument("project_concave_cardinality: g not concave");

  std::vector<int> order(q);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return z[support[a]] > z[support[b]]; });
  // B(g(|.|)) is the permutohedron of the marginal vector; the projection in
  // sorted coordinates is z - PAV(z_sorted - marginals).
  std::vector<double> resid(q);
  for (size_t k = 0; k < q; ++k)
    resid[k] = z[support[order[k]]] - (g[k + 1] - g[k]);
  std::vector<double> w = pav_nonincreasing(resid);
  Vec out = Vec::Zero(z.size());
  for (size_t k = 0; k < q; ++k) {
    int e = support[order[k]];
    out[e] = z[e] - w[k];
  }
  return out;
}

namespace {

// Affine minimum-norm point over the columns of V: weights alpha with
// sum(alpha) = 1 minimizing ||V alpha||.
Eigen::VectorXd affine_min_norm_weights(const Eigen::MatrixXd& V) {
  int m = static_cast<int>(V.cols());
  Eigen::MatrixXd M = V.transpose() * V;
  double ridge = 1e-13 * std::max(1.0, M.trace());
  Eigen::MatrixXd K = Eigen::MatrixXd::Zero(m + 1, m + 1);
  K.topLeftCorner(m, m) = M + ridge * Eigen::MatrixXd::Identity(m, m);
  K.topRightCorner(m, 1).setOnes();
  K.bottomLeftCorner(1, m).setOnes();
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(m + 1);
  rhs[m] = 1.0;
  Eigen::VectorXd sol = K.fullPivLu().solve(rhs);
  return sol.head(m);
}

}  // namespace

Vec wolfe_min_norm(const SimpleComponent& c, int n, const WolfeOptions& opts) {
  int q = c.support_size();
  if (q > kWolfeSupportLimit)
    throw capability_error("support too large for Wolfe min-norm");
  if (q == 0) return Vec::Zero(n);

  auto restrict = [&](const Vec& full) {
    Eigen::VectorXd r(q);
    for (int i = 0; i < q; ++i) r[i] = full[c.support()[static_cast<size_t>(i)]];
    return r;
  };

  Eigen::MatrixXd verts(q, 1);
  verts.col(0) = restrict(greedy_base_vertex(c, Vec::Zero(n)));
  Eigen::VectorXd lambda = Eigen::VectorXd::Ones(1);
  Eigen::VectorXd x = verts.col(0);

  Vec dir = Vec::Zero(n);
  double residual = std::numeric_limits<double>::infinity();
  for (int major = 0; major < opts.max_major_cycles; ++major) {
    for (int i = 0; i < q; ++i) dir[c.support()[static_cast<size_t>(i)]] = -x[i];
    Eigen::VectorXd vertex = restrict(greedy_base_vertex(c, dir));
    residual = x.squaredNorm() - x.dot(vertex);
    if (residual <= opts.tol * std::max(1.0, x.squaredNorm())) break;

    // skip duplicates of vertices already in the active set
    bool dup = false;
    for (int j = 0; j < verts.cols(); ++j)
      if ((verts.col(j) - vertex).lpNorm<Eigen::Infinity>() < 1e-14) dup = true;
    if (dup) break;

    verts.conservativeResize(Eigen::NoChange, verts.cols() + 1);
    verts.col(verts.cols() - 1) = vertex;
    lambda.conservativeResize(lambda.size() + 1);
    lambda[lambda.size() - 1] = 0.0;

    for (int minor = 0; minor < 10 * q + 20; ++minor) {
      Eigen::VectorXd alpha = affine_min_norm_weights(verts);
      if (alpha.minCoeff() >= -1e-12) {
        lambda = alpha.cwiseMax(0.0);
        lambda /= lambda.sum();
        break;
      }
      double theta = 1.0;
      for (int i = 0; i < alpha.size(); ++i)
        if (alpha[i] < lambda[i])
          theta = std::min(theta, lambda[i] / (lambda[i] - alpha[i]));
      lambda = (1.0 - theta) * lambda + theta * alpha;
      // drop vanished vertices
      std::vector<int> keep;
      for (int i = 0; i < lambda.size(); ++i)
        if (lambda[i] > 1e-12) keep.push_back(i);
      if (keep.empty()) keep.push_back(0);
      Eigen::MatrixXd nv(q, static_cast<int>(keep.size()));
      Eigen::VectorXd nl(static_cast<int>(keep.size()));
      for (size_t i = 0; i < keep.size(); ++i) {
        nv.col(static_cast<int>(i)) = verts.col(keep[i]);
        nl[static_cast<int>(i)] = lambda[keep[i]];
      }
      verts = std::move(nv);
      lambda = nl / nl.sum();
    }
    x = verts * lambda;
  }

  if (residual > 1e-6 * std::max(1.0, x.squaredNorm())) {
    std::vector<double> best(x.data(), x.data() + x.size());
    throw numeric_error("Wolfe min-norm failed to converge", residual, std::move(best));
  }
  Vec out = Vec::Zero(n);
  for (int i = 0; i < q; ++i) out[c.support()[static_cast<size_t>(i)]] = x[i];
  return out;
}

Vec project_generic(const SimpleComponent& c, const Vec& z, const WolfeOptions& opts) {
  require_finite(z, "project_generic");
  int n = static_cast<int>(z.size());
  Vec m = wolfe_min_norm(c.shifted(z), n, opts);
  Vec out = Vec::Zero(n);
  for (int e : c.support()) out[e] = z[e] + m[e];
  return out;
}

Vec project_component(const SimpleComponent& c, const Vec& z, const WolfeOptions& opts) {
  require_finite(z, "project_component");
  int n = static_cast<int>(z.size());
  // With an accumulated modular shift s, B(F - s) = B(F) - s, so project the
  // base kind at z + s and translate back.
  Vec s = shift_full(c, n);
  Vec y = z + s;
  switch (c.kind()) {
    case ComponentKind::EdgeCut: {
      const Edge& e = c.edges()[0];
      return project_edge_cut(e.u, e.v, e.weight, y) - s;
    }
    case ComponentKind::GraphCut:
      if (edges_vertex_disjoint(c.edges())) {
        // disjoint edges make B(F) a product of segments
        Vec out = Vec::Zero(n);
        for (const Edge& e : c.edges()) {
          double t = std::clamp((y[e.u] - y[e.v]) / 2.0, -e.weight, e.weight);
          out[e.u] = t;
          out[e.v] = -t;
        }
        return out - s;
      }
      return project_generic(c, z, opts);
    case ComponentKind::ConcaveCardinality:
      return project_concave_cardinality(c.cardinality_values(), c.support(), y) - s;
    case ComponentKind::Modular: {
      Vec out = Vec::Zero(n);
      for (size_t i = 0; i < c.support().size(); ++i) out[c.support()[i]] = c.weights()[i];
      return out - s;
    }
    case ComponentKind::Table:
      return project_generic(c, z, opts);
  }
  return project_generic(c, z, opts);
}

BlockVec project_product(const DecomposableProblem& p, const BlockVec& w, bool parallel,
                         const WolfeOptions& opts) {
  if (w.n != p.n() || w.r != p.r())
    throw std::invalid_argument("project_product: dimension mismatch");
  BlockVec out(w.n, w.r);
  std::vector<std::string> errors(static_cast<size_t>(w.r));

#ifdef _OPENMP
#pragma omp parallel for schedule(static) if (parallel)
#endif
  for (int i = 0; i < w.r; ++i) {
    try {
      Vec zi = w.block(i);
      out.block(i) = project_component(p.components[static_cast<size_t>(i)], zi, opts);
    } catch (const std::exception& ex) {
      errors[static_cast<size_t>(i)] = ex.what();
    }
  }
  for (int i = 0; i < w.r; ++i)
    if (!errors[static_cast<size_t>(i)].empty())
      throw numeric_error("projection failed for component " + std::to_string(i) + ": " +
                              errors[static_cast<size_t>(i)],
                          std::numeric_limits<double>::quiet_NaN());
  return out;
}

Vec min_norm_point(const SimpleComponent& c, int n, const WolfeOptions& opts) {
  return project_generic(c, Vec::Zero(n), opts);
}

}  // namespace sfmap
