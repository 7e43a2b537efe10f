#ifndef SFMAP_PROJECTIONS_HPP
#define SFMAP_PROJECTIONS_HPP

#include "sfmap/core.hpp"

namespace sfmap {

// A point in R^{N*R}: R stacked blocks of length N, one per component.
struct BlockVec {
  int n = 0, r = 0;
  Vec data;

  BlockVec() = default;
  BlockVec(int n_, int r_) : n(n_), r(r_), data(Vec::Zero(static_cast<Eigen::Index>(n_) * r_)) {}

  Eigen::VectorBlock<Vec> block(int i) { return data.segment(static_cast<Eigen::Index>(i) * n, n); }
  Eigen::VectorBlock<const Vec> block(int i) const {
    return data.segment(static_cast<Eigen::Index>(i) * n, n);
  }
};

// Orthogonal projection onto the zero-sum subspace {w : sum_r w_r = 0}:
// subtracts the block mean from every block.
BlockVec project_subspace(const BlockVec& w);

struct WolfeOptions {
  double tol = 1e-12;       // duality criterion x.x - x.q
  int max_major_cycles = 1000;
};

// Closed form: B(w*G_uv) is the segment {(t,-t) : |t| <= w} on {u,v}.
Vec project_edge_cut(int u, int v, double weight, const Vec& z);

// Sort descending, pool-adjacent-violators against the marginals of g, unsort.
Vec project_concave_cardinality(const std::vector<double>& g, const std::vector<int>& support,
                                const Vec& z);

// Wolfe minimum-norm point of B(c): project_generic(c, 0).
Vec wolfe_min_norm(const SimpleComponent& c, int n, const WolfeOptions& opts = {});

// Pi_{B(F_r)}(z) = z + minnorm(B(F_r - z)) via Wolfe's algorithm.
Vec project_generic(const SimpleComponent& c, const Vec& z, const WolfeOptions& opts = {});

// Dispatches to the specialized projector when one exists, Wolfe otherwise.
Vec project_component(const SimpleComponent& c, const Vec& z, const WolfeOptions& opts = {});

// Blockwise projection onto B(F_1) x ... x B(F_R). The parallel path uses
// OpenMP over blocks; blocks are independent so the result is bit-identical
// to the serial reference.
BlockVec project_product(const DecomposableProblem& p, const BlockVec& w, bool parallel = false,
                         const WolfeOptions& opts = {});

Vec min_norm_point(const SimpleComponent& c, int n, const WolfeOptions& opts = {});

// Nonincreasing isotonic regression (pool adjacent violators).
std::vector<double> pav_nonincreasing(const std::vector<double>& v);

}  // namespace sfmap

#endif  // SFMAP_PROJECTIONS_HPP
