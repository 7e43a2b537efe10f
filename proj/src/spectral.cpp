#include "sfmap/spectral.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <deque>

namespace sfmap {

int FacePartitionSpec::m_all() const {
  int total = 0;
  for (const auto& comp : parts) total += static_cast<int>(comp.size());
  return total;
}

void FacePartitionSpec::validate() const {
  if (n < 1) throw std::invalid_argument("face spec: n must be >= 1");
  if (parts.empty()) throw std::invalid_argument("face spec: needs at least one component");
  for (const auto& comp : parts) {
    if (comp.empty()) throw std::invalid_argument("face spec: component with no blocks");
    std::vector<char> seen(static_cast<size_t>(n), 0);
    int covered = 0;
    for (const auto& block : comp) {
      if (block.empty()) throw std::invalid_argument("face spec: empty block");
      for (int e : block) {
        if (e < 0 || e >= n) throw std::invalid_argument("face spec: element out of range");
        if (seen[static_cast<size_t>(e)])
          throw std::invalid_argument("face spec: blocks not disjoint");
        seen[static_cast<size_t>(e)] = 1;
        ++covered;
      }
    }
    if (covered != n) throw std::invalid_argument("face spec: blocks must cover the ground set");
  }
}

Mat build_S(int n, int r) {
  if (n < 1 || r < 1) throw std::invalid_argument("build_S: n, r must be >= 1");
  Mat s = Mat::Zero(n, static_cast<Eigen::Index>(n) * r);
  double scale = 1.0 / std::sqrt(static_cast<double>(r));
  for (int i = 0; i < r; ++i)
    s.block(0, static_cast<Eigen::Index>(i) * n, n, n) = scale * Mat::Identity(n, n);
  return s;
}

Mat build_T(const FacePartitionSpec& spec) {
  spec.validate();
  Mat t = Mat::Zero(spec.m_all(), static_cast<Eigen::Index>(spec.n) * spec.r());
  int row = 0;
  for (int r = 0; r < spec.r(); ++r) {
    for (const auto& block : spec.parts[static_cast<size_t>(r)]) {
      double scale = 1.0 / std::sqrt(static_cast<double>(block.size()));
      for (int e : block) t(row, static_cast<Eigen::Index>(r) * spec.n + e) = scale;
      ++row;
    }
  }
  return t;
}

double friedrichs(const Mat& smat, const Mat& tmat, double tol_one) {
  if (smat.cols() != tmat.cols())
    throw std::invalid_argument("friedrichs: column count mismatch");
  Eigen::JacobiSVD<Mat> svd(smat * tmat.transpose());
  double best = 0.0;
  for (Eigen::Index i = 0; i < svd.singularValues().size(); ++i) {
    double sigma = svd.singularValues()[i];
    if (sigma < 1.0 - tol_one) best = std::max(best, sigma);
  }
  return best;
}

FaceGraph build_face_graph(const FacePartitionSpec& spec) {
  spec.validate();
  if (spec.r() < 2) throw capability_error("face graph needs R >= 2");

  FaceGraph g;
  for (int r = 0; r < spec.r(); ++r)
    for (int m = 0; m < static_cast<int>(spec.parts[static_cast<size_t>(r)].size()); ++m)
      g.labels.emplace_back(r, m);
  g.num_vertices = static_cast<int>(g.labels.size());
  g.weights = Mat::Zero(g.num_vertices, g.num_vertices);

  // element -> vertex index of its block, per component
  std::vector<std::vector<int>> block_of(static_cast<size_t>(spec.r()),
                                         std::vector<int>(static_cast<size_t>(spec.n), -1));
  int vid = 0;
  for (int r = 0; r < spec.r(); ++r)
    for (const auto& block : spec.parts[static_cast<size_t>(r)]) {
      for (int e : block) block_of[static_cast<size_t>(r)][static_cast<size_t>(e)] = vid;
      ++vid;
    }

  for (int e = 0; e < spec.n; ++e)
    for (int r1 = 0; r1 < spec.r(); ++r1)
      for (int r2 = r1 + 1; r2 < spec.r(); ++r2) {
        int u = block_of[static_cast<size_t>(r1)][static_cast<size_t>(e)];
        int v = block_of[static_cast<size_t>(r2)][static_cast<size_t>(e)];
        g.weights(u, v) += 1.0;
        g.weights(v, u) += 1.0;
      }

  g.degree = g.weights.rowwise().sum();

  g.component_of.assign(static_cast<size_t>(g.num_vertices), -1);
  g.num_components = 0;
  for (int start = 0; start < g.num_vertices; ++start) {
    if (g.component_of[static_cast<size_t>(start)] >= 0) continue;
    std::deque<int> queue{start};
    g.component_of[static_cast<size_t>(start)] = g.num_components;
    while (!queue.empty()) {
      int u = queue.front();
      queue.pop_front();
      for (int v = 0; v < g.num_vertices; ++v)
        if (g.weights(u, v) > 0 && g.component_of[static_cast<size_t>(v)] < 0) {
          g.component_of[static_cast<size_t>(v)] = g.num_components;
          queue.push_back(v);
        }
    }
    ++g.num_components;
  }
  return g;
}

double cheeger_constant(const FaceGraph& g) {
  if (g.num_components > 1) return 0.0;
  int v = g.num_vertices;
  if (v > kCheegerVertexLimit)
    throw capability_error("too many vertices for exhaustive Cheeger constant");
  if (v < 2) throw std::invalid_argument("cheeger_constant: need at least 2 vertices");

  double vol_total = g.degree.sum();
  std::vector<char> in(static_cast<size_t>(v), 0);
  double cut = 0.0, vol = 0.0;
  double best = std::numeric_limits<double>::infinity();
  // Gray-code walk over subsets: one vertex flips per step.
  std::uint32_t gray = 0;
  std::uint32_t total = 1u << v;
  for (std::uint32_t k = 1; k < total; ++k) {
    std::uint32_t next = k ^ (k >> 1);
    int flip = std::countr_zero(gray ^ next);
    gray = next;
    double to_inside = 0.0;
    for (int u = 0; u < v; ++u)
      if (in[static_cast<size_t>(u)]) to_inside += g.weights(flip, u);
    if (!in[static_cast<size_t>(flip)]) {
      cut += g.degree[flip] - 2.0 * to_inside;
      vol += g.degree[flip];
      in[static_cast<size_t>(flip)] = 1;
    } else {
      in[static_cast<size_t>(flip)] = 0;
      cut -= g.degree[flip] - 2.0 * (to_inside - g.weights(flip, flip));
      vol -= g.degree[flip];
    }
    int count = std::popcount(gray);
    if (count == 0 || count == v) continue;
    double denom = std::min(vol, vol_total - vol);
    if (denom > 0) best = std::min(best, cut / denom);
  }
  return best;
}

namespace {

Mat normalized_laplacian(const FaceGraph& g) {
  int v = g.num_vertices;
  Mat lap = -g.weights;
  for (int i = 0; i < v; ++i) lap(i, i) = g.degree[i];
  Vec dinv = g.degree.cwiseSqrt().cwiseInverse();
  return dinv.asDiagonal() * lap * dinv.asDiagonal();
}

}  // namespace

Lambda2Result lambda2(const FaceGraph& g) {
  Eigen::SelfAdjointEigenSolver<Mat> eig(normalized_laplacian(g));
  Lambda2Result res;
  res.disconnected = g.num_components > 1;
  res.value = res.disconnected ? 0.0 : eig.eigenvalues()[1];
  return res;
}

double check_laplacian_identity(const Mat& smat, const Mat& tmat, const FaceGraph& g) {
  Mat st = smat * tmat.transpose();
  Mat lhs = st.transpose() * st;
  int r = 0;
  for (const auto& [ri, mi] : g.labels) r = std::max(r, ri + 1);
  double factor = static_cast<double>(r - 1) / r;
  Mat rhs = Mat::Identity(g.num_vertices, g.num_vertices) - factor * normalized_laplacian(g);
  return (lhs - rhs).cwiseAbs().maxCoeff();
}

double angle_upper_bound(int n, int r) {
  if (r < 2) throw std::invalid_argument("angle_upper_bound: requires R >= 2");
  double nn = static_cast<double>(n), rr = static_cast<double>(r);
  return 1.0 - ((rr - 1.0) / rr) * (2.0 / (nn * nn * rr * rr));
}

double kappa_star_bound(double cf) {
  if (cf < 0.0 || cf >= 1.0) throw std::invalid_argument("kappa_star_bound: need 0 <= cF < 1");
  return 1.0 / std::sqrt(1.0 - cf * cf);
}

int effective_ground_size(const FacePartitionSpec& spec) {
  spec.validate();
  if (spec.r() < 2) return spec.n;
  FaceGraph g = build_face_graph(spec);
  int best = 0;
  for (int comp = 0; comp < g.num_components; ++comp) {
    std::vector<char> touched(static_cast<size_t>(spec.n), 0);
    for (int v = 0; v < g.num_vertices; ++v) {
      if (g.component_of[static_cast<size_t>(v)] != comp) continue;
      auto [r, m] = g.labels[static_cast<size_t>(v)];
      for (int e : spec.parts[static_cast<size_t>(r)][static_cast<size_t>(m)])
        touched[static_cast<size_t>(e)] = 1;
    }
    int size = static_cast<int>(std::count(touched.begin(), touched.end(), 1));
    best = std::max(best, size);
  }
  return best;
}

SpectralReport spectral_report(const FacePartitionSpec& spec) {
  spec.validate();
  SpectralReport rep;
  Mat smat = build_S(spec.n, spec.r());
  Mat tmat = build_T(spec);
  double cf = friedrichs(smat, tmat);
  rep.cf2 = cf * cf;
  rep.effective_ground_size = effective_ground_size(spec);
  double nn = static_cast<double>(spec.n), rr = static_cast<double>(spec.r());
  rep.bound_thm7 = 1.0 - 1.0 / (nn * nn * rr * rr);
  if (spec.r() >= 2) {
    FaceGraph g = build_face_graph(spec);
    rep.connected_components = g.num_components;
    Lambda2Result l2 = lambda2(g);
    rep.lambda2 = l2.value;
    rep.cheeger = (g.num_vertices <= kCheegerVertexLimit) ? cheeger_constant(g)
                                                          : std::numeric_limits<double>::quiet_NaN();
    rep.residual_eq11 = check_laplacian_identity(smat, tmat, g);
  }
  return rep;
}

}  // namespace sfmap
