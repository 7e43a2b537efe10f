#include "sfmap/worstcase.hpp"

#include <cmath>
#include <numeric>
#include <random>

namespace sfmap {

namespace {

constexpr double kPi = 3.14159265358979323846;

void check_lb_args(int n, int r) {
  if (n < 4 || n % 2 != 0) throw std::invalid_argument("lower-bound instance needs even N >= 4");
  if (r < 2) throw std::invalid_argument("lower-bound instance needs R >= 2");
}

// Orthonormal basis of the nullspace of a full-row-rank matrix.
Mat kernel_basis(const Mat& m) {
  Eigen::BDCSVD<Mat> svd(m, Eigen::ComputeFullV);
  double smax = svd.singularValues().size() ? svd.singularValues()[0] : 0.0;
  Eigen::Index rank = 0;
  for (Eigen::Index i = 0; i < svd.singularValues().size(); ++i)
    if (svd.singularValues()[i] > 1e-10 * std::max(smax, 1.0)) ++rank;
  return svd.matrixV().rightCols(m.cols() - rank);
}

}  // namespace

LowerBoundInstance build_lb_instance(int n, int r) {
  check_lb_args(n, r);
  std::vector<Edge> even_edges, odd_edges;
  for (int i = 0; i < n; i += 2) even_edges.push_back(Edge{i, i + 1, 1.0});
  for (int i = 1; i < n; i += 2) odd_edges.push_back(Edge{i, (i + 1) % n, 1.0});

  std::vector<SimpleComponent> comps;
  comps.push_back(SimpleComponent::graph_cut(even_edges));
  comps.push_back(SimpleComponent::graph_cut(odd_edges));
  std::vector<int> full(static_cast<size_t>(n));
  std::iota(full.begin(), full.end(), 0);
  for (int k = 2; k < r; ++k)
    comps.push_back(SimpleComponent::modular(std::vector<double>(static_cast<size_t>(n), 0.0), full));

  FacePartitionSpec spec;
  spec.n = n;
  spec.parts.resize(static_cast<size_t>(r));
  for (const Edge& e : even_edges) spec.parts[0].push_back({e.u, e.v});
  for (const Edge& e : odd_edges) spec.parts[1].push_back({e.u, e.v});
  for (int k = 2; k < r; ++k)
    for (int e = 0; e < n; ++e) spec.parts[static_cast<size_t>(k)].push_back({e});

  return LowerBoundInstance{n, r, DecomposableProblem(GroundSet(n), std::move(comps)),
                            std::move(spec)};
}

double predicted_cf2(int n, int r) {
  check_lb_args(n, r);
  return 1.0 - (1.0 / r) * (1.0 - std::cos(2.0 * kPi / n));
}

std::vector<double> circulant_spectrum(int n) {
  if (n < 4 || n % 2 != 0) throw std::invalid_argument("circulant_spectrum needs even N >= 4");
  // Gram matrix of the cycle rows: 1 on the diagonal, 1/2 on the two
  // neighbor bands, wrapping at the corners.
  Mat gram = Mat::Identity(n, n);
  for (int i = 0; i < n; ++i) {
    gram(i, (i + 1) % n) = 0.5;
    gram((i + 1) % n, i) = 0.5;
  }
  Eigen::SelfAdjointEigenSolver<Mat> eig(gram);
  std::vector<double> out(eig.eigenvalues().data(), eig.eigenvalues().data() + n);
  return out;
}

std::pair<Mat, Mat> lb_face_matrices(const LowerBoundInstance& inst) {
  return {build_S(inst.n, inst.r), build_T(inst.face_spec)};
}

BlockVec worst_case_init(const Mat& smat, const Mat& tmat, double scale) {
  Mat qa = kernel_basis(smat);
  Mat qb = kernel_basis(tmat);
  if (qa.cols() == 0 || qb.cols() == 0)
    throw capability_error("worst_case_init: a nullspace is trivial");
  Eigen::BDCSVD<Mat> svd(qa.transpose() * qb, Eigen::ComputeFullU);
  Eigen::Index pick = -1;
  double best = -1.0;
  for (Eigen::Index i = 0; i < svd.singularValues().size(); ++i) {
    double sigma = svd.singularValues()[i];
    if (sigma < 1.0 - 1e-9 && sigma > best) {
      best = sigma;
      pick = i;
    }
  }
  if (pick < 0) throw capability_error("worst_case_init: subspaces are nested, no angle direction");
  Vec u0 = qa * svd.matrixU().col(pick);
  u0 *= scale / u0.norm();

  int cols = static_cast<int>(smat.cols());
  int n = static_cast<int>(smat.rows());
  BlockVec a(n, cols / n);
  a.data = u0;
  return a;
}

RatioSeries ratio_experiment(const LowerBoundInstance& inst, LbInit init, int iters,
                             unsigned seed) {
  if (iters < 2) throw std::invalid_argument("ratio_experiment needs iters >= 2");
  auto [smat, tmat] = lb_face_matrices(inst);

  BlockVec a(inst.n, inst.r);
  if (init == LbInit::WorstCase) {
    a = worst_case_init(smat, tmat);
  } else {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (Eigen::Index i = 0; i < a.data.size(); ++i) a.data[i] = u(rng);
    a = project_subspace(a);
    a.data *= 0.1 / a.data.norm();  // stay where B agrees with its affine hull
  }

  Mat stacked(smat.rows() + tmat.rows(), smat.cols());
  stacked << smat, tmat;
  Mat qe = kernel_basis(stacked);                 // E = null(S) cap null(T)
  Mat qb = kernel_basis(tmat);                    // directions of aff(B)

  auto dist_to_e = [&](const Vec& x) { return (x - qe * (qe.transpose() * x)).norm(); };
  auto dist_to_affb = [&](const Vec& x) { return (x - qb * (qb.transpose() * x)).norm(); };

  RatioSeries series;
  series.predicted = predicted_cf2(inst.n, inst.r);

  std::vector<double> dist;
  dist.push_back(dist_to_e(a.data));
  for (int k = 0; k < iters; ++k) {
    double de = dist.back();
    if (de > 1e-12) {
      double db = dist_to_affb(a.data);
      if (db > 0) {
        double kappa = de / db;
        series.max_kappa_rate = std::max(series.max_kappa_rate, 1.0 - 1.0 / (kappa * kappa));
      }
    }
    BlockVec b = project_product(inst.problem, a);
    if (b.data.lpNorm<Eigen::Infinity>() > 1.0 + 1e-12) series.escaped_box = true;
    a = project_subspace(b);
    dist.push_back(dist_to_e(a.data));
  }

  for (int k = 0; k < iters; ++k) {
    RatioRow row;
    row.k = k;
    row.dist_to_e = dist[static_cast<size_t>(k)];
    row.ratio = dist[static_cast<size_t>(k)] > 0
                    ? dist[static_cast<size_t>(k) + 1] / dist[static_cast<size_t>(k)]
                    : 0.0;
    series.rows.push_back(row);
  }
  return series;
}

}  // namespace sfmap
