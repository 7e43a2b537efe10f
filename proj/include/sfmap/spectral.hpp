#ifndef SFMAP_SPECTRAL_HPP
#define SFMAP_SPECTRAL_HPP

#include <utility>

#include "sfmap/core.hpp"

namespace sfmap {

using Mat = Eigen::MatrixXd;

// Per component r: ordered disjoint nonempty blocks (A_r1, ..., A_rMr)
// whose union is the ground set. Defines the affine hull of a face of the
// product of base polytopes.
struct FacePartitionSpec {
  int n = 0;
  std::vector<std::vector<std::vector<int>>> parts;  // [r][m] -> block

  int r() const { return static_cast<int>(parts.size()); }
  int m_all() const;
  void validate() const;  // disjointness, union = V, M_r >= 1
};

// N x NR matrix (1/sqrt(R)) (I_N ... I_N); nullspace is the zero-sum subspace.
Mat build_S(int n, int r);

// M_all x NR block-diagonal matrix of normalized indicator rows; nullspace
// is the direction space of the face.
Mat build_T(const FacePartitionSpec& spec);

// Cosine of the Friedrichs angle between nullspace(S) and nullspace(T):
// the largest singular value of S T^T below 1 - tol_one, or 0 when all
// singular values are 1 (nested nullspaces).
double friedrichs(const Mat& smat, const Mat& tmat, double tol_one = 1e-9);

struct FaceGraph {
  int num_vertices = 0;
  std::vector<std::pair<int, int>> labels;  // vertex -> (r, m)
  Mat weights;                              // |A_{r1m1} cap A_{r2m2}|, zero diagonal
  Vec degree;
  std::vector<int> component_of;
  int num_components = 1;
};

FaceGraph build_face_graph(const FacePartitionSpec& spec);

// Exact minimum cut/volume ratio over all nonempty proper vertex subsets.
// Refuses beyond 22 vertices; 0 for disconnected graphs.
double cheeger_constant(const FaceGraph& g);

inline constexpr int kCheegerVertexLimit = 22;

struct Lambda2Result {
  double value = 0.0;
  bool disconnected = false;  // zero eigenvalue has multiplicity > 1
};

// Second-smallest eigenvalue of the symmetric normalized Laplacian.
Lambda2Result lambda2(const FaceGraph& g);

// Max-abs entrywise residual of (ST^T)^T (ST^T) = I - ((R-1)/R) L_norm.
double check_laplacian_identity(const Mat& smat, const Mat& tmat, const FaceGraph& g);

// 1 - ((R-1)/R) (2 / (N^2 R^2)).
double angle_upper_bound(int n, int r);

// (1 - cF^2)^{-1/2}.
double kappa_star_bound(double cf);

// Largest number of ground elements spanned by one connected component of
// the face graph.
int effective_ground_size(const FacePartitionSpec& spec);

struct SpectralReport {
  double cf2 = 0.0;
  double lambda2 = 0.0;
  double cheeger = 0.0;
  double bound_thm7 = 0.0;
  double residual_eq11 = 0.0;
  int connected_components = 1;
  int effective_ground_size = 0;
};

SpectralReport spectral_report(const FacePartitionSpec& spec);

}  // namespace sfmap

#endif  // SFMAP_SPECTRAL_HPP
