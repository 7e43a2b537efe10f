#ifndef SFMAP_WORSTCASE_HPP
#define SFMAP_WORSTCASE_HPP

#include "sfmap/core.hpp"
#include "sfmap/projections.hpp"
#include "sfmap/spectral.hpp"

namespace sfmap {

// Augmented cycle-cut instance: component 1 covers the even cycle edges,
// component 2 the odd ones, components 3..R are identically zero.
struct LowerBoundInstance {
  int n = 0, r = 0;
  DecomposableProblem problem;
  FacePartitionSpec face_spec;  // affine hull of B near the all-zeros optimum
};

LowerBoundInstance build_lb_instance(int n, int r);

// 1 - (1/R)(1 - cos(2 pi / N)): squared Friedrichs angle of the instance.
double predicted_cf2(int n, int r);

// Eigenvalues of the circulant Gram matrix of the cycle face rows, computed
// by dense eigensolve; they match 1 + cos(2 pi j / N).
std::vector<double> circulant_spectrum(int n);

// (S, T_lb) for the instance; friedrichs(S, T_lb)^2 equals predicted_cf2.
std::pair<Mat, Mat> lb_face_matrices(const LowerBoundInstance& inst);

// Principal-vector initialization achieving exact geometric decay at rate
// cF^2; returned on the zero-sum side with the requested norm.
BlockVec worst_case_init(const Mat& smat, const Mat& tmat, double scale = 0.1);

struct RatioRow {
  int k = 0;
  double dist_to_e = 0.0;
  double ratio = 0.0;  // d(a_{k+1}, E) / d(a_k, E)
};

struct RatioSeries {
  std::vector<RatioRow> rows;
  double predicted = 0.0;
  bool escaped_box = false;  // some iterate left ||b||_inf <= 1
  // max over iterates of 1 - 1/kappa(a_k)^2; bounded by predicted cf2
  double max_kappa_rate = 0.0;
};

enum class LbInit { Random, WorstCase };

RatioSeries ratio_experiment(const LowerBoundInstance& inst, LbInit init, int iters,
                             unsigned seed = 0);

}  // namespace sfmap

#endif  // SFMAP_WORSTCASE_HPP
