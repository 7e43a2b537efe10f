#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "sfmap/spectral.hpp"
#include "test_util.hpp"

using namespace sfmap;

namespace {

FacePartitionSpec lb_spec_n4() {
  FacePartitionSpec spec;
  spec.n = 4;
  spec.parts = {{{0, 1}, {2, 3}}, {{1, 2}, {3, 0}}};
  return spec;
}

FacePartitionSpec all_v_spec(int n, int r) {
  FacePartitionSpec spec;
  spec.n = n;
  std::vector<int> v(static_cast<size_t>(n));
  std::iota(v.begin(), v.end(), 0);
  for (int i = 0; i < r; ++i) spec.parts.push_back({v});
  return spec;
}

}  // namespace

TEST_CASE("build_S structure") {
  Mat s = build_S(3, 2);
  REQUIRE(s.rows() == 3);
  REQUIRE(s.cols() == 6);
  double c = 1.0 / std::sqrt(2.0);
  CHECK(s(0, 0) == doctest::Approx(c));
  CHECK(s(0, 3) == doctest::Approx(c));
  CHECK(s(1, 0) == doctest::Approx(0.0));
  // rows are orthonormal
  CHECK((s * s.transpose() - Mat::Identity(3, 3)).cwiseAbs().maxCoeff() < 1e-14);
  // nullspace = zero-sum subspace: (v, -v) maps to 0
  Vec w(6);
  w << 1, -2, 3, -1, 2, -3;
  CHECK((s * w).lpNorm<Eigen::Infinity>() < 1e-14);

  // R = 1: scaled identity with trivial nullspace
  Mat s1 = build_S(3, 1);
  CHECK((s1 - Mat::Identity(3, 3)).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("build_T structure") {
  FacePartitionSpec spec = all_v_spec(4, 1);
  Mat t = build_T(spec);
  REQUIRE(t.rows() == 1);
  REQUIRE(t.cols() == 4);
  for (int j = 0; j < 4; ++j) CHECK(t(0, j) == doctest::Approx(0.5));

  Mat tlb = build_T(lb_spec_n4());
  REQUIRE(tlb.rows() == 4);
  REQUIRE(tlb.cols() == 8);
  // block-diagonal normalized indicators, orthonormal rows
  CHECK((tlb * tlb.transpose() - Mat::Identity(4, 4)).cwiseAbs().maxCoeff() < 1e-14);
  CHECK(tlb(0, 0) == doctest::Approx(1.0 / std::sqrt(2.0)));
  CHECK(tlb(0, 4) == doctest::Approx(0.0));  // row of component 1, block 1
}

TEST_CASE("face spec validation") {
  FacePartitionSpec good = lb_spec_n4();
  CHECK_NOTHROW(good.validate());
  CHECK(good.m_all() == 4);

  FacePartitionSpec overlap;
  overlap.n = 3;
  overlap.parts = {{{0, 1}, {1, 2}}};
  CHECK_THROWS_AS(overlap.validate(), std::invalid_argument);

  FacePartitionSpec incomplete;
  incomplete.n = 3;
  incomplete.parts = {{{0, 1}}};
  CHECK_THROWS_AS(incomplete.validate(), std::invalid_argument);

  FacePartitionSpec empty_block;
  empty_block.n = 2;
  empty_block.parts = {{{0, 1}, {}}};
  CHECK_THROWS_AS(empty_block.validate(), std::invalid_argument);
}

TEST_CASE("friedrichs examples") {
  // identical matrices: nullspaces coincide, no angle direction -> 0
  Mat s = build_S(3, 2);
  CHECK(friedrichs(s, s) == doctest::Approx(0.0));

  // coordinate axes in R^2 meet at a right angle
  Mat a(1, 2), b(1, 2);
  a << 1, 0;
  b << 0, 1;
  CHECK(friedrichs(a, b) == doctest::Approx(0.0));

  // planar 60 degrees between the nullspace lines
  Mat c(1, 2);
  c << std::cos(M_PI / 3.0), std::sin(M_PI / 3.0);
  CHECK(friedrichs(a, c) == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("face graph of the cycle partitions is the 4-cycle") {
  FaceGraph g = build_face_graph(lb_spec_n4());
  REQUIRE(g.num_vertices == 4);
  CHECK(g.num_components == 1);
  // vertices 0,1 from component 1, vertices 2,3 from component 2
  CHECK(g.weights(0, 2) == doctest::Approx(1.0));
  CHECK(g.weights(0, 3) == doctest::Approx(1.0));
  CHECK(g.weights(1, 2) == doctest::Approx(1.0));
  CHECK(g.weights(1, 3) == doctest::Approx(1.0));
  CHECK(g.weights(0, 1) == doctest::Approx(0.0));  // same partition: no edge
  CHECK(g.weights(2, 3) == doctest::Approx(0.0));
  for (int i = 0; i < 4; ++i) CHECK(g.degree[i] == doctest::Approx(2.0));
}

TEST_CASE("face graph with trivial partitions is complete with weight N") {
  FaceGraph g = build_face_graph(all_v_spec(5, 3));
  REQUIRE(g.num_vertices == 3);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      CHECK(g.weights(i, j) == doctest::Approx(i == j ? 0.0 : 5.0));
}

TEST_CASE("face graph requires R >= 2") {
  CHECK_THROWS_AS(build_face_graph(all_v_spec(4, 1)), capability_error);
}

TEST_CASE("separable blocks give a disconnected face graph") {
  // both components split {0,1,2} | {3,4}: no cross intersections
  FacePartitionSpec spec;
  spec.n = 5;
  spec.parts = {{{0, 1}, {2}, {3, 4}}, {{0}, {1, 2}, {3}, {4}}};
  FaceGraph g = build_face_graph(spec);
  CHECK(g.num_components == 2);
  CHECK(cheeger_constant(g) == doctest::Approx(0.0));
  Lambda2Result l2 = lambda2(g);
  CHECK(l2.disconnected);
  CHECK(l2.value == doctest::Approx(0.0));
}

TEST_CASE("cheeger constant examples") {
  // unit 4-cycle: best cut severs 2 edges, smaller volume 4
  CHECK(cheeger_constant(build_face_graph(lb_spec_n4())) == doctest::Approx(0.5));

  // K2 with weight w: cut w over volume w
  FaceGraph k2 = build_face_graph(all_v_spec(3, 2));
  CHECK(cheeger_constant(k2) == doctest::Approx(1.0));

  FaceGraph big;
  big.num_vertices = kCheegerVertexLimit + 1;
  big.weights = Mat::Ones(big.num_vertices, big.num_vertices);
  big.degree = Vec::Ones(big.num_vertices);
  big.component_of.assign(static_cast<size_t>(big.num_vertices), 0);
  CHECK_THROWS_AS(cheeger_constant(big), capability_error);
}

TEST_CASE("lambda2 examples") {
  // normalized-Laplacian spectrum of C4 is {0, 1, 1, 2}
  Lambda2Result c4 = lambda2(build_face_graph(lb_spec_n4()));
  CHECK_FALSE(c4.disconnected);
  CHECK(c4.value == doctest::Approx(1.0).epsilon(1e-10));

  // K2: spectrum {0, 2}
  Lambda2Result k2 = lambda2(build_face_graph(all_v_spec(3, 2)));
  CHECK(k2.value == doctest::Approx(2.0).epsilon(1e-10));
}

TEST_CASE("laplacian identity on closed-form cases") {
  FacePartitionSpec lb = lb_spec_n4();
  Mat s = build_S(4, 2), t = build_T(lb);
  CHECK(check_laplacian_identity(s, t, build_face_graph(lb)) <= 1e-10);

  FacePartitionSpec allv = all_v_spec(5, 3);
  CHECK(check_laplacian_identity(build_S(5, 3), build_T(allv),
                                 build_face_graph(allv)) <= 1e-12);
}

TEST_CASE("spectral chain on random face partitions") {
  std::mt19937 rng(99);
  std::uniform_int_distribution<int> un(3, 10), ur(2, 4);
  int done = 0;
  while (done < 40) {
    int n = un(rng), r = ur(rng);
    FacePartitionSpec spec =
        testutil::random_face_spec(rng, n, r, kCheegerVertexLimit / r);
    spec.validate();
    FaceGraph g = build_face_graph(spec);
    Mat s = build_S(n, r), t = build_T(spec);
    CHECK(check_laplacian_identity(s, t, g) <= 1e-10);
    if (g.num_components > 1) continue;
    ++done;

    double h = cheeger_constant(g);
    Lambda2Result l2 = lambda2(g);
    double cf = friedrichs(s, t);
    double rr = static_cast<double>(r), nn = static_cast<double>(n);
    CHECK(h >= 2.0 / (nn * rr) - 1e-12);
    CHECK(l2.value >= h * h / 2.0 - 1e-10);
    CHECK(l2.value >= 2.0 / (nn * nn * rr * rr) - 1e-10);
    CHECK(cf * cf <= 1.0 - ((rr - 1.0) / rr) * (2.0 / (nn * nn * rr * rr)) + 1e-9);
    // eigenvalue relation: cf^2 = 1 - ((R-1)/R) lambda2 for connected graphs
    CHECK(cf * cf == doctest::Approx(1.0 - ((rr - 1.0) / rr) * l2.value).epsilon(1e-8));
  }
}

TEST_CASE("angle and kappa bounds") {
  CHECK(angle_upper_bound(10, 10) == doctest::Approx(1.0 - 0.9 * 2.0 / 1e4));
  CHECK(angle_upper_bound(10, 10) == doctest::Approx(0.99982));
  CHECK(kappa_star_bound(0.0) == doctest::Approx(1.0));
  CHECK(kappa_star_bound(0.6) == doctest::Approx(1.25));
  CHECK_THROWS_AS(kappa_star_bound(1.0), std::invalid_argument);
}

TEST_CASE("effective ground size") {
  CHECK(effective_ground_size(lb_spec_n4()) == 4);  // connected: whole ground set

  // separable split 3 | 5 on N = 8: the larger side wins
  FacePartitionSpec spec;
  spec.n = 8;
  spec.parts = {{{0, 1}, {2}, {3, 4}, {5, 6, 7}}, {{0}, {1, 2}, {3}, {4, 5, 6, 7}}};
  FaceGraph g = build_face_graph(spec);
  REQUIRE(g.num_components == 2);
  CHECK(effective_ground_size(spec) == 5);
}

TEST_CASE("spectral report on the cycle instance") {
  SpectralReport rep = spectral_report(lb_spec_n4());
  CHECK(rep.cf2 == doctest::Approx(0.5).epsilon(1e-10));
  CHECK(rep.lambda2 == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(rep.cheeger == doctest::Approx(0.5));
  CHECK(rep.bound_thm7 == doctest::Approx(1.0 - 1.0 / (16.0 * 4.0)));
  CHECK(rep.residual_eq11 <= 1e-10);
  CHECK(rep.connected_components == 1);
  CHECK(rep.effective_ground_size == 4);
}

TEST_CASE("degenerate spec with identical partitions has cf = 0") {
  // same partition in both components: nullspaces nest, no angle direction
  FacePartitionSpec spec;
  spec.n = 4;
  spec.parts = {{{0, 1}, {2, 3}}, {{0, 1}, {2, 3}}};
  Mat s = build_S(4, 2), t = build_T(spec);
  CHECK(friedrichs(s, t) == doctest::Approx(0.0));
}
