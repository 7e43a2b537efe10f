#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <bit>
#include <random>

#include "sfmap/core.hpp"
#include "sfmap/oracles.hpp"
#include "test_util.hpp"

using namespace sfmap;

namespace {

DecomposableProblem lb_n4_r2() {
  std::vector<SimpleComponent> comps;
  comps.push_back(SimpleComponent::graph_cut({{0, 1, 1.0}, {2, 3, 1.0}}));
  comps.push_back(SimpleComponent::graph_cut({{1, 2, 1.0}, {3, 0, 1.0}}));
  return DecomposableProblem(GroundSet(4), std::move(comps));
}

}  // namespace

TEST_CASE("component evaluation examples") {
  SimpleComponent ec = SimpleComponent::edge_cut(0, 1, 1.0);
  CHECK(ec.eval(Subset{0}) == doctest::Approx(1.0));
  CHECK(ec.eval(Subset{}) == doctest::Approx(0.0));
  CHECK(ec.eval(Subset{0, 1}) == doctest::Approx(0.0));

  SimpleComponent cc =
      SimpleComponent::concave_cardinality({0.0, 1.0, 2.0, 2.0}, {0, 1, 2});
  CHECK(cc.eval(Subset{}) == doctest::Approx(0.0));
  CHECK(cc.eval(Subset{0, 1, 2}) == doctest::Approx(2.0));
  CHECK(cc.eval(Subset{1, 2}) == doctest::Approx(2.0));

  SimpleComponent mod = SimpleComponent::modular({1.0, -2.0}, {0, 1});
  CHECK(mod.eval(Subset{0, 1}) == doctest::Approx(-1.0));
  CHECK(mod.eval(Subset{}) == doctest::Approx(0.0));
}

TEST_CASE("decomposable evaluation on the cycle-cut instance") {
  DecomposableProblem p = lb_n4_r2();
  CHECK(p.eval(Subset{}) == doctest::Approx(0.0));
  CHECK(p.eval(Subset{0}) == doctest::Approx(2.0));
  CHECK(p.eval(Subset{1, 3}) == doctest::Approx(4.0));
  CHECK(p.eval(Subset{0, 1, 2, 3}) == doctest::Approx(0.0));
}

TEST_CASE("indicator conversion rejects out-of-range indices") {
  CHECK_THROWS_AS(to_indicator(Subset{2}, 2), std::invalid_argument);
  CHECK_THROWS_AS(to_indicator(Subset{-1}, 2), std::invalid_argument);
  CHECK(indicator_to_subset(to_indicator(Subset{0, 3}, 5)) == Subset{0, 3});
}

TEST_CASE("check_submodular examples") {
  CHECK(check_submodular(SimpleComponent::edge_cut(0, 1, 2.5)).ok);
  CHECK(check_submodular(
            SimpleComponent::concave_cardinality({0.0, 1.0, 1.5}, {0, 1}))
            .ok);

  SimpleComponent bad = SimpleComponent::table({0, 1}, {0.0, 0.0, 0.0, 1.0});
  SubmodularCheck res = check_submodular(bad);
  CHECK_FALSE(res.ok);
  // violating pair ({0},{1}) as support-position masks
  std::uint32_t lo = std::min(res.set_a, res.set_b);
  std::uint32_t hi = std::max(res.set_a, res.set_b);
  CHECK(lo == 1u);
  CHECK(hi == 2u);
}

TEST_CASE("check_submodular refuses oversized supports") {
  std::vector<int> support(static_cast<size_t>(kExhaustivePairLimit) + 1);
  std::iota(support.begin(), support.end(), 0);
  std::vector<double> w(support.size(), 0.0);
  SimpleComponent big = SimpleComponent::modular(w, support);
  CHECK_THROWS_AS(check_submodular(big), capability_error);
}

TEST_CASE("check_submodular accepts generated random tables") {
  std::mt19937 rng(101);
  for (int t = 0; t < 30; ++t) {
    std::uniform_int_distribution<int> uq(2, 5);
    int q = uq(rng);
    SimpleComponent c = SimpleComponent::table(testutil::random_support(rng, 10, q),
                                               testutil::random_submodular_table(rng, q));
    CHECK(check_submodular(c).ok);
  }
}

TEST_CASE("greedy examples") {
  SimpleComponent ec = SimpleComponent::edge_cut(0, 1, 1.0);
  Vec x(2);
  x << 0.7, 0.2;
  Vec s = greedy_base_vertex(ec, x);
  CHECK(s[0] == doctest::Approx(1.0));
  CHECK(s[1] == doctest::Approx(-1.0));

  // constant x: ties broken by ascending index, marginals in index order
  Vec xc = Vec::Constant(2, 0.3);
  Vec sc = greedy_base_vertex(ec, xc);
  CHECK(sc[0] == doctest::Approx(1.0));
  CHECK(sc[1] == doctest::Approx(-1.0));

  SimpleComponent cc =
      SimpleComponent::concave_cardinality({0.0, 1.0, 2.0, 2.0}, {0, 1, 2});
  Vec x3(3);
  x3 << 3.0, 2.0, 1.0;
  Vec s3 = greedy_base_vertex(cc, x3);
  CHECK(s3[0] == doctest::Approx(1.0));
  CHECK(s3[1] == doctest::Approx(1.0));
  CHECK(s3[2] == doctest::Approx(0.0));
}

TEST_CASE("greedy vertices lie in the base polytope") {
  std::mt19937 rng(202);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (int t = 0; t < 40; ++t) {
    SimpleComponent c = testutil::random_component(rng, 8, 6);
    int n = c.max_element() + 1;
    Vec x(n);
    for (int i = 0; i < n; ++i) x[i] = u(rng);
    Vec s = greedy_base_vertex(c, x);
    BaseMembership mem = check_in_base(c, s, 1e-9);
    CHECK(mem.ok);
  }
}

TEST_CASE("greedy vertex norms obey the 3 Fmax bound") {
  std::mt19937 rng(303);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (int t = 0; t < 40; ++t) {
    DecomposableProblem p = testutil::random_problem(rng, 8, 3, 6);
    double fmax = brute_force_fmax(p);
    Vec x(p.n());
    for (int i = 0; i < p.n(); ++i) x[i] = u(rng);
    Vec total = Vec::Zero(p.n());
    for (const SimpleComponent& c : p.components) {
      Vec s = greedy_base_vertex(c, x);
      total += s;
      // per-component bound against that component's own F_max
      DecomposableProblem single(p.ground, {c});
      CHECK(s.norm() <= 3.0 * brute_force_fmax(single) + 1e-9);
    }
    // the summed vertex lies in B(F) and obeys the bound for the full F
    CHECK(total.norm() <= 3.0 * fmax + 1e-9);
  }
}

TEST_CASE("lovasz extension examples and properties") {
  SimpleComponent ec = SimpleComponent::edge_cut(0, 1, 1.0);
  Vec x(2);
  x << 0.7, 0.2;
  CHECK(lovasz(ec, x) == doctest::Approx(0.5));
  CHECK(lovasz(ec, Vec::Zero(2)) == doctest::Approx(0.0));

  std::mt19937 rng(404);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int t = 0; t < 20; ++t) {
    SimpleComponent c = testutil::random_component(rng, 7, 6);
    int n = c.max_element() + 1;
    // f(1_A) = F(A) on all subsets of the support
    std::uint32_t q = static_cast<std::uint32_t>(c.support_size());
    for (std::uint32_t mask = 0; mask < (1u << q); ++mask) {
      Vec ind = Vec::Zero(n);
      for (std::uint32_t i = 0; i < q; ++i)
        if ((mask >> i) & 1u) ind[c.support()[i]] = 1.0;
      CHECK(lovasz(c, ind) == doctest::Approx(c.eval_support_mask(mask)).epsilon(1e-10));
    }
    // f(x) >= s^T x for base vectors s (support function property)
    Vec x(n), d(n);
    for (int i = 0; i < n; ++i) { x[i] = u(rng); d[i] = u(rng); }
    Vec s = greedy_base_vertex(c, d);
    CHECK(lovasz(c, x) >= s.dot(x) - 1e-9);
  }
}

TEST_CASE("brute force minimum examples") {
  DecomposableProblem lb = lb_n4_r2();
  BruteForceResult res = brute_force_min(lb);
  CHECK(res.minimizer.empty());
  CHECK(res.value == doctest::Approx(0.0));

  DecomposableProblem mod(GroundSet(3),
                          {SimpleComponent::modular({1.0, -2.0, 3.0}, {0, 1, 2})});
  BruteForceResult mres = brute_force_min(mod);
  CHECK(mres.minimizer == Subset{1});
  CHECK(mres.value == doctest::Approx(-2.0));
}

TEST_CASE("brute force matches an independent enumeration") {
  std::mt19937 rng(505);
  for (int t = 0; t < 25; ++t) {
    DecomposableProblem p = testutil::random_problem(rng, 8, 3, 6);
    BruteForceResult res = brute_force_min(p);
    double best = std::numeric_limits<double>::infinity();
    for (std::uint32_t mask = 0; mask < (1u << p.n()); ++mask) {
      Subset a;
      for (int i = 0; i < p.n(); ++i)
        if ((mask >> i) & 1u) a.push_back(i);
      best = std::min(best, p.eval(a));
    }
    CHECK(res.value == doctest::Approx(best).epsilon(1e-12));
    CHECK(p.eval(res.minimizer) == doctest::Approx(res.value));
  }
}

TEST_CASE("brute force tie-break prefers smaller then lexicographic sets") {
  // zero function: every subset ties at 0, the empty set must win
  DecomposableProblem zero(GroundSet(4),
                           {SimpleComponent::modular({0.0, 0.0, 0.0, 0.0}, {0, 1, 2, 3})});
  CHECK(brute_force_min(zero).minimizer.empty());

  // {1} and {2} tie; {1} is lexicographically smaller
  DecomposableProblem tie(GroundSet(3),
                          {SimpleComponent::modular({0.0, -1.0, -1.0}, {0, 1, 2})});
  BruteForceResult res = brute_force_min(tie);
  CHECK(res.minimizer == Subset{1, 2});  // -2 beats -1, no tie at the optimum

  // {0,1} and {0,1,2} tie at -2; the smaller set wins
  DecomposableProblem tie2(GroundSet(3),
                           {SimpleComponent::modular({-1.0, -1.0, 0.0}, {0, 1, 2})});
  CHECK(brute_force_min(tie2).minimizer == Subset{0, 1});

  // brute force works on arbitrary tables; {0} and {1} tie at -1 and the
  // lexicographic rule picks {0}
  DecomposableProblem tie3(GroundSet(2),
                           {SimpleComponent::table({0, 1}, {0.0, -1.0, -1.0, 0.0})});
  CHECK(brute_force_min(tie3).minimizer == Subset{0});
}

TEST_CASE("brute force refuses oversized ground sets") {
  int n = kExhaustiveSubsetLimit + 1;
  DecomposableProblem p(GroundSet(n), {SimpleComponent::edge_cut(0, 1, 1.0)});
  CHECK_THROWS_AS(brute_force_min(p), capability_error);
  CHECK_THROWS_AS(brute_force_fmax(p), capability_error);
}

TEST_CASE("brute force fmax examples") {
  CHECK(brute_force_fmax(lb_n4_r2()) == doctest::Approx(4.0));
  DecomposableProblem mod(GroundSet(2), {SimpleComponent::modular({1.0, -2.0}, {0, 1})});
  CHECK(brute_force_fmax(mod) == doctest::Approx(2.0));
  DecomposableProblem zero(GroundSet(2), {SimpleComponent::modular({0.0, 0.0}, {0, 1})});
  CHECK(brute_force_fmax(zero) == doctest::Approx(0.0));
}

TEST_CASE("modular shift examples") {
  SimpleComponent ec = SimpleComponent::edge_cut(0, 1, 1.0);

  Vec zero = Vec::Zero(2);
  SimpleComponent same = ec.shifted(zero);
  CHECK(same.eval(Subset{0}) == doctest::Approx(1.0));

  Vec z(2);
  z << 1.0, 0.0;
  SimpleComponent sh = ec.shifted(z);
  CHECK(sh.eval(Subset{0}) == doctest::Approx(0.0));
  CHECK(sh.eval(Subset{0, 1}) == doctest::Approx(-1.0));

  // shift by z then -z restores the original evaluations
  SimpleComponent back = sh.shifted(-z);
  for (std::uint32_t mask = 0; mask < 4u; ++mask)
    CHECK(back.eval_support_mask(mask) ==
          doctest::Approx(ec.eval_support_mask(mask)).epsilon(1e-12));
}

TEST_CASE("shift preserves submodularity violations exactly") {
  std::mt19937 rng(606);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (int t = 0; t < 20; ++t) {
    SimpleComponent c = testutil::random_component(rng, 7, 5);
    int n = c.max_element() + 1;
    Vec z(n);
    for (int i = 0; i < n; ++i) z[i] = u(rng);
    SimpleComponent sh = c.shifted(z);
    // shifted evals equal F(A) - z(A)
    std::uint32_t q = static_cast<std::uint32_t>(c.support_size());
    for (std::uint32_t mask = 0; mask < (1u << q); ++mask) {
      double zsum = 0.0;
      for (std::uint32_t i = 0; i < q; ++i)
        if ((mask >> i) & 1u) zsum += z[c.support()[i]];
      CHECK(sh.eval_support_mask(mask) ==
            doctest::Approx(c.eval_support_mask(mask) - zsum).epsilon(1e-10));
    }
    CHECK(check_submodular(sh).ok);  // modular shifts preserve submodularity
  }
}

TEST_CASE("input validation") {
  CHECK_THROWS_AS(GroundSet(0), std::invalid_argument);
  CHECK_THROWS_AS(SimpleComponent::edge_cut(1, 1, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(SimpleComponent::edge_cut(0, 1, -1.0), std::invalid_argument);
  CHECK_THROWS_AS(SimpleComponent::concave_cardinality({0.5, 1.0}, {0}),
                  std::invalid_argument);  // g(0) != 0
  CHECK_THROWS_AS(SimpleComponent::concave_cardinality({0.0, 1.0, 3.0}, {0, 1}),
                  std::invalid_argument);  // convex kink
  CHECK_THROWS_AS(SimpleComponent::table({0, 1}, {1.0, 0.0, 0.0, 0.0}),
                  std::invalid_argument);  // F(empty) != 0
  CHECK_THROWS_AS(SimpleComponent::table({0, 1}, {0.0, 1.0}), std::invalid_argument);
  CHECK_THROWS_AS(SimpleComponent::modular({1.0}, {0, 1}), std::invalid_argument);
  CHECK_THROWS_AS(
      DecomposableProblem(GroundSet(1), {SimpleComponent::edge_cut(0, 1, 1.0)}),
      std::invalid_argument);  // support exceeds ground set
  CHECK_THROWS_AS(DecomposableProblem(GroundSet(2), {}), std::invalid_argument);
}
