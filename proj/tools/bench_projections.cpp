// Compares the serial and OpenMP product-projection paths on a synthetic
// problem with many components. The two paths must agree bit for bit.
#include <chrono>
#include <iostream>
#include <random>

#include "sfmap/projections.hpp"

using Clock = std::chrono::steady_clock;

int main(int argc, char** argv) {
  int n = 200, r = 64, reps = 20;
  if (argc > 1) n = std::atoi(argv[1]);
  if (argc > 2) r = std::atoi(argv[2]);
  if (argc > 3) reps = std::atoi(argv[3]);

  std::mt19937 rng(7);
  std::uniform_real_distribution<double> u(-1.0, 1.0);

  std::vector<sfmap::SimpleComponent> comps;
  for (int i = 0; i < r; ++i) {
    std::vector<int> support;
    for (int e = 0; e < n; ++e) support.push_back(e);
    std::vector<double> g(static_cast<size_t>(n) + 1, 0.0);
    double marginal = 1.0 + std::abs(u(rng));
    for (int k = 1; k <= n; ++k) {
      g[static_cast<size_t>(k)] = g[static_cast<size_t>(k) - 1] + marginal;
      marginal *= 0.97;
    }
    comps.push_back(sfmap::SimpleComponent::concave_cardinality(g, support));
  }
  sfmap::DecomposableProblem p(sfmap::GroundSet(n), std::move(comps));

  sfmap::BlockVec w(n, r);
  for (Eigen::Index i = 0; i < w.data.size(); ++i) w.data[i] = u(rng);

  auto time_path = [&](bool parallel) {
    auto t0 = Clock::now();
    sfmap::BlockVec out;
    for (int k = 0; k < reps; ++k) out = sfmap::project_product(p, w, parallel);
    auto t1 = Clock::now();
    double ms = std::chrono::duration<double, std::milli>(t1 - t0).count() / reps;
    return std::make_pair(ms, out);
  };

  auto [serial_ms, serial_out] = time_path(false);
  auto [parallel_ms, parallel_out] = time_path(true);

  bool identical = (serial_out.data.array() == parallel_out.data.array()).all();
  std::cout << "n=" << n << " r=" << r << " reps=" << reps << '\n'
            << "serial   " << serial_ms << " ms/projection\n"
            << "parallel " << parallel_ms << " ms/projection\n"
            << "speedup  " << serial_ms / parallel_ms << "x\n"
            << "bit-identical: " << (identical ? "yes" : "NO") << '\n';
  return identical ? 0 : 1;
}
