#include "sfmap/core.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>

namespace sfmap {

std::vector<char> to_indicator(const Subset& a, int n) {
  std::vector<char> in(static_cast<size_t>(n), 0);
  for (int e : a) {
    if (e < 0 || e >= n) throw std::invalid_argument("subset element out of range");
    in[static_cast<size_t>(e)] = 1;
  }
  return in;
}

Subset indicator_to_subset(const std::vector<char>& in) {
  Subset a;
  for (size_t i = 0; i < in.size(); ++i)
    if (in[i]) a.push_back(static_cast<int>(i));
  return a;
}

namespace {

std::vector<int> sorted_unique(std::vector<int> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  if (!v.empty() && v.front() < 0) throw std::invalid_argument("negative element index");
  return v;
}

}  // namespace

SimpleComponent SimpleComponent::edge_cut(int u, int v, double weight) {
  if (u == v) throw std::invalid_argument("edge_cut endpoints must differ");
  if (weight < 0) throw std::invalid_argument("edge_cut weight must be >= 0");
  SimpleComponent c;
  c.kind_ = ComponentKind::EdgeCut;
  c.edges_ = {Edge{u, v, weight}};
  c.support_ = sorted_unique({u, v});
  return c;
}

SimpleComponent SimpleComponent::graph_cut(std::vector<Edge> edges) {
  if (edges.empty()) throw std::invalid_argument("graph_cut needs at least one edge");
  std::vector<int> sup;
  for (const Edge& e : edges) {
    if (e.u == e.v) throw std::invalid_argument("graph_cut edge endpoints must differ");
    if (e.weight < 0) throw std::invalid_argument("graph_cut weights must be >= 0");
    sup.push_back(e.u);
    sup.push_back(e.v);
  }
  SimpleComponent c;
  c.kind_ = ComponentKind::GraphCut;
  c.edges_ = std::move(edges);
  c.support_ = sorted_unique(sup);
  return c;
}

SimpleComponent SimpleComponent::concave_cardinality(std::vector<double> values,
                                                     std::vector<int> support) {
  support = sorted_unique(support);
  if (values.size() != support.size() + 1)
    throw std::invalid_argument("concave_cardinality needs g(0..q)");
  if (values[0] != 0.0) throw std::invalid_argument("concave_cardinality requires g(0) = 0");
  for (size_t k = 2; k < values.size(); ++k) {
    double d1 = values[k - 1] - values[k - 2];
    double d2 = values[k] - values[k - 1];
    if (d2 > d1 + 1e-12) throw std::invalid_argument("concave_cardinality marginals must be nonincreasing");
  }
  SimpleComponent c;
  c.kind_ = ComponentKind::ConcaveCardinality;
  c.values_ = std::move(values);
  c.support_ = std::move(support);
  return c;
}

SimpleComponent SimpleComponent::modular(std::vector<double> weights, std::vector<int> support) {
  if (weights.size() != support.size())
    throw std::invalid_argument("modular weights/support size mismatch");
  // keep weights aligned with the sorted support
  std::vector<size_t> order(support.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](size_t a, size_t b) { return support[a] < support[b]; });
  std::vector<int> sup;
  std::vector<double> w;
  for (size_t i : order) {
    if (!sup.empty() && support[i] == sup.back())
      throw std::invalid_argument("modular support has duplicates");
    sup.push_back(support[i]);
    w.push_back(weights[i]);
  }
  if (!sup.empty() && sup.front() < 0) throw std::invalid_argument("negative element index");
  SimpleComponent c;
  c.kind_ = ComponentKind::Modular;
  c.values_ = std::move(w);
  c.support_ = std::move(sup);
  return c;
}

SimpleComponent SimpleComponent::table(std::vector<int> support, std::vector<double> values) {
  if (!std::is_sorted(support.begin(), support.end()) ||
      std::adjacent_find(support.begin(), support.end()) != support.end())
    throw std::invalid_argument("table support must be strictly increasing");
  if (!support.empty() && support.front() < 0) throw std::invalid_argument("negative element index");
  if (support.size() > 25) throw std::invalid_argument("table support too large");
  if (values.size() != (size_t{1} << support.size()))
    throw std::invalid_argument("table needs 2^q values");
  if (values[0] != 0.0) throw std::invalid_argument("table requires F(empty) = 0");
  SimpleComponent c;
  c.kind_ = ComponentKind::Table;
  c.values_ = std::move(values);
  c.support_ = std::move(support);
  return c;
}

bool SimpleComponent::has_shift() const {
  return std::any_of(shift_.begin(), shift_.end(), [](double z) { return z != 0.0; });
}

double SimpleComponent::eval_base_mask(std::uint32_t mask) const {
  switch (kind_) {
    case ComponentKind::EdgeCut:
    case ComponentKind::GraphCut: {
      double total = 0.0;
      for (const Edge& e : edges_) {
        int pu = static_cast<int>(std::lower_bound(support_.begin(), support_.end(), e.u) -
                                  support_.begin());
        int pv = static_cast<int>(std::lower_bound(support_.begin(), support_.end(), e.v) -
                                  support_.begin());
        bool iu = (mask >> pu) & 1u;
        bool iv = (mask >> pv) & 1u;
        if (iu != iv) total += e.weight;
      }
      return total;
    }
    case ComponentKind::ConcaveCardinality:
      return values_[static_cast<size_t>(std::popcount(mask))];
    case ComponentKind::Modular: {
      double total = 0.0;
      for (size_t i = 0; i < support_.size(); ++i)
        if ((mask >> i) & 1u) total += values_[i];
      return total;
    }
    case ComponentKind::Table:
      return values_[mask];
  }
  return 0.0;
}

double SimpleComponent::eval_support_mask(std::uint32_t mask) const {
  double v = eval_base_mask(mask);
  if (!shift_.empty()) {
    for (size_t i = 0; i < support_.size(); ++i)
      if ((mask >> i) & 1u) v -= shift_[i];
  }
  return v;
}

double SimpleComponent::eval(const std::vector<char>& in) const {
  std::uint32_t mask = 0;
  for (size_t i = 0; i < support_.size(); ++i) {
    int e = support_[i];
    if (static_cast<size_t>(e) < in.size() && in[static_cast<size_t>(e)])
      mask |= (1u << i);
  }
  return eval_support_mask(mask);
}

double SimpleComponent::eval(const Subset& a) const {
  int n = std::max(max_element(), a.empty() ? -1 : a.back()) + 1;
  return eval(to_indicator(a, std::max(n, 1)));
}

SimpleComponent SimpleComponent::shifted(const Vec& z) const {
  SimpleComponent c = *this;
  if (c.shift_.empty()) c.shift_.assign(support_.size(), 0.0);
  for (size_t i = 0; i < support_.size(); ++i) {
    int e = support_[i];
    if (e < z.size()) c.shift_[i] += z[e];
  }
  return c;
}

DecomposableProblem::DecomposableProblem(GroundSet g, std::vector<SimpleComponent> comps)
    : ground(g), components(std::move(comps)) {
  if (components.empty()) throw std::invalid_argument("problem needs at least one component");
  for (const SimpleComponent& c : components)
    if (c.max_element() >= ground.n)
      throw std::invalid_argument("component support exceeds ground set");
}

double DecomposableProblem::eval(const std::vector<char>& in) const {
  double total = 0.0;
  for (const SimpleComponent& c : components) total += c.eval(in);
  return total;
}

double DecomposableProblem::eval(const Subset& a) const { return eval(to_indicator(a, n())); }

SubmodularCheck check_submodular(const SimpleComponent& c) {
  int q = c.support_size();
  if (q > kExhaustivePairLimit)
    throw capability_error("support too large for exhaustive submodularity check");
  // F(A+i) + F(A+j) >= F(A+i+j) + F(A) for all A and i,j outside A is
  // equivalent to submodularity on the support lattice.
  std::uint32_t full = (q >= 32) ? ~0u : ((1u << q) - 1u);
  for (std::uint32_t a = 0; a <= full; ++a) {
    double fa = c.eval_support_mask(a);
    for (int i = 0; i < q; ++i) {
      if ((a >> i) & 1u) continue;
      std::uint32_t ai = a | (1u << i);
      double fai = c.eval_support_mask(ai);
      for (int j = i + 1; j < q; ++j) {
        if ((a >> j) & 1u) continue;
        std::uint32_t aj = a | (1u << j);
        double faj = c.eval_support_mask(aj);
        double fab = c.eval_support_mask(ai | (1u << j));
        if (fai + faj < fab + fa - 1e-9) return SubmodularCheck{false, ai, aj};
      }
    }
    if (a == full) break;
  }
  return SubmodularCheck{true, 0, 0};
}

Vec greedy_base_vertex(const SimpleComponent& c, const Vec& x) {
  if (!x.allFinite()) throw std::invalid_argument("greedy_base_vertex requires finite x");
  int q = c.support_size();
  std::vector<int> order(static_cast<size_t>(q));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return x[c.support()[static_cast<size_t>(a)]] > x[c.support()[static_cast<size_t>(b)]];
  });
  Vec s = Vec::Zero(x.size());
  std::uint32_t mask = 0;
  double prev = 0.0;
  for (int pos : order) {
    mask |= (1u << pos);
    double cur = c.eval_support_mask(mask);
    s[c.support()[static_cast<size_t>(pos)]] = cur - prev;
    prev = cur;
  }
  return s;
}

double lovasz(const SimpleComponent& c, const Vec& x) {
  return greedy_base_vertex(c, x).dot(x);
}

double lovasz(const DecomposableProblem& p, const Vec& x) {
  double total = 0.0;
  for (const SimpleComponent& c : p.components) total += lovasz(c, x);
  return total;
}

namespace {

// smaller cardinality first, then lexicographic on the sorted element lists
bool subset_tie_better(std::uint32_t cand, std::uint32_t best) {
  int cc = std::popcount(cand), cb = std::popcount(best);
  if (cc != cb) return cc < cb;
  while (cand && best) {
    int ec = std::countr_zero(cand), eb = std::countr_zero(best);
    if (ec != eb) return ec < eb;
    cand &= cand - 1;
    best &= best - 1;
  }
  return false;
}

}  // namespace

BruteForceResult brute_force_min(const DecomposableProblem& p) {
  int n = p.n();
  if (n > kExhaustiveSubsetLimit)
    throw capability_error("ground set too large for brute-force minimization");
  std::vector<char> in(static_cast<size_t>(n), 0);
  std::uint32_t best_mask = 0;
  double best = p.eval(in);  // empty set, value 0 by normalization
  for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
    for (int i = 0; i < n; ++i) in[static_cast<size_t>(i)] = (mask >> i) & 1u;
    double v = p.eval(in);
    if (v < best || (v == best && subset_tie_better(mask, best_mask))) {
      best = v;
      best_mask = mask;
    }
  }
  Subset a;
  for (int i = 0; i < n; ++i)
    if ((best_mask >> i) & 1u) a.push_back(i);
  return BruteForceResult{std::move(a), best};
}

double brute_force_fmax(const DecomposableProblem& p) {
  int n = p.n();
  if (n > kExhaustiveSubsetLimit)
    throw capability_error("ground set too large for brute-force F_max");
  std::vector<char> in(static_cast<size_t>(n), 0);
  double fmax = 0.0;
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    for (int i = 0; i < n; ++i) in[static_cast<size_t>(i)] = (mask >> i) & 1u;
    fmax = std::max(fmax, std::abs(p.eval(in)));
  }
  return fmax;
}

}  // namespace sfmap
