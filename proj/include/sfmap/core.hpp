#ifndef SFMAP_CORE_HPP
#define SFMAP_CORE_HPP

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace sfmap {

using Vec = Eigen::VectorXd;
// A subset of the ground set, as strictly increasing element indices.
using Subset = std::vector<int>;

// Thrown when an exhaustive operation is asked to run beyond its
// configured limit. The operation refuses instead of subsampling.
class capability_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Thrown when an iterative numeric routine fails to reach its tolerance.
class numeric_error : public std::runtime_error {
 public:
  numeric_error(const std::string& what, double residual_,
                std::vector<double> best_iterate_ = {})
      : std::runtime_error(what), residual(residual_), best_iterate(std::move(best_iterate_)) {}
  double residual = 0.0;
  std::vector<double> best_iterate;
};

inline constexpr int kExhaustivePairLimit = 15;   // 2^q pair checks
inline constexpr int kExhaustiveSubsetLimit = 20; // 2^N subset scans
inline constexpr int kWolfeSupportLimit = 64;

struct GroundSet {
  int n = 0;
  explicit GroundSet(int n_) : n(n_) {
    if (n < 1) throw std::invalid_argument("ground set must have n >= 1");
  }
};

enum class ComponentKind { EdgeCut, GraphCut, ConcaveCardinality, Modular, Table };

struct Edge {
  int u = 0, v = 0;
  double weight = 0.0;
};

std::vector<char> to_indicator(const Subset& a, int n);
Subset indicator_to_subset(const std::vector<char>& in);

// One submodular summand F_r with an evaluation oracle, an explicit
// support, and an optional modular shift (evaluates F_r(A) - z(A)).
class SimpleComponent {
 public:
  static SimpleComponent edge_cut(int u, int v, double weight);
  static SimpleComponent graph_cut(std::vector<Edge> edges);
  static SimpleComponent concave_cardinality(std::vector<double> values,
                                             std::vector<int> support);
  static SimpleComponent modular(std::vector<double> weights, std::vector<int> support);
  // `values` holds 2^q entries in binary-counter order over the sorted
  // support; the lowest support index is the least significant bit.
  static SimpleComponent table(std::vector<int> support, std::vector<double> values);

  ComponentKind kind() const { return kind_; }
  const std::vector<int>& support() const { return support_; }
  int support_size() const { return static_cast<int>(support_.size()); }
  int max_element() const { return support_.empty() ? -1 : support_.back(); }

  const std::vector<Edge>& edges() const { return edges_; }
  const std::vector<double>& cardinality_values() const { return values_; }
  const std::vector<double>& table_values() const { return values_; }
  const std::vector<double>& weights() const { return values_; }
  // Shift aligned with support order; empty when no shift was applied.
  const std::vector<double>& shift() const { return shift_; }
  bool has_shift() const;

  // Evaluate on an indicator over the ground set (length > max support index).
  double eval(const std::vector<char>& in) const;
  double eval(const Subset& a) const;
  // Evaluate on a bitmask over the *support positions* (bit i = support_[i]).
  double eval_support_mask(std::uint32_t mask) const;

  // Component evaluating to F(A) - z(A); z is a full-length vector.
  SimpleComponent shifted(const Vec& z) const;

 private:
  SimpleComponent() = default;
  double eval_base_mask(std::uint32_t mask) const;

  ComponentKind kind_ = ComponentKind::Modular;
  std::vector<int> support_;
  std::vector<Edge> edges_;        // EdgeCut / GraphCut
  std::vector<double> values_;     // marginals / table / weights, per kind
  std::vector<double> shift_;      // aligned with support_, may be empty
};

struct DecomposableProblem {
  GroundSet ground;
  std::vector<SimpleComponent> components;

  DecomposableProblem(GroundSet g, std::vector<SimpleComponent> comps);

  int n() const { return ground.n; }
  int r() const { return static_cast<int>(components.size()); }

  double eval(const std::vector<char>& in) const;
  double eval(const Subset& a) const;
};

struct SubmodularCheck {
  bool ok = true;
  // Violating pair as masks over support positions (valid when !ok).
  std::uint32_t set_a = 0, set_b = 0;
};

// Exhaustive submodularity check over the component's support using the
// local characterization F(A+i) + F(A+j) >= F(A+i+j) + F(A).
SubmodularCheck check_submodular(const SimpleComponent& c);

// Edmonds greedy: vertex of B(F_r) maximizing s^T x. Sorts the support by
// decreasing x, ties broken by ascending element index. Output is a
// full-length n vector, zero off the support.
Vec greedy_base_vertex(const SimpleComponent& c, const Vec& x);

double lovasz(const SimpleComponent& c, const Vec& x);
double lovasz(const DecomposableProblem& p, const Vec& x);

struct BruteForceResult {
  Subset minimizer;
  double value = 0.0;
};

// Exact minimum over all 2^N subsets; ties broken by smaller cardinality,
// then lexicographic order of the sorted element lists.
BruteForceResult brute_force_min(const DecomposableProblem& p);
double brute_force_fmax(const DecomposableProblem& p);

}  // namespace sfmap

#endif  // SFMAP_CORE_HPP
