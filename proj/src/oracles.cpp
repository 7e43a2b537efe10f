#include "sfmap/oracles.hpp"

#include <cmath>
#include <random>

namespace sfmap {

FwResult fw_project(const SimpleComponent& c, const Vec& z, int iters) {
  if (iters < 1) throw std::invalid_argument("fw_project needs iters >= 1");
  if (!z.allFinite()) throw std::invalid_argument("fw_project: non-finite input");
  int n = static_cast<int>(z.size());

  // Away-step Frank-Wolfe over an explicit active vertex set; plain FW
  // zigzags sublinearly when the projection sits on a face. Greedy vertices
  // are exact per support ordering, so duplicates compare equal bitwise.
  std::vector<Vec> vertices = {greedy_base_vertex(c, Vec::Zero(n))};
  std::vector<double> alpha = {1.0};
  Vec s = vertices[0];
  double gap = std::numeric_limits<double>::infinity();
  int used = 0;

  for (int k = 0; k < iters; ++k) {
    Vec grad = s - z;
    Vec q = greedy_base_vertex(c, -grad);  // minimizes grad . v
    gap = grad.dot(s - q);
    used = k + 1;
    if (gap <= 1e-14) break;

    // away vertex: active vertex maximizing grad . v
    size_t away = 0;
    double away_score = -std::numeric_limits<double>::infinity();
    for (size_t i = 0; i < vertices.size(); ++i) {
      double sc = grad.dot(vertices[i]);
      if (sc > away_score) {
        away_score = sc;
        away = i;
      }
    }

    Vec d_fw = q - s;
    Vec d_aw = s - vertices[away];
    bool take_fw = -grad.dot(d_fw) >= -grad.dot(d_aw);
    Vec d = take_fw ? d_fw : d_aw;
    double gamma_max =
        take_fw ? 1.0 : alpha[away] / std::max(1.0 - alpha[away], 1e-300);
    double denom = d.squaredNorm();
    if (denom <= 0) break;
    double gamma = std::clamp(-grad.dot(d) / denom, 0.0, gamma_max);
    if (gamma <= 0.0) break;

    if (take_fw) {
      for (double& a : alpha) a *= (1.0 - gamma);
      size_t hit = vertices.size();
      for (size_t i = 0; i < vertices.size(); ++i)
        if ((vertices[i].array() == q.array()).all()) {
          hit = i;
          break;
        }
      if (hit == vertices.size()) {
        vertices.push_back(q);
        alpha.push_back(gamma);
      } else {
        alpha[hit] += gamma;
      }
    } else {
      for (double& a : alpha) a *= (1.0 + gamma);
      alpha[away] -= gamma;
    }

    // drop spent vertices and resynthesize s from the convex combination
    for (size_t i = vertices.size(); i-- > 0;) {
      if (alpha[i] <= 1e-16) {
        vertices.erase(vertices.begin() + static_cast<std::ptrdiff_t>(i));
        alpha.erase(alpha.begin() + static_cast<std::ptrdiff_t>(i));
      }
    }
    double total = 0.0;
    for (double a : alpha) total += a;
    s.setZero();
    for (size_t i = 0; i < vertices.size(); ++i) s += (alpha[i] / total) * vertices[i];
  }
  return FwResult{std::move(s), std::max(gap, 0.0), used};
}

BaseMembership check_in_base(const SimpleComponent& c, const Vec& s, double tol) {
  int q = c.support_size();
  if (q > kExhaustivePairLimit)
    throw capability_error("support too large for exhaustive base membership");
  BaseMembership out;
  // off-support coordinates of base vectors are identically zero
  for (int e = 0; e < s.size(); ++e) {
    if (std::binary_search(c.support().begin(), c.support().end(), static_cast<int>(e))) continue;
    if (std::abs(s[e]) > tol) {
      out.ok = false;
      out.worst_violation = std::max(out.worst_violation, std::abs(s[e]));
    }
  }
  std::uint32_t full = (1u << q) - 1u;
  for (std::uint32_t mask = 0; mask <= full; ++mask) {
    double sa = 0.0;
    for (int i = 0; i < q; ++i)
      if ((mask >> i) & 1u) sa += s[c.support()[static_cast<size_t>(i)]];
    double slack = sa - c.eval_support_mask(mask);
    if (mask == full) slack = std::abs(slack);  // equality on the full support
    if (slack > out.worst_violation) {
      out.worst_violation = slack;
      out.worst_set = mask;
    }
    if (slack > tol) out.ok = false;
    if (mask == full) break;
  }
  return out;
}

double variational_check(const SimpleComponent& c, const Vec& z, const Vec& s, int trials,
                         unsigned seed) {
  std::mt19937 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  int n = static_cast<int>(z.size());
  double worst = -std::numeric_limits<double>::infinity();
  auto probe = [&](const Vec& x) {
    Vec vertex = greedy_base_vertex(c, x);
    // variational inequality (z - s) . (v - s) <= 0 for all v in B, plus the
    // support-function test s . x <= f(x) that catches s outside B even when
    // s == z makes the first term vanish identically
    worst = std::max(worst, (z - s).dot(vertex - s));
    worst = std::max(worst, s.dot(x) - vertex.dot(x));
  };
  // deterministic +-1 on the support to pin the s(V) = F(V) equality
  Vec ones = Vec::Zero(n);
  for (int e : c.support())
    if (e < n) ones[e] = 1.0;
  double nrm = std::max(ones.norm(), 1.0);
  probe(ones / nrm);
  probe(-ones / nrm);
  Vec x(n);
  for (int t = 0; t < trials; ++t) {
    for (int i = 0; i < n; ++i) x[i] = gauss(rng);
    x /= x.norm();
    probe(x);
  }
  return worst;
}

}  // namespace sfmap
