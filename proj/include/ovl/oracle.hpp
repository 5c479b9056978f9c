#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "ovl/sampling.hpp"

namespace ovl {

/// Ground truth for an analytic mixture: sign-change crossovers of
/// pi1 f1 - pi2 f2 (strictly increasing) and the overlap coefficient.
struct OracleResult {
  std::vector<double> crossovers;
  double rho_true = 0.0;
};

/// pi1 = 2/3, f1 = N(-1, 1); pi2 = 1/3, f2 = N(1, 1).
inline TwoClassMixture case1_mixture() {
  return {2.0 / 3.0, ClassDensity(Gaussian(-1.0, 1.0)), ClassDensity(Gaussian(1.0, 1.0))};
}

/// pi1 = pi2 = 1/2, f1 = 0.5 N(-1, 1) + 0.5 N(1, 1),
/// f2 = 0.8 N(0, 1) + 0.2 Tri(0, 0.5).
inline TwoClassMixture case2_mixture() {
  return {0.5,
          ClassDensity({{0.5, Gaussian(-1.0, 1.0)}, {0.5, Gaussian(1.0, 1.0)}}),
          ClassDensity({{0.8, Gaussian(0.0, 1.0)}, {0.2, Triangular(0.0, 0.5)}})};
}

inline std::vector<double> crossovers_case1() { return {std::numbers::ln2 / 2.0}; }

inline std::vector<double> crossovers_case2() {
  const double c = std::acosh(0.8 * std::sqrt(std::numbers::e));
  return {-c, c};
}

/// [2 - 2 Phi(c + 1) + Phi(c - 1)] / 3 at the case-1 crossover.
inline double rho_closed_form_case1() {
  const double c = crossovers_case1()[0];
  return (2.0 - 2.0 * std_normal_cdf(c + 1.0) + std_normal_cdf(c - 1.0)) / 3.0;
}

/// 0.8 - 0.5 Phi(c1 + 1) + 0.5 Phi(c2 + 1) - 0.8 Phi(c2) at the case-2 crossovers.
inline double rho_closed_form_case2() {
  const auto c = crossovers_case2();
  return 0.8 - 0.5 * std_normal_cdf(c[0] + 1.0) + 0.5 * std_normal_cdf(c[1] + 1.0) -
         0.8 * std_normal_cdf(c[1]);
}

inline constexpr double kBisectionTolerance = 1e-12;
inline constexpr std::size_t kDefaultCrossoverGrid = 2001;

/// Bisection on a bracket with g(lo) and g(hi) of strictly opposite sign.
template <class F>
double bisect(const F& g, double lo, double hi, double tol = kBisectionTolerance) {
  const bool lo_negative = g(lo) < 0.0;
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const double v = g(mid);
    if (v == 0.0) return mid;
    if ((v < 0.0) == lo_negative)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

/// Locates the sign changes of pi1 f1 - pi2 f2 on [lo, hi].
///
/// g is tabulated on grid_points uniformly spaced points and every bracket
/// with a strict sign change is refined by bisection. Touching points where g
/// vanishes without changing sign are not crossovers and are skipped. Roots
/// closer together than the grid spacing may be missed; choosing the grid is
/// the caller's responsibility.
inline std::vector<double> generic_crossovers(const TwoClassMixture& m, double lo, double hi,
                                              std::size_t grid_points = kDefaultCrossoverGrid) {
  if (!(lo < hi)) throw std::invalid_argument("crossover search needs lo < hi");
  if (grid_points < 2) throw std::invalid_argument("crossover search needs >= 2 grid points");
  const auto g = [&m](double x) { return m.weighted_difference(x); };

  std::vector<double> xs(grid_points), gs(grid_points);
  const double step = (hi - lo) / static_cast<double>(grid_points - 1);
  for (std::size_t i = 0; i < grid_points; ++i) {
    xs[i] = i + 1 == grid_points ? hi : lo + step * static_cast<double>(i);
    gs[i] = g(xs[i]);
  }

  std::vector<double> roots;
  for (std::size_t i = 0; i + 1 < grid_points; ++i) {
    if (gs[i] == 0.0) {
      if (i > 0 && gs[i - 1] * gs[i + 1] < 0.0) roots.push_back(xs[i]);
      continue;
    }
    if (gs[i] * gs[i + 1] < 0.0) roots.push_back(bisect(g, xs[i], xs[i + 1]));
  }
  return roots;
}

/// Overlap coefficient from the crossovers, summing per segment the smaller of
/// pi_j [F_j(c_k) - F_j(c_{k-1})]. The smaller class on a segment is decided
/// by the sign of pi1 f1 - pi2 f2 at an interior point.
inline double rho_true(const TwoClassMixture& m, const std::vector<double>& crossovers) {
  for (std::size_t k = 1; k < crossovers.size(); ++k)
    if (!(crossovers[k - 1] < crossovers[k]))
      throw std::invalid_argument("crossovers must be strictly increasing");

  constexpr double inf = std::numeric_limits<double>::infinity();
  const auto F = [&m](int j, double x) {
    if (x == -inf) return 0.0;
    if (x == inf) return 1.0;
    return j == 1 ? m.class1().cdf(x) : m.class2().cdf(x);
  };
  // Interior probe points; on unbounded sides step outward until g != 0.
  const auto sign_probe = [&m](double left, double right) {
    std::vector<double> probes;
    if (std::isfinite(left) && std::isfinite(right)) {
      probes.push_back(0.5 * (left + right));
    } else {
      const double anchor = std::isfinite(left) ? left : std::isfinite(right) ? right : 0.0;
      const double dir = std::isfinite(left) ? 1.0 : -1.0;
      if (!std::isfinite(left) && !std::isfinite(right)) probes.push_back(0.0);
      for (double d = 0.5; d <= 64.0; d *= 2.0) {
        probes.push_back(anchor + dir * d);
        if (!std::isfinite(left) && !std::isfinite(right)) probes.push_back(-d);
      }
    }
    for (double x : probes) {
      const double v = m.weighted_difference(x);
      if (v != 0.0) return v;
    }
    return 0.0;
  };

  double rho = 0.0;
  double left = -inf;
  for (std::size_t k = 0; k <= crossovers.size(); ++k) {
    const double right = k < crossovers.size() ? crossovers[k] : inf;
    const double mass1 = m.pi1() * (F(1, right) - F(1, left));
    const double mass2 = m.pi2() * (F(2, right) - F(2, left));
    const double sign = sign_probe(left, right);
    rho += sign < 0.0 ? mass1 : sign > 0.0 ? mass2 : std::min(mass1, mass2);
    left = right;
  }
  return rho;
}

inline OracleResult oracle_case1() {
  auto c = crossovers_case1();
  const double rho = rho_true(case1_mixture(), c);
  return {std::move(c), rho};
}

inline OracleResult oracle_case2() {
  auto c = crossovers_case2();
  const double rho = rho_true(case2_mixture(), c);
  return {std::move(c), rho};
}

}  // namespace ovl
