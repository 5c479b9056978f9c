#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <stdexcept>
#include <variant>
#include <vector>

namespace ovl {

/// Class label of a sample. Only two classes are supported.
enum class Label : int { one = 1, two = 2 };

struct LabeledSample {
  double x;
  Label y;
};

/// Standard normal CDF, computed through the complementary error function.
inline double std_normal_cdf(double x) {
  return 0.5 * std::erfc(-x / std::numbers::sqrt2);
}

struct Gaussian {
  double mu = 0.0;
  double sigma = 1.0;

  Gaussian() = default;
  Gaussian(double mu_, double sigma_) : mu(mu_), sigma(sigma_) {
    if (!(sigma_ > 0.0) || !std::isfinite(mu_) || !std::isfinite(sigma_))
      throw std::invalid_argument("gaussian: sigma must be positive and finite");
  }

  double pdf(double x) const {
    const double z = (x - mu) / sigma;
    return std::exp(-0.5 * z * z) / (std::sqrt(2.0 * std::numbers::pi) * sigma);
  }
  double cdf(double x) const { return std_normal_cdf((x - mu) / sigma); }
};

/// Symmetric triangular density on [a, b] with its mode at the midpoint.
struct Triangular {
  double a = 0.0;
  double b = 1.0;

  Triangular() = default;
  Triangular(double a_, double b_) : a(a_), b(b_) {
    if (!(a_ < b_) || !std::isfinite(a_) || !std::isfinite(b_))
      throw std::invalid_argument("triangular: require finite a < b");
  }

  double pdf(double x) const {
    const double w = b - a;
    const double mid = 0.5 * (a + b);
    if (x < a || x > b) return 0.0;
    if (x <= mid) return 4.0 * (x - a) / (w * w);
    return 4.0 * (b - x) / (w * w);
  }
  double cdf(double x) const {
    const double w = b - a;
    if (x <= a) return 0.0;
    if (x >= b) return 1.0;
    if (x <= 0.5 * (a + b)) {
      const double t = (x - a) / w;
      return 2.0 * t * t;
    }
    const double t = (b - x) / w;
    return 1.0 - 2.0 * t * t;
  }
  /// Closed-form inverse of cdf for u in (0, 1).
  double quantile(double u) const {
    const double w = b - a;
    if (u < 0.5) return a + w * std::sqrt(0.5 * u);
    return b - w * std::sqrt(0.5 * (1.0 - u));
  }
};

using DistributionComponent = std::variant<Gaussian, Triangular>;

inline double pdf(const DistributionComponent& c, double x) {
  return std::visit([x](const auto& d) { return d.pdf(x); }, c);
}
inline double cdf(const DistributionComponent& c, double x) {
  return std::visit([x](const auto& d) { return d.cdf(x); }, c);
}

struct WeightedComponent {
  double weight;
  DistributionComponent component;
};

/// Finite mixture of Gaussian and triangular components. Weights sum to 1.
class ClassDensity {
 public:
  ClassDensity(std::vector<WeightedComponent> components)
      : components_(std::move(components)) {
    if (components_.empty())
      throw std::invalid_argument("class density needs at least one component");
    double total = 0.0;
    for (const auto& c : components_) {
      if (!(c.weight >= 0.0 && c.weight <= 1.0))
        throw std::invalid_argument("component weight outside [0, 1]");
      total += c.weight;
    }
    if (std::abs(total - 1.0) > 1e-12)
      throw std::invalid_argument("component weights must sum to 1");
  }
  ClassDensity(DistributionComponent single)
      : ClassDensity(std::vector<WeightedComponent>{{1.0, single}}) {}
  ClassDensity(Gaussian g) : ClassDensity(DistributionComponent(g)) {}
  ClassDensity(Triangular t) : ClassDensity(DistributionComponent(t)) {}

  double pdf(double x) const {
    double v = 0.0;
    for (const auto& c : components_) v += c.weight * ovl::pdf(c.component, x);
    return v;
  }
  double cdf(double x) const {
    double v = 0.0;
    for (const auto& c : components_) v += c.weight * ovl::cdf(c.component, x);
    return std::min(1.0, std::max(0.0, v));
  }

  const std::vector<WeightedComponent>& components() const { return components_; }

 private:
  std::vector<WeightedComponent> components_;
};

/// Joint distribution of (X, Y): Y = 1 with prior pi1, X | Y = j ~ class j.
class TwoClassMixture {
 public:
  TwoClassMixture(double pi1, ClassDensity class1, ClassDensity class2)
      : pi1_(pi1), class1_(std::move(class1)), class2_(std::move(class2)) {
    if (!(pi1 > 0.0 && pi1 < 1.0))
      throw std::invalid_argument("class priors must be strictly positive");
  }

  double pi1() const { return pi1_; }
  double pi2() const { return 1.0 - pi1_; }
  const ClassDensity& class1() const { return class1_; }
  const ClassDensity& class2() const { return class2_; }

  /// pi1 f1(x) - pi2 f2(x); its sign changes mark crossover points.
  double weighted_difference(double x) const {
    return pi1_ * class1_.pdf(x) - pi2() * class2_.pdf(x);
  }

 private:
  double pi1_;
  ClassDensity class1_;
  ClassDensity class2_;
};

// Random number generation
//
// Raw bits come from std::mt19937_64, whose output sequence is fixed by the
// C++ standard. Everything layered on top (uniform conversion, Box-Muller,
// triangular inverse CDF) is written out here rather than delegated to
// <random> distributions, whose algorithms are implementation-defined.
//
// Per draw, in order: one uniform picks the label, one uniform picks the
// mixture component, then a Gaussian consumes two uniforms (cosine branch of
// Box-Muller) and a triangular consumes one.

/// SplitMix64 finalizer, used to derive independent seeds.
constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

constexpr std::uint64_t hash_combine(std::uint64_t seed, std::uint64_t value) {
  return splitmix64(seed ^ splitmix64(value));
}

class SampleStream {
 public:
  explicit SampleStream(std::uint64_t seed) : engine_(splitmix64(seed)) {}

  /// Uniform on the open interval (0, 1) with 53 bits of resolution.
  double uniform() {
    return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
  }

  double draw(const DistributionComponent& c) {
    if (const auto* g = std::get_if<Gaussian>(&c)) {
      const double u1 = uniform();
      const double u2 = uniform();
      const double r = std::sqrt(-2.0 * std::log(u1));
      return g->mu + g->sigma * r * std::cos(2.0 * std::numbers::pi * u2);
    }
    return std::get<Triangular>(c).quantile(uniform());
  }

  double draw(const ClassDensity& d) {
    const auto& comps = d.components();
    const double u = uniform();
    double acc = 0.0;
    std::size_t pick = comps.size() - 1;
    for (std::size_t k = 0; k + 1 < comps.size(); ++k) {
      acc += comps[k].weight;
      if (u < acc) {
        pick = k;
        break;
      }
    }
    return draw(comps[pick].component);
  }

  LabeledSample draw(const TwoClassMixture& m) {
    const bool first = uniform() < m.pi1();
    const double x = draw(first ? m.class1() : m.class2());
    return {x, first ? Label::one : Label::two};
  }

 private:
  std::mt19937_64 engine_;
};

/// Draws n_samples i.i.d. labeled samples. Equal seeds give identical output.
inline std::vector<LabeledSample> sample_labeled(const TwoClassMixture& m,
                                                 std::size_t n_samples,
                                                 std::uint64_t seed) {
  if (n_samples == 0) throw std::invalid_argument("n_samples must be >= 1");
  SampleStream stream(seed);
  std::vector<LabeledSample> out;
  out.reserve(n_samples);
  for (std::size_t i = 0; i < n_samples; ++i) out.push_back(stream.draw(m));
  return out;
}

}  // namespace ovl
