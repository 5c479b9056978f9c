#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "ovl/empirical.hpp"

namespace ovl {

/// Impurity functions on the 1-simplex. Only the misclassification impurity
/// 1 - max{a, b} is used for estimation.
enum class Impurity { misclassification };

inline double iota(Impurity imp, double a, double b) {
  if (a < 0.0 || b < 0.0 || std::abs(a + b - 1.0) > 1e-12)
    throw std::domain_error("impurity argument is not on the simplex");
  switch (imp) {
    case Impurity::misclassification:
      return 1.0 - std::max(a, b);
  }
  throw std::invalid_argument("unknown impurity");
}

/// Sum over segments of max(n1_k, n2_k). The goodness numerator before the
/// constant max(N_Y(1), N_Y(2)) is subtracted.
inline Count split_score(const LabeledDataset& ds, const SplitVector& sv) {
  Count s = 0;
  for (const auto& c : segment_counts(ds, sv)) s += std::max(c.n1, c.n2);
  return s;
}

/// Empirical goodness of split, evaluated literally as
/// I(R) - sum_k P(X in S_k) I(S_k), with I of an empty segment taken as 0.
inline double goodness_definitional(const LabeledDataset& ds, const SplitVector& sv,
                                    Impurity imp = Impurity::misclassification) {
  const auto n = static_cast<double>(ds.size());
  const auto node_impurity = [&](const SegmentCounts& c) {
    const Count total = c.n1 + c.n2;
    if (total == 0) return 0.0;
    const auto t = static_cast<double>(total);
    return iota(imp, static_cast<double>(c.n1) / t, static_cast<double>(c.n2) / t);
  };
  double g = node_impurity({ds.total1(), ds.total2()});
  for (const auto& c : segment_counts(ds, sv))
    g -= static_cast<double>(c.n1 + c.n2) / n * node_impurity(c);
  return g;
}

/// Closed form of the empirical goodness for the misclassification impurity:
/// (sum_k max_j n_jk - max_j N_Y(j)) / N, exact in integers up to the division.
inline double goodness_closed_form(const LabeledDataset& ds, const SplitVector& sv) {
  const Count numer = split_score(ds, sv) - std::max(ds.total1(), ds.total2());
  return static_cast<double>(numer) / static_cast<double>(ds.size());
}

}  // namespace ovl
