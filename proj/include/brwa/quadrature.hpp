#pragma once

#include <functional>
#include <vector>

namespace brwa {

struct QuadratureRule {
  std::vector<double> nodes;    // on [-1, 1], ascending
  std::vector<double> weights;
};

/// n-point Gauss-Legendre rule (n >= 1), nodes by Newton iteration on P_n.
[[nodiscard]] QuadratureRule gauss_legendre(int n);

/// Composite rule: [lo, hi] split into `panels` equal panels, each
/// integrated with `rule`.
[[nodiscard]] double integrate(const std::function<double(double)>& f, double lo, double hi,
                               int panels, const QuadratureRule& rule);

}  // namespace brwa
