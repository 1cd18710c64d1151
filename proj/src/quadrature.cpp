#include "brwa/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace brwa {

QuadratureRule gauss_legendre(int n) {
  if (n < 1) throw std::invalid_argument("Gauss-Legendre rule needs n >= 1");
  QuadratureRule rule;
  rule.nodes.assign(n, 0.0);
  rule.weights.assign(n, 0.0);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      // P_n(x) and P_n'(x) by the three-term recurrence
      double p0 = 1.0;
      double p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      const double pn = n == 1 ? x : p1;
      const double pm = n == 1 ? 1.0 : p0;
      dp = n * (x * pn - pm) / (x * x - 1.0);
      const double step = pn / dp;
      x -= step;
      if (std::abs(step) < 1e-16) break;
    }
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[i] = -x;
    rule.nodes[n - 1 - i] = x;
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
  return rule;
}

double integrate(const std::function<double(double)>& f, double lo, double hi, int panels,
                 const QuadratureRule& rule) {
  if (panels < 1) throw std::invalid_argument("composite quadrature needs at least one panel");
  const double width = (hi - lo) / panels;
  double total = 0.0;
  for (int p = 0; p < panels; ++p) {
    const double centre = lo + (p + 0.5) * width;
    double panel = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
      panel += rule.weights[i] * f(centre + 0.5 * width * rule.nodes[i]);
    }
    total += 0.5 * width * panel;
  }
  return total;
}

}  // namespace brwa
