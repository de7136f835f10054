#pragma once

#include <cmath>
#include <vector>

namespace mgraphon::test {

// n-point Gauss-Legendre nodes and weights on [0, 1].
inline void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights) {
  constexpr double kPi = 3.14159265358979323846;
  nodes.assign(n, 0.0);
  weights.assign(n, 0.0);
  for (int i = 0; i < n; ++i) {
    double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    nodes[i] = 0.5 * (1.0 - x);
    weights[i] = 1.0 / ((1.0 - x * x) * dp * dp);
  }
}

// E exp(-y Z1 Z2), Z iid Exp(1), with x = -ln(1 - u) on both axes:
// integrand exp(-y ln(1-u) ln(1-v)) over the unit square. With `loops`, the
// no-loop factors exp(-y Z1^2 / 2 - y Z2^2 / 2) are included as well.
inline double exp_product_quadrature(double y, bool loops, int n = 256) {
  std::vector<double> t, w;
  gauss_legendre(n, t, w);
  double sum = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const double a = -std::log1p(-t[i]), b = -std::log1p(-t[j]);
      double e = -y * a * b;
      if (loops) e -= y * (a * a + b * b) / 2.0;
      sum += w[i] * w[j] * std::exp(e);
    }
  return sum;
}

}  // namespace mgraphon::test
