#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include "permachk/common.hpp"

namespace permachk {

/// Gauss-Legendre nodes and weights on [0, 1].
struct GaussLegendreRule {
  std::vector<double> nodes;
  std::vector<double> weights;

  explicit GaussLegendreRule(std::size_t n) : nodes(n), weights(n) {
    // Newton iteration on P_n, nodes on [-1,1], then map to [0,1].
    for (std::size_t i = 0; i < n; ++i) {
      double x = std::cos(M_PI * (static_cast<double>(i) + 0.75) /
                          (static_cast<double>(n) + 0.5));
      double dp = 0.0;
      for (int it = 0; it < 100; ++it) {
        double p0 = 1.0, p1 = x;
        for (std::size_t k = 2; k <= n; ++k) {
          double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
          p0 = p1;
          p1 = pk;
        }
        dp = n * (x * p1 - p0) / (x * x - 1.0);
        double dx = p1 / dp;
        x -= dx;
        if (std::abs(dx) < 1e-15) break;
      }
      nodes[i] = 0.5 * (1.0 - x);  // descending roots -> ascending nodes
      weights[i] = 1.0 / ((1.0 - x * x) * dp * dp);
    }
  }

  template <class F>
  double integrate(F&& f) const {
    double s = 0.0;
    for (std::size_t i = 0; i < nodes.size(); ++i) s += weights[i] * f(nodes[i]);
    return s;
  }
};

inline const GaussLegendreRule& gl32() {
  static const GaussLegendreRule rule(32);
  return rule;
}

inline const GaussLegendreRule& gl64() {
  static const GaussLegendreRule rule(64);
  return rule;
}

/// ∫₀¹ (1-t) h(t) dt by the 32-node rule, with a node-doubling error estimate.
template <class H>
double weighted_unit_integral(H&& h, double* err_estimate = nullptr) {
  auto f = [&](double t) { return (1.0 - t) * h(t); };
  const double v32 = gl32().integrate(f);
  if (err_estimate) {
    const double v64 = gl64().integrate(f);
    *err_estimate = std::abs(v64 - v32);
  }
  return v32;
}

}  // namespace permachk
