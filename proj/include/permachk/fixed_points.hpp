#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include "permachk/common.hpp"
#include "permachk/model.hpp"

namespace permachk {

/// A nontrivial fixed point of one boundary (single-species) map, i.e. a root
/// u* > 0 of the resident log rate, together with the data the permanence
/// conditions need there.
struct BoundaryFixedPoint {
  Axis axis{};
  double coord = 0.0;
  double residual = 0.0;        // |resident log rate at coord|
  double slope = 0.0;           // resident slope at coord
  double cross_rate = 0.0;      // invader log rate at coord
  bool unsaturated = false;     // invader factor >= 1 there
};

/// Bisection on a bracketing interval; assumes fa and fb have opposite signs.
template <class F>
double bisect(F&& f, double a, double b, double fa, double /*fb*/, double tol = 1e-12,
              int max_iter = 200) {
  for (int i = 0; i < max_iter && (b - a) > tol; ++i) {
    const double m = 0.5 * (a + b);
    const double fm = f(m);
    if (fm == 0.0) return m;
    if ((fa < 0) != (fm < 0)) {
      b = m;
    } else {
      a = m;
      fa = fm;
    }
  }
  return 0.5 * (a + b);
}

inline std::vector<BoundaryFixedPoint> find_boundary_fixed_points(const GrowthModel& m,
                                                                  Axis axis, double lo,
                                                                  double hi,
                                                                  std::size_t grid_n = 10000) {
  if (!(lo > 0.0) || !(hi > lo)) throw InvalidParameter("fixed-point interval must satisfy 0 < lo < hi");
  auto rate = [&](double u) { return m.resident_log_rate(axis, u); };
  std::vector<BoundaryFixedPoint> out;
  const std::vector<double> grid = geomspace(lo, hi, grid_n);
  double fprev = rate(grid[0]);
  for (std::size_t i = 1; i < grid.size(); ++i) {
    const double fcur = rate(grid[i]);
    const bool bracket = (fprev < 0) != (fcur < 0);
    const bool exact = (fprev == 0.0);
    if (bracket || exact) {
      const double root = exact ? grid[i - 1]
                                : bisect(rate, grid[i - 1], grid[i], fprev, fcur);
      BoundaryFixedPoint p;
      p.axis = axis;
      p.coord = root;
      p.residual = std::abs(rate(root));
      p.slope = m.resident_slope(axis, root);
      p.cross_rate = m.invader_log_rate(axis, root);
      p.unsaturated = p.cross_rate >= 0.0;
      out.push_back(p);
    }
    fprev = fcur;
  }
  return out;
}

}  // namespace permachk
