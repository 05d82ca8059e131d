#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <vector>

#include "permachk/common.hpp"
#include "permachk/model.hpp"

namespace permachk {

/// A finite trajectory of the map x' = x f(x,y), y' = y g(x,y).
struct Orbit {
  double x0 = 0.0, y0 = 0.0;
  std::size_t horizon = 0;
  std::vector<double> x, y;  // length horizon + 1
};

inline Orbit iterate(const GrowthModel& m, double x0, double y0, std::size_t n) {
  if (x0 < 0.0 || y0 < 0.0) throw InvalidParameter("initial condition must be nonnegative");
  if (n < 1) throw InvalidParameter("horizon must be >= 1");
  Orbit o;
  o.x0 = x0;
  o.y0 = y0;
  o.horizon = n;
  o.x.resize(n + 1);
  o.y.resize(n + 1);
  o.x[0] = x0;
  o.y[0] = y0;
  double x = x0, y = y0;
  for (std::size_t t = 0; t < n; ++t) {
    // x == 0 stays exactly 0: the axes are invariant by construction.
    const double xn = (x == 0.0) ? 0.0 : x * m.f(x, y);
    const double yn = (y == 0.0) ? 0.0 : y * m.g(x, y);
    if (!std::isfinite(xn) || !std::isfinite(yn)) throw OrbitOverflow(t + 1);
    x = xn;
    y = yn;
    o.x[t + 1] = x;
    o.y[t + 1] = y;
  }
  return o;
}

/// The four running means of Eqs. (3)-(4) restricted to one axis: the
/// resident's own log rate and the absent invader's log rate along the orbit.
struct AxisRates {
  Axis axis{};
  std::size_t horizon = 0;
  std::vector<double> resident_orbit;  // u_0 .. u_n
  std::vector<double> resident_rate;   // running mean of resident log rate, index n-1 -> r_n
  std::vector<double> invader_rate;    // running mean of invader log rate
  bool invader_rate_defined = true;    // false if g hit 0 along the orbit (G = -inf)
};

inline AxisRates average_rates(const GrowthModel& m, Axis axis, double ic, std::size_t n) {
  if (!(ic > 0.0)) throw InvalidParameter("axis initial condition must be > 0");
  AxisRates r;
  r.axis = axis;
  r.horizon = n;
  r.resident_orbit.resize(n + 1);
  r.resident_rate.resize(n);
  r.invader_rate.resize(n);
  double u = ic;
  double sum_res = 0.0, sum_inv = 0.0;
  r.resident_orbit[0] = u;
  for (std::size_t i = 0; i < n; ++i) {
    const double res = m.resident_log_rate(axis, u);
    const double inv = m.invader_log_rate(axis, u);
    if (!std::isfinite(inv)) r.invader_rate_defined = false;
    sum_res += res;
    sum_inv += inv;
    r.resident_rate[i] = sum_res / static_cast<double>(i + 1);
    r.invader_rate[i] = sum_inv / static_cast<double>(i + 1);
    u = (u == 0.0) ? 0.0 : u * std::exp(res);
    if (!std::isfinite(u)) throw OrbitOverflow(i + 1);
    r.resident_orbit[i + 1] = u;
  }
  return r;
}

/// Finite surrogate for lim sup of a running-average sequence: the largest
/// window mean over the post-burn-in tail of the underlying terms.
struct TailStatistic {
  std::size_t burn_in = 0;
  std::size_t window = 0;
  double value = 0.0;
  bool converged = false;  // window means in the tail agree within 1e-3
};

/// `terms` are the per-step values (not running means); we slide a window over
/// the tail and take the max of window means.
inline TailStatistic tail_limsup(const std::vector<double>& terms, std::size_t burn_in,
                                 std::size_t window) {
  if (window == 0) throw InvalidParameter("window must be >= 1");
  if (terms.size() < burn_in + window)
    throw InvalidParameter("sequence shorter than burn_in + window");
  TailStatistic s;
  s.burn_in = burn_in;
  s.window = window;
  // Prefix sums for O(1) window means.
  std::vector<double> ps(terms.size() + 1, 0.0);
  for (std::size_t i = 0; i < terms.size(); ++i) ps[i + 1] = ps[i] + terms[i];
  double best = -std::numeric_limits<double>::infinity();
  double worst = std::numeric_limits<double>::infinity();
  for (std::size_t i = burn_in; i + window <= terms.size(); ++i) {
    const double mean = (ps[i + window] - ps[i]) / static_cast<double>(window);
    best = std::max(best, mean);
    worst = std::min(worst, mean);
  }
  s.value = best;
  s.converged = (best - worst) < 1e-3;
  return s;
}

/// Dissipativity constants of the one-dimensional boundedness argument:
/// L_eps is the first sampled resident density beyond which the per-capita
/// factor stays below 1 - margin for every sampled cross density, and
/// L_m = L_eps * max f over [0, L_eps]^2 absorbs every orbit's tail.
struct DissipativityBound {
  Axis axis{};
  bool conclusive = false;
  double L_eps = 0.0;
  double L_m = 0.0;
  double a_hat = 0.0;  // empirical tail bound on the factor (< 1 when conclusive)
};

namespace detail {

// Factor of the species living on `axis` at own-density u, cross-density v.
inline double axis_factor(const GrowthModel& m, Axis a, double u, double v) {
  return a == Axis::X ? m.f(u, v) : m.g(v, u);
}

}  // namespace detail

inline DissipativityBound dissipativity_bound(const GrowthModel& m, Axis axis,
                                              double margin = 1e-3) {
  DissipativityBound b;
  b.axis = axis;
  const double u_cap = m.cap(axis);
  const double v_cap = axis == Axis::X ? m.y_cap : m.x_cap;

  std::vector<double> vs = geomspace(1e-6, v_cap, 200);
  vs.insert(vs.begin(), 0.0);
  auto sup_factor = [&](double u) {
    double s = 0.0;
    for (double v : vs) s = std::max(s, detail::axis_factor(m, axis, u, v));
    return s;
  };

  // Find the smallest sampled u beyond which the sup stays below 1 - margin.
  const std::vector<double> us = geomspace(1e-6, u_cap, 400);
  std::optional<double> L_eps;
  double tail_sup = 0.0;
  for (std::size_t i = us.size(); i-- > 0;) {
    const double s = sup_factor(us[i]);
    tail_sup = std::max(tail_sup, s);
    if (tail_sup < 1.0 - margin)
      L_eps = us[i];
    else
      break;
  }
  if (!L_eps) return b;  // inconclusive up to the cap

  b.conclusive = true;
  b.L_eps = *L_eps;
  b.a_hat = tail_sup;

  // Max of the factor over the sampled square [0, L_eps]^2, inflated slightly
  // to absorb grid resolution.
  double fmax = 0.0;
  std::vector<double> grid = geomspace(std::min(1e-6, b.L_eps), b.L_eps, 200);
  grid.insert(grid.begin(), 0.0);
  for (double u : grid)
    for (double v : grid) fmax = std::max(fmax, detail::axis_factor(m, axis, u, v));
  b.L_m = b.L_eps * fmax * 1.0001;
  return b;
}

/// Upper bound on boundary (single-species) orbit tails. The boundary map is
/// the scalar u <- u e^{rate(u)} with the other species absent, so its own
/// contraction threshold L (beyond which the factor is < 1) is what matters,
/// not the two-dimensional L_eps; once below L, one step reaches at most
/// max u e^{rate(u)}, so existence-condition scans never need to go further.
inline double axis_orbit_bound(const GrowthModel& m, Axis axis, const DissipativityBound& d) {
  const double cap = m.cap(axis);
  const double thresh = std::log(1.0 - 1e-3);
  const std::vector<double> us = geomspace(1e-6, cap, 800);
  std::optional<double> L;
  for (std::size_t i = us.size(); i-- > 0;) {
    if (m.resident_log_rate(axis, us[i]) < thresh)
      L = us[i];
    else
      break;
  }
  if (!L) return d.conclusive ? d.L_m : cap;
  double best = *L;
  for (double u : geomspace(1e-8, *L, 800))
    best = std::max(best, u * std::exp(m.resident_log_rate(axis, u)));
  return best * 1.0001;
}

}  // namespace permachk
