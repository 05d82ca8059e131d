#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstddef>
#include <limits>
#include <string>
#include <thread>
#include <vector>

#include "permachk/checker.hpp"
#include "permachk/common.hpp"
#include "permachk/model.hpp"

namespace permachk {

inline constexpr double kExtinctionThreshold = 1e-6;

struct SweepPoint {
  double x0 = 0.0, y0 = 0.0;
  double tail_min = 0.0;  // min over the tail of min(x, y)
  double tail_max = 0.0;  // max over the tail of max(x, y)
  bool divergent = false;
};

struct SweepResult {
  std::size_t nx = 0, ny = 0;
  double x_lo = 0, x_hi = 0, y_lo = 0, y_hi = 0;
  std::size_t horizon = 0, burn_in = 0;
  std::vector<SweepPoint> points;  // row-major over (x, y) grid
  double b_hat = 0.0;              // min over grid of tail minima
  double B_hat = 0.0;              // max over grid of tail maxima
  bool persistent = false;
  bool any_divergent = false;
};

namespace detail {

inline SweepPoint sweep_one(const GrowthModel& m, double x0, double y0, std::size_t horizon,
                            std::size_t burn_in) {
  SweepPoint p;
  p.x0 = x0;
  p.y0 = y0;
  double x = x0, y = y0;
  double tmin = std::numeric_limits<double>::infinity();
  double tmax = -std::numeric_limits<double>::infinity();
  for (std::size_t t = 0; t < horizon; ++t) {
    const double xn = (x == 0.0) ? 0.0 : x * m.f(x, y);
    const double yn = (y == 0.0) ? 0.0 : y * m.g(x, y);
    if (!std::isfinite(xn) || !std::isfinite(yn)) {
      p.divergent = true;
      return p;
    }
    x = xn;
    y = yn;
    if (t >= burn_in) {
      tmin = std::min(tmin, std::min(x, y));
      tmax = std::max(tmax, std::max(x, y));
    }
  }
  p.tail_min = tmin;
  p.tail_max = tmax;
  return p;
}

inline unsigned resolve_jobs(unsigned jobs) {
  if (jobs > 0) return jobs;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? hw : 1;
}

}  // namespace detail

inline SweepResult empirical_verify(const GrowthModel& m, std::size_t nx, std::size_t ny,
                                    double x_lo, double x_hi, double y_lo, double y_hi,
                                    std::size_t horizon = kDefaultHorizon,
                                    std::size_t burn_in = kDefaultBurnIn,
                                    unsigned jobs = 0) {
  if (!(x_lo > 0.0) || !(y_lo > 0.0))
    throw InvalidParameter("verification grid must be strictly interior");
  if (horizon <= burn_in) throw InvalidParameter("horizon must exceed burn_in");
  SweepResult r;
  r.nx = nx;
  r.ny = ny;
  r.x_lo = x_lo;
  r.x_hi = x_hi;
  r.y_lo = y_lo;
  r.y_hi = y_hi;
  r.horizon = horizon;
  r.burn_in = burn_in;
  const std::vector<double> xs = geomspace(x_lo, x_hi, nx);
  const std::vector<double> ys = geomspace(y_lo, y_hi, ny);
  r.points.resize(nx * ny);

  const unsigned nworkers = std::min<std::size_t>(detail::resolve_jobs(jobs), r.points.size());
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < r.points.size();)
      r.points[i] = detail::sweep_one(m, xs[i / ny], ys[i % ny], horizon, burn_in);
  };
  if (nworkers <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < nworkers; ++w) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }

  double bmin = std::numeric_limits<double>::infinity();
  double bmax = -std::numeric_limits<double>::infinity();
  for (const auto& p : r.points) {
    if (p.divergent) {
      r.any_divergent = true;
      continue;
    }
    bmin = std::min(bmin, p.tail_min);
    bmax = std::max(bmax, p.tail_max);
  }
  r.b_hat = std::isfinite(bmin) ? bmin : 0.0;
  r.B_hat = std::isfinite(bmax) ? bmax : 0.0;
  r.persistent = !r.any_divergent && r.b_hat > kExtinctionThreshold;
  return r;
}

/// Standard acceptance sweep: 20x20 log-spaced interior grid on [1e-3, 3]^2.
inline SweepResult empirical_verify_standard(const GrowthModel& m,
                                             std::size_t horizon = kDefaultHorizon,
                                             std::size_t burn_in = kDefaultBurnIn,
                                             unsigned jobs = 0) {
  return empirical_verify(m, 20, 20, 1e-3, 3.0, 1e-3, 3.0, horizon, burn_in, jobs);
}

enum class Consistency { Consistent, Contradiction };

struct ConsistencyReport {
  Consistency status = Consistency::Consistent;
  std::string note;
};

inline ConsistencyReport cross_validate(const PermanenceVerdict& verdict,
                                        const SweepResult& sweep) {
  ConsistencyReport r;
  if (verdict.permanent && !sweep.persistent) {
    r.status = Consistency::Contradiction;
    r.note = "checker certified permanence but the interior sweep found b_hat = " +
             std::to_string(sweep.b_hat) +
             (sweep.any_divergent ? " with divergent orbits" : "");
  } else if (!verdict.permanent && sweep.persistent) {
    r.note = "sweep persistent but permanence not established analytically; "
             "the criteria are sufficient, not necessary";
  } else {
    r.note = "verdict and sweep agree";
  }
  return r;
}

}  // namespace permachk
