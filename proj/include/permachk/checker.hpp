#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <optional>
#include <string>
#include <vector>

#include "permachk/common.hpp"
#include "permachk/fixed_points.hpp"
#include "permachk/lyapunov.hpp"
#include "permachk/model.hpp"
#include "permachk/orbit.hpp"

namespace permachk {

inline constexpr double kStrictMargin = 1e-9;   // strict > certified only beyond this
inline constexpr double kScanSlack = 1e-12;     // slack allowed on >= 0 scans
inline constexpr double kTailMargin = 1e-3;     // gap below 1 for tail-limit scans

enum class CondVerdict { Holds, Fails, Inconclusive };

inline const char* cond_verdict_name(CondVerdict v) {
  switch (v) {
    case CondVerdict::Holds: return "holds";
    case CondVerdict::Fails: return "fails";
    case CondVerdict::Inconclusive: return "inconclusive";
  }
  return "?";
}

struct ConditionEntry {
  std::string id;
  CondVerdict verdict = CondVerdict::Inconclusive;
  double margin = 0.0;        // minimum margin for holds; violation size for fails
  std::string witness;        // grid description / counterexample point
  std::string note;
};

struct PermanenceVerdict {
  bool permanent = false;
  std::string basis;  // Theorem1 | Theorem2 | Corollary2 (route that certified)
  std::vector<ConditionEntry> entries;
  std::vector<std::string> notes;
};

namespace detail {

inline std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Condition H
// ---------------------------------------------------------------------------

inline ConditionEntry check_H(const GrowthModel& m) {
  ConditionEntry e;
  e.id = "H";
  const double f00 = m.f(0.0, 0.0);
  if (f00 <= 1.0 + kStrictMargin) {
    e.verdict = f00 <= 1.0 ? CondVerdict::Fails : CondVerdict::Inconclusive;
    e.margin = f00 - 1.0;
    e.witness = "f(0,0) = " + detail::fmt(f00) + " at (0,0)";
    return e;
  }
  // Positivity is judged in log space so that exp underflow at very negative
  // log rates does not masquerade as f = 0: a factor is nonpositive exactly
  // when its log rate is NaN or -inf.
  auto log_positive = [](double lr) {
    return !std::isnan(lr) && lr != -std::numeric_limits<double>::infinity();
  };
  std::vector<double> xs = geomspace(1e-6, m.x_cap, 60);
  std::vector<double> ys = geomspace(1e-6, m.y_cap, 60);
  xs.insert(xs.begin(), 0.0);
  ys.insert(ys.begin(), 0.0);
  for (double x : xs)
    for (double y : ys) {
      if (x == 0.0 && y == 0.0) continue;
      if (!log_positive(m.F(x, y)) || !log_positive(m.G(x, y))) {
        e.verdict = CondVerdict::Fails;
        e.witness = "nonpositive factor at (" + detail::fmt(x) + ", " + detail::fmt(y) + ")";
        return e;
      }
    }
  // Axis-limit continuity, also in log space: F(eps, y) vs F(0, y) and
  // G(x, eps) vs G(x, 0).
  for (double y : ys) {
    const double a = m.F(1e-8, y), b = m.F(0.0, y);
    if (std::abs(a - b) > 1e-4 * std::max(1.0, std::abs(b))) {
      e.verdict = CondVerdict::Fails;
      e.witness = "f discontinuous at x->0, y = " + detail::fmt(y);
      return e;
    }
  }
  for (double x : xs) {
    const double a = m.G(x, 1e-8), b = m.G(x, 0.0);
    if (!log_positive(b)) continue;  // g(x,0) = 0 handled by origin_class
    if (std::abs(a - b) > 1e-4 * std::max(1.0, std::abs(b))) {
      e.verdict = CondVerdict::Fails;
      e.witness = "g discontinuous at y->0, x = " + detail::fmt(x);
      return e;
    }
  }
  e.verdict = CondVerdict::Holds;
  e.margin = f00 - 1.0;
  e.witness = "f(0,0) = " + detail::fmt(f00) + "; factors positive on 61x61 grid";
  return e;
}

// ---------------------------------------------------------------------------
// Tail conditions G1 / P2
// ---------------------------------------------------------------------------

namespace detail {

// sup over the cross grid of the axis species' factor at own-density u.
inline double sup_cross_factor(const GrowthModel& m, Axis a, double u,
                               const std::vector<double>& cross) {
  double s = 0.0;
  for (double v : cross) s = std::max(s, axis_factor(m, a, u, v));
  return s;
}

inline std::vector<double> cross_grid(const GrowthModel& m, Axis a) {
  std::vector<double> g = geomspace(1e-6, a == Axis::X ? m.y_cap : m.x_cap, 200);
  g.insert(g.begin(), 0.0);
  return g;
}

// Largest sup of the axis factor over the top decade below the cap.
inline double tail_sup(const GrowthModel& m, Axis a, double* where) {
  const auto cross = cross_grid(m, a);
  const double cap = m.cap(a);
  double worst = 0.0;
  for (double u : geomspace(cap / 10.0, cap, 50)) {
    const double s = sup_cross_factor(m, a, u, cross);
    if (s > worst) {
      worst = s;
      if (where) *where = u;
    }
  }
  return worst;
}

}  // namespace detail

inline ConditionEntry check_G1(const GrowthModel& m) {
  ConditionEntry e;
  e.id = "G1";
  double ux = 0, uy = 0;
  const double a1 = detail::tail_sup(m, Axis::X, &ux);
  const double a2 = detail::tail_sup(m, Axis::Y, &uy);
  const double worst = std::max(a1, a2);
  e.margin = 1.0 - kTailMargin - worst;
  if (worst < 1.0 - kTailMargin) {
    e.verdict = CondVerdict::Holds;
    e.witness = "a1_hat = " + detail::fmt(a1) + ", a2_hat = " + detail::fmt(a2) +
                " over top decade below tail caps";
  } else {
    e.verdict = CondVerdict::Fails;
    e.witness = a1 >= a2 ? "sup_y f(" + detail::fmt(ux) + ", y) = " + detail::fmt(a1)
                         : "sup_x g(x, " + detail::fmt(uy) + ") = " + detail::fmt(a2);
  }
  return e;
}

/// P2: f tail as in G1 plus, for each fixed x in (0, L_m], the g tail in y
/// falls below 1.
inline ConditionEntry check_P2(const GrowthModel& m, double x_max) {
  ConditionEntry e;
  e.id = "P2";
  double ux = 0;
  const double a1 = detail::tail_sup(m, Axis::X, &ux);
  if (a1 >= 1.0 - kTailMargin) {
    e.verdict = CondVerdict::Fails;
    e.margin = 1.0 - kTailMargin - a1;
    e.witness = "sup_y f(" + detail::fmt(ux) + ", y) = " + detail::fmt(a1);
    return e;
  }
  double a2 = 0.0, wx = 0, wy = 0;
  for (double x : geomspace(1e-6, x_max, 50))
    for (double y : geomspace(m.y_cap / 10.0, m.y_cap, 50)) {
      const double gv = m.g(x, y);
      if (gv > a2) { a2 = gv; wx = x; wy = y; }
    }
  const double worst = std::max(a1, a2);
  e.margin = 1.0 - kTailMargin - worst;
  if (worst < 1.0 - kTailMargin) {
    e.verdict = CondVerdict::Holds;
    e.witness = "a1_hat = " + detail::fmt(a1) + ", a2_hat = " + detail::fmt(a2) +
                " for x in (0, " + detail::fmt(x_max) + "]";
  } else {
    e.verdict = CondVerdict::Fails;
    e.witness = "g(" + detail::fmt(wx) + ", " + detail::fmt(wy) + ") = " + detail::fmt(a2);
  }
  return e;
}

// ---------------------------------------------------------------------------
// Unsaturation G2 / P3
// ---------------------------------------------------------------------------

namespace detail {

inline ConditionEntry check_unsaturated(const std::string& id,
                                        const std::vector<BoundaryFixedPoint>& fps) {
  ConditionEntry e;
  e.id = id;
  double min_margin = std::numeric_limits<double>::infinity();
  const BoundaryFixedPoint* worst = nullptr;
  for (const auto& p : fps) {
    if (p.cross_rate < min_margin) {
      min_margin = p.cross_rate;
      worst = &p;
    }
  }
  if (!worst) {
    e.verdict = CondVerdict::Holds;
    e.margin = 0.0;
    e.witness = "no nontrivial boundary fixed points";
    return e;
  }
  e.margin = min_margin;
  if (min_margin > kStrictMargin) {
    e.verdict = CondVerdict::Holds;
    e.witness = "min invader log rate " + detail::fmt(min_margin) + " at " +
                axis_name(worst->axis) + "* = " + detail::fmt(worst->coord);
  } else if (min_margin < -kStrictMargin) {
    e.verdict = CondVerdict::Fails;
    e.witness = std::string("saturated fixed point on the ") + axis_name(worst->axis) +
                "-axis at " + detail::fmt(worst->coord) + " (invader log rate " +
                detail::fmt(min_margin) + ")";
  } else {
    e.verdict = CondVerdict::Inconclusive;
    e.witness = "invader log rate within roundoff of 0 at " + detail::fmt(worst->coord);
  }
  return e;
}

}  // namespace detail

inline ConditionEntry check_G2(const std::vector<BoundaryFixedPoint>& fps_x,
                               const std::vector<BoundaryFixedPoint>& fps_y) {
  std::vector<BoundaryFixedPoint> all = fps_x;
  all.insert(all.end(), fps_y.begin(), fps_y.end());
  return detail::check_unsaturated("G2", all);
}

inline ConditionEntry check_P3(const std::vector<BoundaryFixedPoint>& fps_x) {
  return detail::check_unsaturated("P3", fps_x);
}

// ---------------------------------------------------------------------------
// P1: monotonicity of g in x and positivity of g(0, y)
// ---------------------------------------------------------------------------

inline ConditionEntry check_P1(const GrowthModel& m) {
  ConditionEntry e;
  e.id = "P1";
  std::vector<double> ys = geomspace(1e-6, m.y_cap, 50);
  ys.insert(ys.begin(), 0.0);
  for (double y : ys) {
    const double lg = m.G(0.0, y);  // log space: underflowed-but-positive g passes
    if (std::isnan(lg) || lg == -std::numeric_limits<double>::infinity()) {
      e.verdict = CondVerdict::Fails;
      e.witness = "g(0, " + detail::fmt(y) + ") = 0";
      return e;
    }
  }
  double min_slope = std::numeric_limits<double>::infinity();
  double wx = 0, wy = 0;
  for (double x : geomspace(1e-4, m.x_cap, 50))
    for (double y : ys) {
      const double h = 1e-6 * std::max(x, 1.0);
      const double d = (m.G(x + h, y) - m.G(x - h, y)) / (2.0 * h);
      if (d < min_slope) { min_slope = d; wx = x; wy = y; }
    }
  e.margin = min_slope;
  if (min_slope > kStrictMargin) {
    e.verdict = CondVerdict::Holds;
    e.witness = "min dG/dx = " + detail::fmt(min_slope) + " over 50x51 grid";
  } else {
    e.verdict = CondVerdict::Fails;
    e.witness = "dG/dx = " + detail::fmt(min_slope) + " at (" + detail::fmt(wx) + ", " +
                detail::fmt(wy) + ")";
  }
  return e;
}

// ---------------------------------------------------------------------------
// Curvature conditions G3 / G4 / P4
// ---------------------------------------------------------------------------

enum class CondVariant { Point, Integral, Auto };

struct CurvatureCheck {
  ConditionEntry entry;
  bool used_integral = false;
  double chosen_point = 0.0;  // expansion point of the best candidate
  double base = 0.0;          // invader rate minus slope-ratio term there
};

namespace detail {

struct CandidateResult {
  bool pass = false;
  double margin = -std::numeric_limits<double>::infinity();
  double point = 0.0;
  double base = 0.0;
  double worst_u = 0.0;
};

// Pointwise variant at expansion point u*: base > 0 and r(u) >= 0 on the grid.
inline CandidateResult curvature_pointwise(const GrowthModel& m, Axis a, double u_star,
                                           double scan_max, bool need_base) {
  CandidateResult r;
  r.point = u_star;
  const double fs = m.resident_slope(a, u_star);
  if (fs == 0.0) return r;
  const double ratio = m.invader_slope(a, u_star) / fs;
  r.base = m.invader_log_rate(a, u_star) - ratio * m.resident_log_rate(a, u_star);
  if (need_base && !(r.base > kStrictMargin)) {
    r.margin = r.base;
    return r;
  }
  double min_r = std::numeric_limits<double>::infinity();
  for (double u : geomspace(1e-6, scan_max, 10000)) {
    const double v = remainder_integrand(m, a, u_star, u);
    if (v < min_r) { min_r = v; r.worst_u = u; }
  }
  r.margin = min_r;
  r.pass = min_r >= -kScanSlack;
  return r;
}

// Integral variant: base > 0 and, for every u_i on the dissipativity interval,
// base + (u_i - u*)^2 * per-term integral > 0 (the combined lower bound on the
// invasion speed).
inline CandidateResult curvature_integral(const GrowthModel& m, Axis a, double u_star,
                                          double scan_max, bool need_base, bool combined) {
  CandidateResult r;
  r.point = u_star;
  const double fs = m.resident_slope(a, u_star);
  if (fs == 0.0) return r;
  const double ratio = m.invader_slope(a, u_star) / fs;
  r.base = m.invader_log_rate(a, u_star) - ratio * m.resident_log_rate(a, u_star);
  if (need_base && !(r.base > kStrictMargin)) {
    r.margin = r.base;
    return r;
  }
  double min_v = std::numeric_limits<double>::infinity();
  for (double u : geomspace(1e-6, scan_max, 4000)) {
    const double d = u - u_star;
    const double integral = weighted_unit_integral(
        [&](double t) { return remainder_integrand(m, a, u_star, u_star + d * t); });
    const double v = combined ? r.base + d * d * integral : integral;
    if (v < min_v) { min_v = v; r.worst_u = u; }
  }
  r.margin = min_v;
  r.pass = combined ? min_v > kStrictMargin : min_v >= -kScanSlack;
  return r;
}

inline CurvatureCheck curvature_condition(const GrowthModel& m, Axis a, const std::string& id,
                                          const std::vector<double>& candidates,
                                          double scan_max, CondVariant variant,
                                          bool need_base, bool need_ratio_negative,
                                          bool combined_integral) {
  CurvatureCheck out;
  out.entry.id = id;
  CandidateResult best;
  bool best_integral = false;
  bool any_candidate = false;
  // Preference order: passing pointwise > passing integral > largest margin.
  auto consider = [&](const CandidateResult& r, bool integral) {
    const bool better =
        (r.pass && !best.pass) ||
        (r.pass && best.pass && best_integral && !integral) ||
        (r.pass == best.pass && integral == best_integral && r.margin > best.margin) ||
        (!best.pass && !r.pass && r.margin > best.margin);
    if (better || (!any_candidate)) {
      best = r;
      best_integral = integral;
    }
  };
  for (double u_star : candidates) {
    if (m.resident_slope(a, u_star) == 0.0) continue;
    if (need_ratio_negative &&
        !(m.invader_slope(a, u_star) / m.resident_slope(a, u_star) < 0.0))
      continue;
    if (variant != CondVariant::Integral) {
      consider(curvature_pointwise(m, a, u_star, scan_max, need_base), false);
      any_candidate = true;
      if (best.pass && !best_integral) continue;  // pointwise pass: skip the fallback
    }
    if (variant != CondVariant::Point) {
      consider(curvature_integral(m, a, u_star, scan_max, need_base, combined_integral),
               true);
      any_candidate = true;
    }
  }
  if (!any_candidate) {
    out.entry.verdict = CondVerdict::Inconclusive;
    out.entry.witness = "no expansion point with nonzero resident slope";
    out.entry.note = "degenerate-slope";
    return out;
  }
  out.entry.margin = best.margin;
  out.chosen_point = best.point;
  out.base = best.base;
  out.used_integral = best_integral;
  if (best.pass) {
    out.entry.verdict = CondVerdict::Holds;
    out.entry.witness = std::string(axis_name(a)) + "* = " + fmt(best.point) + ", base = " +
                        fmt(best.base) + ", min margin " + fmt(best.margin) + " on (0, " +
                        fmt(scan_max) + "]" + (best_integral ? " (integral variant)" : "");
  } else {
    out.entry.verdict = CondVerdict::Fails;
    out.entry.witness = "best candidate " + std::string(axis_name(a)) + "* = " +
                        fmt(best.point) + ": margin " + fmt(best.margin) + " at u = " +
                        fmt(best.worst_u);
  }
  return out;
}

}  // namespace detail

inline CurvatureCheck check_G3(const GrowthModel& m,
                               const std::vector<BoundaryFixedPoint>& fps_x,
                               double scan_max, CondVariant variant = CondVariant::Auto) {
  std::vector<double> cands{0.0};
  for (const auto& p : fps_x) cands.push_back(p.coord);
  return detail::curvature_condition(m, Axis::X, "G3", cands, scan_max, variant,
                                     /*need_base=*/true, /*need_ratio_negative=*/false,
                                     /*combined_integral=*/true);
}

inline CurvatureCheck check_G4(const GrowthModel& m,
                               const std::vector<BoundaryFixedPoint>& fps_y,
                               double scan_max, CondVariant variant = CondVariant::Auto) {
  CurvatureCheck out;
  if (m.origin_class == OriginClass::EqualOne) {
    out.entry.id = "G4";
    out.entry.verdict = CondVerdict::Inconclusive;
    out.entry.witness = "g(0,0) = 1 falls outside both branches of the condition";
    return out;
  }
  const bool below_one = m.origin_class != OriginClass::GreaterThanOne;
  std::vector<double> cands{0.0};
  for (const auto& p : fps_y) cands.push_back(p.coord);
  return detail::curvature_condition(m, Axis::Y, "G4", cands, scan_max, variant,
                                     /*need_base=*/true,
                                     /*need_ratio_negative=*/below_one,
                                     /*combined_integral=*/true);
}

inline CurvatureCheck check_P4(const GrowthModel& m,
                               const std::vector<BoundaryFixedPoint>& fps_x,
                               double scan_max, CondVariant variant = CondVariant::Auto) {
  if (m.family == Family::PredatorPrey) {
    // Closed form: at x* = a + sqrt(r/b) the relative nonlinearity reduces to
    // 2 c2 (1 - (a + sqrt(r/b)) / sqrt(r b)), nonnegative iff a^2 <= r(b + 1/b - 2).
    CurvatureCheck out;
    out.entry.id = "P4";
    const double r = m.param("r"), b = m.param("b"), a = m.param("a"), c2 = m.param("c2");
    const double x_star = a + std::sqrt(r / b);
    const double v = 2.0 * c2 * (1.0 - x_star / std::sqrt(r * b));
    out.chosen_point = x_star;
    out.entry.margin = v;
    if (v >= 0.0) {
      out.entry.verdict = CondVerdict::Holds;
      out.entry.witness = "closed form 2c2(1 - (a+sqrt(r/b))/sqrt(rb)) = " + detail::fmt(v) +
                          " at x* = " + detail::fmt(x_star);
    } else {
      out.entry.verdict = CondVerdict::Fails;
      out.entry.witness = "closed form value " + detail::fmt(v) + " < 0 at x* = " +
                          detail::fmt(x_star);
    }
    return out;
  }
  std::vector<double> cands;
  for (const auto& p : fps_x) cands.push_back(p.coord);
  return detail::curvature_condition(m, Axis::X, "P4", cands, scan_max, variant,
                                     /*need_base=*/false, /*need_ratio_negative=*/false,
                                     /*combined_integral=*/false);
}

// ---------------------------------------------------------------------------
// Family corollary criteria (closed forms for the builtin models)
// ---------------------------------------------------------------------------

/// Roots of r(1-u) - m/(1+bu) = 0: {smaller, larger}; empty if the
/// discriminant is negative.
inline std::vector<double> logistic_predation_roots(double r, double m, double b) {
  const double disc = r * r * (1.0 + b) * (1.0 + b) - 4.0 * m * b * r;
  if (disc < 0.0) return {};
  const double s = std::sqrt(disc);
  return {(r * (b - 1.0) - s) / (2.0 * r * b), (r * (b - 1.0) + s) / (2.0 * r * b)};
}

inline std::vector<ConditionEntry> family_corollary_entries(const GrowthModel& m) {
  std::vector<ConditionEntry> out;
  auto push = [&](const std::string& id, double margin, const std::string& w) {
    ConditionEntry e;
    e.id = id;
    e.margin = margin;
    e.verdict = margin > kStrictMargin ? CondVerdict::Holds
               : margin < -kStrictMargin ? CondVerdict::Fails
                                         : CondVerdict::Inconclusive;
    e.witness = w;
    out.push_back(e);
  };
  if (m.family == Family::StrongAlleeCompetition) {
    const double r1 = m.param("r1"), r2 = m.param("r2"), m1 = m.param("m1"),
                 m2 = m.param("m2"), b1 = m.param("b1"), b2 = m.param("b2"),
                 a = m.param("a"), c = m.param("c");
    push("C3.1",
         std::min({m2 - r2, r2 * (b2 + 1.0) * (b2 + 1.0) / (4.0 * b2) - m2, b2 - 1.0}),
         "r2 < m2 < r2(b2+1)^2/(4 b2) and b2 > 1");
    const double spread = std::exp(r1 - 1.0) / r1 - 1.0;
    const double lhs = a * (c - 1.0) + r2 - m2 - std::max(a, a * spread * spread);
    push("C3.2", std::min(lhs, r1 - std::max(m1, m1 / b1)),
         "a(c-1)+r2-m2-max{a, a(e^{r1-1}/r1 - 1)^2} > 0 and r1 > max{m1, m1/b1}");
    push("C3.3", std::min(b2 - b1, m1 * (b2 * m2 - r2) - b2 * b2 * m2),
         "b1 <= b2 and m1(b2 m2 - r2) > b2^2 m2");
  } else if (m.family == Family::WeakAlleeCompetition) {
    const double r1 = m.param("r1"), r2 = m.param("r2"), m1 = m.param("m1"),
                 m2 = m.param("m2"), b1 = m.param("b1"), b2 = m.param("b2");
    push("C4.1", std::min(r1 - m1, r2 - m2), "r_i > m_i, i = 1, 2");
    const auto rx = logistic_predation_roots(r1, m1, b1);
    const auto ry = logistic_predation_roots(r2, m2, b2);
    if (rx.empty() || ry.empty()) {
      ConditionEntry e;
      e.id = "C4.2";
      e.verdict = CondVerdict::Inconclusive;
      e.witness = "negative discriminant: no boundary fixed point";
      out.push_back(e);
      return out;
    }
    const double x_star = rx.back(), y_star = ry.back();
    push("C4.2", std::min(m.F(0.0, y_star), m.G(x_star, 0.0)),
         "F(0, y*) > 0 and G(x*, 0) > 0 at x* = " + detail::fmt(x_star) + ", y* = " +
             detail::fmt(y_star));
    const double d1 = 1.0 + b1 * x_star, d2 = 1.0 + b2 * y_star;
    push("C4.3",
         std::min(r2 - b2 * m2 / (d2 * d2), r1 - b1 * m1 / (d1 * d1)),
         "r2 > b2 m2/(1+b2 y*)^2 and r1 > b1 m1/(1+b1 x*)^2");
  } else if (m.family == Family::PredatorPrey) {
    const double r = m.param("r"), b = m.param("b"), a = m.param("a");
    push("C5.1", r - b * a * a, "r > b a^2 (nontrivial prey fixed point exists)");
    push("C5.2", r * (b + 1.0 / b - 2.0) - a * a, "a^2 < r(b + 1/b - 2)");
  }
  return out;
}

// ---------------------------------------------------------------------------
// Verdict
// ---------------------------------------------------------------------------

enum class Route { Auto, General, PredPrey };

struct CheckOptions {
  Route route = Route::Auto;
  CondVariant variant = CondVariant::Auto;
};

inline PermanenceVerdict theorem_verdict(const GrowthModel& m,
                                         const CheckOptions& opts = {}) {
  PermanenceVerdict v;
  const auto fps_x = find_boundary_fixed_points(m, Axis::X, 1e-6, m.x_cap);
  const auto fps_y = find_boundary_fixed_points(m, Axis::Y, 1e-6, m.y_cap);
  const auto dx = dissipativity_bound(m, Axis::X);
  const auto dy = dissipativity_bound(m, Axis::Y);
  const double x_scan = axis_orbit_bound(m, Axis::X, dx);
  const double y_scan = axis_orbit_bound(m, Axis::Y, dy);

  const ConditionEntry h = check_H(m);
  v.entries.push_back(h);
  const ConditionEntry p1 = check_P1(m);

  bool pred_route = opts.route == Route::PredPrey;
  if (opts.route == Route::Auto) pred_route = p1.verdict == CondVerdict::Holds;

  auto all_hold = [](const std::vector<const ConditionEntry*>& es) {
    for (auto* e : es)
      if (e->verdict != CondVerdict::Holds) return false;
    return true;
  };

  if (pred_route) {
    v.entries.push_back(p1);
    const ConditionEntry p2 = check_P2(m, dx.conclusive ? dx.L_m : m.x_cap);
    const ConditionEntry p3 = check_P3(fps_x);
    const CurvatureCheck p4 = check_P4(m, fps_x, x_scan, opts.variant);
    v.entries.push_back(p2);
    v.entries.push_back(p3);
    v.entries.push_back(p4.entry);
    v.basis = "Theorem2";
    v.permanent = all_hold({&h, &p1, &p2, &p3, &p4.entry});
  } else {
    const ConditionEntry g1 = check_G1(m);
    const ConditionEntry g2 = check_G2(fps_x, fps_y);
    const CurvatureCheck g3 = check_G3(m, fps_x, x_scan, opts.variant);
    const CurvatureCheck g4 = check_G4(m, fps_y, y_scan, opts.variant);
    v.entries.push_back(g1);
    v.entries.push_back(g2);
    v.entries.push_back(g3.entry);
    v.entries.push_back(g4.entry);
    v.basis = (g3.used_integral || g4.used_integral) ? "Corollary2" : "Theorem1";
    v.permanent = all_hold({&h, &g1, &g2, &g3.entry, &g4.entry});
    if (opts.route == Route::Auto)
      v.notes.push_back("general route selected (P1 " +
                        std::string(cond_verdict_name(p1.verdict)) + ")");
  }

  for (const auto& e : family_corollary_entries(m)) v.entries.push_back(e);

  if (!v.permanent) {
    std::string blocking = "blocking:";
    for (const auto& e : v.entries)
      if (e.id.rfind("C", 0) != 0 && e.verdict != CondVerdict::Holds)
        blocking += " " + e.id;
    v.notes.push_back(blocking);
    v.notes.push_back("NotEstablished is not a disproof; the criteria are sufficient only");
  }
  return v;
}

}  // namespace permachk
