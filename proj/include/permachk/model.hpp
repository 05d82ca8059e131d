#pragma once

#include <cmath>
#include <functional>
#include <map>
#include <string>
#include <utility>

#include "permachk/common.hpp"

namespace permachk {

enum class Family {
  PredationAllee,
  StrongAlleeCompetition,
  WeakAlleeCompetition,
  PredatorPrey,
  Mutualism,
};

inline const char* family_name(Family f) {
  switch (f) {
    case Family::PredationAllee: return "predation_allee";
    case Family::StrongAlleeCompetition: return "strong_allee_competition";
    case Family::WeakAlleeCompetition: return "weak_allee_competition";
    case Family::PredatorPrey: return "predator_prey";
    case Family::Mutualism: return "mutualism";
  }
  return "?";
}

/// Classification of g(0,0) relative to 1. Condition checks branch on this
/// instead of evaluating ln g at the origin.
enum class OriginClass { GreaterThanOne, BetweenZeroAndOne, EqualZero, EqualOne };

inline const char* origin_class_name(OriginClass c) {
  switch (c) {
    case OriginClass::GreaterThanOne: return "g00_gt_1";
    case OriginClass::BetweenZeroAndOne: return "g00_in_0_1";
    case OriginClass::EqualZero: return "g00_eq_0";
    case OriginClass::EqualOne: return "g00_eq_1";
  }
  return "?";
}

using Map2 = std::function<double(double, double)>;
using Map1 = std::function<double(double)>;

/// A two-species map x' = x f(x,y), y' = y g(x,y), held in log form together
/// with the analytic partial derivatives of F = ln f and G = ln g restricted
/// to the coordinate axes. Immutable after construction; all evaluation is
/// pure and re-entrant.
struct GrowthModel {
  Family family{};
  std::map<std::string, double> params;

  Map2 F;  // ln f
  Map2 G;  // ln g

  // Partials along the x-axis (evaluated at (x, 0)).
  Map1 Fx_axis, Fxx_axis, Gx_axis, Gxx_axis;
  // Partials along the y-axis (evaluated at (0, y)).
  Map1 Fy_axis, Fyy_axis, Gy_axis, Gyy_axis;

  double x_cap = 1e6;
  double y_cap = 1e6;
  OriginClass origin_class = OriginClass::GreaterThanOne;
  bool strong_allee = false;  // predation family only

  double f(double x, double y) const { return std::exp(F(x, y)); }
  double g(double x, double y) const { return std::exp(G(x, y)); }

  // Axis-symmetric views. The "resident" is the species living on the axis,
  // the "invader" the missing one. On the x-axis the resident rate is F(x,0)
  // and the invader rate G(x,0); mirrored on the y-axis.
  double resident_log_rate(Axis a, double u) const {
    return a == Axis::X ? F(u, 0.0) : G(0.0, u);
  }
  double invader_log_rate(Axis a, double u) const {
    return a == Axis::X ? G(u, 0.0) : F(0.0, u);
  }
  double resident_slope(Axis a, double u) const {
    return a == Axis::X ? Fx_axis(u) : Gy_axis(u);
  }
  double resident_curvature(Axis a, double u) const {
    return a == Axis::X ? Fxx_axis(u) : Gyy_axis(u);
  }
  double invader_slope(Axis a, double u) const {
    return a == Axis::X ? Gx_axis(u) : Fy_axis(u);
  }
  double invader_curvature(Axis a, double u) const {
    return a == Axis::X ? Gxx_axis(u) : Fyy_axis(u);
  }
  double cap(Axis a) const { return a == Axis::X ? x_cap : y_cap; }

  /// Factor of the resident species at the origin of its own axis
  /// (f(0,0) for the x-axis, g(0,0) for the y-axis).
  double resident_origin_factor(Axis a) const {
    return std::exp(resident_log_rate(a, 0.0));
  }

  double param(const std::string& k) const {
    auto it = params.find(k);
    if (it == params.end()) throw InvalidParameter("missing parameter: " + k);
    return it->second;
  }
};

namespace detail {

inline double require_positive(const std::map<std::string, double>& p, const std::string& k) {
  auto it = p.find(k);
  if (it == p.end()) throw InvalidParameter("missing parameter: " + k);
  if (!(it->second > 0.0)) throw InvalidParameter("parameter must be > 0: " + k);
  return it->second;
}

inline double require_nonneg(const std::map<std::string, double>& p, const std::string& k) {
  auto it = p.find(k);
  if (it == p.end()) throw InvalidParameter("missing parameter: " + k);
  if (!(it->second >= 0.0)) throw InvalidParameter("parameter must be >= 0: " + k);
  return it->second;
}

inline OriginClass classify_origin(double g00) {
  if (g00 == 0.0) return OriginClass::EqualZero;
  if (std::abs(g00 - 1.0) < 1e-12) return OriginClass::EqualOne;
  return g00 > 1.0 ? OriginClass::GreaterThanOne : OriginClass::BetweenZeroAndOne;
}

inline void apply_tail_caps(GrowthModel& m, const std::pair<double, double>* caps) {
  if (caps) {
    if (!(caps->first > 0.0) || !(caps->second > 0.0))
      throw InvalidParameter("tail caps must be positive");
    m.x_cap = caps->first;
    m.y_cap = caps->second;
  }
}

// phi(u) = u^p / (1 + u^q) and its first two derivatives (mutualism
// interaction response).
struct SaturatingPower {
  double p, q;
  double value(double u) const { return std::pow(u, p) / (1.0 + std::pow(u, q)); }
  double d1(double u) const {
    const double up = std::pow(u, p), uq = std::pow(u, q);
    const double den = 1.0 + uq;
    double s = 0.0;
    if (p != 0.0) s += p * std::pow(u, p - 1.0) / den;
    if (q != 0.0) s -= q * std::pow(u, p + q - 1.0) / (den * den);
    (void)up;
    return s;
  }
  double d2(double u) const {
    const double uq = std::pow(u, q);
    const double den = 1.0 + uq;
    double s = 0.0;
    if (p != 0.0 && p != 1.0) s += p * (p - 1.0) * std::pow(u, p - 2.0) / den;
    if (q != 0.0) {
      s -= q * (2.0 * p + q - 1.0) * std::pow(u, p + q - 2.0) / (den * den);
      s += 2.0 * q * q * std::pow(u, p + 2.0 * q - 2.0) / (den * den * den);
    }
    return s;
  }
};

}  // namespace detail

/// y' = y exp(r(1-y) - m/(1+by)), the scalar predation-saturation map, carried
/// on the y-axis; the x species is a plain Ricker with the same r so the model
/// is a well-formed two-species map whose y-axis restriction is the scalar map.
inline GrowthModel build_predation_allee(const std::map<std::string, double>& p,
                                         const std::pair<double, double>* tail_caps = nullptr) {
  const double r = detail::require_positive(p, "r");
  const double m = detail::require_nonneg(p, "m");
  const double b = detail::require_positive(p, "b");

  GrowthModel mod;
  mod.family = Family::PredationAllee;
  mod.params = p;
  mod.F = [r](double x, double) { return r * (1.0 - x); };
  mod.G = [r, m, b](double, double y) { return r * (1.0 - y) - m / (1.0 + b * y); };
  mod.Fx_axis = [r](double) { return -r; };
  mod.Fxx_axis = [](double) { return 0.0; };
  mod.Gx_axis = [](double) { return 0.0; };
  mod.Gxx_axis = [](double) { return 0.0; };
  mod.Fy_axis = [](double) { return 0.0; };
  mod.Fyy_axis = [](double) { return 0.0; };
  mod.Gy_axis = [r, m, b](double y) {
    const double d = 1.0 + b * y;
    return -r + b * m / (d * d);
  };
  mod.Gyy_axis = [r, m, b](double y) {
    const double d = 1.0 + b * y;
    return -2.0 * b * b * m / (d * d * d);
  };
  detail::apply_tail_caps(mod, tail_caps);
  mod.origin_class = detail::classify_origin(std::exp(r - m));
  mod.strong_allee = (r < m) && (m < r * (b + 1.0) * (b + 1.0) / (4.0 * b)) && (b > 1.0);
  return mod;
}

inline GrowthModel build_strong_allee_competition(
    const std::map<std::string, double>& p,
    const std::pair<double, double>* tail_caps = nullptr) {
  const double r1 = detail::require_positive(p, "r1");
  const double r2 = detail::require_positive(p, "r2");
  const double m1 = detail::require_positive(p, "m1");
  const double m2 = detail::require_positive(p, "m2");
  const double b1 = detail::require_positive(p, "b1");
  const double b2 = detail::require_positive(p, "b2");
  const double a = detail::require_positive(p, "a");
  const double c = detail::require_positive(p, "c");

  GrowthModel mod;
  mod.family = Family::StrongAlleeCompetition;
  mod.params = p;
  mod.F = [r1, m1, b1](double x, double y) {
    return r1 * (1.0 - x) - m1 * y / (1.0 + b1 * y);
  };
  mod.G = [r2, m2, b2, a, c](double x, double y) {
    return r2 * (1.0 - y) - m2 / (1.0 + b2 * y) - a * x * (x - c);
  };
  mod.Fx_axis = [r1](double) { return -r1; };
  mod.Fxx_axis = [](double) { return 0.0; };
  mod.Gx_axis = [a, c](double x) { return a * (c - 2.0 * x); };
  mod.Gxx_axis = [a](double) { return -2.0 * a; };
  mod.Fy_axis = [m1, b1](double y) {
    const double d = 1.0 + b1 * y;
    return -m1 / (d * d);
  };
  mod.Fyy_axis = [m1, b1](double y) {
    const double d = 1.0 + b1 * y;
    return 2.0 * b1 * m1 / (d * d * d);
  };
  mod.Gy_axis = [r2, m2, b2](double y) {
    const double d = 1.0 + b2 * y;
    return -r2 + b2 * m2 / (d * d);
  };
  mod.Gyy_axis = [r2, m2, b2](double y) {
    const double d = 1.0 + b2 * y;
    (void)r2;
    return -2.0 * b2 * b2 * m2 / (d * d * d);
  };
  detail::apply_tail_caps(mod, tail_caps);
  mod.origin_class = detail::classify_origin(std::exp(r2 - m2));
  return mod;
}

inline GrowthModel build_weak_allee_competition(
    const std::map<std::string, double>& p,
    const std::pair<double, double>* tail_caps = nullptr) {
  const double r1 = detail::require_positive(p, "r1");
  const double r2 = detail::require_positive(p, "r2");
  const double m1 = detail::require_positive(p, "m1");
  const double m2 = detail::require_positive(p, "m2");
  const double b1 = detail::require_positive(p, "b1");
  const double b2 = detail::require_positive(p, "b2");
  const double a1 = detail::require_positive(p, "a1");
  const double a2 = detail::require_positive(p, "a2");

  GrowthModel mod;
  mod.family = Family::WeakAlleeCompetition;
  mod.params = p;
  mod.F = [r1, m1, b1, a1](double x, double y) {
    return r1 * (1.0 - x) - m1 / (1.0 + b1 * x) - a1 * y;
  };
  mod.G = [r2, m2, b2, a2](double x, double y) {
    return r2 * (1.0 - y) - m2 / (1.0 + b2 * y) - a2 * x;
  };
  mod.Fx_axis = [r1, m1, b1](double x) {
    const double d = 1.0 + b1 * x;
    return -r1 + b1 * m1 / (d * d);
  };
  mod.Fxx_axis = [m1, b1](double x) {
    const double d = 1.0 + b1 * x;
    return -2.0 * b1 * b1 * m1 / (d * d * d);
  };
  mod.Gx_axis = [a2](double) { return -a2; };
  mod.Gxx_axis = [](double) { return 0.0; };
  mod.Fy_axis = [a1](double) { return -a1; };
  mod.Fyy_axis = [](double) { return 0.0; };
  mod.Gy_axis = [r2, m2, b2](double y) {
    const double d = 1.0 + b2 * y;
    return -r2 + b2 * m2 / (d * d);
  };
  mod.Gyy_axis = [m2, b2](double y) {
    const double d = 1.0 + b2 * y;
    return -2.0 * b2 * b2 * m2 / (d * d * d);
  };
  detail::apply_tail_caps(mod, tail_caps);
  mod.origin_class = detail::classify_origin(std::exp(r2 - m2));
  return mod;
}

inline GrowthModel build_predator_prey_allee(
    const std::map<std::string, double>& p,
    const std::pair<double, double>* tail_caps = nullptr) {
  const double r = detail::require_positive(p, "r");
  const double b = detail::require_positive(p, "b");
  const double a = detail::require_positive(p, "a");
  const double c1 = detail::require_positive(p, "c1");
  const double c2 = detail::require_positive(p, "c2");
  const double d = detail::require_positive(p, "d");

  GrowthModel mod;
  mod.family = Family::PredatorPrey;
  mod.params = p;
  mod.F = [r, b, a, c1](double x, double y) {
    return r - b * (x - a) * (x - a) - c1 * y;
  };
  mod.G = [c2, d](double x, double y) { return c2 * x * x - d * y; };
  mod.Fx_axis = [b, a](double x) { return -2.0 * b * (x - a); };
  mod.Fxx_axis = [b](double) { return -2.0 * b; };
  mod.Gx_axis = [c2](double x) { return 2.0 * c2 * x; };
  mod.Gxx_axis = [c2](double) { return 2.0 * c2; };
  mod.Fy_axis = [c1](double) { return -c1; };
  mod.Fyy_axis = [](double) { return 0.0; };
  mod.Gy_axis = [d](double) { return -d; };
  mod.Gyy_axis = [](double) { return 0.0; };
  detail::apply_tail_caps(mod, tail_caps);
  mod.origin_class = OriginClass::EqualOne;  // g(0,0) = e^0
  return mod;
}

inline GrowthModel build_mutualism(const std::map<std::string, double>& p,
                                   const std::pair<double, double>* tail_caps = nullptr) {
  const double r1 = detail::require_positive(p, "r1");
  const double r2 = detail::require_positive(p, "r2");
  const double a11 = detail::require_positive(p, "a11");
  const double a22 = detail::require_positive(p, "a22");
  const double a12 = detail::require_nonneg(p, "a12");
  const double a21 = detail::require_nonneg(p, "a21");
  const double v11 = detail::require_nonneg(p, "v11");
  const double v12 = detail::require_nonneg(p, "v12");
  const double v21 = detail::require_nonneg(p, "v21");
  const double v22 = detail::require_nonneg(p, "v22");
  if (v11 > v12) throw InvalidParameter("mutualism requires v11 <= v12");
  if (v22 > v21) throw InvalidParameter("mutualism requires v22 <= v21");

  const detail::SaturatingPower benefit_x{v11, v12};  // response of x to y
  const detail::SaturatingPower benefit_y{v22, v21};  // response of y to x

  GrowthModel mod;
  mod.family = Family::Mutualism;
  mod.params = p;
  mod.F = [r1, a11, a12, benefit_x](double x, double y) {
    return r1 - a11 * x + a12 * benefit_x.value(y);
  };
  mod.G = [r2, a22, a21, benefit_y](double x, double y) {
    return r2 - a22 * y + a21 * benefit_y.value(x);
  };
  mod.Fx_axis = [a11](double) { return -a11; };
  mod.Fxx_axis = [](double) { return 0.0; };
  mod.Gx_axis = [a21, benefit_y](double x) { return a21 * benefit_y.d1(x); };
  mod.Gxx_axis = [a21, benefit_y](double x) { return a21 * benefit_y.d2(x); };
  mod.Fy_axis = [a12, benefit_x](double y) { return a12 * benefit_x.d1(y); };
  mod.Fyy_axis = [a12, benefit_x](double y) { return a12 * benefit_x.d2(y); };
  mod.Gy_axis = [a22](double) { return -a22; };
  mod.Gyy_axis = [](double) { return 0.0; };
  detail::apply_tail_caps(mod, tail_caps);
  mod.origin_class = detail::classify_origin(std::exp(mod.G(0.0, 0.0)));
  return mod;
}

inline GrowthModel build_model(Family fam, const std::map<std::string, double>& p,
                               const std::pair<double, double>* tail_caps = nullptr) {
  switch (fam) {
    case Family::PredationAllee: return build_predation_allee(p, tail_caps);
    case Family::StrongAlleeCompetition: return build_strong_allee_competition(p, tail_caps);
    case Family::WeakAlleeCompetition: return build_weak_allee_competition(p, tail_caps);
    case Family::PredatorPrey: return build_predator_prey_allee(p, tail_caps);
    case Family::Mutualism: return build_mutualism(p, tail_caps);
  }
  throw InvalidParameter("unknown family");
}

inline Family family_from_name(const std::string& s) {
  if (s == "predation_allee") return Family::PredationAllee;
  if (s == "strong_allee_competition") return Family::StrongAlleeCompetition;
  if (s == "weak_allee_competition") return Family::WeakAlleeCompetition;
  if (s == "predator_prey") return Family::PredatorPrey;
  if (s == "mutualism") return Family::Mutualism;
  throw InvalidParameter("unknown model family: " + s);
}

}  // namespace permachk
