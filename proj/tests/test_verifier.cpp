#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <map>

#include "permachk/checker.hpp"
#include "permachk/model.hpp"
#include "permachk/orbit.hpp"
#include "permachk/report.hpp"
#include "permachk/verifier.hpp"

using namespace permachk;

namespace {

const std::map<std::string, double> kStrongAllee{{"r1", 4.1}, {"r2", 0.85}, {"m1", 4.0},
                                                 {"m2", 1.0}, {"b1", 1.0},  {"b2", 2.5},
                                                 {"a", 1.0},  {"c", 22.0}};
const std::map<std::string, double> kWeakAllee{{"r1", 2.0}, {"r2", 2.0}, {"m1", 1.8},
                                               {"m2", 1.8}, {"b1", 6.0}, {"b2", 6.0},
                                               {"a1", 0.1}, {"a2", 0.1}};
const std::map<std::string, double> kPredPrey{{"r", 1.0},  {"b", 3.0},  {"a", 0.5},
                                              {"c1", 0.5}, {"c2", 0.5}, {"d", 1.0}};

}  // namespace

TEST_CASE("single-point sweep converging to an interior equilibrium") {
  const auto m = build_weak_allee_competition(kWeakAllee);
  const auto r = empirical_verify(m, 1, 1, 0.8, 0.8, 0.8, 0.8, 20000, 15000);
  REQUIRE(r.points.size() == 1);
  CHECK_FALSE(r.points[0].divergent);
  // At a converged interior point the tail envelope collapses: b_hat and
  // B_hat are just the coordinate extremes of the attractor.
  CHECK(r.b_hat > kExtinctionThreshold);
  CHECK(r.persistent);
  CHECK(r.b_hat <= r.B_hat);
  // Oracle: iterate directly and compare the tail extremes.
  double x = 0.8, y = 0.8;
  double tmin = 1e300, tmax = -1e300;
  for (int t = 0; t < 20000; ++t) {
    const double xn = x * m.f(x, y), yn = y * m.g(x, y);
    x = xn;
    y = yn;
    if (t >= 15000) {
      tmin = std::min(tmin, std::min(x, y));
      tmax = std::max(tmax, std::max(x, y));
    }
  }
  CHECK(r.b_hat == doctest::Approx(tmin).epsilon(1e-14));
  CHECK(r.B_hat == doctest::Approx(tmax).epsilon(1e-14));
}

TEST_CASE("strong-Allee resident below its threshold goes extinct") {
  // On the y-axis the resident map has the unstable fixed point y1 ~ 0.1607;
  // orbits started below it decay to 0 in isolation, so an interior grid
  // confined well under the threshold is non-persistent.
  const auto m = build_strong_allee_competition(kStrongAllee);
  const auto r = empirical_verify(m, 4, 4, 1e-4, 1e-2, 1e-4, 1e-2, 30000, 20000);
  CHECK_FALSE(r.persistent);
  CHECK(r.b_hat <= kExtinctionThreshold);
}

TEST_CASE("grid validation") {
  const auto m = build_weak_allee_competition(kWeakAllee);
  CHECK_THROWS_AS(empirical_verify(m, 2, 2, 0.0, 1.0, 0.1, 1.0, 100, 10),
                  InvalidParameter);
  CHECK_THROWS_AS(empirical_verify(m, 2, 2, 0.1, 1.0, 0.1, 1.0, 10, 10),
                  InvalidParameter);
}

TEST_CASE("cross validation states") {
  PermanenceVerdict yes;
  yes.permanent = true;
  PermanenceVerdict no;
  SweepResult alive;
  alive.persistent = true;
  alive.b_hat = 0.5;
  SweepResult dead;
  dead.b_hat = 0.0;

  CHECK(cross_validate(yes, alive).status == Consistency::Consistent);
  const auto contra = cross_validate(yes, dead);
  CHECK(contra.status == Consistency::Contradiction);
  CHECK_FALSE(contra.note.empty());
  // Sufficient-only criteria: persistent sweep without a certificate is fine.
  CHECK(cross_validate(no, alive).status == Consistency::Consistent);
  CHECK(cross_validate(no, dead).status == Consistency::Consistent);
}

TEST_CASE("sweeps are deterministic and thread-count invariant") {
  const auto m = build_predator_prey_allee(kPredPrey);
  const auto r1 = empirical_verify(m, 6, 6, 1e-2, 2.0, 1e-2, 2.0, 20000, 15000, 1);
  const auto r4 = empirical_verify(m, 6, 6, 1e-2, 2.0, 1e-2, 2.0, 20000, 15000, 4);
  CHECK(sweep_csv(r1) == sweep_csv(r4));
  CHECK(r1.b_hat == r4.b_hat);
  CHECK(r1.B_hat == r4.B_hat);
  CHECK(r1.persistent);  // coexistence attractor
}

TEST_CASE("sweep maximum respects the dissipativity bounds") {
  const auto m = build_strong_allee_competition(kStrongAllee);
  const auto dx = dissipativity_bound(m, Axis::X);
  const auto dy = dissipativity_bound(m, Axis::Y);
  REQUIRE(dx.conclusive);
  REQUIRE(dy.conclusive);
  const auto r = empirical_verify(m, 8, 8, 1e-3, 3.0, 1e-3, 3.0, 20000, 10000);
  CHECK(r.B_hat <= std::max(dx.L_m, dy.L_m) + 1e-9);
}

TEST_CASE("divergent orbits are flagged and force non-persistence") {
  GrowthModel m;
  m.F = [](double, double) { return 1.0; };  // x doubles-and-more every step
  m.G = [](double, double) { return 0.0; };
  auto zero = [](double) { return 0.0; };
  m.Fx_axis = m.Fxx_axis = m.Gx_axis = m.Gxx_axis = zero;
  m.Fy_axis = m.Fyy_axis = m.Gy_axis = m.Gyy_axis = zero;
  const auto r = empirical_verify(m, 2, 2, 0.5, 1.0, 0.5, 1.0, 2000, 100);
  CHECK(r.any_divergent);
  CHECK_FALSE(r.persistent);
}
