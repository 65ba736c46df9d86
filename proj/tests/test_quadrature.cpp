#include <doctest.h>

#include <cmath>
#include <numbers>

#include "radsolve/errors.hpp"
#include "radsolve/quadrature.hpp"

using namespace radsolve;
using doctest::Approx;

namespace {
const UnitSystem nat = UnitSystem::natural();
}

TEST_CASE("adaptive_integral examples") {
  CHECK(adaptive_integral([](double) { return 1.0; }, 0, 1).value == Approx(1.0).epsilon(1e-14));
  CHECK(adaptive_integral([](double x) { return x * x; }, 0, 1).value ==
        Approx(1.0 / 3.0).epsilon(1e-14));
  const auto s = adaptive_integral([](double x) { return 1.0 / std::sqrt(x); }, 0, 1);
  CHECK(std::abs(s.value - 2.0) <= 1e-8);
  CHECK(s.error_estimate <= 1e-10 * 2.0);
  // Square-root singularities at both ends.
  const auto t = adaptive_integral(
      [](double x) { return 1.0 / std::sqrt(x * (1.0 - x)); }, 0, 1);
  CHECK(std::abs(t.value - std::numbers::pi) <= 1e-8);
  // Reversed limits flip the sign.
  CHECK(adaptive_integral([](double x) { return x; }, 1, 0).value == Approx(-0.5));
  CHECK(adaptive_integral([](double x) { return x; }, 2, 2).value == 0.0);
}

TEST_CASE("adaptive_integral is deterministic") {
  auto f = [](double x) { return std::sin(10 * x) * std::exp(-x); };
  const auto a = adaptive_integral(f, 0, 7);
  const auto b = adaptive_integral(f, 0, 7);
  CHECK(a.value == b.value);
  CHECK(a.panels == b.panels);
}

TEST_CASE("adaptive_integral reports failure with a partial value") {
  bool thrown = false;
  try {
    adaptive_integral([](double x) { return 1.0 / x; }, 0, 1);
  } catch (const IntegrationError& e) {
    thrown = true;
    CHECK(std::isfinite(e.partial_value()));
  }
  CHECK(thrown);
}

TEST_CASE("area_S examples") {
  const EffectivePotential free0(FreeParticle{}, 0, nat);
  const auto tp_free = TurningPoints::make(0.5, 2.0, 0.0, Method::closed_form);
  CHECK(area_S(free0, tp_free).value == 0.0);

  const EffectivePotential ho(IsotropicHO{1}, 0, nat);
  const auto tp = turning_points(ho, 1.0);
  const auto S = area_S(ho, tp);
  CHECK(S.value == Approx(std::sqrt(2.0) / 3.0).epsilon(1e-12));
  CHECK(area_S_numeric(ho, tp).value == Approx(std::sqrt(2.0) / 3.0).epsilon(1e-10));

  const EffectivePotential h(HydrogenLike{1, 1.0}, 0, nat);
  CHECK_THROWS_AS(area_S(h, turning_points(h, -0.5)), IntegrationError);
  const auto tp_h = TurningPoints::make(0.01, 2.0, -0.5, Method::closed_form);
  CHECK(area_S(h, tp_h).value == Approx(-std::log(2.0 / 0.01)).epsilon(1e-12));

  for (int l = 1; l <= 3; ++l) {
    for (const PotentialSpec& spec :
         {PotentialSpec(IsotropicHO{1}), PotentialSpec(HydrogenLike{1, 1.0}),
          PotentialSpec(InfiniteSphericalWell{1}), PotentialSpec(Parabolic{1, 1, 1})}) {
      const EffectivePotential U(spec, l, nat);
      const double e = U.is<HydrogenLike>() ? 0.5 * effective_minimum(U).u_min
                                             : effective_minimum(U).u_min + 3.0;
      const auto t = turning_points(U, e);
      CHECK(area_S(U, t).value == Approx(area_S_numeric(U, t).value).epsilon(1e-9));
    }
  }
}

TEST_CASE("phase_Q examples") {
  const EffectivePotential well(InfiniteSphericalWell{5}, 1, nat);
  CHECK(phase_Q(well, 1.3, 1.3).value == 0.0);
  const auto q = phase_Q(well, std::numbers::e, 1.0);
  CHECK(q.value == Approx(std::sqrt(2.0)).epsilon(1e-14));
  CHECK(q.method == Method::closed_form);
  CHECK(phase_Q_numeric(well, std::numbers::e, 1.0).value ==
        Approx(std::sqrt(2.0)).epsilon(1e-10));

  const EffectivePotential ho(IsotropicHO{1}, 1, nat);
  const double a = phase_Q(ho, 2.0, 1.0).value;
  const double b = phase_Q_numeric(ho, 2.0, 1.0).value;
  CHECK(std::abs(a - b) <= 1e-8 * std::abs(b));
}

TEST_CASE("complex phase names the offending interval") {
  const EffectivePotential h(HydrogenLike{1, 1.0}, 1, nat);
  // U = -1/r + 1/r^2 < 0 for r > 1.
  try {
    phase_Q(h, 3.0, 0.5);
    FAIL("expected ComplexPhaseError");
  } catch (const ComplexPhaseError& e) {
    CHECK(e.lo() == Approx(1.0).epsilon(1e-9));
    CHECK(e.hi() == Approx(3.0));
    CHECK(std::string(e.what()).find("complex phase") != std::string::npos);
  }
}

TEST_CASE("phase derivative matches m1 sqrt(U)") {
  const UnitSystem units{1.0, 1.0, 137.036, "natural"};
  std::vector<EffectivePotential> us = {
      EffectivePotential(IsotropicHO{1}, 2, units),
      EffectivePotential(HOSpinOrbit{1, 1.5, 0.5, 0.015}, 1, units),
      EffectivePotential(InfiniteSphericalWell{3}, 1, units),
      EffectivePotential(Parabolic{1, 1, 1}, 1, units)};
  for (const auto& U : us) {
    for (int i = 0; i < 50; ++i) {
      const double r = 0.3 + 2.5 * i / 49.0;
      const double h = 1e-6 * r;
      const double fd = (phase_Q(U, r + h, 0.2).value - phase_Q(U, r - h, 0.2).value) / (2 * h);
      const double exact = units.m1() * std::sqrt(U.eval(r));
      CHECK(std::abs(fd - exact) <= 1e-5 * exact);
    }
  }
}

TEST_CASE("phase additivity, monotonicity and closed vs numeric") {
  std::vector<EffectivePotential> us = {
      EffectivePotential(IsotropicHO{1.2}, 0, nat),
      EffectivePotential(IsotropicHO{1}, 3, nat),
      EffectivePotential(HOSpinOrbit{1, 2.5, 0.5, 0.015}, 2, nat),
      EffectivePotential(HOSpinOrbit{1, 3.5, 0.5, 0.2}, 4, nat),
      EffectivePotential(InfiniteSphericalWell{4}, 2, nat),
      EffectivePotential(FreeParticle{}, 3, nat)};
  for (const auto& U : us) {
    const double a = 0.25;
    const double b = 1.1;
    const double c = 2.9;
    const double ab = phase_Q(U, b, a).value;
    const double bc = phase_Q(U, c, b).value;
    const double ac = phase_Q(U, c, a).value;
    CHECK(std::abs(ac - (ab + bc)) <= 1e-9 * std::max(1.0, std::abs(ac)));
    double prev = 0.0;
    for (int i = 1; i <= 40; ++i) {
      const double r = a + (c - a) * i / 40.0;
      const double qc = phase_Q(U, r, a).value;
      const double qn = phase_Q_numeric(U, r, a).value;
      CHECK(std::abs(qc - qn) <= 1e-8 * std::max(1.0, std::abs(qc)));
      CHECK(qc >= prev);
      prev = qc;
    }
  }
}
