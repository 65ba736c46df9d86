#include <doctest.h>

#include <cmath>
#include <numbers>

#include "radsolve/errors.hpp"
#include "radsolve/quadrature.hpp"
#include "radsolve/report.hpp"
#include "radsolve/wavefunctions.hpp"

using namespace radsolve;
using doctest::Approx;

namespace {
const UnitSystem nat = UnitSystem::natural();
constexpr double pi = std::numbers::pi;

int sign_changes(const RadialWaveFunction& wf, int samples) {
  const auto& tp = wf.turning_points();
  int count = 0;
  double prev = wf.carrier(tp.r1 + tp.d * 0.5 / samples);
  for (int i = 1; i < samples; ++i) {
    const double c = wf.carrier(tp.r1 + tp.d * (i + 0.5) / samples);
    if ((c < 0) != (prev < 0)) ++count;
    prev = c;
  }
  return count;
}

std::vector<EffectivePotential> hard_wall_catalog(int l) {
  return {EffectivePotential(InfiniteSphericalWell{1}, l, nat),
          EffectivePotential(IsotropicHO{1}, l, nat),
          EffectivePotential(HOSpinOrbit{1, l + 0.5, 0.5, 0.015}, l, nat),
          EffectivePotential(Parabolic{1, 1, 1}, l, nat)};
}
}  // namespace

TEST_CASE("eval_radial: zeros at the boundary and the midpoint") {
  const EffectivePotential U(IsotropicHO{1}, 1, nat);
  const auto s = normalize(RadialWaveFunction::bound_state(U, Parity::symmetric, 1));
  const auto& tp = s.turning_points();
  CHECK(std::abs(eval_radial(s, tp.r1)) <= 1e-14);
  CHECK(std::abs(eval_radial(s, tp.r2)) <= 1e-14);
  const auto a = normalize(RadialWaveFunction::bound_state(U, Parity::antisymmetric, 1));
  CHECK(eval_radial(a, a.turning_points().r0) == 0.0);
  CHECK(eval_radial(a, a.turning_points().r2 * 1.5) == 0.0);
  CHECK_THROWS_AS(eval_radial(a, 0.0), DomainError);
  CHECK_THROWS_AS(eval_radial(a, -1.0), DomainError);
}

TEST_CASE("antisymmetric n=1 sign pattern matches sin(2 pi (r - r0)/d)") {
  const EffectivePotential U(Parabolic{1, 1, 1}, 1, nat);
  const auto a = normalize(RadialWaveFunction::bound_state(U, Parity::antisymmetric, 1));
  const auto& tp = a.turning_points();
  int zeros = 0;
  double prev = 0.0;
  for (int i = 1; i < 10000; ++i) {
    const double r = tp.r1 + tp.d * i / 10000.0;
    const double v = eval_radial(a, r);
    const double ref = std::sin(2 * pi * (r - tp.r0) / tp.d);
    if (std::abs(ref) > 1e-9) CHECK((v > 0) == (ref > 0));
    if (i > 1 && ((v < 0) != (prev < 0) || v == 0.0)) ++zeros;
    prev = v;
  }
  CHECK(zeros == 1);
  // Interior zeros of sin(2pi x/d) on the open interval: only r0 itself.
  CHECK(sign_changes(a, 100000) == 1);
}

TEST_CASE("node counts") {
  for (int l = 0; l <= 2; ++l) {
    const EffectivePotential U(IsotropicHO{1}, l, nat);
    for (int n = 1; n <= 4; ++n) {
      const auto s = RadialWaveFunction::bound_state(U, Parity::symmetric, n);
      CHECK(sign_changes(s, 100000) == 2 * n - 2);
      const auto a = RadialWaveFunction::bound_state(U, Parity::antisymmetric, n);
      CHECK(sign_changes(a, 100000) == 2 * n - 1);
    }
  }
}

TEST_CASE("normalize") {
  const EffectivePotential U(IsotropicHO{1}, 2, nat);
  const auto raw = RadialWaveFunction::bound_state(U, Parity::symmetric, 2);
  const auto wf = normalize(raw);
  CHECK(std::abs(norm_integral(wf) - 1.0) <= 1e-8);
  const auto twice = normalize(raw.with_amplitude(2 * raw.amplitude()));
  CHECK(twice.amplitude() == Approx(wf.amplitude()).epsilon(1e-14));
  for (double r : {0.5, 1.0, 1.5}) CHECK(twice(r) == Approx(wf(r)).epsilon(1e-14));
  CHECK(raw.amplitude() > 0);
  CHECK(raw.K() == Approx(nat.m1() * std::sqrt(raw.turning_points().energy)));
}

TEST_CASE("K d matches the quantization condition") {
  const EffectivePotential U(IsotropicHO{1}, 1, nat);
  for (int n = 1; n <= 3; ++n) {
    const auto s = RadialWaveFunction::bound_state(U, Parity::symmetric, n);
    CHECK(s.K() * s.turning_points().d == Approx((2 * n - 1) * pi).epsilon(1e-10));
    const auto a = RadialWaveFunction::bound_state(U, Parity::antisymmetric, n);
    CHECK(a.K() * a.turning_points().d == Approx(2 * n * pi).epsilon(1e-10));
  }
}

TEST_CASE("boundary residuals: quantized vs detuned") {
  for (int l = 0; l <= 3; ++l) {
    for (const auto& U : hard_wall_catalog(l)) {
      for (int n = 1; n <= 4; ++n) {
        for (auto p : {Parity::symmetric, Parity::antisymmetric}) {
          const auto wf = normalize(RadialWaveFunction::bound_state(U, p, n));
          const auto r = boundary_residuals(wf);
          CHECK(r.at_r1 <= 1e-12 * r.max_abs);
          CHECK(r.at_r2 <= 1e-12 * r.max_abs);
          // K d / pi = 2.5: neither quantization condition holds.
          const auto det = normalize(wf.with_carrier_wavenumber(2.5 * pi / wf.turning_points().d));
          const auto rd = boundary_residuals(det);
          CHECK(std::max(rd.at_r1, rd.at_r2) > 1e-6 * rd.max_abs);
        }
      }
    }
  }
}

TEST_CASE("detuned residual is cos(1.25 pi) scale") {
  const EffectivePotential U(InfiniteSphericalWell{1}, 0, nat);
  const auto wf = normalize(RadialWaveFunction::bound_state(U, Parity::symmetric, 1));
  const auto det = wf.with_carrier_wavenumber(2.5 * pi / wf.turning_points().d);
  const auto r = boundary_residuals(det);
  CHECK(r.at_r2 > 1e-3 * r.max_abs);
  CHECK(r.at_r2 == Approx(std::abs(std::cos(1.25 * pi)) * det.amplitude()).epsilon(1e-12));
}

TEST_CASE("uncentered carrier is available but breaks the boundary zeros") {
  const EffectivePotential U(IsotropicHO{1}, 1, nat);
  const auto wf = RadialWaveFunction::bound_state(U, Parity::symmetric, 1);
  CHECK(wf.centered());
  const auto u = wf.with_uncentered_carrier();
  CHECK_FALSE(u.centered());
  const double r = 1.1;
  CHECK(u.carrier(r) == Approx(std::cos(u.carrier_wavenumber() * r)));
}

TEST_CASE("envelope is positive") {
  for (const auto& U : hard_wall_catalog(2)) {
    const auto wf = normalize(RadialWaveFunction::bound_state(U, Parity::symmetric, 2));
    const auto& tp = wf.turning_points();
    for (int i = 1; i < 500; ++i) {
      const double r = tp.r1 + tp.d * i / 500.0;
      const double c = wf.carrier(r);
      if (std::abs(c) < 1e-6) continue;
      CHECK(wf(r) * r / c > 0.0);
    }
  }
}

TEST_CASE("numeric phase table matches direct quadrature") {
  const EffectivePotential U(Parabolic{1, 1, 1}, 1, nat);
  const auto wf = RadialWaveFunction::bound_state(U, Parity::symmetric, 1);
  const auto& tp = wf.turning_points();
  CHECK_FALSE(wf.phase().closed_form());
  for (int i = 0; i <= 20; ++i) {
    const double r = tp.r1 + tp.d * i / 20.0;
    const double direct = r == tp.r1 ? 0.0 : phase_Q_numeric(U, r, tp.r1).value;
    CHECK(wf.phase()(r) == Approx(direct).epsilon(1e-10));
  }
}

TEST_CASE("delta model wavefunction") {
  CHECK(delta_model_wavefunction(1.0, 0.0, 0.0) == 1.0);
  CHECK(delta_model_wavefunction(4.0, 2.0, 2.0) == Approx(2.0));
  CHECK_THROWS_AS(delta_model_wavefunction(0.0, 0.0, 1.0), DomainError);
  for (double k : {0.5, 1.0, 2.0}) {
    const double r0 = 1.5;
    auto d2 = [&](double r) {
      const double v = delta_model_wavefunction(k, r0, r);
      return v * v;
    };
    const double tail = 40.0 / k;
    const double norm = adaptive_integral(d2, r0 - tail, r0, 1e-12).value +
                        adaptive_integral(d2, r0, r0 + tail, 1e-12).value;
    CHECK(std::abs(norm - 1.0) <= 1e-8);

    // One-sided derivatives at r0 by finite differences.
    const double eps = 1e-8;
    const double h = 1e-6;
    auto D = [&](double r) { return delta_model_wavefunction(k, r0, r); };
    const double right = (D(r0 + eps + h) - D(r0 + eps)) / h;
    const double left = (D(r0 - eps) - D(r0 - eps - h)) / h;
    const double jump = (right - left) / D(r0);
    CHECK(jump < 0.0);
    CHECK(std::abs(std::abs(jump) - 2 * k) <= 1e-5 * 2 * k);
  }
}

TEST_CASE("evanescent envelope") {
  const EffectivePotential ho(IsotropicHO{1}, 0, nat);
  CHECK(evanescent_eval(ho, 0.5, 2.0, 2.0) == 1.0);
  double prev = 1.0;
  for (int i = 1; i <= 20; ++i) {
    const double v = evanescent_eval(ho, 0.5, 1.0 + 0.1 * i, 1.0);
    CHECK(v < prev);
    prev = v;
  }
  // Constant barrier U - E = hbar^2/2m over unit length: exponent is exactly 1.
  const EffectivePotential free1(FreeParticle{}, 0, nat);
  const double E = -nat.kinetic_scale();
  CHECK(evanescent_eval(free1, E, 3.0, 2.0) == Approx(std::exp(-1.0)).epsilon(1e-12));
  CHECK(evanescent_eval(free1, E, 3.0, 2.0) == Approx(0.367879).epsilon(1e-6));
  CHECK_THROWS_AS(evanescent_eval(ho, 2.0, 1.0, 0.5), DomainError);
}

TEST_CASE("free particle pieces") {
  for (int l = 0; l <= 4; ++l) {
    for (auto c : {Carrier::exp_plus, Carrier::exp_minus, Carrier::cos, Carrier::sin}) {
      const FreeParticleWave fp{l, 2.0, c, 1.3};
      const auto at1 = free_particle_radial(fp, 1.0);
      const auto below = free_particle_radial(fp, std::nextafter(1.0, 0.0));
      const auto above = free_particle_radial(fp, std::nextafter(1.0, 2.0));
      CHECK(std::abs(below - at1) <= 1e-14 * std::max(1.0, std::abs(at1)));
      CHECK(std::abs(above - at1) <= 1e-14 * std::max(1.0, std::abs(at1)));
      if (l == 0) {
        for (double r : {0.3, 1.0, 4.0}) {
          const auto v = free_particle_radial(fp, r);
          std::complex<double> f;
          if (c == Carrier::exp_plus) f = std::polar(1.0, 2.0 * r);
          if (c == Carrier::exp_minus) f = std::polar(1.0, -2.0 * r);
          if (c == Carrier::cos) f = std::cos(2.0 * r);
          if (c == Carrier::sin) f = std::sin(2.0 * r);
          CHECK(std::abs(v - 1.3 * f / r) <= 1e-15 * std::abs(v) + 1e-300);
        }
      }
    }
  }
  const FreeParticleWave fp{1, 0.7, Carrier::cos, 1.0};
  const double e = std::numbers::e;
  const auto v = free_particle_radial(fp, e);
  CHECK(v.real() == Approx(std::exp(-std::sqrt(2.0)) * std::cos(0.7 * e) / e).epsilon(1e-14));
  CHECK(std::exp(-std::sqrt(2.0)) == Approx(0.243117).epsilon(1e-6));
  CHECK(v.imag() == 0.0);
  const auto ep = free_particle_radial(FreeParticleWave{0, 1.0, Carrier::exp_plus, 1.0}, 2.0);
  CHECK(ep.imag() == Approx(std::sin(2.0) / 2.0));
  CHECK_THROWS_AS(free_particle_radial(fp, 0.0), DomainError);
  CHECK(FreeParticleWave{1, 2.0}.r1() == Approx(std::sqrt(2.0) / 2.0));
}

TEST_CASE("free particle normalization") {
  CHECK_THROWS_AS(normalize(FreeParticleWave{1, 1.0, Carrier::cos, 1.0}), NotNormalizableError);
  CHECK_THROWS_AS(normalize(FreeParticleWave{0, 1.0, Carrier::cos, 1.0}), NotNormalizableError);
  // l = 0: the partial norm grows without bound.
  const FreeParticleWave s{0, 1.0, Carrier::exp_plus, 1.0};
  CHECK(free_particle_norm_integral(s, 100.0) == Approx(100.0).epsilon(1e-9));
  // l = 1 with a unit-modulus carrier: |F|^2 = r^(2a) below 1 and r^(-2a)
  // above, a = sqrt(2); the tail converges to 1/(2a - 1).
  const FreeParticleWave p{1, 2.0, Carrier::exp_plus, 1.0};
  const double a = std::sqrt(2.0);
  const double r1 = p.r1();
  const double r_cut = 50.0;
  const double expected = (1 - std::pow(r1, 1 + 2 * a)) / (1 + 2 * a) +
                          (1 - std::pow(r_cut, 1 - 2 * a)) / (2 * a - 1);
  CHECK(free_particle_norm_integral(p, r_cut) == Approx(expected).epsilon(1e-9));
}

TEST_CASE("sampling") {
  const EffectivePotential U(IsotropicHO{1}, 1, nat);
  const auto wf = normalize(RadialWaveFunction::bound_state(U, Parity::antisymmetric, 1));
  CHECK(sample_wavefunction(wf, std::vector<double>{}).empty());
  const double r0 = wf.turning_points().r0;
  const auto one = sample_wavefunction(wf, std::vector<double>{r0});
  REQUIRE(one.size() == 1);
  CHECK(one[0].r == r0);
  CHECK(one[0].re == 0.0);

  const auto& tp = wf.turning_points();
  const auto grid = uniform_grid(tp.r1, tp.r2, 512);
  const auto par = sample_wavefunction(wf, grid);
  const auto ser = sample_wavefunction_serial(wf, grid);
  REQUIRE(par.size() == ser.size());
  for (std::size_t i = 0; i < par.size(); ++i) {
    CHECK(par[i].re == ser[i].re);
    CHECK(par[i].r == ser[i].r);
  }
  const auto back = parse_samples_csv(render_samples(par, Format::csv));
  REQUIRE(back.size() == par.size());
  for (std::size_t i = 0; i < par.size(); ++i) {
    CHECK(back[i].r == par[i].r);
    CHECK(back[i].re == par[i].re);
    CHECK(back[i].im == par[i].im);
    CHECK(back[i].excluded == par[i].excluded);
  }
  CHECK_THROWS_AS(sample_wavefunction(wf, std::vector<double>{1.0, 0.5}), DomainError);
  CHECK_THROWS_AS(sample_wavefunction(wf, std::vector<double>{0.0, 0.5}), DomainError);
}

TEST_CASE("free particle samples mark the excluded inner region") {
  const FreeParticleWave fp{2, 1.0, Carrier::sin, 1.0};
  const auto grid = uniform_grid(0.1, 6.0, 60);
  const auto s = sample_wavefunction(fp, grid);
  const auto ser = sample_wavefunction_serial(fp, grid);
  for (std::size_t i = 0; i < s.size(); ++i) {
    CHECK(s[i].excluded == (grid[i] < fp.r1()));
    CHECK(s[i].re == ser[i].re);
    CHECK(s[i].re == free_particle_radial(fp, grid[i]).real());
  }
}
