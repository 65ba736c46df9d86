#include "radsolve/potentials.hpp"

#include <cmath>
#include <sstream>

#include "radsolve/errors.hpp"

namespace radsolve {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

bool is_integral(double x) { return std::abs(x - std::round(x)) < 1e-9; }

void require_positive(double value, const char* what) {
  if (!(value > 0.0) || !std::isfinite(value)) {
    throw DomainError(std::string(what) + " must be finite and > 0");
  }
}

}  // namespace

double UnitSystem::m1() const { return std::sqrt(2.0 * mass) / hbar; }

double UnitSystem::kinetic_scale() const {
  return hbar * hbar / (2.0 * mass);
}

void UnitSystem::validate() const {
  require_positive(hbar, "hbar");
  require_positive(mass, "mass");
  require_positive(light_speed, "light_speed");
  const double m = m1();
  if (!std::isfinite(m) || !(m > 0.0)) {
    throw DomainError("unit system: m1 = sqrt(2m/hbar^2) is not finite");
  }
}

UnitSystem UnitSystem::natural() { return {1.0, 1.0, 137.036, "natural"}; }

UnitSystem UnitSystem::reduced_well() { return {1.0, 0.5, 137.036, "well"}; }

UnitSystem UnitSystem::electron_volt_nm() {
  return {197.3269804, 510998.95, 1.0, "ev-nm"};
}

UnitSystem UnitSystem::preset(const std::string& name) {
  if (name == "natural") return natural();
  if (name == "well") return reduced_well();
  if (name == "ev-nm") return electron_volt_nm();
  throw DomainError("unknown units preset '" + name +
                    "' (expected natural, well or ev-nm)");
}

std::string potential_name(const PotentialSpec& spec) {
  return std::visit(Overloaded{
                        [](const HydrogenLike&) { return "hydrogen"; },
                        [](const InfiniteSphericalWell&) { return "well"; },
                        [](const IsotropicHO&) { return "ho"; },
                        [](const HOSpinOrbit&) { return "hoso"; },
                        [](const Parabolic&) { return "parabolic"; },
                        [](const FreeParticle&) { return "free"; },
                    },
                    spec);
}

void validate_coupling(double j, int l, double s) {
  std::ostringstream msg;
  msg << "invalid coupling (j=" << j << ", l=" << l << ", s=" << s << ")";
  if (l < 0 || s < 0.0 || !is_integral(2.0 * j) || !is_integral(2.0 * s) ||
      !is_integral(j - l - s) || j < std::abs(l - s) - 1e-12 ||
      j > l + s + 1e-12 || j < 0.5 - 1e-12) {
    throw DomainError(msg.str());
  }
}

double coupling_bracket(double j, int l, double s) {
  return j * (j + 1.0) - l * (l + 1.0) - s * (s + 1.0);
}

double spin_orbit_constant(double omega, double j, int l, double s, double c0,
                           const UnitSystem& units, SpinOrbitMode mode) {
  validate_coupling(j, l, s);
  const double bracket = coupling_bracket(j, l, s);
  const double hw = units.hbar * omega;
  switch (mode) {
    case SpinOrbitMode::fixed_c0:
      return c0 / (2.0 * hw) * bracket * hw;
    case SpinOrbitMode::relativistic:
      return hw * hw /
             (2.0 * units.mass * units.light_speed * units.light_speed) *
             bracket;
    case SpinOrbitMode::relativistic_m_squared:
      return hw * hw /
             (2.0 * units.mass * units.mass * units.light_speed *
              units.light_speed) *
             bracket;
  }
  return 0.0;
}

double eval_potential(const PotentialSpec& spec, double r,
                      const UnitSystem& units, int l) {
  if (!(r > 0.0)) throw DomainError("potential: r must be > 0");
  return std::visit(
      Overloaded{
          [&](const HydrogenLike& p) {
            return -p.Z * p.e_charge * p.e_charge / r;
          },
          [&](const InfiniteSphericalWell& p) {
            return r < p.L ? 0.0 : kInfinity;
          },
          [&](const IsotropicHO& p) {
            return 0.5 * units.mass * p.omega * p.omega * r * r;
          },
          [&](const HOSpinOrbit& p) {
            return 0.5 * units.mass * p.omega * p.omega * r * r -
                   spin_orbit_constant(p.omega, p.j, l, p.s, p.c0, units,
                                       p.mode);
          },
          [&](const Parabolic& p) { return (p.a * r + p.b) * r + p.c; },
          [&](const FreeParticle&) { return 0.0; },
      },
      spec);
}

EffectivePotential::EffectivePotential(PotentialSpec spec, int l,
                                       UnitSystem units)
    : spec_(std::move(spec)), l_(l), units_(std::move(units)) {
  units_.validate();
  if (l_ < 0) throw DomainError("l must be >= 0");
  centrifugal_ = units_.hbar * units_.hbar * l_ * (l_ + 1.0) /
                 (2.0 * units_.mass);
  std::visit(
      Overloaded{
          [](const HydrogenLike& p) {
            if (p.Z < 1) throw DomainError("hydrogen: Z must be >= 1");
            require_positive(p.e_charge, "hydrogen: e");
          },
          [](const InfiniteSphericalWell& p) { require_positive(p.L, "well: L"); },
          [](const IsotropicHO& p) { require_positive(p.omega, "ho: omega"); },
          [&](const HOSpinOrbit& p) {
            require_positive(p.omega, "hoso: omega");
            if (p.mode == SpinOrbitMode::fixed_c0 && !(p.c0 >= 0.0)) {
              throw DomainError("hoso: c0 must be >= 0");
            }
            shift_ = spin_orbit_constant(p.omega, p.j, l_, p.s, p.c0, units_,
                                         p.mode);
          },
          [](const Parabolic& p) {
            require_positive(p.a, "parabolic: a");
            require_positive(p.b, "parabolic: b");
            require_positive(p.c, "parabolic: c");
          },
          [](const FreeParticle&) {},
      },
      spec_);
}

double EffectivePotential::potential(double r) const {
  if (const auto* so = std::get_if<HOSpinOrbit>(&spec_)) {
    // Same as eval_potential with the shift cached at construction.
    if (!(r > 0.0)) throw DomainError("potential: r must be > 0");
    return 0.5 * units_.mass * so->omega * so->omega * r * r - shift_;
  }
  return eval_potential(spec_, r, units_, l_);
}

double EffectivePotential::eval(double r) const {
  if (!(r > 0.0)) throw DomainError("effective potential: r must be > 0");
  const double v = potential(r);
  if (std::isinf(v)) return v;
  return v + centrifugal_ / (r * r);
}

double EffectivePotential::derivative(double r) const {
  if (!(r > 0.0)) throw DomainError("effective potential: r must be > 0");
  const double cent = -2.0 * centrifugal_ / (r * r * r);
  return std::visit(
      Overloaded{
          [&](const HydrogenLike& p) {
            return p.Z * p.e_charge * p.e_charge / (r * r) + cent;
          },
          [&](const InfiniteSphericalWell&) { return cent; },
          [&](const IsotropicHO& p) {
            return units_.mass * p.omega * p.omega * r + cent;
          },
          [&](const HOSpinOrbit& p) {
            return units_.mass * p.omega * p.omega * r + cent;
          },
          [&](const Parabolic& p) { return 2.0 * p.a * r + p.b + cent; },
          [&](const FreeParticle&) { return cent; },
      },
      spec_);
}

double EffectivePotential::domain_end() const {
  if (const auto* w = std::get_if<InfiniteSphericalWell>(&spec_)) return w->L;
  return kInfinity;
}

double eval_effective(const EffectivePotential& U, double r) {
  return U.eval(r);
}

EffectiveMinimum effective_minimum(const EffectivePotential& U) {
  const double cent = U.centrifugal_coeff();
  const int l = U.l();
  const UnitSystem& units = U.units();
  return std::visit(
      Overloaded{
          [&](const HydrogenLike& p) -> EffectiveMinimum {
            const double a = p.Z * p.e_charge * p.e_charge;
            if (l == 0) return {0.0, -kInfinity};
            return {2.0 * cent / a, -a * a / (4.0 * cent)};
          },
          [&](const InfiniteSphericalWell& p) -> EffectiveMinimum {
            if (l == 0) {
              throw DomainError("well with l = 0: U is flat, no interior minimum");
            }
            return {p.L, cent / (p.L * p.L)};
          },
          [&](const IsotropicHO& p) -> EffectiveMinimum {
            const double alpha = 0.5 * units.mass * p.omega * p.omega;
            if (l == 0) return {0.0, 0.0};
            return {std::pow(cent / alpha, 0.25),
                    2.0 * std::sqrt(alpha * cent)};
          },
          [&](const HOSpinOrbit& p) -> EffectiveMinimum {
            const double alpha = 0.5 * units.mass * p.omega * p.omega;
            if (l == 0) return {0.0, -U.spin_orbit_shift()};
            return {std::pow(cent / alpha, 0.25),
                    2.0 * std::sqrt(alpha * cent) - U.spin_orbit_shift()};
          },
          [&](const Parabolic& p) -> EffectiveMinimum {
            if (l == 0) return {0.0, p.c};
            // U' = 0 <=> 2a r^4 + b r^3 - 2 cent = 0, one positive root.
            // Bracket it with golden section, then polish on the analytic U'.
            double hi = 1.0;
            while (U.derivative(hi) < 0.0) hi *= 2.0;
            double lo = hi;
            while (U.derivative(lo) > 0.0) lo *= 0.5;
            double r = golden_section_minimize(U, lo, hi, 1e-10);
            for (int it = 0; it < 50; ++it) {
              const double g = U.derivative(r);
              const double curv = 2.0 * p.a + 6.0 * cent / (r * r * r * r);
              const double step = g / curv;
              r -= step;
              if (std::abs(step) <= 1e-15 * r) break;
            }
            return {r, U.eval(r)};
          },
          [&](const FreeParticle&) -> EffectiveMinimum {
            throw DomainError(
                "free particle: U is monotone, no interior minimum");
          },
      },
      U.spec());
}

}  // namespace radsolve
