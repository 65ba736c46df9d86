#pragma once

#include <cmath>
#include <limits>
#include <string>
#include <variant>

namespace radsolve {

/// Constants every formula is expressed in. `light_speed` only enters the
/// relativistic spin-orbit constant.
struct UnitSystem {
  double hbar = 1.0;
  double mass = 1.0;
  double light_speed = 137.036;
  std::string label = "natural";

  /// sqrt(2 m / hbar^2), the factor in front of every phase integral.
  double m1() const;
  /// hbar^2 / (2 m)
  double kinetic_scale() const;

  void validate() const;

  /// hbar = m = 1, c = 137.036.
  static UnitSystem natural();
  /// hbar = 1, m = 1/2, so hbar^2/2m = 1 and well energies come out directly
  /// in units of hbar^2/(2 m L^2) for L = 1.
  static UnitSystem reduced_well();
  /// Energies in eV, lengths in nm, c = 1: hbar carries hbar*c in eV nm and
  /// mass carries m_e c^2 in eV.
  static UnitSystem electron_volt_nm();
  /// Looks up one of the presets above by name ("natural", "well", "ev-nm").
  static UnitSystem preset(const std::string& name);
};

/// e^2 in eV nm (alpha * hbar * c), for HydrogenLike in the eV/nm preset.
inline constexpr double kCoulombEvNm = 1.43996454784;

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

struct HydrogenLike {
  int Z = 1;
  double e_charge = 1.0;
};

/// V = 0 on (0, L), +infinity elsewhere.
struct InfiniteSphericalWell {
  double L = 1.0;
};

struct IsotropicHO {
  double omega = 1.0;
};

enum class SpinOrbitMode {
  /// C = (c0 / 2 hbar omega) [j(j+1) - l(l+1) - s(s+1)] hbar omega
  fixed_c0,
  /// C = (hbar^2 omega^2 / 2 m c^2) [...]
  relativistic,
  /// C = (hbar^2 omega^2 / 2 m^2 c^2) [...], the variant with m squared
  relativistic_m_squared,
};

/// Oscillator plus the constant spin-orbit shift -C_lsj.
struct HOSpinOrbit {
  double omega = 1.0;
  double j = 0.5;
  double s = 0.5;
  double c0 = 0.0;
  SpinOrbitMode mode = SpinOrbitMode::fixed_c0;
};

/// V = a r^2 + b r + c
struct Parabolic {
  double a = 1.0;
  double b = 1.0;
  double c = 1.0;
};

struct FreeParticle {};

using PotentialSpec = std::variant<HydrogenLike, InfiniteSphericalWell,
                                   IsotropicHO, HOSpinOrbit, Parabolic,
                                   FreeParticle>;

std::string potential_name(const PotentialSpec& spec);

/// Validates a (j, l, s) coupling: 2j and 2s integral, |l - s| <= j <= l + s,
/// j - l - s integral.
void validate_coupling(double j, int l, double s);

/// j(j+1) - l(l+1) - s(s+1)
double coupling_bracket(double j, int l, double s);

double spin_orbit_constant(double omega, double j, int l, double s, double c0,
                           const UnitSystem& units, SpinOrbitMode mode);

/// Central potential V(r). Hard walls return kInfinity. `l` only matters for
/// HOSpinOrbit, whose constant shift depends on the (j, l, s) coupling.
double eval_potential(const PotentialSpec& spec, double r,
                      const UnitSystem& units, int l = 0);

/// U(r) = V(r) + hbar^2 l(l+1) / (2 m r^2) for a fixed potential, l and units.
class EffectivePotential {
 public:
  EffectivePotential(PotentialSpec spec, int l, UnitSystem units);

  const PotentialSpec& spec() const { return spec_; }
  int l() const { return l_; }
  const UnitSystem& units() const { return units_; }
  double centrifugal_coeff() const { return centrifugal_; }

  /// C_lsj for HOSpinOrbit, 0 otherwise.
  double spin_orbit_shift() const { return shift_; }

  double operator()(double r) const { return eval(r); }
  double eval(double r) const;
  double potential(double r) const;
  /// dU/dr inside the allowed domain (analytic per variant).
  double derivative(double r) const;

  /// Right edge of the domain: L for the well, +infinity otherwise.
  double domain_end() const;

  template <class T>
  bool is() const {
    return std::holds_alternative<T>(spec_);
  }
  template <class T>
  const T& as() const {
    return std::get<T>(spec_);
  }

 private:
  PotentialSpec spec_;
  int l_;
  UnitSystem units_;
  double centrifugal_;
  double shift_ = 0.0;
};

double eval_effective(const EffectivePotential& U, double r);

struct EffectiveMinimum {
  double r_min;
  double u_min;
};

/// Global minimum of U on its domain. r_min = 0 stands for the limit r -> 0+
/// (l = 0 oscillator-like and Coulomb cases, the latter with u_min = -inf).
/// For the well with l >= 1 the minimum sits on the wall r = L.
EffectiveMinimum effective_minimum(const EffectivePotential& U);

/// Golden-section minimization of f on [lo, hi]; returns the abscissa.
template <class F>
double golden_section_minimize(const F& f, double lo, double hi,
                               double tol = 1e-12) {
  constexpr double kInvPhi = 0.6180339887498949;
  double x1 = hi - kInvPhi * (hi - lo);
  double x2 = lo + kInvPhi * (hi - lo);
  double f1 = f(x1);
  double f2 = f(x2);
  for (int it = 0; it < 400 && (hi - lo) > tol * (1.0 + std::abs(lo)); ++it) {
    if (f1 < f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - kInvPhi * (hi - lo);
      f1 = f(x1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + kInvPhi * (hi - lo);
      f2 = f(x2);
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace radsolve
