#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "radsolve/potentials.hpp"

namespace radsolve {

enum class Method { closed_form, numeric };

/// Classical turning points r1 < r2 of E = U(r), with r0 = (r1 + r2) / 2 and
/// d = r2 - r1. r1 = 0 when there is no inner turning point (l = 0 wells and
/// the Coulomb case); r2 = L when the hard wall is reached first.
struct TurningPoints {
  double r1 = 0.0;
  double r2 = 0.0;
  double r0 = 0.0;
  double d = 0.0;
  double energy = 0.0;
  Method method = Method::numeric;
  bool r2_at_wall = false;

  static TurningPoints make(double r1, double r2, double energy, Method method,
                            bool r2_at_wall = false);
};

/// Closed form for HydrogenLike, InfiniteSphericalWell, IsotropicHO and
/// HOSpinOrbit.
bool has_closed_form_turning_points(const EffectivePotential& U);

TurningPoints closed_form_turning_points(const EffectivePotential& U,
                                         double energy);

/// Generic route: geometric sampling around the minimum of U, then bisection
/// to machine precision.
TurningPoints solve_turning_points(const EffectivePotential& U, double energy);

/// Closed form when available, the generic solver otherwise. Parabolic
/// potentials go through the quartic.
TurningPoints turning_points(const EffectivePotential& U, double energy);

/// Parabolic potentials: positive roots of a r^4 + b r^3 + (c - E) r^2 + delta,
/// keeping the pair that brackets the minimum of U.
TurningPoints quartic_turning_points(const EffectivePotential& U,
                                     double energy);

/// All real positive roots of a4 r^4 + a3 r^3 + a2 r^2 + a0, sorted.
std::vector<double> quartic_positive_roots(double a4, double a3, double a2,
                                           double a0);

/// Lower-level generic solver on an arbitrary U. `r_min` is the location of
/// the well minimum (0 for the limit r -> 0+), `domain_end` a hard wall or
/// +infinity. Scans [scan_lo, scan_hi] geometrically for extra sign changes
/// and throws AmbiguousRootsError if more than two roots surround the well.
TurningPoints find_turning_points(const std::function<double(double)>& U,
                                  double energy, double r_min,
                                  double domain_end);

}  // namespace radsolve
