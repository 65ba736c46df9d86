#include "radsolve/turning_points.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "radsolve/errors.hpp"

namespace radsolve {

namespace {

constexpr double kDegenerate = 64.0 * std::numeric_limits<double>::epsilon();

[[noreturn]] void throw_no_region(double energy) {
  std::ostringstream msg;
  msg << "no classically allowed region at E = " << energy;
  throw NoAllowedRegionError(msg.str());
}

[[noreturn]] void throw_below_barrier(double energy) {
  std::ostringstream msg;
  msg << "E = " << energy << " lies below the centrifugal barrier";
  throw NoAllowedRegionError(msg.str());
}

// Bisects g on [lo, hi] (g(lo), g(hi) of opposite sign) until the midpoint
// is no longer representable, then returns the endpoint with the smaller |g|.
template <class G>
double bisect_to_machine(const G& g, double lo, double hi) {
  double glo = g(lo);
  double ghi = g(hi);
  for (int it = 0; it < 2000; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const double gm = g(mid);
    if (gm == 0.0) return mid;
    if ((gm < 0.0) == (glo < 0.0)) {
      lo = mid;
      glo = gm;
    } else {
      hi = mid;
      ghi = gm;
    }
  }
  return std::abs(glo) <= std::abs(ghi) ? lo : hi;
}

double poly4(double a4, double a3, double a2, double a0, double r) {
  return ((a4 * r + a3) * r + a2) * r * r + a0;
}

double dpoly4(double a4, double a3, double a2, double r) {
  return ((4.0 * a4 * r + 3.0 * a3) * r + 2.0 * a2) * r;
}

}  // namespace

TurningPoints TurningPoints::make(double r1, double r2, double energy,
                                  Method method, bool r2_at_wall) {
  TurningPoints tp;
  tp.r1 = r1;
  tp.r2 = r2;
  tp.r0 = 0.5 * (r1 + r2);
  tp.d = r2 - r1;
  tp.energy = energy;
  tp.method = method;
  tp.r2_at_wall = r2_at_wall;
  if (!(tp.d > 0.0)) throw_no_region(energy);
  return tp;
}

bool has_closed_form_turning_points(const EffectivePotential& U) {
  return U.is<HydrogenLike>() || U.is<InfiniteSphericalWell>() ||
         U.is<IsotropicHO>() || U.is<HOSpinOrbit>();
}

TurningPoints closed_form_turning_points(const EffectivePotential& U,
                                         double energy) {
  const double b = U.centrifugal_coeff();
  const UnitSystem& units = U.units();

  if (U.is<HydrogenLike>()) {
    const auto& p = U.as<HydrogenLike>();
    if (!(energy < 0.0)) {
      throw NoAllowedRegionError(
          "hydrogen: E >= 0 has no outer turning point (unbound)");
    }
    const double a = p.Z * p.e_charge * p.e_charge;
    const double abs_e = -energy;
    const double disc = a * a - 4.0 * b * abs_e;
    if (disc < 0.0) throw_below_barrier(energy);
    if (disc <= kDegenerate * a * a) throw_no_region(energy);
    const double root = std::sqrt(disc);
    // r1 via the product of roots b/|E| to avoid cancellation.
    const double r1 = b == 0.0 ? 0.0 : 2.0 * b / (a + root);
    const double r2 = (a + root) / (2.0 * abs_e);
    return TurningPoints::make(r1, r2, energy, Method::closed_form);
  }

  if (U.is<InfiniteSphericalWell>()) {
    const double L = U.as<InfiniteSphericalWell>().L;
    if (!(energy > 0.0)) throw_no_region(energy);
    const double r1 = std::sqrt(b / energy);
    if (r1 > L) throw_below_barrier(energy);
    if (L - r1 <= kDegenerate * L) throw_no_region(energy);
    return TurningPoints::make(r1, L, energy, Method::closed_form, true);
  }

  if (U.is<IsotropicHO>() || U.is<HOSpinOrbit>()) {
    const double omega = U.is<IsotropicHO>() ? U.as<IsotropicHO>().omega
                                             : U.as<HOSpinOrbit>().omega;
    const double alpha = 0.5 * units.mass * omega * omega;
    const double e_eff = energy + U.spin_orbit_shift();
    if (!(e_eff > 0.0)) throw_below_barrier(energy);
    if (b == 0.0) {
      return TurningPoints::make(0.0, std::sqrt(e_eff / alpha), energy,
                                 Method::closed_form);
    }
    const double disc = e_eff * e_eff - 4.0 * alpha * b;
    if (disc < -kDegenerate * e_eff * e_eff) throw_below_barrier(energy);
    if (disc <= kDegenerate * e_eff * e_eff) throw_no_region(energy);
    const double root = std::sqrt(disc);
    const double r2 = std::sqrt((e_eff + root) / (2.0 * alpha));
    const double r1 = std::sqrt(2.0 * b / (e_eff + root));
    return TurningPoints::make(r1, r2, energy, Method::closed_form);
  }

  throw DomainError("no closed-form turning points for potential '" +
                    potential_name(U.spec()) + "'");
}

TurningPoints find_turning_points(const std::function<double(double)>& U,
                                  double energy, double r_min,
                                  double domain_end) {
  auto g = [&](double r) { return U(r) - energy; };

  // A point inside the allowed region.
  double r_in = r_min;
  if (r_in >= domain_end) r_in = std::nextafter(domain_end, 0.0);
  if (r_in <= 0.0) {
    r_in = std::isfinite(domain_end) ? 0.5 * domain_end : 1.0;
    for (int k = 0; k < 2200 && g(r_in) >= 0.0; ++k) r_in *= 0.5;
    if (!(r_in > 0.0)) throw_no_region(energy);
  }
  const double g_in = g(r_in);
  if (!(g_in < -1e-12 * std::max(1.0, std::abs(energy)))) {
    throw_no_region(energy);
  }

  // Inner root: geometric descent until U > E; if U stays below E all the way
  // down there is no inner turning point.
  double r1 = 0.0;
  {
    double prev = r_in;
    double r = r_in * 0.5;
    while (r > 1e-300) {
      if (g(r) >= 0.0) {
        r1 = bisect_to_machine(g, r, prev);
        break;
      }
      prev = r;
      r *= 0.5;
    }
  }

  // Outer root: doubling until U > E or the wall is hit.
  double r2 = 0.0;
  bool wall = false;
  {
    double prev = r_in;
    double r = r_in * 2.0;
    for (;;) {
      if (r >= domain_end) {
        if (g(std::nextafter(domain_end, 0.0)) < 0.0) {
          r2 = domain_end;
          wall = true;
        } else {
          r2 = bisect_to_machine(g, prev, std::nextafter(domain_end, 0.0));
        }
        break;
      }
      if (g(r) >= 0.0) {
        r2 = bisect_to_machine(g, prev, r);
        break;
      }
      if (r > 1e300) {
        throw NoAllowedRegionError(
            "no outer turning point: U stays below E as r grows (unbound)");
      }
      prev = r;
      r *= 2.0;
    }
  }

  // Extra sign changes anywhere in the scanned range mean the well is not a
  // single basin at this energy.
  {
    const double scan_lo = 1e-6 * (r1 > 0.0 ? r1 : r2);
    double scan_hi = std::min(1e3 * r2, std::nextafter(domain_end, 0.0));
    constexpr int kSamples = 4000;
    const double ratio = std::pow(scan_hi / scan_lo, 1.0 / (kSamples - 1));
    std::vector<double> roots;
    double prev_r = scan_lo;
    double prev_g = g(prev_r);
    for (int i = 1; i < kSamples; ++i) {
      const double r = i == kSamples - 1 ? scan_hi : scan_lo * std::pow(ratio, i);
      const double gr = g(r);
      if ((gr >= 0.0) != (prev_g >= 0.0)) {
        roots.push_back(bisect_to_machine(g, prev_r, r));
      }
      prev_r = r;
      prev_g = gr;
    }
    const std::size_t expected = (r1 > 0.0 ? 1u : 0u) + (wall ? 0u : 1u);
    if (roots.size() > expected) {
      std::ostringstream msg;
      msg << "ambiguous turning points at E = " << energy << ": roots";
      for (double x : roots) msg << ' ' << x;
      throw AmbiguousRootsError(msg.str());
    }
  }

  return TurningPoints::make(r1, r2, energy, Method::numeric, wall);
}

TurningPoints solve_turning_points(const EffectivePotential& U,
                                   double energy) {
  double r_min = 0.0;
  if (U.is<InfiniteSphericalWell>() && U.l() == 0) {
    if (!(energy > 0.0)) throw_no_region(energy);
  } else {
    const EffectiveMinimum m = effective_minimum(U);
    if (energy <= m.u_min + 1e-12 * std::max(1.0, std::abs(m.u_min))) {
      throw_no_region(energy);
    }
    r_min = m.r_min;
  }
  return find_turning_points([&U](double r) { return U.eval(r); }, energy,
                             r_min, U.domain_end());
}

std::vector<double> quartic_positive_roots(double a4, double a3, double a2,
                                           double a0) {
  if (!(a4 > 0.0)) throw DomainError("quartic: leading coefficient must be > 0");
  const double cmax = std::max({std::abs(a3), std::abs(a2), std::abs(a0)});
  const double bound = 1.0 + cmax / a4;
  auto p = [&](double r) { return poly4(a4, a3, a2, a0, r); };

  constexpr int kGrid = 10000;
  const double lo = bound * 1e-15;
  const double ratio = std::pow(bound / lo, 1.0 / (kGrid - 1));

  std::vector<double> roots;
  double prev_r = lo;
  double prev_p = p(lo);
  if (prev_p == 0.0) roots.push_back(lo);
  for (int i = 1; i < kGrid; ++i) {
    const double r = i == kGrid - 1 ? bound : lo * std::pow(ratio, i);
    const double pr = p(r);
    if (pr == 0.0) {
      roots.push_back(r);
    } else if (prev_p != 0.0 && (pr < 0.0) != (prev_p < 0.0)) {
      // Safeguarded Newton inside the sign-change bracket.
      double a = prev_r;
      double b = r;
      double fa = prev_p;
      double x = 0.5 * (a + b);
      for (int it = 0; it < 200; ++it) {
        const double fx = p(x);
        if (fx == 0.0) break;
        if ((fx < 0.0) == (fa < 0.0)) {
          a = x;
          fa = fx;
        } else {
          b = x;
        }
        const double dfx = dpoly4(a4, a3, a2, x);
        double next = dfx != 0.0 ? x - fx / dfx : 0.5 * (a + b);
        if (!(next > a && next < b)) next = 0.5 * (a + b);
        const bool done = std::abs(next - x) <= 1e-15 * std::abs(x) ||
                          (b - a) <= 1e-15 * std::abs(x);
        x = next;
        if (done) break;
      }
      roots.push_back(x);
    }
    prev_r = r;
    prev_p = pr;
  }
  std::sort(roots.begin(), roots.end());
  return roots;
}

TurningPoints quartic_turning_points(const EffectivePotential& U,
                                     double energy) {
  if (!U.is<Parabolic>()) {
    throw DomainError("quartic turning points apply to parabolic potentials");
  }
  const auto& p = U.as<Parabolic>();
  const EffectiveMinimum m = effective_minimum(U);
  if (energy <= m.u_min + 1e-12 * std::max(1.0, std::abs(m.u_min))) {
    throw_no_region(energy);
  }
  const auto roots =
      quartic_positive_roots(p.a, p.b, p.c - energy, U.centrifugal_coeff());
  double r1 = -1.0;
  double r2 = -1.0;
  for (double r : roots) {
    if (r < m.r_min) r1 = r;
    if (r > m.r_min && r2 < 0.0) r2 = r;
  }
  if (r1 < 0.0 && U.l() == 0) r1 = 0.0;
  if (r1 < 0.0 || r2 < 0.0) throw_no_region(energy);
  return TurningPoints::make(r1, r2, energy, Method::numeric);
}

TurningPoints turning_points(const EffectivePotential& U, double energy) {
  if (has_closed_form_turning_points(U)) {
    return closed_form_turning_points(U, energy);
  }
  if (U.is<Parabolic>()) return quartic_turning_points(U, energy);
  return solve_turning_points(U, energy);
}

}  // namespace radsolve
