#include "radsolve/spectrum.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <tuple>

#include "radsolve/errors.hpp"

namespace radsolve {

namespace {

constexpr double kPi = std::numbers::pi;

void require_n(int n) {
  if (n < 1) throw DomainError("quantum number n must be >= 1");
}

void require_d(double d) {
  if (!(d > 0.0) || !std::isfinite(d)) {
    throw DomainError("turning-point width d must be finite and > 0");
  }
}

}  // namespace

EnergyBranch EnergyBranch::symmetric(int n) {
  require_n(n);
  return {Kind::symmetric, n};
}

EnergyBranch EnergyBranch::antisymmetric(int n) {
  require_n(n);
  return {Kind::antisymmetric, n};
}

EnergyBranch EnergyBranch::general(int n) {
  require_n(n);
  return {Kind::general, n};
}

std::string EnergyBranch::name() const {
  switch (kind) {
    case Kind::ground:
      return "ground";
    case Kind::symmetric:
      return "symmetric";
    case Kind::antisymmetric:
      return "antisymmetric";
    case Kind::general:
      return "general";
  }
  return "?";
}

EnergyBranch EnergyBranch::parse(const std::string& name, int n) {
  if (name == "ground") return ground();
  if (name == "symmetric") return symmetric(n);
  if (name == "antisymmetric") return antisymmetric(n);
  if (name == "general") return general(n);
  throw DomainError("unknown branch '" + name +
                    "' (expected ground, symmetric, antisymmetric, general)");
}

double ground_energy_from_d(double d, const UnitSystem& units,
                            bool signed_energy) {
  require_d(d);
  const double e = 2.0 * units.hbar * units.hbar / (units.mass * d * d);
  return signed_energy ? -e : e;
}

DeltaModel delta_model_energy(double S, const UnitSystem& units) {
  if (S == 0.0 || !std::isfinite(S)) {
    throw DomainError("delta model: S = 0 gives no bound state");
  }
  const double h2 = units.hbar * units.hbar;
  const double k = units.mass * std::abs(S) / h2;
  return {k, -units.mass * S * S / (2.0 * h2), std::sqrt(k)};
}

double branch_factor(EnergyBranch branch, const UnitSystem& units) {
  const double h2m = units.hbar * units.hbar / units.mass;
  const double n = branch.n;
  switch (branch.kind) {
    case EnergyBranch::Kind::ground:
      return 2.0 * h2m;
    case EnergyBranch::Kind::symmetric:
      return 2.0 * h2m * kPi * kPi * (n - 0.5) * (n - 0.5);
    case EnergyBranch::Kind::antisymmetric:
      return 2.0 * h2m * kPi * kPi * n * n;
    case EnergyBranch::Kind::general:
      return 0.5 * h2m * kPi * kPi * n * n;
  }
  return 0.0;
}

double excited_energy_from_d(double d, EnergyBranch branch,
                             const UnitSystem& units) {
  require_d(d);
  return branch_factor(branch, units) / (d * d);
}

EnergyLevel self_consistent_energy(const EffectivePotential& U,
                                   EnergyBranch branch,
                                   const SolveOptions& opts) {
  double floor = 0.0;
  if (!(U.is<InfiniteSphericalWell>() && U.l() == 0)) {
    floor = effective_minimum(U).u_min;
  }
  const double g = branch_factor(branch, U.units());
  const double sign = opts.signed_energy ? -1.0 : 1.0;

  auto width = [&](double e) {
    return opts.numeric_turning_points ? solve_turning_points(U, e).d
                                       : turning_points(U, e).d;
  };
  auto h = [&](double e) {
    const double d = width(e);
    return e - sign * g / (d * d);
  };

  // Bracket [lo, hi] with h(lo) and h(hi) of opposite sign. Near the floor
  // d -> 0, so h -> -inf (unsigned) or +inf (signed).
  const double scale = std::isfinite(floor) ? std::max(1.0, std::abs(floor)) : 1.0;
  auto near_floor = [&]() {
    double delta = 1e-10 * scale;
    for (int k = 0; k < 40; ++k, delta *= 10.0) {
      try {
        const double e = floor + delta;
        return std::make_pair(e, h(e));
      } catch (const NoAllowedRegionError&) {
      }
    }
    throw ConvergenceError("self-consistent energy: cannot start above the floor",
                           floor);
  };

  double lo = 0.0;
  double hlo = 0.0;
  double hi = 0.0;
  double hhi = 0.0;
  if (!opts.signed_energy) {
    std::tie(lo, hlo) = near_floor();
    if (!(hlo < 0.0)) {
      throw ConvergenceError("self-consistent energy: no bracketing interval",
                             lo);
    }
    double step = scale;
    hi = std::max(lo, 0.0) + step;
    bool found = false;
    for (int k = 0; k < 2000; ++k) {
      try {
        hhi = h(hi);
        if (hhi > 0.0) {
          found = true;
          break;
        }
        lo = hi;
        hlo = hhi;
      } catch (const NoAllowedRegionError&) {
      }
      step *= 2.0;
      hi = std::max(lo, 0.0) + step;
    }
    if (!found) {
      throw ConvergenceError("self-consistent energy: no bracketing interval",
                             hi);
    }
  } else {
    if (!(floor < 0.0)) {
      throw ConvergenceError(
          "signed self-consistent energy: U has no negative region", floor);
    }
    // hi close to zero from below: d is large, h ~ E < 0.
    hi = -1e-10 * scale;
    hhi = h(hi);
    if (!(hhi < 0.0)) {
      throw ConvergenceError("self-consistent energy: no bracketing interval",
                             hi);
    }
    if (std::isfinite(floor)) {
      std::tie(lo, hlo) = near_floor();
    } else {
      lo = -scale;
      hlo = h(lo);
      for (int k = 0; k < 2000 && !(hlo > 0.0); ++k) {
        hi = lo;
        hhi = hlo;
        lo *= 2.0;
        hlo = h(lo);
      }
    }
    if (!(hlo > 0.0)) {
      throw ConvergenceError("self-consistent energy: no bracketing interval",
                             lo);
    }
  }

  EnergyLevel level;
  level.branch = branch;
  level.l = U.l();
  if (U.is<HOSpinOrbit>()) level.j = U.as<HOSpinOrbit>().j;
  level.root_sign = opts.signed_energy ? RootSign::not_applicable : RootSign::plus;

  int it = 0;
  double mid = 0.5 * (lo + hi);
  for (; it < opts.max_iter; ++it) {
    mid = 0.5 * (lo + hi);
    if (std::abs(hi - lo) <= opts.rel_tol * std::max(std::abs(lo), std::abs(hi))) {
      level.converged = true;
      break;
    }
    const double hm = h(mid);
    if (hm == 0.0) {
      level.converged = true;
      break;
    }
    if ((hm < 0.0) == (hlo < 0.0)) {
      lo = mid;
      hlo = hm;
    } else {
      hi = mid;
    }
  }
  level.iterations = it;
  level.value = mid;
  if (!level.converged) {
    std::ostringstream msg;
    msg << "self-consistent energy did not converge in " << opts.max_iter
        << " iterations (last iterate " << mid << ")";
    throw ConvergenceError(msg.str(), mid);
  }
  level.d_at_solution = width(mid);
  return level;
}

double hydrogen_ground_energy(int Z, int l, const UnitSystem& units,
                              double e_charge) {
  if (Z < 1 || l < 0) throw DomainError("hydrogen: need Z >= 1 and l >= 0");
  const double e2 = e_charge * e_charge;
  return -(units.mass * e2 * e2 / (2.0 * units.hbar * units.hbar)) * Z * Z /
         (1.0 + l * (l + 1.0));
}

std::pair<double, double> well_energies(double L, int l, EnergyBranch branch,
                                        const UnitSystem& units) {
  if (!(L > 0.0)) throw DomainError("well: L must be > 0");
  if (l < 0) throw DomainError("l must be >= 0");
  const double a = units.hbar * units.hbar * l * (l + 1.0) / (2.0 * units.mass);
  const double g = branch_factor(branch, units);
  const double plus = (std::sqrt(a) + std::sqrt(g)) / L;
  const double minus = (std::sqrt(a) - std::sqrt(g)) / L;
  return {plus * plus, minus * minus};
}

namespace gn {

double oscillator(EnergyBranch branch) {
  const double n = branch.n;
  switch (branch.kind) {
    case EnergyBranch::Kind::ground:
      return 4.0;
    case EnergyBranch::Kind::symmetric:
      return 4.0 * (n - 0.5) * (n - 0.5) * kPi * kPi;
    case EnergyBranch::Kind::antisymmetric:
      return 4.0 * n * n * kPi * kPi;
    case EnergyBranch::Kind::general:
      return n * n * kPi * kPi;
  }
  return 0.0;
}

double spin_orbit(EnergyBranch branch) { return oscillator(branch) / 4.0; }

}  // namespace gn

double ho_energies(double omega, int l, double g_n, const UnitSystem& units,
                   RootSign sign) {
  if (!(g_n > 0.0)) throw DomainError("g_n must be > 0");
  if (l < 0) throw DomainError("l must be >= 0");
  const double ll = std::sqrt(l * (l + 1.0));
  const double root = std::sqrt(l * (l + 1.0) + g_n);
  const double s = sign == RootSign::minus ? -1.0 : 1.0;
  return 0.5 * units.hbar * omega * (ll + s * root);
}

double ho_spin_orbit_energies(double omega, int l, double j, double s,
                              double c0, double g_n, const UnitSystem& units,
                              RootSign sign) {
  if (!(g_n > 0.0)) throw DomainError("g_n must be > 0");
  validate_coupling(j, l, s);
  const double hw = units.hbar * omega;
  const double cj = c0 / (2.0 * hw) * coupling_bracket(j, l, s);
  const double base = std::sqrt(l * (l + 1.0)) - cj;
  const double root = std::sqrt(base * base + 4.0 * g_n);
  const double sg = sign == RootSign::minus ? -1.0 : 1.0;
  return 0.5 * hw * (base + sg * root);
}

EnergyLevel parabolic_energies(double a, double b, double c, int l,
                               EnergyBranch branch, const UnitSystem& units,
                               const SolveOptions& opts) {
  const EffectivePotential U(Parabolic{a, b, c}, l, units);
  return self_consistent_energy(U, branch, opts);
}

}  // namespace radsolve
