#include "radsolve/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <vector>

#include "radsolve/errors.hpp"

namespace radsolve::oracles {

std::string source_name(Source s) {
  switch (s) {
    case Source::bessel_well:
      return "bessel_well";
    case Source::analytic_ho:
      return "analytic_ho";
    case Source::perturbed_ho_so:
      return "perturbed_ho_so";
    case Source::bohr:
      return "bohr";
    case Source::numerov:
      return "numerov";
  }
  return "?";
}

double spherical_bessel(int l, double x) {
  if (!(x > 0.0)) throw DomainError("spherical_bessel: x must be > 0");
  if (l < 0) throw DomainError("spherical_bessel: l must be >= 0");
  const double s = std::sin(x);
  const double c = std::cos(x);
  double jm = s / x;
  if (l == 0) return jm;
  double j = s / (x * x) - c / x;
  for (int k = 1; k < l; ++k) {
    const double next = (2.0 * k + 1.0) / x * j - jm;
    jm = j;
    j = next;
  }
  return j;
}

double bessel_zero(int l, int n) {
  if (n < 1) throw DomainError("bessel_zero: n must be >= 1");
  if (l < 0 || l > 6) throw DomainError("bessel_zero: supported l is 0..6");
  // The first zero of j_l lies above l + 1, and upward recurrence is only
  // trustworthy for x >= l/2, so the scan starts at max(l, 0.5).
  constexpr double kStep = 0.05;
  double x = std::max(static_cast<double>(l), 0.5);
  double fx = spherical_bessel(l, x);
  int found = 0;
  for (int it = 0; it < 1000000; ++it) {
    const double x2 = x + kStep;
    const double f2 = spherical_bessel(l, x2);
    if ((fx < 0.0) != (f2 < 0.0)) {
      if (++found == n) {
        double lo = x;
        double hi = x2;
        double flo = fx;
        while (hi - lo > 1e-14 * hi) {
          const double mid = 0.5 * (lo + hi);
          const double fm = spherical_bessel(l, mid);
          if ((fm < 0.0) == (flo < 0.0)) {
            lo = mid;
            flo = fm;
          } else {
            hi = mid;
          }
        }
        return 0.5 * (lo + hi);
      }
    }
    x = x2;
    fx = f2;
  }
  throw DomainError("bessel_zero: zero not found");
}

OracleEnergy well_oracle_energy(double L, int l, int n,
                                const UnitSystem& units) {
  if (!(L > 0.0)) throw DomainError("well: L must be > 0");
  const double beta = bessel_zero(l, n);
  return {Source::bessel_well, n, l, std::nullopt,
          units.hbar * units.hbar / (2.0 * units.mass * L * L) * beta * beta};
}

namespace {

void require_index(int n_index, Indexing indexing) {
  const int base = indexing == Indexing::from_zero ? 0 : 1;
  if (n_index < base) {
    throw DomainError("oscillator oracle: n below the indexing base");
  }
}

}  // namespace

OracleEnergy ho_oracle_energy(int n_index, int l, double omega,
                              const UnitSystem& units, Indexing indexing) {
  require_index(n_index, indexing);
  if (l < 0) throw DomainError("l must be >= 0");
  return {Source::analytic_ho, n_index, l, std::nullopt,
          (2.0 * n_index + l + 1.5) * units.hbar * omega};
}

OracleEnergy ho_so_oracle_energy(int n_index, int l, double j, double s,
                                 double c0, double omega,
                                 const UnitSystem& units, Indexing indexing) {
  require_index(n_index, indexing);
  validate_coupling(j, l, s);
  const double hw = units.hbar * omega;
  const double bracket = j * (j + 1.0) - l * (l + 1.0) - s * (s + 1.0);
  return {Source::perturbed_ho_so, n_index, l, j,
          (2.0 * n_index + l + 1.5) * hw - c0 / (2.0 * hw) * bracket * hw};
}

OracleEnergy bohr_energy(int Z, int n_principal, const UnitSystem& units,
                         double e_charge) {
  if (n_principal < 1) throw DomainError("bohr: n must be >= 1");
  if (Z < 1) throw DomainError("bohr: Z must be >= 1");
  const double e2 = e_charge * e_charge;
  const double ry = units.mass * e2 * e2 / (2.0 * units.hbar * units.hbar);
  return {Source::bohr, n_principal, 0, std::nullopt,
          -ry * Z * Z / (static_cast<double>(n_principal) * n_principal)};
}

namespace {

// Natural length of each potential, used to size the Numerov grid.
double length_scale(const EffectivePotential& U) {
  const UnitSystem& u = U.units();
  if (U.is<InfiniteSphericalWell>()) return U.as<InfiniteSphericalWell>().L;
  if (U.is<IsotropicHO>()) {
    return std::sqrt(u.hbar / (u.mass * U.as<IsotropicHO>().omega));
  }
  if (U.is<HOSpinOrbit>()) {
    return std::sqrt(u.hbar / (u.mass * U.as<HOSpinOrbit>().omega));
  }
  if (U.is<HydrogenLike>()) {
    const auto& p = U.as<HydrogenLike>();
    return u.hbar * u.hbar / (u.mass * p.Z * p.e_charge * p.e_charge);
  }
  if (U.is<Parabolic>()) {
    return std::pow(u.hbar * u.hbar / (2.0 * u.mass * U.as<Parabolic>().a),
                    0.25);
  }
  throw DomainError("numerov: free particle has no bound states");
}

struct Grid {
  double step;
  int points;  // including r = 0
  bool wall;
};

Grid make_grid(const EffectivePotential& U, double e_hi,
               const NumerovOptions& opts) {
  const double scale = length_scale(U);
  if (U.is<InfiniteSphericalWell>()) {
    const double L = U.as<InfiniteSphericalWell>().L;
    const int intervals = std::max(16, static_cast<int>(std::lround(1.0 / opts.step)));
    return {L / intervals, intervals + 1, true};
  }
  const double h = opts.step * scale;
  // Walk past the outer classical turning point at e_hi, then far enough
  // into the forbidden region that exp(-integral of kappa) is negligible.
  const double k2 = 2.0 * U.units().mass / (U.units().hbar * U.units().hbar);
  double r = scale;
  while (U.eval(r) < e_hi) {
    r *= 1.05;
    if (r > 1e6 * scale) {
      throw DomainError("numerov: no outer turning point below e_hi (unbound)");
    }
  }
  double decay = 0.0;
  while (decay < 36.0) {
    decay += std::sqrt(std::max(0.0, k2 * (U.eval(r) - e_hi))) * h;
    r += h;
    if (r > 1e6 * scale) break;
  }
  return {h, static_cast<int>(std::ceil(r / h)) + 1, false};
}

int count_nodes(const EffectivePotential& U, double energy, const Grid& grid) {
  const double h = grid.step;
  const double k2 = 2.0 * U.units().mass / (U.units().hbar * U.units().hbar);
  const int l = U.l();
  const double end = std::nextafter(U.domain_end(), 0.0);
  auto g = [&](double r) { return k2 * (U.eval(std::min(r, end)) - energy); };
  const double c = h * h / 12.0;

  // F(0) = 0, F(h) = h^(l+1). The g F product at r = 0 is its limit
  // l(l+1) r^(l-1): 2 for l = 1, 0 otherwise.
  double y_prev = 0.0;
  double gy_prev = l == 1 ? 2.0 : 0.0;
  double y = std::pow(h, l + 1);
  double g_cur = g(h);
  int nodes = 0;
  for (int i = 2; i < grid.points; ++i) {
    const double r_next = i * h;
    const double g_next = g(r_next);
    const double y_next =
        (2.0 * y * (1.0 + 5.0 * c * g_cur) - (y_prev - c * gy_prev)) /
        (1.0 - c * g_next);
    if ((y_next < 0.0) != (y < 0.0) && y_next != 0.0) ++nodes;
    y_prev = y;
    gy_prev = g_cur * y;
    y = y_next;
    g_cur = g_next;
    if (std::abs(y) > 1e100) {
      y_prev *= 1e-100;
      gy_prev *= 1e-100;
      y *= 1e-100;
    }
  }
  return nodes;
}

}  // namespace

int numerov_node_count(const EffectivePotential& U, double energy,
                       const NumerovOptions& opts) {
  return count_nodes(U, energy, make_grid(U, energy, opts));
}

OracleEnergy numerov_bound_state(const EffectivePotential& U, int node_target,
                                 double e_lo, double e_hi,
                                 const NumerovOptions& opts) {
  if (!(e_lo < e_hi)) throw DomainError("numerov: need e_lo < e_hi");
  if (node_target < 0) throw DomainError("numerov: node_target must be >= 0");
  const Grid grid = make_grid(U, e_hi, opts);
  // N(E) counts nodes on [0, r_max] including the outer end; it steps from
  // node_target to node_target + 1 exactly at the eigenvalue.
  const int n_lo = count_nodes(U, e_lo, grid);
  const int n_hi = count_nodes(U, e_hi, grid);
  if (n_lo > node_target || n_hi <= node_target) {
    std::ostringstream msg;
    msg << "numerov: bracket [" << e_lo << ", " << e_hi
        << "] holds no state with " << node_target << " nodes (node counts "
        << n_lo << ".." << n_hi << ")";
    throw DomainError(msg.str());
  }
  double lo = e_lo;
  double hi = e_hi;
  while (hi - lo > opts.rel_tol * std::max(1.0, std::abs(hi))) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (count_nodes(U, mid, grid) > node_target) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  std::optional<double> j;
  if (U.is<HOSpinOrbit>()) j = U.as<HOSpinOrbit>().j;
  return {Source::numerov, node_target, U.l(), j, 0.5 * (lo + hi)};
}

}  // namespace radsolve::oracles
