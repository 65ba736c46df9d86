#pragma once

#include <optional>
#include <string>

#include "radsolve/potentials.hpp"

// Reference results that do not go through the turning-point/phase machinery:
// spherical Bessel zeros, textbook spectra and a Numerov shooting solver.
namespace radsolve::oracles {

enum class Source { bessel_well, analytic_ho, perturbed_ho_so, bohr, numerov };

std::string source_name(Source s);

struct OracleEnergy {
  Source source;
  int n = 0;
  int l = 0;
  std::optional<double> j;
  double value = 0.0;
};

/// Which integer the first radial state carries in (2n + l + 3/2) hbar omega.
enum class Indexing { from_zero, from_one };

/// j_l(x) by upward recurrence from j_0 = sin x / x, j_1 = sin x/x^2 - cos x/x.
double spherical_bessel(int l, double x);

/// n-th positive zero of j_l (n >= 1, 0 <= l <= 6), by sign-change scan and
/// bisection.
double bessel_zero(int l, int n);

/// (hbar^2 / 2 m L^2) beta_{nl}^2
OracleEnergy well_oracle_energy(double L, int l, int n,
                                const UnitSystem& units);

/// (2n + l + 3/2) hbar omega
OracleEnergy ho_oracle_energy(int n_index, int l, double omega,
                              const UnitSystem& units, Indexing indexing);

/// (2n + l + 3/2) hbar omega - (c0 / 2 hbar omega)[j(j+1) - l(l+1) - s(s+1)] hbar omega
OracleEnergy ho_so_oracle_energy(int n_index, int l, double j, double s,
                                 double c0, double omega,
                                 const UnitSystem& units, Indexing indexing);

/// -(m e^4 / 2 hbar^2) Z^2 / n^2
OracleEnergy bohr_energy(int Z, int n_principal, const UnitSystem& units,
                         double e_charge = 1.0);

struct NumerovOptions {
  /// Grid step in units of the potential's natural length.
  double step = 1e-3;
  double rel_tol = 1e-12;
};

/// Eigenvalue of -(hbar^2/2m) F'' + U F = E F with F(0) = 0 and a decaying
/// (or hard-wall) outer boundary, located by node-counting bisection in
/// [e_lo, e_hi]. The state is the one whose wavefunction has `node_target`
/// interior nodes.
OracleEnergy numerov_bound_state(const EffectivePotential& U, int node_target,
                                 double e_lo, double e_hi,
                                 const NumerovOptions& opts = {});

/// Interior nodes of the outward Numerov solution at energy E (exposed for
/// tests).
int numerov_node_count(const EffectivePotential& U, double energy,
                       const NumerovOptions& opts = {});

}  // namespace radsolve::oracles
