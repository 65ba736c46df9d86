#pragma once

#include <optional>
#include <string>
#include <utility>

#include "radsolve/potentials.hpp"
#include "radsolve/turning_points.hpp"

namespace radsolve {

/// Quantization family: the ground formula 2hbar^2/(m d^2), or Kd = (2n-1)pi
/// (symmetric), Kd = 2n pi (antisymmetric), Kd = n pi (general).
struct EnergyBranch {
  enum class Kind { ground, symmetric, antisymmetric, general };

  Kind kind = Kind::ground;
  int n = 1;

  static EnergyBranch ground() { return {Kind::ground, 1}; }
  static EnergyBranch symmetric(int n);
  static EnergyBranch antisymmetric(int n);
  static EnergyBranch general(int n);

  /// "ground", "symmetric", "antisymmetric", "general".
  std::string name() const;
  static EnergyBranch parse(const std::string& name, int n);
};

enum class RootSign { plus, minus, not_applicable };

struct EnergyLevel {
  EnergyBranch branch;
  int l = 0;
  std::optional<double> j;
  double value = 0.0;
  double d_at_solution = 0.0;
  RootSign root_sign = RootSign::not_applicable;
  int iterations = 0;
  bool converged = false;
};

/// 2 hbar^2 / (m d^2), negated when `signed_energy` (bound-state convention).
double ground_energy_from_d(double d, const UnitSystem& units,
                            bool signed_energy);

struct DeltaModel {
  double k;
  double energy;
  double amplitude;  // |A| = sqrt(k)
};

/// Collapses U onto S delta(r - r0): k = m|S|/hbar^2, E = -m S^2/(2 hbar^2).
DeltaModel delta_model_energy(double S, const UnitSystem& units);

double excited_energy_from_d(double d, EnergyBranch branch,
                             const UnitSystem& units);

/// The d-independent factor g of a branch, so that E = g / d^2:
/// ground 2hbar^2/m, symmetric (2hbar^2 pi^2/m)(n - 1/2)^2, antisymmetric
/// (2hbar^2 pi^2/m) n^2, general (hbar^2 pi^2/2m) n^2.
double branch_factor(EnergyBranch branch, const UnitSystem& units);

struct SolveOptions {
  int max_iter = 200;
  double rel_tol = 1e-12;
  /// Negative energies with the signed ground formula (Coulomb bound states).
  bool signed_energy = false;
  /// Use the generic turning-point solver even where a closed form exists.
  bool numeric_turning_points = false;
};

/// Solves E = E_branch(d(E)) by bracketing plus bisection.
EnergyLevel self_consistent_energy(const EffectivePotential& U,
                                   EnergyBranch branch,
                                   const SolveOptions& opts = {});

/// -(m e^4 / 2 hbar^2) Z^2 / (1 + l(l+1))
double hydrogen_ground_energy(int Z, int l, const UnitSystem& units,
                              double e_charge = 1.0);

/// E^(1,2) = [(sqrt(a) +/- sqrt(g)) / L]^2 with a = hbar^2 l(l+1)/2m.
std::pair<double, double> well_energies(double L, int l, EnergyBranch branch,
                                        const UnitSystem& units);

/// g_n presets for the oscillator forms.
namespace gn {
/// (1/2) hbar omega [sqrt(l(l+1)) + sqrt(l(l+1) + g_n)] presets.
double oscillator(EnergyBranch branch);
/// (1/2) hbar omega [... + sqrt((...)^2 + 4 g_n)] presets with the spin-orbit
/// phase constant bound to pi: 4 g_n = 4, 4pi^2(n-1/2)^2, 4pi^2 n^2, pi^2 n^2.
double spin_orbit(EnergyBranch branch);
}  // namespace gn

/// (1/2) hbar omega [sqrt(l(l+1)) +/- sqrt(l(l+1) + g_n)]
double ho_energies(double omega, int l, double g_n, const UnitSystem& units,
                   RootSign sign = RootSign::plus);

/// (1/2) hbar omega [sqrt(l(l+1)) - C_j +/- sqrt((sqrt(l(l+1)) - C_j)^2 + 4g_n)]
/// with C_j = (c0 / 2 hbar omega) [j(j+1) - l(l+1) - s(s+1)].
double ho_spin_orbit_energies(double omega, int l, double j, double s,
                              double c0, double g_n, const UnitSystem& units,
                              RootSign sign = RootSign::plus);

/// Self-consistent levels of a r^2 + b r + c with d(E) from the quartic.
EnergyLevel parabolic_energies(double a, double b, double c, int l,
                               EnergyBranch branch, const UnitSystem& units,
                               const SolveOptions& opts = {});

}  // namespace radsolve
