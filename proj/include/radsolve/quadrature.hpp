#pragma once

#include <functional>

#include "radsolve/potentials.hpp"
#include "radsolve/turning_points.hpp"

namespace radsolve {

struct IntegralResult {
  double value = 0.0;
  double error_estimate = 0.0;
  int panels = 0;
};

inline constexpr int kMaxPanels = 1 << 16;

/// Globally adaptive 15-point Gauss-Kronrod quadrature. The interval is first
/// mapped through x = lo + (hi - lo) t^2 (3 - 2t), which turns inverse square
/// root endpoint singularities into smooth integrands. Stops when the summed
/// error estimate is below tol * max(1, |value|). Throws IntegrationError
/// (carrying the partial value) after kMaxPanels panels or when the
/// integrand stops being finite.
IntegralResult adaptive_integral(const std::function<double(double)>& f,
                                 double lo, double hi, double tol = 1e-10);

/// Area S or phase Q with its provenance.
struct PhaseResult {
  double value = 0.0;
  Method method = Method::numeric;
  double lower_limit = 0.0;
  double estimated_error = 0.0;
};

/// S = integral of U from r1 to r2.
PhaseResult area_S(const EffectivePotential& U, const TurningPoints& tp);
PhaseResult area_S_numeric(const EffectivePotential& U,
                           const TurningPoints& tp, double tol = 1e-10);

/// Q(r) = m1 * integral of sqrt(U) from r_ref to r, normalized so that
/// Q(r_ref) = 0. Throws ComplexPhaseError if U < 0 somewhere on the path.
PhaseResult phase_Q(const EffectivePotential& U, double r, double r_ref);
PhaseResult phase_Q_numeric(const EffectivePotential& U, double r,
                            double r_ref, double tol = 1e-12);

/// Whether phase_Q has an antiderivative for this potential (well, free
/// particle, oscillator, oscillator with spin-orbit shift).
bool has_closed_form_phase(const EffectivePotential& U);

/// Antiderivative of m1 sqrt(U) up to an additive constant. Only valid where
/// has_closed_form_phase(U) and U(r) >= 0.
double phase_antiderivative(const EffectivePotential& U, double r);

}  // namespace radsolve
