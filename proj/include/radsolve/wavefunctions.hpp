#pragma once

#include <complex>
#include <memory>
#include <span>
#include <vector>

#include "radsolve/potentials.hpp"
#include "radsolve/spectrum.hpp"
#include "radsolve/turning_points.hpp"

namespace radsolve {

/// Q(r) = m1 * integral of sqrt(U) from a fixed reference point. Closed forms
/// where the potential has one; otherwise a table of cumulative integrals at
/// knots plus one short adaptive integral per evaluation.
class PhaseFunction {
 public:
  PhaseFunction(const EffectivePotential& U, double r_ref, double r_end);

  double operator()(double r) const;
  double reference() const { return r_ref_; }
  bool closed_form() const { return closed_form_; }

 private:
  const EffectivePotential* potential_ = nullptr;
  double r_ref_;
  double r_end_;
  bool closed_form_;
  double ref_value_ = 0.0;
  std::vector<double> knots_;
  std::vector<double> cumulative_;
};

enum class Parity { symmetric, antisymmetric };

/// Damped periodic solution on [r1, r2]:
///   symmetric      F = A cos(k (r - r0)) e^{-Q(r)}
///   antisymmetric  F = B sin(k (r - r0)) e^{-Q(r)}
/// with k = (2n-1) pi / d or 2n pi / d when quantized. F vanishes outside
/// [r1, r2]. R(r) = F(r) / r.
class RadialWaveFunction {
 public:
  /// Quantized state: energy from the self-consistent solver on the
  /// symmetric(n) / antisymmetric(n) branch.
  static RadialWaveFunction bound_state(const EffectivePotential& U,
                                        Parity parity, int n);

  /// Same turning points, carrier wavenumber replaced (detuning checks).
  RadialWaveFunction with_carrier_wavenumber(double k) const;
  /// Uses k r instead of k (r - r0) in the carrier. Off by default; the
  /// centered form is the one that satisfies F(r1) = F(r2) = 0.
  RadialWaveFunction with_uncentered_carrier() const;
  RadialWaveFunction with_amplitude(double amplitude) const;

  const TurningPoints& turning_points() const { return tp_; }
  const EffectivePotential& potential() const { return *potential_; }
  double K() const { return K_; }
  double carrier_wavenumber() const { return carrier_k_; }
  Parity parity() const { return parity_; }
  int n() const { return n_; }
  double amplitude() const { return amplitude_; }
  bool centered() const { return centered_; }
  const PhaseFunction& phase() const { return *phase_; }

  /// cos or sin factor alone.
  double carrier(double r) const;
  /// F(r) = r R(r); defined at r = 0 as well.
  double F(double r) const;
  /// R(r)
  double operator()(double r) const;

 private:
  RadialWaveFunction(std::shared_ptr<const EffectivePotential> U,
                     TurningPoints tp, Parity parity, int n);

  std::shared_ptr<const EffectivePotential> potential_;
  TurningPoints tp_;
  double K_ = 0.0;
  double carrier_k_ = 0.0;
  Parity parity_ = Parity::symmetric;
  int n_ = 1;
  double amplitude_ = 1.0;
  bool centered_ = true;
  std::shared_ptr<const PhaseFunction> phase_;
};

double eval_radial(const RadialWaveFunction& wf, double r);

/// Rescales the amplitude so that the integral of F^2 over [r1, r2] is 1.
RadialWaveFunction normalize(const RadialWaveFunction& wf);

/// Integral of F^2 over [r1, r2].
double norm_integral(const RadialWaveFunction& wf);

struct BoundaryResiduals {
  double at_r1;
  double at_r2;
  /// max |F| over a dense grid on [r1, r2], the scale the residuals are
  /// judged against.
  double max_abs;
};

BoundaryResiduals boundary_residuals(const RadialWaveFunction& wf);

/// Delta-model ground state sqrt(k) e^{-k |r - r0|}.
double delta_model_wavefunction(double k, double r0, double r);

/// exp(-m1 * integral from r_ref to r of sqrt(U - E)) in a classically
/// forbidden stretch. Throws DomainError if E >= U somewhere on the path.
double evanescent_eval(const EffectivePotential& U, double energy, double r,
                       double r_ref);

enum class Carrier { exp_plus, exp_minus, cos, sin };

/// Free-particle radial function A (f(r)/r) e^{-|Q(r)|} with
/// Q = sqrt(l(l+1)) ln r: e^{+Q} below r = 1, e^{-Q} above.
struct FreeParticleWave {
  int l = 0;
  double K = 1.0;
  Carrier carrier = Carrier::cos;
  double amplitude = 1.0;

  /// Inner turning point sqrt(a/E) = sqrt(l(l+1)) / K.
  double r1() const;
};

std::complex<double> free_particle_radial(const FreeParticleWave& fp,
                                          double r);

/// Continuum states carry a caller-chosen amplitude: always throws
/// NotNormalizableError.
FreeParticleWave normalize(const FreeParticleWave& fp);

/// Integral of |F|^2 = |r R|^2 from r1 to r_cut, for inspecting how the norm
/// behaves as the cut moves out.
double free_particle_norm_integral(const FreeParticleWave& fp, double r_cut);

struct WaveSample {
  double r;
  double re;
  double im;
  /// Point lies where the solution is defined to vanish (free particle
  /// domain I, r < r1), even though the formula is evaluated there.
  bool excluded;
};

/// Pointwise evaluation over a strictly increasing grid of r > 0. Runs the
/// points in parallel with OpenMP when available; results are identical to
/// the serial version.
std::vector<WaveSample> sample_wavefunction(const RadialWaveFunction& wf,
                                            std::span<const double> grid);
std::vector<WaveSample> sample_wavefunction(const FreeParticleWave& fp,
                                            std::span<const double> grid);

/// Serial reference implementations, kept for testing and benchmarking.
std::vector<WaveSample> sample_wavefunction_serial(
    const RadialWaveFunction& wf, std::span<const double> grid);
std::vector<WaveSample> sample_wavefunction_serial(
    const FreeParticleWave& fp, std::span<const double> grid);

/// n uniformly spaced points on [lo, hi].
std::vector<double> uniform_grid(double lo, double hi, int n);

}  // namespace radsolve
