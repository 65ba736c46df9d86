#include "radsolve/wavefunctions.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "radsolve/errors.hpp"
#include "radsolve/quadrature.hpp"

namespace radsolve {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr int kPhaseKnots = 256;

void require_grid(std::span<const double> grid) {
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!(grid[i] > 0.0)) throw DomainError("sample grid: r must be > 0");
    if (i > 0 && !(grid[i] > grid[i - 1])) {
      throw DomainError("sample grid must be strictly increasing");
    }
  }
}

}  // namespace

PhaseFunction::PhaseFunction(const EffectivePotential& U, double r_ref,
                             double r_end)
    : potential_(&U),
      r_ref_(r_ref),
      r_end_(r_end),
      closed_form_(has_closed_form_phase(U)) {
  // Validates reality of the phase over the whole support up front.
  if (r_end > r_ref) (void)phase_Q(U, r_end, r_ref);
  if (closed_form_) {
    ref_value_ = phase_antiderivative(U, r_ref == 0.0 ? 1e-300 : r_ref);
    return;
  }
  const double m1 = U.units().m1();
  auto f = [&U, m1](double x) {
    const double u = U.eval(x);
    return u > 0.0 ? m1 * std::sqrt(u) : 0.0;
  };
  knots_.resize(kPhaseKnots + 1);
  cumulative_.assign(kPhaseKnots + 1, 0.0);
  for (int i = 0; i <= kPhaseKnots; ++i) {
    knots_[i] = r_ref + (r_end - r_ref) * i / kPhaseKnots;
  }
  knots_.back() = r_end;
  for (int i = 1; i <= kPhaseKnots; ++i) {
    cumulative_[i] = cumulative_[i - 1] +
                     adaptive_integral(f, knots_[i - 1], knots_[i], 1e-13).value;
  }
}

double PhaseFunction::operator()(double r) const {
  if (r == r_ref_) return 0.0;
  if (closed_form_) {
    return phase_antiderivative(*potential_, r) - ref_value_;
  }
  if (r < r_ref_ || r > r_end_) {
    return phase_Q_numeric(*potential_, r, r_ref_).value;
  }
  const auto it = std::upper_bound(knots_.begin(), knots_.end(), r);
  const auto i = static_cast<std::size_t>(std::max<std::ptrdiff_t>(
      0, std::distance(knots_.begin(), it) - 1));
  if (r == knots_[i]) return cumulative_[i];
  const EffectivePotential& U = *potential_;
  const double m1 = U.units().m1();
  auto f = [&U, m1](double x) {
    const double u = U.eval(x);
    return u > 0.0 ? m1 * std::sqrt(u) : 0.0;
  };
  return cumulative_[i] + adaptive_integral(f, knots_[i], r, 1e-13).value;
}

RadialWaveFunction::RadialWaveFunction(
    std::shared_ptr<const EffectivePotential> U, TurningPoints tp,
    Parity parity, int n)
    : potential_(std::move(U)), tp_(tp), parity_(parity), n_(n) {
  if (!(tp_.energy > 0.0)) {
    throw DomainError("wavefunction: energy must be > 0");
  }
  K_ = potential_->units().m1() * std::sqrt(tp_.energy);
  carrier_k_ = parity == Parity::symmetric ? (2.0 * n - 1.0) * kPi / tp_.d
                                           : 2.0 * n * kPi / tp_.d;
  phase_ = std::make_shared<PhaseFunction>(*potential_, tp_.r1, tp_.r2);
}

RadialWaveFunction RadialWaveFunction::bound_state(const EffectivePotential& U,
                                                   Parity parity, int n) {
  const EnergyBranch branch = parity == Parity::symmetric
                                  ? EnergyBranch::symmetric(n)
                                  : EnergyBranch::antisymmetric(n);
  const EnergyLevel level = self_consistent_energy(U, branch);
  auto owned = std::make_shared<const EffectivePotential>(U);
  const TurningPoints tp = radsolve::turning_points(*owned, level.value);
  return RadialWaveFunction(std::move(owned), tp, parity, n);
}

RadialWaveFunction RadialWaveFunction::with_carrier_wavenumber(double k) const {
  if (!(k > 0.0)) throw DomainError("carrier wavenumber must be > 0");
  RadialWaveFunction out = *this;
  out.carrier_k_ = k;
  return out;
}

RadialWaveFunction RadialWaveFunction::with_uncentered_carrier() const {
  RadialWaveFunction out = *this;
  out.centered_ = false;
  return out;
}

RadialWaveFunction RadialWaveFunction::with_amplitude(double amplitude) const {
  if (!(amplitude >= 0.0) || !std::isfinite(amplitude)) {
    throw DomainError("amplitude must be finite and >= 0");
  }
  RadialWaveFunction out = *this;
  out.amplitude_ = amplitude;
  return out;
}

double RadialWaveFunction::carrier(double r) const {
  const double x = centered_ ? r - tp_.r0 : r;
  return parity_ == Parity::symmetric ? std::cos(carrier_k_ * x)
                                      : std::sin(carrier_k_ * x);
}

double RadialWaveFunction::F(double r) const {
  if (r < tp_.r1 || r > tp_.r2) return 0.0;
  return amplitude_ * carrier(r) * std::exp(-(*phase_)(r));
}

double RadialWaveFunction::operator()(double r) const {
  if (!(r > 0.0)) throw DomainError("radial wavefunction: r must be > 0");
  return F(r) / r;
}

double eval_radial(const RadialWaveFunction& wf, double r) { return wf(r); }

double norm_integral(const RadialWaveFunction& wf) {
  const TurningPoints& tp = wf.turning_points();
  const IntegralResult res = adaptive_integral(
      [&wf](double r) {
        const double f = wf.F(r);
        return f * f;
      },
      tp.r1, tp.r2, 1e-10);
  return res.value;
}

RadialWaveFunction normalize(const RadialWaveFunction& wf) {
  const RadialWaveFunction unit = wf.with_amplitude(1.0);
  const double norm = norm_integral(unit);
  if (!std::isfinite(norm)) throw NotNormalizableError("norm diverges");
  if (!(norm > 0.0)) throw NotNormalizableError("norm is zero");
  return unit.with_amplitude(1.0 / std::sqrt(norm));
}

BoundaryResiduals boundary_residuals(const RadialWaveFunction& wf) {
  const TurningPoints& tp = wf.turning_points();
  constexpr int kSamples = 10000;
  double max_abs = 0.0;
  for (int i = 0; i <= kSamples; ++i) {
    const double r = tp.r1 + tp.d * i / kSamples;
    max_abs = std::max(max_abs, std::abs(wf.F(r)));
  }
  return {std::abs(wf.F(tp.r1)), std::abs(wf.F(tp.r2)), max_abs};
}

double delta_model_wavefunction(double k, double r0, double r) {
  if (!(k > 0.0)) throw DomainError("delta model: k must be > 0");
  return std::sqrt(k) * std::exp(-k * std::abs(r - r0));
}

double evanescent_eval(const EffectivePotential& U, double energy, double r,
                       double r_ref) {
  if (!(r > 0.0) || !(r_ref > 0.0)) {
    throw DomainError("evanescent: r must be > 0");
  }
  if (r == r_ref) return 1.0;
  // Endpoints may sit on a turning point; the interior must be forbidden.
  constexpr int kSamples = 64;
  const double a = std::min(r, r_ref);
  const double b = std::max(r, r_ref);
  for (int i = 0; i <= kSamples; ++i) {
    const double x = a + (b - a) * i / kSamples;
    const double gap = U.eval(x) - energy;
    const bool endpoint = i == 0 || i == kSamples;
    if (endpoint ? gap < 0.0 : !(gap > 0.0)) {
      throw DomainError("classically allowed; use eval_radial");
    }
  }
  const double m1 = U.units().m1();
  const IntegralResult res = adaptive_integral(
      [&](double x) { return m1 * std::sqrt(std::max(0.0, U.eval(x) - energy)); },
      r_ref, r, 1e-12);
  return std::exp(-res.value);
}

double FreeParticleWave::r1() const { return std::sqrt(l * (l + 1.0)) / K; }

namespace {

std::complex<double> carrier_value(Carrier c, double x) {
  switch (c) {
    case Carrier::exp_plus:
      return std::polar(1.0, x);
    case Carrier::exp_minus:
      return std::polar(1.0, -x);
    case Carrier::cos:
      return std::cos(x);
    case Carrier::sin:
      return std::sin(x);
  }
  return 0.0;
}

void require_free(const FreeParticleWave& fp) {
  if (fp.l < 0) throw DomainError("free particle: l must be >= 0");
  if (!(fp.K > 0.0)) throw DomainError("free particle: K must be > 0");
}

}  // namespace

std::complex<double> free_particle_radial(const FreeParticleWave& fp,
                                          double r) {
  require_free(fp);
  if (!(r > 0.0)) throw DomainError("free particle: r must be > 0");
  // Q = sqrt(l(l+1)) ln r; e^{+Q} below 1 and e^{-Q} above is e^{-|Q|}.
  const double q = std::sqrt(fp.l * (fp.l + 1.0)) * std::log(r);
  return fp.amplitude * carrier_value(fp.carrier, fp.K * r) / r *
         std::exp(-std::abs(q));
}

FreeParticleWave normalize(const FreeParticleWave& fp) {
  require_free(fp);
  throw NotNormalizableError(
      "free particle (l = " + std::to_string(fp.l) +
      "): continuum state, the coefficient A is left to the caller");
}

double free_particle_norm_integral(const FreeParticleWave& fp, double r_cut) {
  require_free(fp);
  const double lo = std::max(fp.r1(), 1e-300);
  if (!(r_cut > lo)) return 0.0;
  auto density = [&fp](double r) {
    return std::norm(r * free_particle_radial(fp, r));
  };
  // Split at r = 1 where the envelope has a kink.
  double total = 0.0;
  if (lo < 1.0) {
    total += adaptive_integral(density, lo, std::min(1.0, r_cut), 1e-10).value;
  }
  if (r_cut > 1.0) {
    const double a = std::max(1.0, lo);
    // Panels of roughly one carrier period keep the quadrature honest for
    // long cuts.
    const double period = 2.0 * kPi / fp.K;
    for (double x = a; x < r_cut; x += 64.0 * period) {
      total += adaptive_integral(density, x, std::min(r_cut, x + 64.0 * period),
                                 1e-10)
                   .value;
    }
  }
  return total;
}

std::vector<WaveSample> sample_wavefunction_serial(
    const RadialWaveFunction& wf, std::span<const double> grid) {
  require_grid(grid);
  std::vector<WaveSample> out(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    out[i] = {grid[i], wf(grid[i]), 0.0, false};
  }
  return out;
}

std::vector<WaveSample> sample_wavefunction_serial(
    const FreeParticleWave& fp, std::span<const double> grid) {
  require_grid(grid);
  require_free(fp);
  const double r1 = fp.r1();
  std::vector<WaveSample> out(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const auto v = free_particle_radial(fp, grid[i]);
    out[i] = {grid[i], v.real(), v.imag(), grid[i] < r1};
  }
  return out;
}

std::vector<WaveSample> sample_wavefunction(const RadialWaveFunction& wf,
                                            std::span<const double> grid) {
  require_grid(grid);
  std::vector<WaveSample> out(grid.size());
  const auto n = static_cast<std::ptrdiff_t>(grid.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    out[i] = {grid[i], wf(grid[i]), 0.0, false};
  }
  return out;
}

std::vector<WaveSample> sample_wavefunction(const FreeParticleWave& fp,
                                            std::span<const double> grid) {
  require_grid(grid);
  require_free(fp);
  const double r1 = fp.r1();
  std::vector<WaveSample> out(grid.size());
  const auto n = static_cast<std::ptrdiff_t>(grid.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    const auto v = free_particle_radial(fp, grid[i]);
    out[i] = {grid[i], v.real(), v.imag(), grid[i] < r1};
  }
  return out;
}

std::vector<double> uniform_grid(double lo, double hi, int n) {
  if (n < 0) throw DomainError("grid size must be >= 0");
  std::vector<double> g(static_cast<std::size_t>(n));
  if (n == 1) {
    g[0] = lo;
    return g;
  }
  for (int i = 0; i < n; ++i) {
    g[i] = i == n - 1 ? hi : lo + (hi - lo) * i / (n - 1);
  }
  return g;
}

}  // namespace radsolve
