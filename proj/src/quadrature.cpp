#include "radsolve/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <queue>
#include <sstream>
#include <vector>

#include "radsolve/errors.hpp"

namespace radsolve {

namespace {

// 15-point Kronrod abscissae/weights with the embedded 7-point Gauss weights.
constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
  double a;
  double b;
  double value;
  double error;
  long order;  // creation order, for deterministic tie-breaking
};

struct PanelLess {
  bool operator()(const Panel& x, const Panel& y) const {
    if (x.error != y.error) return x.error < y.error;
    return x.order > y.order;
  }
};

template <class H>
Panel gk15(const H& h, double a, double b, long order) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double fc = h(center);
  double kronrod = fc * kWgk[7];
  double gauss = fc * kWg[3];
  for (int j = 0; j < 7; ++j) {
    const double dx = half * kXgk[j];
    const double f1 = h(center - dx);
    const double f2 = h(center + dx);
    kronrod += kWgk[j] * (f1 + f2);
    if (j % 2 == 1) gauss += kWg[j / 2] * (f1 + f2);
  }
  kronrod *= half;
  gauss *= half;
  return {a, b, kronrod, std::abs(kronrod - gauss), order};
}

std::string describe(double lo, double hi) {
  std::ostringstream os;
  os << '[' << lo << ", " << hi << ']';
  return os.str();
}

double sqrt_u(const EffectivePotential& U, double r) {
  const double u = U.eval(r);
  return u > 0.0 ? std::sqrt(u) : 0.0;
}

// Samples U on the path and throws ComplexPhaseError naming the first
// sub-interval where U < 0.
void require_real_phase(const EffectivePotential& U, double a, double b) {
  if (a > b) std::swap(a, b);
  constexpr int kSamples = 64;
  const double step = (b - a) / kSamples;
  auto negative = [&](double r) { return r > 0.0 && U.eval(r) < 0.0; };
  int first = -1;
  int last = -1;
  for (int i = 0; i <= kSamples; ++i) {
    const double r = i == kSamples ? b : a + i * step;
    if (negative(r)) {
      if (first < 0) first = i;
      last = i;
    } else if (first >= 0) {
      break;
    }
  }
  if (first < 0) return;
  // Refine the edges of the offending run by bisection.
  double lo = first == 0 ? a : a + (first - 1) * step;
  double in = a + first * step;
  if (first > 0) {
    for (int it = 0; it < 60; ++it) {
      const double mid = 0.5 * (lo + in);
      (negative(mid) ? in : lo) = mid;
    }
  }
  double out_in = last == kSamples ? b : a + last * step;
  double hi = last == kSamples ? b : a + (last + 1) * step;
  if (last < kSamples) {
    for (int it = 0; it < 60; ++it) {
      const double mid = 0.5 * (out_in + hi);
      (negative(mid) ? out_in : hi) = mid;
    }
  }
  const double neg_lo = first == 0 ? a : in;
  const double neg_hi = last == kSamples ? b : out_in;
  throw ComplexPhaseError(
      "complex phase: U < 0 on " + describe(neg_lo, neg_hi), neg_lo, neg_hi);
}

double oscillator_alpha(const EffectivePotential& U) {
  const double omega = U.is<IsotropicHO>() ? U.as<IsotropicHO>().omega
                                           : U.as<HOSpinOrbit>().omega;
  return 0.5 * U.units().mass * omega * omega;
}

}  // namespace

IntegralResult adaptive_integral(const std::function<double(double)>& f,
                                 double lo, double hi, double tol) {
  if (lo == hi) return {0.0, 0.0, 0};
  if (hi < lo) {
    IntegralResult r = adaptive_integral(f, hi, lo, tol);
    r.value = -r.value;
    return r;
  }
  const double width = hi - lo;
  // x = lo + width * t^2 (3 - 2t); dx = 6 width t (1 - t) dt.
  auto h = [&](double t) {
    const double x = lo + width * t * t * (3.0 - 2.0 * t);
    const double jac = 6.0 * width * t * (1.0 - t);
    if (jac == 0.0) return 0.0;
    const double fx = f(x);
    if (!std::isfinite(fx)) {
      throw IntegrationError(
          "integrand is not finite at x = " + std::to_string(x), 0.0, kInfinity);
    }
    return fx * jac;
  };

  std::priority_queue<Panel, std::vector<Panel>, PanelLess> queue;
  long order = 0;
  Panel first = gk15(h, 0.0, 1.0, order++);
  double total = first.value;
  double total_err = first.error;
  queue.push(first);
  int panels = 1;

  try {
    while (total_err > tol * std::max(1.0, std::abs(total))) {
      if (panels >= kMaxPanels) {
        throw IntegrationError("adaptive_integral: panel limit exceeded on " +
                                   describe(lo, hi),
                               total, total_err);
      }
      const Panel worst = queue.top();
      queue.pop();
      const double mid = 0.5 * (worst.a + worst.b);
      if (!(mid > worst.a && mid < worst.b)) {
        throw IntegrationError(
            "adaptive_integral: panel collapsed (non-integrable singularity?) "
            "on " + describe(lo, hi),
            total, total_err);
      }
      const Panel left = gk15(h, worst.a, mid, order++);
      const Panel right = gk15(h, mid, worst.b, order++);
      total += left.value + right.value - worst.value;
      total_err += left.error + right.error - worst.error;
      queue.push(left);
      queue.push(right);
      ++panels;
    }
  } catch (const IntegrationError& e) {
    if (e.partial_value() == 0.0 && std::isinf(e.error_estimate())) {
      throw IntegrationError(e.what(), total, kInfinity);
    }
    throw;
  }

  // Re-sum from the panels so the value does not carry the running-update
  // rounding.
  double value = 0.0;
  double err = 0.0;
  std::vector<Panel> all;
  all.reserve(queue.size());
  while (!queue.empty()) {
    all.push_back(queue.top());
    queue.pop();
  }
  std::sort(all.begin(), all.end(),
            [](const Panel& x, const Panel& y) { return x.a < y.a; });
  for (const Panel& p : all) {
    value += p.value;
    err += p.error;
  }
  return {value, err, panels};
}

PhaseResult area_S(const EffectivePotential& U, const TurningPoints& tp) {
  const double r1 = tp.r1;
  const double r2 = tp.r2;
  const double cent = U.centrifugal_coeff();
  auto inverse_span = [&]() {
    if (cent == 0.0) return 0.0;
    if (r1 == 0.0) {
      throw IntegrationError("area S: centrifugal term diverges at r1 = 0",
                             kInfinity, kInfinity);
    }
    return cent * (1.0 / r1 - 1.0 / r2);
  };

  PhaseResult out;
  out.method = Method::closed_form;
  out.lower_limit = r1;
  if (U.is<InfiniteSphericalWell>() || U.is<FreeParticle>()) {
    out.value = inverse_span();
  } else if (U.is<IsotropicHO>() || U.is<HOSpinOrbit>()) {
    const double alpha = oscillator_alpha(U);
    out.value = alpha * (r2 * r2 * r2 - r1 * r1 * r1) / 3.0 + inverse_span() -
                U.spin_orbit_shift() * (r2 - r1);
  } else if (U.is<Parabolic>()) {
    const auto& p = U.as<Parabolic>();
    out.value = p.a * (r2 * r2 * r2 - r1 * r1 * r1) / 3.0 +
                p.b * (r2 * r2 - r1 * r1) / 2.0 + p.c * (r2 - r1) +
                inverse_span();
  } else {
    const auto& p = U.as<HydrogenLike>();
    const double a = p.Z * p.e_charge * p.e_charge;
    if (r1 == 0.0) {
      throw IntegrationError(
          "area S: -Ze^2/r is logarithmically divergent at r1 = 0", -kInfinity,
          kInfinity);
    }
    out.value = -a * std::log(r2 / r1) + inverse_span();
  }
  return out;
}

PhaseResult area_S_numeric(const EffectivePotential& U,
                           const TurningPoints& tp, double tol) {
  const double end = std::nextafter(U.domain_end(), 0.0);
  auto f = [&](double r) { return U.eval(std::min(r, end)); };
  const IntegralResult res = adaptive_integral(f, tp.r1, tp.r2, tol);
  return {res.value, Method::numeric, tp.r1, res.error_estimate};
}

bool has_closed_form_phase(const EffectivePotential& U) {
  return U.is<InfiniteSphericalWell>() || U.is<FreeParticle>() ||
         U.is<IsotropicHO>() || U.is<HOSpinOrbit>();
}

double phase_antiderivative(const EffectivePotential& U, double r) {
  const double m1 = U.units().m1();
  const double b = U.centrifugal_coeff();
  if (U.is<InfiniteSphericalWell>() || U.is<FreeParticle>()) {
    // m1 sqrt(b) = sqrt(l(l+1))
    return b == 0.0 ? 0.0 : m1 * std::sqrt(b) * std::log(r);
  }
  if (U.is<IsotropicHO>() || U.is<HOSpinOrbit>()) {
    // With u = r^2 and X = alpha u^2 + beta u + b, sqrt(U) dr = sqrt(X)/(2u) du.
    const double alpha = oscillator_alpha(U);
    const double beta = -U.spin_orbit_shift();
    const double u = r * r;
    const double X = std::max(0.0, (alpha * u + beta) * u + b);
    const double sx = std::sqrt(X);
    double F = sx;
    if (beta != 0.0) {
      F += beta / (2.0 * std::sqrt(alpha)) *
           std::log(2.0 * std::sqrt(alpha * X) + 2.0 * alpha * u + beta);
    }
    if (b != 0.0) {
      F -= std::sqrt(b) *
           std::log((2.0 * std::sqrt(b * X) + beta * u + 2.0 * b) / u);
    }
    return 0.5 * m1 * F;
  }
  throw DomainError("no closed-form phase for potential '" +
                    potential_name(U.spec()) + "'");
}

PhaseResult phase_Q_numeric(const EffectivePotential& U, double r,
                            double r_ref, double tol) {
  if (!(r > 0.0) || !(r_ref >= 0.0)) throw DomainError("phase: r must be > 0");
  if (r > U.domain_end() || r_ref > U.domain_end()) {
    throw DomainError("phase: r lies outside the hard wall");
  }
  require_real_phase(U, r_ref, r);
  const double m1 = U.units().m1();
  const double end = std::nextafter(U.domain_end(), 0.0);
  auto f = [&](double x) { return m1 * sqrt_u(U, std::min(x, end)); };
  const IntegralResult res = adaptive_integral(f, r_ref, r, tol);
  return {res.value, Method::numeric, r_ref, res.error_estimate};
}

PhaseResult phase_Q(const EffectivePotential& U, double r, double r_ref) {
  if (!(r > 0.0) || !(r_ref >= 0.0)) throw DomainError("phase: r must be > 0");
  if (r == r_ref) return {0.0, Method::closed_form, r_ref, 0.0};
  if (!has_closed_form_phase(U)) return phase_Q_numeric(U, r, r_ref);
  if (r > U.domain_end() || r_ref > U.domain_end()) {
    throw DomainError("phase: r lies outside the hard wall");
  }
  require_real_phase(U, r_ref, r);
  if (r_ref == 0.0 && U.centrifugal_coeff() != 0.0) {
    throw DomainError("phase: sqrt(U) is not integrable from r = 0 for l > 0");
  }
  // For l = 0 the antiderivatives are regular at 0; evaluate the reference
  // at the smallest positive double instead of log(0).
  const double ref_val = phase_antiderivative(U, r_ref == 0.0 ? 1e-300 : r_ref);
  return {phase_antiderivative(U, r) - ref_val, Method::closed_form, r_ref,
          0.0};
}

}  // namespace radsolve
