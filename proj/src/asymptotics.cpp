/*
 * nessent: entanglement measures for biased tight-binding chains
 * Copyright 2026 nessent developers
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 */

#include "nessent/asymptotics.hpp"

#include <cmath>
#include <exception>
#include <limits>
#include <stdexcept>

#include "nessent/quadrature.hpp"
#include "nessent/symbols.hpp"

namespace nessent {

namespace {

constexpr double kPi = M_PI;

void check_order_alpha(double n, double alpha) {
  if (!(n > 0.0)) throw std::domain_error("Renyi order must be positive");
  if (!(std::abs(alpha) <= kPi + 1e-12))
    throw std::domain_error("alpha must lie in [-pi, pi]");
}

// e^{i alpha}, snapped to exactly -1 at alpha = +-pi so that kernel
// singularities are detected exactly (matches the exact path).
Complex phase_factor(double alpha) {
  if (std::abs(std::abs(alpha) - kPi) < 1e-15) return {-1.0, 0.0};
  return std::exp(Complex(0.0, alpha));
}

bool at_pi(double alpha) { return std::abs(std::abs(alpha) - kPi) < 1e-12; }

// A point of the substitution u = ln((x - nu)/(1 - x)) mapping the
// kernel interval (nu, 1) onto the real line. 1-x and 1+x are carried
// separately so powers near the endpoints stay accurate.
struct UPoint {
  double x;
  double one_minus_x;
  double one_plus_x;
  double dxdu;
};

UPoint u_point(double u, double nu) {
  const double eu = std::exp(u);
  UPoint p;
  p.one_minus_x = (1.0 - nu) / (1.0 + eu);
  p.x = 1.0 - p.one_minus_x;
  p.one_plus_x = (1.0 + nu + 2.0 * eu) / (1.0 + eu);
  const double sech_half = 1.0 / std::cosh(0.5 * u);
  p.dxdu = 0.25 * (1.0 - nu) * sech_half * sech_half;
  return p;
}

// d/dx e_n^{(alpha)}(1, x), with (1 +- x)/2 taken from the stable
// split representation.
Complex e_prime(double n, const Complex& eia, const UPoint& p) {
  const double a = 0.5 * p.one_plus_x;
  const double b = 0.5 * p.one_minus_x;
  const double pa = std::pow(a, n - 1.0);
  const double pb = std::pow(b, n - 1.0);
  const Complex num = 0.5 * n * (pa * eia - pb);
  const Complex den = a * pa * eia + b * pb;
  return num / den;
}

// Truncation radius in u; the integrands decay like e^{-min(n,1)|u|}.
double u_cutoff(double n) {
  return std::min(600.0, 50.0 / std::min(n, 1.0) + 50.0);
}

// int over (nu, 1) of weight(u) * f, transformed to u space and split
// at u = 0 and at the image of x = 0 (where the kernel denominator can
// get small as alpha nears +-pi).
Complex u_integral(double nu, double n,
                   const std::function<Complex(double, const UPoint&)>& f) {
  const double U = u_cutoff(n);
  std::vector<double> panels{-U};
  if (nu < 0.0 && nu > -1.0) {
    const double u0 = std::log(-nu);
    if (u0 > -U && u0 < 0.0) panels.push_back(u0);
  }
  panels.push_back(0.0);
  panels.push_back(U);
  Complex total{0.0, 0.0};
  QuadratureSpec spec;
  spec.abs_tol = 1e-13;
  spec.rel_tol = 1e-12;
  for (std::size_t i = 0; i + 1 < panels.size(); ++i) {
    total += integrate([&](double u) { return f(u, u_point(u, nu)); },
                       panels[i], panels[i + 1], spec)
                 .value;
  }
  return total;
}

bool jump_kernel_divergent(double nu, double alpha) {
  return at_pi(alpha) && nu <= 1e-14 && nu > -1.0 + 1e-12;
}

Complex q_minus_one(double n, double alpha) {
  return Complex(
      (1.0 / 12.0) * (1.0 / n - n) - alpha * alpha / (4.0 * kPi * kPi * n),
      0.0);
}

// Closed form of Q_1; the quadrature path is cross-checked against it
// in the tests.
Complex q_one_closed(double nu, double alpha) {
  const Complex z =
      std::exp(Complex(0.0, -0.5 * alpha)) *
      (Complex(std::cos(0.5 * alpha), 0.0) +
       Complex(0.0, nu * std::sin(0.5 * alpha)));
  const Complex lz = std::log(z);
  return lz * lz / (4.0 * kPi * kPi);
}

KernelValue divergent_kernel() {
  KernelValue kv;
  kv.value = {std::numeric_limits<double>::infinity(), 0.0};
  kv.divergent = true;
  return kv;
}

double clamp_nu(double nu) {
  if (nu < -1.0 - 1e-12 || nu > 1.0 + 1e-12)
    throw std::domain_error("nu outside [-1, 1]");
  return std::min(1.0, std::max(-1.0, nu));
}

}  // namespace

Complex kernel_e(double n, double alpha, double x, double nu) {
  check_order_alpha(n, alpha);
  if (x < std::abs(nu) - 1e-12)
    throw std::domain_error("kernel_e requires x >= |nu|");
  const double a = std::max(0.0, 0.5 * (x + nu));
  const double b = std::max(0.0, 0.5 * (x - nu));
  const Complex arg = std::pow(a, n) * phase_factor(alpha) + std::pow(b, n);
  if (arg == Complex{0.0, 0.0})
    return {-std::numeric_limits<double>::infinity(), 0.0};
  return std::log(arg);
}

KernelValue q_n_kernel(double n, double nu, double alpha) {
  check_order_alpha(n, alpha);
  nu = clamp_nu(nu);
  if (nu >= 1.0 - 1e-15) return {};
  if (nu <= -1.0 + 1e-15) return {q_minus_one(n, alpha), false};
  if (jump_kernel_divergent(nu, alpha)) return divergent_kernel();
  if (n == 1.0) return {q_one_closed(nu, alpha), false};
  const Complex eia = phase_factor(alpha);
  const Complex val = u_integral(nu, n, [&](double u, const UPoint& p) {
    return (-u) * e_prime(n, eia, p) * p.dxdu;
  });
  return {val / (2.0 * kPi * kPi), false};
}

KernelValue upsilon_kernel(double n, double nu, double alpha) {
  check_order_alpha(n, alpha);
  nu = clamp_nu(nu);
  if (nu >= 1.0 - 1e-15) return {};
  if (jump_kernel_divergent(nu, alpha)) return divergent_kernel();
  if (n == 1.0 && alpha == 0.0) return {};
  const Complex eia = phase_factor(alpha);
  const Complex val = u_integral(nu, n, [&](double u, const UPoint& p) {
    // ln Gamma(1/2 + w) - ln Gamma(1/2 - w) at w = i u / (2 pi).
    const Complex lgr = -log_gamma_ratio(u / (2.0 * kPi));
    return lgr * e_prime(n, eia, p) * p.dxdu;
  });
  return {val / Complex(0.0, 2.0 * kPi), false};
}

namespace {

// ln L coefficient contribution of one symbol jump. The symbol only
// jumps between a partial value p and one of the plateaus 0 or 1; a
// full 0 <-> 1 jump is the nu = -1 kernel.
KernelValue jump_contribution(double n, double alpha, double p_left,
                              double p_right) {
  const double lo = std::min(p_left, p_right);
  const double hi = std::max(p_left, p_right);
  if (hi - lo < 1e-10) return {};
  if (hi > 1.0 - 1e-10 && lo < 1e-10) return {q_minus_one(n, alpha), false};
  if (hi > 1.0 - 1e-10) return q_n_kernel(n, 2.0 * lo - 1.0, alpha);
  if (lo < 1e-10) return q_n_kernel(n, 1.0 - 2.0 * hi, -alpha);
  throw std::logic_error("symbol jump between two partial values");
}

// ln L coefficient from the actual jumps of a piecewise symbol on
// (-pi, pi], including the wrap jump between pi and -pi. Coincident
// breakpoints collapse to a single jump, so band-edge and collapsed
// windows are not double counted.
KernelValue log_term_from_symbol(const SymbolSpec& sym, double n,
                                 double alpha) {
  const double eps = 1e-9;
  std::vector<double> bps = sym.breakpoints();
  std::vector<double> unique_bps;
  for (double b : bps) {
    if (b <= -kPi + 1e-12 || b >= kPi - 1e-12) continue;
    if (!unique_bps.empty() && b - unique_bps.back() < 1e-12) continue;
    unique_bps.push_back(b);
  }
  KernelValue total;
  auto add = [&](double pl, double pr) {
    KernelValue kv = jump_contribution(n, alpha, pl, pr);
    total.value += kv.value;
    total.divergent = total.divergent || kv.divergent;
  };
  for (double b : unique_bps)
    add(sym(b - eps).real(), sym(b + eps).real());
  add(sym(kPi - eps).real(), sym(-kPi + eps).real());
  return total;
}

Complex lin_term(const FermiWindow& window, const NuProfile& nu, double n,
                 double alpha) {
  QuadratureSpec spec;
  spec.abs_tol = 1e-13;
  spec.rel_tol = 1e-12;
  const Complex integral =
      integrate([&](double k) { return kernel_e(n, alpha, 1.0, nu(k)); },
                window.k_minus(), window.k_plus(), spec)
          .value;
  return (Complex(0.0, alpha * (window.k_minus() + window.k_fr())) +
          integral) /
         (2.0 * kPi);
}

// Sine-ratio prefactors of the constant term; k_fr is the literal
// right Fermi momentum (it equals k_minus only for forward bias).
struct SinePrefactors {
  double s1;
  double s2;
  double s3;
};

SinePrefactors sine_prefactors(const FermiWindow& window) {
  const double km = window.k_minus();
  const double kp = window.k_plus();
  const double kfr = window.k_fr();
  const double k0 = window.k0();
  const double half_dk = 0.5 * window.dk();
  SinePrefactors s;
  s.s1 = std::log(std::abs(2.0 * std::sin(0.5 * (km + kfr)) *
                           std::sin(half_dk) / std::sin(0.5 * (kp + kfr))));
  s.s2 = std::log(std::abs(2.0 * std::sin(0.5 * (kp + kfr)) *
                           std::sin(half_dk) / std::sin(0.5 * (km + kfr))));
  s.s3 = std::log(std::abs(2.0 * std::sin(kfr) * std::sin(k0) /
                           std::sin(half_dk)));
  return s;
}

AsymptoticTerms equilibrium_terms(double k0, double n, double alpha) {
  AsymptoticTerms out;
  out.meta.n = n;
  out.meta.alpha = alpha;
  out.lin = Complex(0.0, alpha * k0 / kPi);
  out.log_term = 2.0 * q_minus_one(n, alpha);
  out.const_term = out.log_term * std::log(std::abs(2.0 * std::sin(k0))) +
                   2.0 * upsilon_kernel(n, -1.0, alpha).value;
  return out;
}

}  // namespace

AsymptoticTerms coefficients(const FermiWindow& window,
                             const ScattererModel& scatterer, double n,
                             double alpha) {
  check_order_alpha(n, alpha);
  if (window.empty()) return equilibrium_terms(window.k0(), n, alpha);

  AsymptoticTerms out;
  out.meta.n = n;
  out.meta.alpha = alpha;
  out.meta.const_approx = window.dk() > 0.3;

  const NuProfile nu(window, scatterer);
  out.lin = lin_term(window, nu, n, alpha);

  const SymbolSpec tau = SymbolSpec::tau_single(window, scatterer);
  KernelValue log_kv = log_term_from_symbol(tau, n, alpha);
  out.log_term = log_kv.value;
  out.meta.divergent = log_kv.divergent;

  const double nu0 = nu.nu0();
  const SinePrefactors s = sine_prefactors(window);
  const KernelValue qa = q_n_kernel(n, nu0, alpha);
  const KernelValue qb = q_n_kernel(n, -nu0, -alpha);
  const KernelValue ua = upsilon_kernel(n, nu0, alpha);
  const KernelValue ub = upsilon_kernel(n, -nu0, -alpha);
  const KernelValue uc = upsilon_kernel(n, -1.0, alpha);
  out.const_term = s.s1 * qa.value + s.s2 * qb.value +
                   s.s3 * q_minus_one(n, alpha) + ua.value + ub.value +
                   uc.value;
  out.meta.divergent = out.meta.divergent || qa.divergent || qb.divergent ||
                       ua.divergent || ub.divergent || uc.divergent;
  return out;
}

Complex assemble(const AsymptoticTerms& terms, double L) {
  return terms.lin * L + terms.log_term * std::log(L) + terms.const_term;
}

Complex equilibrium_gen_fun(double k0, double n, double alpha, double L) {
  if (!(k0 > 0.0 && k0 < kPi))
    throw std::domain_error("k0 must lie in (0, pi)");
  check_order_alpha(n, alpha);
  return Complex(0.0, k0 * alpha / kPi) * L +
         2.0 * q_minus_one(n, alpha) *
             std::log(std::abs(2.0 * L * std::sin(k0))) +
         2.0 * upsilon_kernel(n, -1.0, alpha).value;
}

ChargeStatistics charge_statistics(const FermiWindow& window,
                                   const ScattererModel& scatterer,
                                   double L) {
  ChargeStatistics out;
  out.mean_eq = window.k0() * L / kPi;
  out.var_eq = (std::log(std::abs(2.0 * L * std::sin(window.k0()))) + 1.0 +
                euler_gamma()) /
               (kPi * kPi);
  if (window.empty()) return out;

  QuadratureSpec spec;
  spec.abs_tol = 1e-13;
  spec.rel_tol = 1e-12;
  const double km = window.k_minus();
  const double kp = window.k_plus();
  const double kfr = window.k_fr();
  const double k0 = window.k0();
  const NuProfile nu(window, scatterer);

  const double r2_int = integrate_real(
      [&](double k) { return scatterer.eval(k).r_R2; }, km, kp, spec);
  const double sign = window.k_fl() >= window.k_fr() ? 1.0 : -1.0;
  out.mean_shift = -(L / (2.0 * kPi)) * sign * r2_int;

  // Variance shift assembled from the alpha^2 coefficients of the
  // deviation ln(Z_1/Z_1^eq); the nu form is valid for either bias
  // direction.
  const double tr_int = integrate_real(
      [&](double k) {
        const double v = nu(k);
        return (1.0 - v * v) / (16.0 * kPi);
      },
      km, kp, spec);
  const double c1 = -tr_int * L;
  const double pm = 0.5 * (1.0 - nu.nu_minus());
  const double pp = 0.5 * (1.0 + nu.nu_plus());
  const double c2 = (1.0 - pm * pm - pp * pp) * std::log(L) /
                    (4.0 * kPi * kPi);
  const double nu0 = nu.nu0();
  const double c3 = (1.0 - nu0 * nu0) / (8.0 * kPi * kPi) *
                    (1.0 + euler_gamma() +
                     std::log(std::abs(2.0 * std::sin(0.5 * window.dk()))));
  const double c4 =
      -((1.0 - nu0) / (4.0 * kPi * kPi) *
            std::log(std::abs(std::sin(0.5 * (km + kfr)) / std::sin(k0))) +
        (1.0 + nu0) / (4.0 * kPi * kPi) *
            std::log(std::abs(std::sin(0.5 * (kp + kfr)) / std::sin(k0))));
  out.var_shift = -2.0 * (c1 + c2 + c3 + c4);
  return out;
}

namespace {

// g_n(x) = n (1-x^2)^{n-1} / [(1+x)^n + (1-x)^n]^2, the alpha
// derivative of the kernel discontinuity weight.
double g_weight(double n, const UPoint& p) {
  const double base = std::pow(p.one_minus_x * p.one_plus_x, n - 1.0);
  const double den =
      std::pow(p.one_plus_x, n) + std::pow(p.one_minus_x, n);
  return n * base / (den * den);
}

// int_nu^1 ln|(x-1)/(x-nu)| g_n(x) dx.
double g_log_integral(double n, double nu) {
  if (nu >= 1.0 - 1e-15) return 0.0;
  return u_integral(nu, n, [&](double u, const UPoint& p) {
           return Complex((-u) * g_weight(n, p) * p.dxdu, 0.0);
         })
      .real();
}

// (1/(pi i)) int_nu^1 ln[Gamma(1/2+w)/Gamma(1/2-w)] g_n(x) dx with the
// usual w(x); real valued.
double g_gamma_integral(double n, double nu) {
  if (nu >= 1.0 - 1e-15) return 0.0;
  const Complex val = u_integral(nu, n, [&](double u, const UPoint& p) {
    const Complex lgr = -log_gamma_ratio(u / (2.0 * kPi));
    return lgr * g_weight(n, p) * p.dxdu;
  });
  return (val / Complex(0.0, kPi)).real();
}

}  // namespace

double generalized_mean_charge(const FermiWindow& window,
                               const ScattererModel& scatterer, double n,
                               double L) {
  if (!(n > 0.0)) throw std::domain_error("Renyi order must be positive");
  if (window.empty()) return window.k0() * L / kPi;
  QuadratureSpec spec;
  spec.abs_tol = 1e-13;
  spec.rel_tol = 1e-12;
  const NuProfile nu(window, scatterer);
  const double occ = integrate_real(
      [&](double k) {
        const double p = std::pow(0.5 * (1.0 + nu(k)), n);
        const double q = std::pow(0.5 * (1.0 - nu(k)), n);
        return p / (p + q);
      },
      window.k_minus(), window.k_plus(), spec);
  const double lin =
      (window.k_minus() + window.k_fr() + occ) * L / (2.0 * kPi);
  const double log_part = (g_log_integral(n, nu.nu_minus()) -
                           g_log_integral(n, -nu.nu_plus())) *
                          std::log(L) / (kPi * kPi);
  const SinePrefactors s = sine_prefactors(window);
  const double nu0 = nu.nu0();
  const double const_part =
      (s.s1 * g_log_integral(n, nu0) - s.s2 * g_log_integral(n, -nu0)) /
          (kPi * kPi) +
      g_gamma_integral(n, nu0) - g_gamma_integral(n, -nu0);
  return lin + log_part + const_part;
}

GaussianResolution gaussian_resolution(const FermiWindow& window,
                                       const ScattererModel& scatterer,
                                       double n, double L) {
  GaussianResolution res;
  res.mean_n = generalized_mean_charge(window, scatterer, n, L);
  auto var_at = [&](double order) {
    return -richardson_second_derivative(
        [&](double a) {
          return assemble(coefficients(window, scatterer, order, a), L)
              .real();
        },
        0.0, 1e-3);
  };
  res.var_n = var_at(n);
  res.dmean_dn = richardson_derivative(
      [&](double order) {
        return generalized_mean_charge(window, scatterer, order, L);
      },
      1.0, 1e-4);
  res.dvar_dn = richardson_derivative(var_at, 1.0, 1e-4);
  return res;
}

double gaussian_resolved_moment(const GaussianResolution& res, double log_Zn,
                                double Q) {
  const double d = Q - res.mean_n;
  return std::exp(log_Zn - 0.5 * d * d / res.var_n) /
         std::sqrt(2.0 * kPi * res.var_n);
}

double sigma_gaussian(const GaussianResolution& res, double S, double Q) {
  if (!(res.var_n > 0.0))
    throw std::domain_error("charge variance must be positive");
  const double dq = std::sqrt(res.var_n);
  const double x = (Q - res.mean_n) / dq;
  const double dn_dq = res.dvar_dn / (2.0 * dq);
  return S - 0.5 * std::log(2.0 * kPi * res.var_n) -
         (res.dmean_dn / res.var_n) * (Q - res.mean_n) - 0.5 * x * x +
         (dn_dq / dq) * (1.0 - x * x);
}

double equipartition_slope(const FermiWindow& window,
                           const ScattererModel& scatterer) {
  if (window.empty()) return 0.0;
  QuadratureSpec spec;
  spec.abs_tol = 1e-13;
  spec.rel_tol = 1e-12;
  const NuProfile nu(window, scatterer);
  auto weight = [&](double k) {
    const double v = nu(k);
    return std::abs(v) >= 1.0 - 1e-15 ? 0.0 : 1.0 - v * v;
  };
  const double den = integrate_real(weight, window.k_minus(),
                                    window.k_plus(), spec);
  if (den < 1e-14) return 0.0;
  const double num = integrate_real(
      [&](double k) {
        const double v = nu(k);
        if (std::abs(v) >= 1.0 - 1e-15) return 0.0;
        return (1.0 - v * v) * std::log((1.0 - v) / (1.0 + v));
      },
      window.k_minus(), window.k_plus(), spec);
  return num / den;
}

long rounded_mean_charge(double mean) {
  return static_cast<long>(std::ceil(0.5 * std::floor(2.0 * mean)));
}

namespace {

// [(1+px)ln(1+px) + (x+p)ln(x+p) - p ln p (1+x)] / x, rearranged so no
// cancellation survives as x -> 0.
double vnee_braces_over_x(double p, double x) {
  double value = std::log1p(p * x) * (1.0 + p * x) / x + std::log(x + p);
  if (p > 0.0)
    value += p * std::log1p(x / p) / x - p * std::log(p);
  return value / (1.0 + x);
}

// W(x) = int_0^inf [cos((ln x / 2pi) z) / (2 sinh(z/2)) - e^{-z}/z] dz.
double w_factor(double x) {
  const double y = std::log(x) / (2.0 * kPi);
  auto f = [y](double z) {
    if (z >= 0.5) {
      return std::cos(y * z) / (2.0 * std::sinh(0.5 * z)) -
             std::exp(-z) / z;
    }
    // Split into individually regular pieces near z = 0.
    const double s = std::sin(0.5 * y * z);
    const double t1 = -s * s / std::sinh(0.5 * z);
    const double t2 = -z / 24.0 + 7.0 * z * z * z / 5760.0;
    const double t3 = -std::expm1(-z) / z;
    return t1 + t2 + t3;
  };
  QuadratureSpec spec;
  spec.abs_tol = 1e-12;
  spec.rel_tol = 1e-11;
  return integrate_real(f, 0.0, 75.0, spec);
}

}  // namespace

double aux_q(double p) {
  if (p < 0.0 || p > 1.0)
    throw std::domain_error("probability outside [0, 1]");
  QuadratureSpec spec;
  spec.abs_tol = 1e-13;
  spec.rel_tol = 1e-12;
  spec.scheme = QuadScheme::TanhSinh;
  const double integral = integrate_real(
      [p](double x) {
        if (p == 0.0) return std::log(x) / (1.0 + x);
        return vnee_braces_over_x(p, x);
      },
      0.0, 1.0, spec);
  return 1.0 / 8.0 - p / 24.0 - integral / (2.0 * kPi * kPi);
}

double aux_upsilon(double p) {
  if (p < 0.0 || p > 1.0)
    throw std::domain_error("probability outside [0, 1]");
  // Same braces as aux_q plus the (1-p) x ln x term; outer variable
  // x = e^{-s} keeps the inner cosine frequency ln(x)/2pi moderate at
  // the quadrature nodes.
  auto braces_over_x = [p](double x) {
    if (p == 0.0) return 2.0 * std::log(x) / (1.0 + x);
    return vnee_braces_over_x(p, x) +
           (1.0 - p) * std::log(x) / (1.0 + x);
  };
  QuadratureSpec spec;
  spec.abs_tol = 1e-11;
  spec.rel_tol = 1e-10;
  const double integral = integrate_real(
      [&](double s) {
        const double x = std::exp(-s);
        return x * braces_over_x(x) * w_factor(x);
      },
      0.0, 42.0, spec);
  return kappa0() - integral / (2.0 * kPi * kPi);
}

VneeCoefficients vnee_coefficients(const FermiWindow& window,
                                   const ScattererModel& scatterer) {
  VneeCoefficients out;
  if (window.empty()) {
    // Equilibrium: -d/dn of the ground-state generating function.
    out.log_term = 1.0 / 3.0;
    out.const_term = std::log(std::abs(2.0 * std::sin(window.k0()))) / 3.0 +
                     2.0 * aux_upsilon(0.0);
    return out;
  }
  auto xlnx = [](double v) { return v > 0.0 ? v * std::log(v) : 0.0; };
  const NuProfile nu(window, scatterer);
  const double nu0 = nu.nu0();
  QuadratureSpec spec;
  spec.abs_tol = 1e-13;
  spec.rel_tol = 1e-12;
  out.lin = -integrate_real(
                [&](double k) {
                  const ScatterSample sample = scatterer.eval(k);
                  return xlnx(sample.t_L2) + xlnx(sample.r_R2);
                },
                window.k_minus(), window.k_plus(), spec) /
            (2.0 * kPi);
  out.log_term = 1.0 / 6.0 + aux_q(0.5 * (1.0 + nu.nu_minus())) +
                 aux_q(0.5 * (1.0 - nu.nu_plus()));
  const SinePrefactors s = sine_prefactors(window);
  out.const_approx = window.dk() > 0.3;
  out.const_term = s.s1 * aux_q(0.5 * (1.0 + nu0)) +
                   s.s2 * aux_q(0.5 * (1.0 - nu0)) + s.s3 / 6.0 +
                   aux_upsilon(0.5 * (1.0 + nu0)) +
                   aux_upsilon(0.5 * (1.0 - nu0)) + aux_upsilon(0.0);
  return out;
}

namespace {

// Incoherent transmission fractions seen from inside a subsystem
// between two scatterers, in the frame where the bias is forward
// (k_fl >= k_fr); a reversed window mirrors the chain, which swaps the
// roles of the two regions.
struct TwoScattererFractions {
  std::function<double(double)> t_one;
  std::function<double(double)> t_two;
};

TwoScattererFractions two_scatterer_fractions(const FermiWindow& window,
                                              const ScattererModel& left,
                                              const ScattererModel& right) {
  const bool forward = window.k_fl() >= window.k_fr();
  auto denom = [left, right](double k) {
    const double d = 1.0 - left.eval(k).r_R2 * right.eval(k).r_L2;
    if (d <= 0.0)
      throw std::runtime_error(
          "perfectly reflecting scatterer pair at k = " + std::to_string(k));
    return d;
  };
  TwoScattererFractions f;
  if (forward) {
    f.t_one = [left, denom](double k) {
      return left.eval(k).t_L2 / denom(k);
    };
    f.t_two = [right, denom](double k) {
      return right.eval(k).t_R2 / denom(k);
    };
  } else {
    f.t_one = [right, denom](double k) {
      return right.eval(k).t_R2 / denom(k);
    };
    f.t_two = [left, denom](double k) {
      return left.eval(k).t_L2 / denom(k);
    };
  }
  return f;
}

double nudge_in(double k, const FermiWindow& window) {
  const double lo = window.k_minus() + 1e-12;
  const double hi = window.k_plus() - 1e-12;
  return std::min(hi, std::max(lo, k));
}

}  // namespace

AsymptoticTerms two_scatterer_asymptotics(const FermiWindow& window,
                                          const ScattererModel& left,
                                          const ScattererModel& right,
                                          double n, double alpha) {
  check_order_alpha(n, alpha);
  if (window.empty())
    throw std::domain_error("two-scatterer asymptotics needs a bias window");
  const TwoScattererFractions f =
      two_scatterer_fractions(window, left, right);
  auto nu_one = [&](double k) { return 2.0 * f.t_one(k) - 1.0; };
  auto nu_two = [&](double k) { return 2.0 * f.t_two(k) - 1.0; };

  AsymptoticTerms out;
  out.meta.n = n;
  out.meta.alpha = alpha;
  out.meta.const_missing = true;

  QuadratureSpec spec;
  spec.abs_tol = 1e-13;
  spec.rel_tol = 1e-12;
  const double km = window.k_minus();
  const double kp = window.k_plus();
  const Complex integral =
      integrate(
          [&](double k) {
            return kernel_e(n, alpha, 1.0, nu_one(k)) +
                   kernel_e(n, alpha, 1.0, -nu_two(k));
          },
          km, kp, spec)
          .value;
  out.lin = (Complex(0.0, 2.0 * alpha * km) + integral) / (2.0 * kPi);

  const double n1m = nu_one(nudge_in(km, window));
  const double n1p = nu_one(nudge_in(kp, window));
  const double n2m = nu_two(nudge_in(km, window));
  const double n2p = nu_two(nudge_in(kp, window));
  const KernelValue k1 = q_n_kernel(n, n1m, alpha);
  const KernelValue k2 = q_n_kernel(n, -n1p, -alpha);
  const KernelValue k3 = q_n_kernel(n, -n2m, alpha);
  const KernelValue k4 = q_n_kernel(n, n2p, -alpha);
  out.log_term = k1.value + k2.value + k3.value + k4.value;
  out.meta.divergent =
      k1.divergent || k2.divergent || k3.divergent || k4.divergent;
  return out;
}

TwoScattererVnee two_scatterer_vnee(const FermiWindow& window,
                                    const ScattererModel& left,
                                    const ScattererModel& right) {
  if (window.empty())
    throw std::domain_error("two-scatterer vNEE needs a bias window");
  const TwoScattererFractions f =
      two_scatterer_fractions(window, left, right);
  auto entropy = [](double t) {
    auto xlnx = [](double v) { return v > 0.0 ? v * std::log(v) : 0.0; };
    return -(xlnx(t) + xlnx(1.0 - t));
  };
  QuadratureSpec spec;
  spec.abs_tol = 1e-13;
  spec.rel_tol = 1e-12;
  const double km = window.k_minus();
  const double kp = window.k_plus();
  TwoScattererVnee out;
  out.lin = integrate_real(
                [&](double k) {
                  return entropy(f.t_one(k)) + entropy(f.t_two(k));
                },
                km, kp, spec) /
            (2.0 * kPi);
  const double t1m = f.t_one(nudge_in(km, window));
  const double t1p = f.t_one(nudge_in(kp, window));
  const double t2m = f.t_two(nudge_in(km, window));
  const double t2p = f.t_two(nudge_in(kp, window));
  out.log_term = aux_q(t1m) + aux_q(1.0 - t1p) + aux_q(t2p) +
                 aux_q(1.0 - t2m);
  return out;
}

AnalyticResolution analytic_resolved_moments(const FermiWindow& window,
                                             const ScattererModel& scatterer,
                                             double n, int L,
                                             ExecPolicy policy) {
  const std::vector<double> alphas = alpha_grid(L);
  std::vector<Complex> samples(alphas.size());
  std::vector<char> bad(alphas.size(), 0);
  std::exception_ptr error;
#pragma omp parallel for schedule(dynamic) if (policy == ExecPolicy::Parallel)
  for (std::ptrdiff_t j = 0; j < std::ptrdiff_t(alphas.size()); ++j) {
    try {
      const AsymptoticTerms terms =
          coefficients(window, scatterer, n, alphas[std::size_t(j)]);
      if (terms.meta.divergent) {
        bad[std::size_t(j)] = 1;
      } else {
        samples[std::size_t(j)] = std::exp(assemble(terms, double(L)));
      }
    } catch (...) {
#pragma omp critical
      if (!error) error = std::current_exception();
    }
  }
  if (error) std::rethrow_exception(error);

  AnalyticResolution out;
  for (char b : bad) out.divergent_replaced += b;
  if (out.divergent_replaced > 0) {
    const GaussianResolution res =
        gaussian_resolution(window, scatterer, n, L);
    const double log_Zn =
        assemble(coefficients(window, scatterer, n, 0.0), double(L)).real();
    for (std::size_t j = 0; j < alphas.size(); ++j) {
      if (!bad[j]) continue;
      const double a = alphas[j];
      samples[j] = std::exp(Complex(log_Zn - 0.5 * res.var_n * a * a,
                                    res.mean_n * a));
    }
  }
  out.table = resolve_charge(alphas, samples, L);
  return out;
}

}  // namespace nessent
