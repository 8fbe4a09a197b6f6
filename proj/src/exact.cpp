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

#include "nessent/exact.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace nessent {

namespace {

double xlnx(double x) { return x > 0.0 ? x * std::log(x) : 0.0; }

void check_order_alpha(double n, double alpha) {
  if (!(n > 0.0)) throw std::domain_error("Renyi order must be positive");
  if (!(std::abs(alpha) <= M_PI + 1e-12))
    throw std::domain_error("alpha must lie in [-pi, pi]");
}

// e^{i alpha}, snapped to exactly -1 at alpha = +-pi so that the
// Z_n(+-pi) = 0 degeneracy is detected exactly.
Complex phase_factor(double alpha) {
  if (std::abs(std::abs(alpha) - M_PI) < 1e-15) return {-1.0, 0.0};
  return std::exp(Complex(0.0, alpha));
}

}  // namespace

GenFunSample gen_fun_exact(const CorrelationSpectrum& spec, double n,
                           double alpha) {
  check_order_alpha(n, alpha);
  GenFunSample out;
  out.n = n;
  out.alpha = alpha;
  const Complex eia = phase_factor(alpha);
  for (double nu : spec.nus) {
    if (nu >= 1.0) {
      out.log_Z += Complex(0.0, alpha);
      continue;
    }
    if (nu <= -1.0) continue;
    const double p = 0.5 * (1.0 + nu);
    const double q = 0.5 * (1.0 - nu);
    const Complex factor = std::pow(p, n) * eia + std::pow(q, n);
    if (factor == Complex{0.0, 0.0}) {
      out.zero = true;
      out.log_Z = {-std::numeric_limits<double>::infinity(), 0.0};
      return out;
    }
    out.log_Z += std::log(factor);  // principal branch per factor
  }
  return out;
}

double renyi_moment(const CorrelationSpectrum& spec, double n) {
  return std::exp(gen_fun_exact(spec, n, 0.0).log_Z.real());
}

double vnee_exact(const CorrelationSpectrum& spec) {
  double s = 0.0;
  for (double nu : spec.nus) {
    const double p = 0.5 * (1.0 + nu);
    s -= xlnx(p) + xlnx(1.0 - p);
  }
  return s;
}

Complex dZn_dn_exact(const CorrelationSpectrum& spec, double alpha) {
  check_order_alpha(1.0, alpha);
  const Complex eia = phase_factor(alpha);
  const int L = spec.L;
  std::vector<Complex> factors(L);
  std::vector<Complex> numerators(L);
  int n_zero = 0;
  int zero_index = -1;
  for (int l = 0; l < L; ++l) {
    const double p = 0.5 * (1.0 + spec.nus[std::size_t(l)]);
    const double q = 1.0 - p;
    factors[std::size_t(l)] = p * eia + q;
    numerators[std::size_t(l)] = xlnx(p) * eia + xlnx(q);
    if (factors[std::size_t(l)] == Complex{0.0, 0.0}) {
      ++n_zero;
      zero_index = l;
    }
  }
  if (n_zero >= 2) return {0.0, 0.0};
  if (n_zero == 1) {
    Complex prod = numerators[std::size_t(zero_index)];
    for (int l = 0; l < L; ++l)
      if (l != zero_index) prod *= factors[std::size_t(l)];
    return prod;
  }
  Complex z{1.0, 0.0};
  Complex sum{0.0, 0.0};
  for (int l = 0; l < L; ++l) {
    z *= factors[std::size_t(l)];
    sum += numerators[std::size_t(l)] / factors[std::size_t(l)];
  }
  return z * sum;
}

std::vector<double> alpha_grid(int L) {
  if (L < 1) throw std::domain_error("site count must be positive");
  std::size_t n = 1;
  while (n < 2 * std::size_t(L + 1)) n <<= 1;
  std::vector<double> alphas(n);
  for (std::size_t j = 0; j < n; ++j)
    alphas[j] = -M_PI + 2.0 * M_PI * (double(j) + 0.5) / double(n);
  return alphas;
}

ChargeTable resolve_charge(const std::vector<double>& alphas,
                           const std::vector<Complex>& samples, int L) {
  const std::size_t n = alphas.size();
  if (n != samples.size())
    throw std::invalid_argument("alpha grid and samples differ in size");
  if (n < 2 * std::size_t(L + 1))
    throw std::invalid_argument(
        "alpha grid too small: aliasing over the charge support");
  const double step = 2.0 * M_PI / double(n);
  for (std::size_t j = 1; j < n; ++j)
    if (std::abs(alphas[j] - alphas[j - 1] - step) > 1e-12)
      throw std::invalid_argument("alpha grid is not uniform");
  ChargeTable table;
  table.q_values.resize(std::size_t(L) + 1);
  table.weights.assign(std::size_t(L) + 1, {0.0, 0.0});
  for (long q = 0; q <= L; ++q) {
    table.q_values[std::size_t(q)] = q;
    Complex acc{0.0, 0.0};
    for (std::size_t j = 0; j < n; ++j)
      acc += samples[j] * std::exp(Complex(0.0, -alphas[j] * double(q)));
    table.weights[std::size_t(q)] = acc / double(n);
  }
  return table;
}

namespace {

template <typename F>
ChargeTable invert_samples(const CorrelationSpectrum& spec, ExecPolicy policy,
                           F&& sample) {
  const std::vector<double> alphas = alpha_grid(spec.L);
  std::vector<Complex> samples(alphas.size());
#pragma omp parallel for schedule(static) if (policy == ExecPolicy::Parallel)
  for (std::ptrdiff_t j = 0; j < std::ptrdiff_t(alphas.size()); ++j)
    samples[std::size_t(j)] = sample(alphas[std::size_t(j)]);
  return resolve_charge(alphas, samples, spec.L);
}

}  // namespace

ChargeTable charge_distribution(const CorrelationSpectrum& spec,
                                ExecPolicy policy) {
  return resolved_moments(spec, 1.0, policy);
}

ChargeTable resolved_moments(const CorrelationSpectrum& spec, double n,
                             ExecPolicy policy) {
  return invert_samples(spec, policy, [&](double a) {
    const GenFunSample s = gen_fun_exact(spec, n, a);
    return s.zero ? Complex{0.0, 0.0} : std::exp(s.log_Z);
  });
}

ChargeTable resolved_vnee(const CorrelationSpectrum& spec, ExecPolicy policy) {
  return invert_samples(spec, policy,
                        [&](double a) { return -dZn_dn_exact(spec, a); });
}

double post_projection_vnee(const ChargeTable& z1, const ChargeTable& s,
                            long Q) {
  if (Q < 0 || std::size_t(Q) >= z1.weights.size() ||
      std::size_t(Q) >= s.weights.size())
    throw std::out_of_range("charge sector outside the table");
  const double w = z1.weights[std::size_t(Q)].real();
  if (w <= 1e-10)
    throw std::runtime_error("empty charge sector: weight below threshold");
  const double sq = s.weights[std::size_t(Q)].real();
  return std::log(w) + sq / w;
}

}  // namespace nessent
