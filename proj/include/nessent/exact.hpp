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

#ifndef NESSENT_EXACT_HPP
#define NESSENT_EXACT_HPP

#include <vector>

#include "nessent/symbols.hpp"

namespace nessent {

/// One sample of the charged moment generating function
/// Z_n(alpha) = Tr[rho_A^n e^{i alpha Q_A}].
struct GenFunSample {
  double n = 1.0;
  double alpha = 0.0;
  Complex log_Z{0.0, 0.0};
  /// Z_n(alpha) = 0 exactly (log_Z meaningless); happens only at
  /// alpha = +-pi when some nu_l = 0.
  bool zero = false;
};

/// Charge-sector table over Q = 0..L.
struct ChargeTable {
  std::vector<long> q_values;
  std::vector<Complex> weights;
};

/// log Z_n(alpha) as a sum of per-eigenvalue principal-branch logs.
/// Eigenvalues nu_l = +-1 contribute i*alpha or 0 exactly.
GenFunSample gen_fun_exact(const CorrelationSpectrum& spec, double n,
                           double alpha);

/// Tr[rho_A^n] = exp(log Z_n(0)); real positive.
double renyi_moment(const CorrelationSpectrum& spec, double n);

/// Von Neumann entropy: sum of binary entropies of (1+nu_l)/2.
double vnee_exact(const CorrelationSpectrum& spec);

/// Analytic d/dn Z_n(alpha) at n=1. Vanishing factors (alpha = +-pi
/// with nu_l = 0) are handled by the product-rule limit: one zero
/// factor leaves the product of the others, two or more give 0.
Complex dZn_dn_exact(const CorrelationSpectrum& spec, double alpha);

/// Uniform alpha grid over (-pi, pi), half-step offset so +-pi is never
/// sampled; size is the smallest power of two >= 2(L+1).
std::vector<double> alpha_grid(int L);

/// Exact Fourier inversion of generating-function samples on a uniform
/// grid: weights[Q] = (1/N) sum_j samples[j] e^{-i alpha_j Q}. Exact
/// because Z_n(alpha) is a trigonometric polynomial of degree <= L.
ChargeTable resolve_charge(const std::vector<double>& alphas,
                           const std::vector<Complex>& samples, int L);

/// Z_1(Q): the charge distribution (real, nonnegative, sums to 1).
ChargeTable charge_distribution(const CorrelationSpectrum& spec,
                                ExecPolicy policy = ExecPolicy::Parallel);

/// Z_n(Q) for general Renyi order.
ChargeTable resolved_moments(const CorrelationSpectrum& spec, double n,
                             ExecPolicy policy = ExecPolicy::Parallel);

/// S(Q) = -d/dn Z_n(Q) at n=1, by inversion of -dZn_dn_exact samples.
ChargeTable resolved_vnee(const CorrelationSpectrum& spec,
                          ExecPolicy policy = ExecPolicy::Parallel);

/// Post-projection entropy sigma(Q) = ln Z_1(Q) + S(Q)/Z_1(Q).
/// Throws std::runtime_error for sectors with weight below 1e-10.
double post_projection_vnee(const ChargeTable& z1, const ChargeTable& s,
                            long Q);

}  // namespace nessent

#endif
