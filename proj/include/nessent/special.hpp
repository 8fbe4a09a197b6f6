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

#ifndef NESSENT_SPECIAL_HPP
#define NESSENT_SPECIAL_HPP

#include <complex>

namespace nessent {

/// Principal-branch log Gamma. Throws std::domain_error on the poles
/// (nonpositive integers).
std::complex<double> complex_log_gamma(std::complex<double> z);

/// ln Gamma(1/2 - i w) - ln Gamma(1/2 + i w); purely imaginary for real w.
std::complex<double> log_gamma_ratio(double w);

/// Euler-Mascheroni constant, evaluated once from its defining integral
/// int_0^inf (e^{-t} + t - 1) / (t (e^t - 1)) dt and memoized.
double euler_gamma();

/// kappa_0 = int_0^inf [1/(z^2 sinh(z/2)) - 1/(2 z sinh^2(z/2))
///                      - e^{-z}/(12 z)] dz, memoized (~0.1399).
double kappa0();

}  // namespace nessent

#endif
