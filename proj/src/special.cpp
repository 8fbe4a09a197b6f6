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

#include "nessent/special.hpp"

#include <cmath>
#include <stdexcept>

#include "nessent/quadrature.hpp"

namespace nessent {

namespace {

// Lanczos approximation, g = 607/128, 15 coefficients (Godfrey's set).
constexpr double kLanczosG = 607.0 / 128.0;
constexpr double kLanczos[15] = {
    0.99999999999999709182,     57.156235665862923517,
    -59.597960355475491248,     14.136097974741747174,
    -0.49191381609762019978,    3.3994649984811888699e-5,
    4.6523628927048575665e-5,   -9.8374475304879564677e-5,
    1.5808870322491248884e-4,   -2.1026444172410488319e-4,
    2.1743961811521264320e-4,   -1.6431810653676389022e-4,
    8.4418223983852743293e-5,   -2.6190838401581408670e-5,
    3.6899182659531622704e-6};

std::complex<double> log_gamma_positive(std::complex<double> z) {
  // Requires Re z >= 0.5.
  std::complex<double> sum = kLanczos[0];
  for (int i = 1; i < 15; ++i) sum += kLanczos[i] / (z + double(i - 1));
  const std::complex<double> t = z + (kLanczosG - 0.5);
  return 0.5 * std::log(2.0 * M_PI) + (z - 0.5) * std::log(t) - t +
         std::log(sum);
}

}  // namespace

std::complex<double> complex_log_gamma(std::complex<double> z) {
  if (z.imag() == 0.0 && z.real() <= 0.0 &&
      z.real() == std::floor(z.real()))
    throw std::domain_error("complex_log_gamma: pole at nonpositive integer");
  if (z.real() >= 0.5) return log_gamma_positive(z);
  if (z.real() > 0.0 || z.imag() != 0.0) {
    // Shift into the convergent half-plane via Gamma(z) = Gamma(z+n)/...
    std::complex<double> shift{0.0, 0.0};
    int n = 0;
    std::complex<double> zz = z;
    while (zz.real() < 0.5 && n < 64) {
      shift += std::log(zz);
      zz += 1.0;
      ++n;
    }
    return log_gamma_positive(zz) - shift;
  }
  throw std::domain_error("complex_log_gamma: unsupported argument");
}

std::complex<double> log_gamma_ratio(double w) {
  if (w == 0.0) return {0.0, 0.0};
  const std::complex<double> z_minus(0.5, -w);
  const std::complex<double> z_plus(0.5, w);
  std::complex<double> r = complex_log_gamma(z_minus) - complex_log_gamma(z_plus);
  // Conjugate arguments: the difference is purely imaginary; discard
  // round-off in the real part.
  return {0.0, r.imag()};
}

double euler_gamma() {
  static const double value = [] {
    QuadratureSpec spec;
    spec.abs_tol = 1e-14;
    spec.rel_tol = 1e-14;
    auto integrand = [](double t) {
      if (t < 1e-8) return 0.5 - 5.0 * t / 12.0;
      return (std::expm1(-t) + t) / (t * std::expm1(t));
    };
    return integrate_real(integrand, 0.0, 60.0, spec);
  }();
  return value;
}

double kappa0() {
  static const double value = [] {
    QuadratureSpec spec;
    spec.abs_tol = 1e-12;
    spec.rel_tol = 1e-12;
    auto integrand = [](double z) {
      if (z < 0.2) {
        // Small-z series; the three terms individually blow up as 2/z^3
        // and cancel to O(1), so the direct form loses precision here.
        return 1.0 / 12.0 +
               z * (-137.0 / 2880.0 +
                    z * (1.0 / 72.0 +
                         z * (-517.0 / 161280.0 +
                              z * (1.0 / 1440.0 +
                                   z * (-1081.0 / 8601600.0 +
                                        z * (1.0 / 60480.0))))));
      }
      const double sh = std::sinh(0.5 * z);
      return 1.0 / (z * z * sh) - 1.0 / (2.0 * z * sh * sh) -
             std::exp(-z) / (12.0 * z);
    };
    return integrate_real(integrand, 0.0, 80.0, spec);
  }();
  return value;
}

}  // namespace nessent
