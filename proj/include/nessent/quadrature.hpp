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

#ifndef NESSENT_QUADRATURE_HPP
#define NESSENT_QUADRATURE_HPP

#include <complex>
#include <functional>
#include <stdexcept>

namespace nessent {

using Complex = std::complex<double>;

enum class QuadScheme { GaussKronrod, TanhSinh };

struct QuadratureSpec {
  double abs_tol = 1e-13;
  double rel_tol = 1e-13;
  int max_depth = 24;
  QuadScheme scheme = QuadScheme::GaussKronrod;

  void validate() const {
    if (abs_tol < 1e-15) throw std::invalid_argument("abs_tol below 1e-15");
    if (max_depth > 30 || max_depth < 1)
      throw std::invalid_argument("max_depth out of range");
  }
};

struct QuadResult {
  Complex value{0.0, 0.0};
  double err_est = 0.0;
};

class QuadratureError : public std::runtime_error {
 public:
  QuadratureError(const std::string& msg, QuadResult best)
      : std::runtime_error(msg), best_estimate(best) {}
  QuadResult best_estimate;
};

/// Integrate f over (a, b). With TanhSinh the endpoints may be
/// (integrably) singular; f is never evaluated exactly at a or b.
QuadResult integrate(const std::function<Complex(double)>& f, double a,
                     double b, const QuadratureSpec& spec = {});

/// Real-valued convenience wrapper.
double integrate_real(const std::function<double(double)>& f, double a,
                      double b, const QuadratureSpec& spec = {});

/// Oscillatory Fourier-type integral: (1/2pi) * int_a^b f(k) e^{-i l k} dk.
/// Splits (a,b) into panels short against the oscillation period before
/// handing each panel to the adaptive routine.
Complex fourier_panel(const std::function<Complex(double)>& f, double a,
                      double b, long l, const QuadratureSpec& spec = {});

/// Central finite difference with one step of Richardson extrapolation.
double richardson_derivative(const std::function<double(double)>& f, double x,
                             double h);

/// Second derivative, Richardson-extrapolated central differences.
double richardson_second_derivative(const std::function<double(double)>& f,
                                    double x, double h);

}  // namespace nessent

#endif
