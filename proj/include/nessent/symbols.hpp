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

#ifndef NESSENT_SYMBOLS_HPP
#define NESSENT_SYMBOLS_HPP

#include <functional>
#include <map>
#include <vector>

#include "nessent/quadrature.hpp"
#include "nessent/scatter.hpp"

namespace nessent {

enum class SymbolLabel { TauSingle, HankelH, TauTwoScatterer, LambdaShifted };

/// Whether data-parallel kernels run their OpenMP path or the serial
/// reference path (kept bit-identical apart from summation order).
enum class ExecPolicy { Serial, Parallel };

/// One smooth piece of a momentum-space symbol on (a, b). A piece with
/// no function is constant; constant pieces have closed-form Fourier
/// coefficients.
struct SymbolPiece {
  double a;
  double b;
  std::function<Complex(double)> f;  // empty means constant
  Complex constant{0.0, 0.0};
  bool is_constant() const { return !f; }
};

/// Piecewise symbol on (-pi, pi], pieces sorted and non-overlapping.
struct SymbolSpec {
  SymbolLabel label = SymbolLabel::TauSingle;
  std::vector<SymbolPiece> pieces;

  Complex operator()(double k) const;
  std::vector<double> breakpoints() const;

  /// tau(k): 1 on (-k_fr, k_minus), (1+nu)/2 on the bias window, 0
  /// elsewhere.
  static SymbolSpec tau_single(const FermiWindow& window,
                               const ScattererModel& scatterer);
  /// h(k): r_R(-k) on (-k_fr, 0), conj r_R(k) on (0, k_fr), 0 elsewhere.
  static SymbolSpec hankel_h(const FermiWindow& window,
                             const ScattererModel& scatterer);
  /// Symbol for a subsystem between two scatterers: 1 on (-k_minus,
  /// k_minus), (1+nu_I(k))/2 on (k_minus, k_plus), (1-nu_II(-k))/2 on
  /// the mirrored window, 0 elsewhere.
  static SymbolSpec tau_two_scatterer(const FermiWindow& window,
                                      const ScattererModel& left,
                                      const ScattererModel& right);
  /// lambda - base(k), the shifted symbol entering the determinant
  /// contour representation.
  static SymbolSpec lambda_shifted(const SymbolSpec& base, Complex lambda);
};

/// phi_l = (1/2pi) int_{-pi}^{pi} sym(k) e^{-i l k} dk, integrated piece
/// by piece so jumps never fall inside a quadrature panel.
Complex fourier_coefficient(const SymbolSpec& sym, long l);

/// Spectrum of a subsystem correlation matrix.
struct CorrelationSpectrum {
  int L = 0;
  std::vector<Complex> C;    // row-major L x L
  std::vector<double> nus;   // eigenvalues of 2C - I, ascending, clipped
};

/// Caches Fourier and Hankel coefficients for one (window, scatterer)
/// pair so sweeps over L and d reuse the integrals. Not thread-safe;
/// internal fills are parallel under ExecPolicy::Parallel.
class CorrelationBuilder {
 public:
  CorrelationBuilder(FermiWindow window, ScattererModel scatterer,
                     ExecPolicy policy = ExecPolicy::Parallel);

  /// Toeplitz-only matrix (scatterer far from the subsystem).
  CorrelationSpectrum toeplitz(int L);
  /// Toeplitz plus Hankel correction, subsystem on sites d..d+L-1.
  CorrelationSpectrum full(int L, long d);

  /// Cached phi_l of the tau symbol.
  Complex phi(long l);
  /// Cached Hankel correction (1/pi) Re int_0^{k_fr} e^{isk} r_R(k) dk.
  double hankel(long s);

 private:
  template <typename T, typename F>
  void fill_missing(std::map<long, T>& cache, const std::vector<long>& keys,
                    F&& compute);

  FermiWindow window_;
  ScattererModel scatterer_;
  ExecPolicy policy_;
  SymbolSpec tau_;
  std::map<long, Complex> phi_cache_;
  std::map<long, double> hankel_cache_;
};

CorrelationSpectrum build_toeplitz_correlation(
    const FermiWindow& window, const ScattererModel& scatterer, int L,
    ExecPolicy policy = ExecPolicy::Parallel);

CorrelationSpectrum build_full_correlation(
    const FermiWindow& window, const ScattererModel& scatterer, int L, long d,
    ExecPolicy policy = ExecPolicy::Parallel);

CorrelationSpectrum build_between_scatterers(
    const FermiWindow& window, const ScattererModel& left,
    const ScattererModel& right, int L,
    ExecPolicy policy = ExecPolicy::Parallel);

/// Generic path: assemble the Toeplitz matrix of an arbitrary symbol
/// and diagonalize. Checks Hermiticity (1e-10 entrywise), trace
/// reality (1e-10) and the [-1,1] eigenvalue bound (excursion 1e-8,
/// then clipped).
CorrelationSpectrum spectrum_from_symbol(const SymbolSpec& sym, int L,
                                         ExecPolicy policy =
                                             ExecPolicy::Parallel);

}  // namespace nessent

#endif
