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

#include "nessent/symbols.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <sstream>

#include "nessent/linalg.hpp"

namespace nessent {

namespace {

constexpr double kHermTol = 1e-10;
constexpr double kTraceTol = 1e-10;
constexpr double kNuExcursion = 1e-8;

void append_piece(std::vector<SymbolPiece>& pieces, double a, double b,
                  Complex constant) {
  if (b - a <= 1e-15) return;
  pieces.push_back({a, b, {}, constant});
}

void append_piece(std::vector<SymbolPiece>& pieces, double a, double b,
                  std::function<Complex(double)> f) {
  if (b - a <= 1e-15) return;
  pieces.push_back({a, b, std::move(f), {0.0, 0.0}});
}

double two_scatterer_denom(const ScatterSample& l, const ScatterSample& r,
                           double k) {
  const double denom = 1.0 - l.r_R2 * r.r_L2;
  if (denom <= 0.0) {
    std::ostringstream msg;
    msg << "perfectly reflecting scatterer pair at k = " << k;
    throw std::runtime_error(msg.str());
  }
  return denom;
}

/// Finalize a correlation matrix: invariant checks, eigensolve, clip.
CorrelationSpectrum finalize_spectrum(int L, std::vector<Complex> C) {
  for (int m = 0; m < L; ++m)
    for (int n = m; n < L; ++n)
      if (std::abs(C[std::size_t(m) * L + n] -
                   std::conj(C[std::size_t(n) * L + m])) > kHermTol)
        throw std::runtime_error("correlation matrix is not Hermitian");
  Complex trace{0.0, 0.0};
  for (int m = 0; m < L; ++m) trace += C[std::size_t(m) * L + m];
  if (std::abs(trace.imag()) > kTraceTol)
    throw std::runtime_error("correlation matrix trace is not real");

  std::vector<Complex> A(C.size());
  for (std::size_t i = 0; i < C.size(); ++i) A[i] = 2.0 * C[i];
  for (int m = 0; m < L; ++m) A[std::size_t(m) * L + m] -= 1.0;
  std::vector<double> nus = hermitian_eigenvalues(A, L);
  for (double& nu : nus) {
    if (std::abs(nu) > 1.0 + kNuExcursion)
      throw std::runtime_error(
          "correlation eigenvalue outside [-1,1] beyond tolerance");
    nu = std::clamp(nu, -1.0, 1.0);
  }
  return {L, std::move(C), std::move(nus)};
}

std::vector<Complex> toeplitz_from_table(
    int L, const std::function<Complex(long)>& phi) {
  std::vector<Complex> C(std::size_t(L) * L);
  for (int m = 0; m < L; ++m)
    for (int n = 0; n < L; ++n)
      C[std::size_t(m) * L + n] = phi(m - n);
  return C;
}

}  // namespace

Complex SymbolSpec::operator()(double k) const {
  for (const auto& p : pieces)
    if (k > p.a && k <= p.b) return p.is_constant() ? p.constant : p.f(k);
  return {0.0, 0.0};
}

std::vector<double> SymbolSpec::breakpoints() const {
  std::vector<double> bps;
  for (const auto& p : pieces) {
    if (bps.empty() || bps.back() != p.a) bps.push_back(p.a);
    bps.push_back(p.b);
  }
  return bps;
}

SymbolSpec SymbolSpec::tau_single(const FermiWindow& window,
                                  const ScattererModel& scatterer) {
  SymbolSpec sym;
  sym.label = SymbolLabel::TauSingle;
  const double k_fr = window.k_fr();
  const double km = window.k_minus();
  const double kp = window.k_plus();
  append_piece(sym.pieces, -M_PI, -k_fr, Complex{0.0, 0.0});
  append_piece(sym.pieces, -k_fr, km, Complex{1.0, 0.0});
  if (!window.empty()) {
    NuProfile prof = nu_profile(window, scatterer);
    append_piece(sym.pieces, km, kp, [prof](double k) {
      return Complex{0.5 * (1.0 + prof(k)), 0.0};
    });
  }
  append_piece(sym.pieces, kp, M_PI, Complex{0.0, 0.0});
  return sym;
}

SymbolSpec SymbolSpec::hankel_h(const FermiWindow& window,
                                const ScattererModel& scatterer) {
  SymbolSpec sym;
  sym.label = SymbolLabel::HankelH;
  const double k_fr = window.k_fr();
  append_piece(sym.pieces, -M_PI, -k_fr, Complex{0.0, 0.0});
  append_piece(sym.pieces, -k_fr, 0.0, [scatterer](double k) {
    return scatterer.eval(-k).r_R_phase;
  });
  append_piece(sym.pieces, 0.0, k_fr, [scatterer](double k) {
    return std::conj(scatterer.eval(k).r_R_phase);
  });
  append_piece(sym.pieces, k_fr, M_PI, Complex{0.0, 0.0});
  return sym;
}

SymbolSpec SymbolSpec::tau_two_scatterer(const FermiWindow& window,
                                         const ScattererModel& left,
                                         const ScattererModel& right) {
  SymbolSpec sym;
  sym.label = SymbolLabel::TauTwoScatterer;
  const double km = window.k_minus();
  const double kp = window.k_plus();
  const bool forward = window.k_fl() >= window.k_fr();
  auto t_one = [left, right](double k) {
    const ScatterSample l = left.eval(k);
    const ScatterSample r = right.eval(k);
    return l.t_L2 / two_scatterer_denom(l, r, k);
  };
  auto t_two = [left, right](double k) {
    const ScatterSample l = left.eval(k);
    const ScatterSample r = right.eval(k);
    return r.t_R2 / two_scatterer_denom(l, r, k);
  };
  append_piece(sym.pieces, -M_PI, -kp, Complex{0.0, 0.0});
  if (!window.empty()) {
    // (1 - nu_II(-k))/2 on the mirrored window.
    append_piece(sym.pieces, -kp, -km, [t_two, forward](double k) {
      const double t = t_two(-k);
      return Complex{forward ? 1.0 - t : t, 0.0};
    });
  }
  append_piece(sym.pieces, -km, km, Complex{1.0, 0.0});
  if (!window.empty()) {
    // (1 + nu_I(k))/2 on the window.
    append_piece(sym.pieces, km, kp, [t_one, forward](double k) {
      const double t = t_one(k);
      return Complex{forward ? t : 1.0 - t, 0.0};
    });
  }
  append_piece(sym.pieces, kp, M_PI, Complex{0.0, 0.0});
  return sym;
}

SymbolSpec SymbolSpec::lambda_shifted(const SymbolSpec& base, Complex lambda) {
  SymbolSpec sym;
  sym.label = SymbolLabel::LambdaShifted;
  for (const auto& p : base.pieces) {
    if (p.is_constant()) {
      sym.pieces.push_back({p.a, p.b, {}, lambda - p.constant});
    } else {
      auto f = p.f;
      sym.pieces.push_back(
          {p.a, p.b, [f, lambda](double k) { return lambda - f(k); }, {}});
    }
  }
  return sym;
}

Complex fourier_coefficient(const SymbolSpec& sym, long l) {
  if (std::labs(l) > 100000)
    throw std::invalid_argument("fourier_coefficient: |l| too large");
  Complex total{0.0, 0.0};
  for (const auto& p : sym.pieces) {
    if (p.is_constant()) {
      if (p.constant == Complex{0.0, 0.0}) continue;
      if (l == 0) {
        total += p.constant * (p.b - p.a) / (2.0 * M_PI);
      } else {
        const Complex ea = std::exp(Complex(0.0, -double(l) * p.a));
        const Complex eb = std::exp(Complex(0.0, -double(l) * p.b));
        total += p.constant * (ea - eb) / (Complex(0.0, 2.0 * M_PI * l));
      }
    } else {
      total += fourier_panel(p.f, p.a, p.b, l);
    }
  }
  return total;
}

CorrelationBuilder::CorrelationBuilder(FermiWindow window,
                                       ScattererModel scatterer,
                                       ExecPolicy policy)
    : window_(window),
      scatterer_(std::move(scatterer)),
      policy_(policy),
      tau_(SymbolSpec::tau_single(window_, scatterer_)) {}

template <typename T, typename F>
void CorrelationBuilder::fill_missing(std::map<long, T>& cache,
                                      const std::vector<long>& keys,
                                      F&& compute) {
  std::vector<long> missing;
  for (long k : keys)
    if (!cache.count(k)) missing.push_back(k);
  if (missing.empty()) return;
  std::vector<T> vals(missing.size());
  std::exception_ptr first_error;
#pragma omp parallel for schedule(dynamic) if (policy_ == ExecPolicy::Parallel)
  for (std::ptrdiff_t i = 0; i < std::ptrdiff_t(missing.size()); ++i) {
    try {
      vals[std::size_t(i)] = compute(missing[std::size_t(i)]);
    } catch (...) {
#pragma omp critical
      if (!first_error) first_error = std::current_exception();
    }
  }
  if (first_error) std::rethrow_exception(first_error);
  for (std::size_t i = 0; i < missing.size(); ++i)
    cache.emplace(missing[i], vals[i]);
}

Complex CorrelationBuilder::phi(long l) {
  auto it = phi_cache_.find(l);
  if (it != phi_cache_.end()) return it->second;
  const Complex v = fourier_coefficient(tau_, l);
  phi_cache_.emplace(l, v);
  return v;
}

double CorrelationBuilder::hankel(long s) {
  auto it = hankel_cache_.find(s);
  if (it != hankel_cache_.end()) return it->second;
  const double k_fr = window_.k_fr();
  double v = 0.0;
  if (k_fr > 0.0) {
    // (1/pi) Re int_0^{k_fr} e^{isk} r_R(k) dk; both halves of h(k)
    // fold onto the positive-k interval.
    const ScattererModel& sc = scatterer_;
    const Complex half = fourier_panel(
        [&sc](double k) { return sc.eval(k).r_R_phase; }, 0.0, k_fr, -s);
    v = 2.0 * half.real();
  }
  hankel_cache_.emplace(s, v);
  return v;
}

CorrelationSpectrum CorrelationBuilder::toeplitz(int L) {
  if (L < 1) throw std::domain_error("site count must be positive");
  std::vector<long> keys;
  for (long l = -(L - 1); l <= L - 1; ++l) keys.push_back(l);
  fill_missing(phi_cache_, keys,
               [this](long l) { return fourier_coefficient(tau_, l); });
  auto C = toeplitz_from_table(
      L, [this](long l) { return phi_cache_.at(l); });
  return finalize_spectrum(L, std::move(C));
}

CorrelationSpectrum CorrelationBuilder::full(int L, long d) {
  if (L < 1) throw std::domain_error("site count must be positive");
  if (d <= 0) throw std::domain_error("subsystem offset d must be positive");
  std::vector<long> keys;
  for (long l = -(L - 1); l <= L - 1; ++l) keys.push_back(l);
  fill_missing(phi_cache_, keys,
               [this](long l) { return fourier_coefficient(tau_, l); });
  std::vector<long> skeys;
  for (long s = 2 * d; s <= 2 * (d + L - 1); ++s) skeys.push_back(s);
  const double k_fr = window_.k_fr();
  const ScattererModel& sc = scatterer_;
  fill_missing(hankel_cache_, skeys, [&](long s) {
    if (k_fr <= 0.0) return 0.0;
    const Complex half = fourier_panel(
        [&sc](double k) { return sc.eval(k).r_R_phase; }, 0.0, k_fr, -s);
    return 2.0 * half.real();
  });
  auto C = toeplitz_from_table(
      L, [this](long l) { return phi_cache_.at(l); });
  for (int m = 0; m < L; ++m)
    for (int n = 0; n < L; ++n)
      C[std::size_t(m) * L + n] += hankel_cache_.at(2 * d + m + n);
  return finalize_spectrum(L, std::move(C));
}

CorrelationSpectrum build_toeplitz_correlation(const FermiWindow& window,
                                               const ScattererModel& scatterer,
                                               int L, ExecPolicy policy) {
  CorrelationBuilder b(window, scatterer, policy);
  return b.toeplitz(L);
}

CorrelationSpectrum build_full_correlation(const FermiWindow& window,
                                           const ScattererModel& scatterer,
                                           int L, long d, ExecPolicy policy) {
  CorrelationBuilder b(window, scatterer, policy);
  return b.full(L, d);
}

CorrelationSpectrum build_between_scatterers(const FermiWindow& window,
                                             const ScattererModel& left,
                                             const ScattererModel& right,
                                             int L, ExecPolicy policy) {
  return spectrum_from_symbol(
      SymbolSpec::tau_two_scatterer(window, left, right), L, policy);
}

CorrelationSpectrum spectrum_from_symbol(const SymbolSpec& sym, int L,
                                         ExecPolicy policy) {
  if (L < 1) throw std::domain_error("site count must be positive");
  std::vector<Complex> table(2 * std::size_t(L) - 1);
  std::exception_ptr first_error;
#pragma omp parallel for schedule(dynamic) if (policy == ExecPolicy::Parallel)
  for (std::ptrdiff_t i = 0; i < std::ptrdiff_t(table.size()); ++i) {
    try {
      table[std::size_t(i)] = fourier_coefficient(sym, i - (L - 1));
    } catch (...) {
#pragma omp critical
      if (!first_error) first_error = std::current_exception();
    }
  }
  if (first_error) std::rethrow_exception(first_error);
  auto C = toeplitz_from_table(
      L, [&](long l) { return table[std::size_t(l + L - 1)]; });
  return finalize_spectrum(L, std::move(C));
}

}  // namespace nessent
