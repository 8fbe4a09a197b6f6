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

#ifndef NESSENT_SCATTER_HPP
#define NESSENT_SCATTER_HPP

#include <complex>
#include <functional>
#include <memory>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace nessent {

/// The bias window between the two Fermi momenta.
class FermiWindow {
 public:
  FermiWindow(double k_fl, double k_fr);

  double k_fl() const { return k_fl_; }
  double k_fr() const { return k_fr_; }
  double k_minus() const { return std::min(k_fl_, k_fr_); }
  double k_plus() const { return std::max(k_fl_, k_fr_); }
  double k0() const { return 0.5 * (k_fl_ + k_fr_); }
  double dk() const { return std::abs(k_fl_ - k_fr_); }
  bool empty() const { return dk() == 0.0; }

 private:
  double k_fl_;
  double k_fr_;
};

/// One evaluation of the scattering matrix probabilities at momentum k,
/// plus the complex right-reflection amplitude used by the Hankel term.
struct ScatterSample {
  double t_L2;
  double r_R2;
  double t_R2;
  double r_L2;
  std::complex<double> r_R_phase;
};

/// Immutable k-resolved scatterer. Evaluation is pure and thread-safe.
class ScattererModel {
 public:
  enum class Kind { SingleImpurity, Table, Composite, Transparent };

  /// On-site impurity of strength eps0 (in units of the hopping t).
  static ScattererModel single_impurity(double eps0_over_t);
  /// Perfectly transmitting scatterer (t_L2 = t_R2 = 1).
  static ScattererModel transparent();
  /// Sampled (k, |t|^2) table with monotone cubic interpolation;
  /// r2 is renormalized to 1 - t2 after interpolation.
  static ScattererModel table(std::vector<std::pair<double, double>> samples);
  /// Incoherent left-to-right composition of a chain of scatterers.
  static ScattererModel composite(std::vector<ScattererModel> parts);

  ScatterSample eval(double k) const;
  Kind kind() const { return kind_; }

 private:
  ScattererModel(Kind kind, std::function<ScatterSample(double)> eval)
      : kind_(kind), eval_(std::move(eval)) {}
  Kind kind_;
  std::function<ScatterSample(double)> eval_;
};

/// Closed-form probabilities for the one-site impurity.
/// t2 = sin^2 k / (sin^2 k + (eps0/2t)^2). Throws on k outside (0, pi).
std::pair<double, double> single_impurity_probabilities(double k,
                                                        double eps0_over_t);

/// Signed transmission/reflection imbalance on the bias window.
class NuProfile {
 public:
  NuProfile(FermiWindow window, ScattererModel scatterer);

  /// nu(k) for k in the open window (k_minus, k_plus).
  double operator()(double k) const;
  const FermiWindow& window() const { return window_; }
  const ScattererModel& scatterer() const { return scatterer_; }
  bool empty_window() const { return window_.empty(); }
  double nu_minus() const { return nu_minus_; }
  double nu_plus() const { return nu_plus_; }
  double nu0() const { return nu0_; }

 private:
  FermiWindow window_;
  ScattererModel scatterer_;
  double nu_minus_ = 0.0;
  double nu_plus_ = 0.0;
  double nu0_ = 0.0;
};

NuProfile nu_profile(const FermiWindow& window,
                     const ScattererModel& scatterer);

/// Incoherent two-scatterer probabilities (left first on the chain).
/// Throws std::runtime_error, naming the momentum, if the pair is
/// perfectly reflecting there.
ScattererModel combine_incoherent(const ScattererModel& left,
                                  const ScattererModel& right);

}  // namespace nessent

#endif
