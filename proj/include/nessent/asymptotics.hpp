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

#ifndef NESSENT_ASYMPTOTICS_HPP
#define NESSENT_ASYMPTOTICS_HPP

#include "nessent/exact.hpp"
#include "nessent/scatter.hpp"
#include "nessent/special.hpp"

namespace nessent {

/// Value of a discontinuity kernel. The analytic continuation is
/// singular when a symbol jump lands on nu = 0 while alpha = +-pi;
/// there the value is infinite and flagged rather than thrown, so
/// sweeps can render gaps.
struct KernelValue {
  Complex value{0.0, 0.0};
  bool divergent = false;
};

/// e_n^{(alpha)}(x, nu) = ln[((x+nu)/2)^n e^{i alpha} + ((x-nu)/2)^n],
/// principal branch. Requires x >= |nu|. A vanishing argument gives
/// real part -inf.
Complex kernel_e(double n, double alpha, double x, double nu);

/// Q_n(nu, alpha): the discontinuity kernel attached to a symbol jump
/// between (1+nu)/2 and 1. Q_n(1, alpha) = 0 exactly; Q_n(-1, alpha)
/// has the closed form (1/12)(1/n - n) - alpha^2/(4 pi^2 n).
KernelValue q_n_kernel(double n, double nu, double alpha);

/// Upsilon_n(nu, alpha): the Barnes-G subleading kernel.
KernelValue upsilon_kernel(double n, double nu, double alpha);

struct AsymptoticMeta {
  double n = 1.0;
  double alpha = 0.0;
  /// Some kernel hit the nu = 0, alpha = +-pi singularity.
  bool divergent = false;
  /// Constant term carries the small-window approximation error
  /// (dk^2 ln dk scale); set when dk > 0.3.
  bool const_approx = false;
  /// Constant term is not available (two-scatterer geometry).
  bool const_missing = false;
};

/// ln Z_n(alpha) ~ lin * L + log_term * ln L + const_term.
struct AsymptoticTerms {
  Complex lin{0.0, 0.0};
  Complex log_term{0.0, 0.0};
  Complex const_term{0.0, 0.0};
  AsymptoticMeta meta;
};

/// Fisher-Hartwig coefficients of ln Z_n(alpha) for a subsystem on the
/// far side of a single scatterer. The ln L coefficient is built by
/// enumerating the actual jumps of the momentum symbol, so coincident
/// or vanishing jumps (collapsed or whole-band windows) are not double
/// counted. An empty window delegates to the equilibrium form.
AsymptoticTerms coefficients(const FermiWindow& window,
                             const ScattererModel& scatterer, double n,
                             double alpha);

/// lin * L + log_term * ln L + const_term.
Complex assemble(const AsymptoticTerms& terms, double L);

/// Ground-state generating function of the homogeneous chain filled to
/// +-k0: i k0 alpha L / pi + [(1/6)(1/n - n) - alpha^2/(2 pi^2 n)]
/// * ln|2 L sin k0| + 2 Upsilon_n(-1, alpha).
Complex equilibrium_gen_fun(double k0, double n, double alpha, double L);

/// Mean and variance of the subsystem charge: equilibrium values plus
/// the nonequilibrium shifts induced by the scatterer.
struct ChargeStatistics {
  double mean_shift = 0.0;
  double var_shift = 0.0;
  double mean_eq = 0.0;
  double var_eq = 0.0;
  double mean() const { return mean_eq + mean_shift; }
  double variance() const { return var_eq + var_shift; }
};

ChargeStatistics charge_statistics(const FermiWindow& window,
                                   const ScattererModel& scatterer, double L);

/// <Q_A>_n = -i d/dalpha ln Z_n(alpha) at alpha = 0, from the closed
/// asymptotic form (L, ln L and constant contributions).
double generalized_mean_charge(const FermiWindow& window,
                               const ScattererModel& scatterer, double n,
                               double L);

/// Gaussian model of the charge-resolved moments: mean and variance of
/// the Z_n(alpha) characteristic function, plus their n-derivatives at
/// n = 1 (finite differences, step 1e-4, Richardson extrapolated).
struct GaussianResolution {
  double mean_n = 0.0;
  double var_n = 0.0;
  double dmean_dn = 0.0;
  double dvar_dn = 0.0;
};

GaussianResolution gaussian_resolution(const FermiWindow& window,
                                       const ScattererModel& scatterer,
                                       double n, double L);

/// Z_n(Q) = Z_n / sqrt(2 pi var) * exp(-(Q - mean)^2 / (2 var)).
double gaussian_resolved_moment(const GaussianResolution& res, double log_Zn,
                                double Q);

/// Post-measurement entropy sigma(Q) in the Gaussian model, given the
/// unresolved entropy S.
double sigma_gaussian(const GaussianResolution& res, double S, double Q);

/// Slope of the leading equipartition-breaking term, odd in Q - <Q>:
/// [int (1-nu^2) ln((1-nu)/(1+nu)) dk] / [int (1-nu^2) dk] over the
/// window. Returns 0 when the denominator vanishes (no breaking).
double equipartition_slope(const FermiWindow& window,
                           const ScattererModel& scatterer);

/// Nearest half-integer-rounded sector: ceil(floor(2 mean) / 2).
long rounded_mean_charge(double mean);

/// q(p) and upsilon(p), the auxiliary functions entering the vNEE
/// coefficients. q(1) = 0, q(0) = 1/6.
double aux_q(double p);
double aux_upsilon(double p);

/// S ~ lin * L + log_term * ln L + const_term. lin and log_term are
/// exact; const_term shares the small-window approximation.
struct VneeCoefficients {
  double lin = 0.0;
  double log_term = 0.0;
  double const_term = 0.0;
  bool const_approx = false;
};

VneeCoefficients vnee_coefficients(const FermiWindow& window,
                                   const ScattererModel& scatterer);

/// lin and log coefficients for a subsystem between two scatterers.
/// The constant term has no closed form here; const_missing is set.
AsymptoticTerms two_scatterer_asymptotics(const FermiWindow& window,
                                          const ScattererModel& left,
                                          const ScattererModel& right,
                                          double n, double alpha);

struct TwoScattererVnee {
  double lin = 0.0;
  double log_term = 0.0;
};

TwoScattererVnee two_scatterer_vnee(const FermiWindow& window,
                                    const ScattererModel& left,
                                    const ScattererModel& right);

/// Charge-resolved moments from the analytic generating function,
/// inverted on the same alpha grid as the exact path. Samples where a
/// kernel diverges are replaced by the Gaussian-model value and
/// counted.
struct AnalyticResolution {
  ChargeTable table;
  int divergent_replaced = 0;
};

AnalyticResolution analytic_resolved_moments(const FermiWindow& window,
                                             const ScattererModel& scatterer,
                                             double n, int L,
                                             ExecPolicy policy =
                                                 ExecPolicy::Parallel);

}  // namespace nessent

#endif
