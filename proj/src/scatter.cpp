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

#include "nessent/scatter.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace nessent {

namespace {

void check_momentum(double k) {
  if (!(k > 0.0 && k < M_PI)) {
    std::ostringstream msg;
    msg << "momentum " << k << " outside the band (0, pi)";
    throw std::domain_error(msg.str());
  }
}

// Fritsch-Carlson monotone cubic Hermite interpolant on a fixed grid.
class MonotoneCubic {
 public:
  explicit MonotoneCubic(std::vector<std::pair<double, double>> samples)
      : pts_(std::move(samples)) {
    std::sort(pts_.begin(), pts_.end());
    const std::size_t n = pts_.size();
    if (n < 2) throw std::invalid_argument("table needs at least 2 samples");
    for (std::size_t i = 1; i < n; ++i)
      if (pts_[i].first == pts_[i - 1].first)
        throw std::invalid_argument("table has duplicate momenta");
    slopes_.resize(n);
    std::vector<double> d(n - 1);
    for (std::size_t i = 0; i + 1 < n; ++i)
      d[i] = (pts_[i + 1].second - pts_[i].second) /
             (pts_[i + 1].first - pts_[i].first);
    slopes_[0] = d[0];
    slopes_[n - 1] = d[n - 2];
    for (std::size_t i = 1; i + 1 < n; ++i)
      slopes_[i] = (d[i - 1] * d[i] > 0.0) ? 0.5 * (d[i - 1] + d[i]) : 0.0;
    for (std::size_t i = 0; i + 1 < n; ++i) {
      if (d[i] == 0.0) {
        slopes_[i] = slopes_[i + 1] = 0.0;
        continue;
      }
      const double a = slopes_[i] / d[i];
      const double b = slopes_[i + 1] / d[i];
      const double s = a * a + b * b;
      if (s > 9.0) {
        const double f = 3.0 / std::sqrt(s);
        slopes_[i] = f * a * d[i];
        slopes_[i + 1] = f * b * d[i];
      }
    }
  }

  double operator()(double x) const {
    if (x <= pts_.front().first) return pts_.front().second;
    if (x >= pts_.back().first) return pts_.back().second;
    auto it = std::upper_bound(
        pts_.begin(), pts_.end(), std::make_pair(x, 0.0),
        [](const auto& a, const auto& b) { return a.first < b.first; });
    const std::size_t i = std::size_t(it - pts_.begin()) - 1;
    const double h = pts_[i + 1].first - pts_[i].first;
    const double t = (x - pts_[i].first) / h;
    const double t2 = t * t;
    const double t3 = t2 * t;
    const double h00 = 2.0 * t3 - 3.0 * t2 + 1.0;
    const double h10 = t3 - 2.0 * t2 + t;
    const double h01 = -2.0 * t3 + 3.0 * t2;
    const double h11 = t3 - t2;
    return h00 * pts_[i].second + h10 * h * slopes_[i] +
           h01 * pts_[i + 1].second + h11 * h * slopes_[i + 1];
  }

 private:
  std::vector<std::pair<double, double>> pts_;
  std::vector<double> slopes_;
};

ScatterSample combine_samples(const ScatterSample& s1,
                              const ScatterSample& s2, double k) {
  const double denom = 1.0 - s1.r_R2 * s2.r_L2;
  if (denom <= 0.0) {
    std::ostringstream msg;
    msg << "perfectly reflecting scatterer pair at k = " << k;
    throw std::runtime_error(msg.str());
  }
  ScatterSample out;
  out.t_L2 = s1.t_L2 * s2.t_L2 / denom;
  out.t_R2 = s2.t_R2 * s1.t_R2 / denom;
  out.r_L2 = s1.r_L2 + s1.t_R2 * s1.t_L2 * s2.r_L2 / denom;
  out.r_R2 = s2.r_R2 + s2.t_L2 * s2.t_R2 * s1.r_R2 / denom;
  // Incoherent composition carries no phase information.
  out.r_R_phase = std::sqrt(std::max(0.0, out.r_R2));
  return out;
}

}  // namespace

FermiWindow::FermiWindow(double k_fl, double k_fr)
    : k_fl_(k_fl), k_fr_(k_fr) {
  if (!(k_fl >= 0.0 && k_fl <= M_PI && k_fr >= 0.0 && k_fr <= M_PI))
    throw std::domain_error("Fermi momenta must lie in [0, pi]");
}

std::pair<double, double> single_impurity_probabilities(double k,
                                                        double eps0_over_t) {
  check_momentum(k);
  const double s = std::sin(k);
  const double sigma = 0.5 * eps0_over_t;
  const double t2 = s * s / (s * s + sigma * sigma);
  return {t2, 1.0 - t2};
}

ScattererModel ScattererModel::single_impurity(double eps0_over_t) {
  return ScattererModel(
      Kind::SingleImpurity, [eps0_over_t](double k) -> ScatterSample {
        auto [t2, r2] = single_impurity_probabilities(k, eps0_over_t);
        const double sigma = 0.5 * eps0_over_t;
        const std::complex<double> r_amp =
            std::complex<double>(0.0, -sigma) /
            std::complex<double>(std::sin(k), sigma);
        return {t2, r2, t2, r2, r_amp};
      });
}

ScattererModel ScattererModel::transparent() {
  return ScattererModel(Kind::Transparent, [](double k) -> ScatterSample {
    check_momentum(k);
    return {1.0, 0.0, 1.0, 0.0, {0.0, 0.0}};
  });
}

ScattererModel ScattererModel::table(
    std::vector<std::pair<double, double>> samples) {
  for (const auto& [k, t2] : samples) {
    check_momentum(k);
    if (!(t2 >= 0.0 && t2 <= 1.0))
      throw std::domain_error("table transmission outside [0, 1]");
  }
  auto interp = std::make_shared<MonotoneCubic>(std::move(samples));
  return ScattererModel(Kind::Table, [interp](double k) -> ScatterSample {
    check_momentum(k);
    const double t2 = std::clamp((*interp)(k), 0.0, 1.0);
    const double r2 = 1.0 - t2;
    return {t2, r2, t2, r2, std::sqrt(r2)};
  });
}

ScattererModel ScattererModel::composite(std::vector<ScattererModel> parts) {
  if (parts.empty())
    throw std::invalid_argument("composite needs at least one scatterer");
  auto shared =
      std::make_shared<std::vector<ScattererModel>>(std::move(parts));
  return ScattererModel(Kind::Composite, [shared](double k) -> ScatterSample {
    ScatterSample acc = (*shared)[0].eval(k);
    for (std::size_t i = 1; i < shared->size(); ++i)
      acc = combine_samples(acc, (*shared)[i].eval(k), k);
    return acc;
  });
}

ScatterSample ScattererModel::eval(double k) const { return eval_(k); }

ScattererModel combine_incoherent(const ScattererModel& left,
                                  const ScattererModel& right) {
  return ScattererModel::composite({left, right});
}

NuProfile::NuProfile(FermiWindow window, ScattererModel scatterer)
    : window_(window), scatterer_(std::move(scatterer)) {
  if (window_.empty()) return;
  // Endpoint evaluations nudged inward; the band edges are excluded.
  const double eps = 1e-12 * std::max(1.0, window_.dk());
  auto at = [&](double k) { return (*this)(k); };
  nu_minus_ = at(std::max(window_.k_minus(), eps));
  nu_plus_ = at(std::min(window_.k_plus(), M_PI - eps));
  nu0_ = at(window_.k0());
}

double NuProfile::operator()(double k) const {
  const ScatterSample s = scatterer_.eval(k);
  const double nu = s.t_L2 - s.r_R2;
  return (window_.k_fr() < window_.k_fl()) ? nu : -nu;
}

NuProfile nu_profile(const FermiWindow& window,
                     const ScattererModel& scatterer) {
  return NuProfile(window, scatterer);
}

}  // namespace nessent
