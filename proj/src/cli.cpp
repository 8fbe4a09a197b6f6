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

#include "nessent/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

#include "nessent/asymptotics.hpp"
#include "nessent/exact.hpp"
#include "nessent/symbols.hpp"

namespace nessent {

namespace {

constexpr double kPi = M_PI;

// ---------------------------------------------------------------- parsing

template <typename T>
std::vector<T> parse_range(const Json& v, const std::string& field,
                           std::vector<std::string>& errors) {
  std::vector<T> out;
  if (v.is_array()) {
    for (const auto& e : v) {
      if (!e.is_number()) {
        errors.push_back(field + ": array entries must be numbers");
        return {};
      }
      out.push_back(e.get<T>());
    }
    return out;
  }
  if (v.is_object() && v.contains("from") && v.contains("to")) {
    const double from = v.at("from").get<double>();
    const double to = v.at("to").get<double>();
    const double step = v.value("step", 1.0);
    if (!(step > 0.0) || to < from) {
      errors.push_back(field + ": range requires from <= to and step > 0");
      return {};
    }
    for (double x = from; x <= to + 1e-9 * step; x += step)
      out.push_back(static_cast<T>(x));
    return out;
  }
  errors.push_back(field + ": expected an array or {from, to, step}");
  return {};
}

std::optional<ScattererModel> parse_model(const Json& v,
                                          const std::string& field,
                                          std::vector<std::string>& errors) {
  if (!v.is_object() || !v.contains("type")) {
    errors.push_back(field + ": expected an object with a \"type\" key");
    return std::nullopt;
  }
  const std::string type = v.at("type").get<std::string>();
  if (type == "transparent") return ScattererModel::transparent();
  if (type == "impurity") {
    if (!v.contains("eps0_over_t") || !v.at("eps0_over_t").is_number()) {
      errors.push_back(field + ": impurity model needs numeric eps0_over_t");
      return std::nullopt;
    }
    return ScattererModel::single_impurity(v.at("eps0_over_t").get<double>());
  }
  if (type == "table") {
    if (!v.contains("samples") || !v.at("samples").is_array() ||
        v.at("samples").size() < 2) {
      errors.push_back(field + ": table model needs >= 2 [k, t2] samples");
      return std::nullopt;
    }
    std::vector<std::pair<double, double>> samples;
    for (const auto& s : v.at("samples")) {
      if (!s.is_array() || s.size() != 2) {
        errors.push_back(field + ": table samples must be [k, t2] pairs");
        return std::nullopt;
      }
      samples.emplace_back(s.at(0).get<double>(), s.at(1).get<double>());
    }
    try {
      return ScattererModel::table(std::move(samples));
    } catch (const std::exception& e) {
      errors.push_back(field + ": " + e.what());
      return std::nullopt;
    }
  }
  errors.push_back(field + ": unknown model type \"" + type + "\"");
  return std::nullopt;
}

void require(bool ok, const std::string& message,
             std::vector<std::string>& errors) {
  if (!ok) errors.push_back(message);
}

// ------------------------------------------------------------- formatting

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::string format_cell(const Json& v) {
  if (v.is_null()) return "";
  if (v.is_string()) return csv_escape(v.get<std::string>());
  if (v.is_boolean()) return v.get<bool>() ? "1" : "0";
  if (v.is_number_integer()) return std::to_string(v.get<long long>());
  if (v.is_number()) return format_double(v.get<double>());
  return csv_escape(v.dump());
}

// ----------------------------------------------------------- experiments

struct RowSink {
  std::vector<Json> rows;
  void add(Json row) { rows.push_back(std::move(row)); }
};

FermiWindow window_of(const ExperimentConfig& c) {
  return FermiWindow(c.k_fl, c.k_fr);
}

Json base_row(const ExperimentConfig& c) {
  return Json{{"model", c.model_desc}, {"k_fl", c.k_fl}, {"k_fr", c.k_fr}};
}

double entropy_from_coefficients(const VneeCoefficients& c, double L) {
  return c.lin * L + c.log_term * std::log(L) + c.const_term;
}

Report vnee_scaling(const ExperimentConfig& c) {
  Report rep;
  rep.columns = {"model",       "k_fl",       "k_fr",        "L",
                 "entropy_num", "lin",        "log_term",    "const_term",
                 "entropy_ana", "abs_dev",    "const_approx"};
  std::vector<double> dks = c.dk_list;
  if (dks.empty()) dks.push_back(c.k_fl - c.k_fr);
  RowSink sink;
  for (double dk : dks) {
    const FermiWindow w(c.k_fr + dk, c.k_fr);
    const auto coeff = vnee_coefficients(w, *c.model);
    for (int L : c.L_list) {
      const auto spec = build_toeplitz_correlation(w, *c.model, L);
      const double s_num = vnee_exact(spec);
      const double s_ana = entropy_from_coefficients(coeff, double(L));
      Json row = base_row(c);
      row["k_fl"] = w.k_fl();
      row["L"] = L;
      row["entropy_num"] = s_num;
      row["lin"] = coeff.lin;
      row["log_term"] = coeff.log_term;
      row["const_term"] = coeff.const_term;
      row["entropy_ana"] = s_ana;
      row["abs_dev"] = std::abs(s_num - s_ana);
      row["const_approx"] = coeff.const_approx;
      sink.add(std::move(row));
    }
  }
  rep.rows = std::move(sink.rows);
  return rep;
}

Report coefficient_sweep(const ExperimentConfig& c) {
  Report rep;
  RowSink sink;
  if (c.target == "vnee") {
    rep.columns = {"model", "k_fl", "k_fr",       "lin",
                   "log_term", "const_term", "const_approx"};
    for (double dk : c.dk_list) {
      const FermiWindow w(c.k_fr + dk, c.k_fr);
      const auto coeff = vnee_coefficients(w, *c.model);
      Json row = base_row(c);
      row["k_fl"] = w.k_fl();
      row["lin"] = coeff.lin;
      row["log_term"] = coeff.log_term;
      row["const_term"] = coeff.const_term;
      row["const_approx"] = coeff.const_approx;
      sink.add(std::move(row));
    }
  } else {
    rep.columns = {"model",    "k_fl",   "k_fr",   "n",        "alpha",
                   "lin_re",   "lin_im", "log_re", "log_im",   "const_re",
                   "const_im", "divergent", "const_approx"};
    const FermiWindow w = window_of(c);
    for (double n : c.n_list) {
      for (double a : c.alpha_list) {
        const auto t = coefficients(w, *c.model, n, a);
        Json row = base_row(c);
        row["n"] = n;
        row["alpha"] = a;
        row["lin_re"] = t.lin.real();
        row["lin_im"] = t.lin.imag();
        row["log_re"] = t.log_term.real();
        row["log_im"] = t.log_term.imag();
        row["const_re"] = t.const_term.real();
        row["const_im"] = t.const_term.imag();
        row["divergent"] = t.meta.divergent;
        row["const_approx"] = t.meta.const_approx;
        sink.add(std::move(row));
      }
    }
  }
  rep.rows = std::move(sink.rows);
  return rep;
}

Report resolved_profile(const ExperimentConfig& c) {
  Report rep;
  rep.columns = {"kind",  "model",    "k_fl",     "k_fr",
                 "L",     "n",        "Q",        "exact",
                 "analytic", "gaussian", "abs_dev_analytic",
                 "abs_dev_gaussian", "divergent_replaced"};
  const FermiWindow w = window_of(c);
  const int L = c.L_list.front();
  const auto spec = build_toeplitz_correlation(w, *c.model, L);
  const auto res1 = gaussian_resolution(w, *c.model, 1.0, L);
  const long Q0 = rounded_mean_charge(res1.mean_n);
  const long lo = std::max(0L, Q0 - c.q_halfwidth);
  const long hi = std::min(long(L), Q0 + c.q_halfwidth);
  RowSink sink;
  for (double n : c.n_list) {
    const auto exact = resolved_moments(spec, n);
    const auto ana = analytic_resolved_moments(w, *c.model, n, L);
    const auto res = n == 1.0 ? res1 : gaussian_resolution(w, *c.model, n, L);
    const double log_zn =
        assemble(coefficients(w, *c.model, n, 0.0), double(L)).real();
    for (long q = lo; q <= hi; ++q) {
      const double ex = exact.weights[std::size_t(q)].real();
      const double an = ana.table.weights[std::size_t(q)].real();
      const double ga = gaussian_resolved_moment(res, log_zn, double(q));
      Json row = base_row(c);
      row["kind"] = "moment";
      row["L"] = L;
      row["n"] = n;
      row["Q"] = q;
      row["exact"] = ex;
      row["analytic"] = an;
      row["gaussian"] = ga;
      row["abs_dev_analytic"] = std::abs(ex - an);
      row["abs_dev_gaussian"] = std::abs(ex - ga);
      row["divergent_replaced"] = ana.divergent_replaced;
      sink.add(std::move(row));
    }
  }
  // Post-measurement entropies from the n = 1 data.
  const double S = vnee_exact(spec);
  const auto z1 = charge_distribution(spec);
  const auto sq = resolved_vnee(spec);
  for (long q = lo; q <= hi; ++q) {
    Json row = base_row(c);
    row["kind"] = "sigma";
    row["L"] = L;
    row["n"] = 1.0;
    row["Q"] = q;
    const double wq = z1.weights[std::size_t(q)].real();
    if (wq > 1e-10)
      row["exact"] = post_projection_vnee(z1, sq, q);
    else
      row["exact"] = nullptr;
    row["gaussian"] = sigma_gaussian(res1, S, double(q));
    sink.add(std::move(row));
  }
  rep.rows = std::move(sink.rows);
  return rep;
}

Report equipartition(const ExperimentConfig& c) {
  Report rep;
  rep.columns = {"model",       "k_fl",        "k_fr",          "L",
                 "Q",           "offset",      "sigma_exact",   "sigma_gauss",
                 "slope_analytic", "empty_sector"};
  const FermiWindow w = window_of(c);
  const double slope = equipartition_slope(w, *c.model);
  RowSink sink;
  for (int L : c.L_list) {
    const auto spec = build_toeplitz_correlation(w, *c.model, L);
    const auto res = gaussian_resolution(w, *c.model, 1.0, L);
    const double S = vnee_exact(spec);
    const auto z1 = charge_distribution(spec);
    const auto sq = resolved_vnee(spec);
    const long Q0 = rounded_mean_charge(res.mean_n);
    for (long off = -c.q_offsets; off <= c.q_offsets; ++off) {
      const long q = Q0 + off;
      if (q < 0 || q > L) continue;
      Json row = base_row(c);
      row["L"] = L;
      row["Q"] = q;
      row["offset"] = off;
      const double wq = z1.weights[std::size_t(q)].real();
      if (wq > 1e-10) {
        row["sigma_exact"] = post_projection_vnee(z1, sq, q);
        row["empty_sector"] = false;
      } else {
        row["sigma_exact"] = nullptr;
        row["empty_sector"] = true;
      }
      row["sigma_gauss"] = sigma_gaussian(res, S, double(q));
      row["slope_analytic"] = slope;
      sink.add(std::move(row));
    }
  }
  rep.rows = std::move(sink.rows);
  return rep;
}

Report genfun_deviation(const ExperimentConfig& c) {
  Report rep;
  rep.columns = {"model",      "k_fl",       "k_fr",        "L",
                 "n",          "alpha",      "exact_re",    "exact_im",
                 "analytic_re", "analytic_im", "abs_dev",   "divergent",
                 "zero"};
  const FermiWindow w = window_of(c);
  const int L = c.L_list.front();
  const auto spec = build_toeplitz_correlation(w, *c.model, L);
  RowSink sink;
  for (double n : c.n_list) {
    for (double a : c.alpha_list) {
      const auto ex = gen_fun_exact(spec, n, a);
      const auto t = coefficients(w, *c.model, n, a);
      const Complex an = assemble(t, double(L));
      Json row = base_row(c);
      row["L"] = L;
      row["n"] = n;
      row["alpha"] = a;
      row["exact_re"] = ex.log_Z.real();
      row["exact_im"] = ex.log_Z.imag();
      row["analytic_re"] = an.real();
      row["analytic_im"] = an.imag();
      row["abs_dev"] = (ex.zero || t.meta.divergent)
                           ? Json(nullptr)
                           : Json(std::abs(ex.log_Z - an));
      row["divergent"] = t.meta.divergent;
      row["zero"] = ex.zero;
      sink.add(std::move(row));
    }
  }
  rep.rows = std::move(sink.rows);
  return rep;
}

Report friedel(const ExperimentConfig& c) {
  Report rep;
  rep.columns = {"kind", "model", "k_fl",  "k_fr",     "L",    "d",
                 "entropy", "deviation", "value", "quantity", "stderr"};
  const FermiWindow w = window_of(c);
  const int L = c.L_list.front();
  CorrelationBuilder builder(w, *c.model);
  const double s_far = vnee_exact(builder.toeplitz(L));
  std::vector<double> ds;
  std::vector<double> devs;
  RowSink sink;
  for (long d : c.d_list) {
    const double s = vnee_exact(builder.full(L, d));
    const double dev = s - s_far;
    ds.push_back(double(d));
    devs.push_back(dev);
    Json row = base_row(c);
    row["kind"] = "sample";
    row["L"] = L;
    row["d"] = d;
    row["entropy"] = s;
    row["deviation"] = dev;
    sink.add(std::move(row));
  }

  // The smooth part of the deviation decays one power faster than it
  // varies, so the oscillation is read off the first differences: they
  // suppress the trend and scale the oscillation by 2 sin(omega/2).
  const double step = ds.size() > 1 ? ds[1] - ds[0] : 1.0;
  std::vector<double> mid_x(ds.size() - 1), diff_y(ds.size() - 1);
  for (std::size_t i = 0; i + 1 < ds.size(); ++i) {
    mid_x[i] = 0.5 * (ds[i] + ds[i + 1]);
    diff_y[i] = devs[i + 1] - devs[i];
  }
  const double omega = dominant_wavenumber(diff_y) / step;
  const double diff_gain = 2.0 * std::sin(0.5 * omega * step);
  const auto env = oscillation_envelope(mid_x, diff_y);
  std::vector<double> env_x, env_y;
  for (const auto& [x, y_raw] : env) {
    const double y = y_raw / diff_gain;
    env_x.push_back(x);
    env_y.push_back(y);
    Json row = base_row(c);
    row["kind"] = "envelope";
    row["L"] = L;
    row["d"] = x;
    row["value"] = y;
    sink.add(std::move(row));
  }
  const int period = std::max(2, int(std::lround(2.0 * kPi / omega / step)));
  const auto avg = period_average(ds, devs, period);
  std::vector<double> avg_x, avg_y;
  for (const auto& [x, y] : avg) {
    avg_x.push_back(x);
    avg_y.push_back(y);
    Json row = base_row(c);
    row["kind"] = "averaged";
    row["L"] = L;
    row["d"] = x;
    row["value"] = y;
    sink.add(std::move(row));
  }

  auto fit_row = [&](const std::string& name, double value, Json err) {
    Json row = base_row(c);
    row["kind"] = "fit";
    row["L"] = L;
    row["quantity"] = name;
    row["value"] = value;
    row["stderr"] = std::move(err);
    sink.add(std::move(row));
  };
  const auto amp_fit = fit_power_law(env_x, env_y);
  const auto avg_fit = fit_power_law(avg_x, avg_y);
  fit_row("wavenumber", omega, nullptr);
  fit_row("amplitude_exponent", amp_fit.exponent, amp_fit.stderr_exponent);
  fit_row("averaged_exponent", avg_fit.exponent, avg_fit.stderr_exponent);
  rep.rows = std::move(sink.rows);
  return rep;
}

Report two_scatterer(const ExperimentConfig& c) {
  Report rep;
  rep.columns = {"model",       "right_model", "k_fl",     "k_fr",
                 "L",           "entropy_num", "lin",      "log_term",
                 "entropy_linlog", "residual"};
  const FermiWindow w = window_of(c);
  const auto coeff = two_scatterer_vnee(w, *c.model, *c.right_model);
  RowSink sink;
  for (int L : c.L_list) {
    const auto spec = build_between_scatterers(w, *c.model, *c.right_model, L);
    const double s_num = vnee_exact(spec);
    const double linlog =
        coeff.lin * L + coeff.log_term * std::log(double(L));
    Json row = base_row(c);
    row["right_model"] = c.right_model_desc;
    row["L"] = L;
    row["entropy_num"] = s_num;
    row["lin"] = coeff.lin;
    row["log_term"] = coeff.log_term;
    row["entropy_linlog"] = linlog;
    row["residual"] = s_num - linlog;
    sink.add(std::move(row));
  }
  rep.rows = std::move(sink.rows);
  return rep;
}

}  // namespace

std::vector<std::string> list_experiments() {
  return {"vnee_scaling",   "coefficient_sweep", "resolved_profile",
          "equipartition",  "genfun_deviation",  "friedel",
          "two_scatterer"};
}

std::uint64_t fnv1a_hash(const std::string& bytes) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char b : bytes) {
    h ^= b;
    h *= 1099511628211ull;
  }
  return h;
}

ExperimentConfig parse_config(const Json& doc,
                              std::vector<std::string>& errors) {
  ExperimentConfig c;
  if (!doc.is_object()) {
    errors.push_back("config: top-level document must be an object");
    return c;
  }
  c.raw = doc;
  c.config_hash = fnv1a_hash(doc.dump());

  const int schema = doc.value("schema_version", 0);
  require(schema == kSchemaVersion,
          "schema_version: expected " + std::to_string(kSchemaVersion),
          errors);

  c.experiment = doc.value("experiment", "");
  const auto known = list_experiments();
  require(std::find(known.begin(), known.end(), c.experiment) != known.end(),
          "experiment: unknown experiment \"" + c.experiment + "\"", errors);

  if (doc.contains("window") && doc.at("window").is_object()) {
    c.k_fl = doc.at("window").value("k_fl", -1.0);
    c.k_fr = doc.at("window").value("k_fr", -1.0);
    require(c.k_fl >= 0.0 && c.k_fl <= kPi,
            "window.k_fl: must lie in [0, pi]", errors);
    require(c.k_fr >= 0.0 && c.k_fr <= kPi,
            "window.k_fr: must lie in [0, pi]", errors);
  } else {
    errors.push_back("window: required object {k_fl, k_fr}");
  }

  if (doc.contains("model")) {
    c.model = parse_model(doc.at("model"), "model", errors);
    c.model_desc = doc.at("model").dump();
  } else {
    errors.push_back("model: required");
  }
  if (doc.contains("right_model")) {
    c.right_model = parse_model(doc.at("right_model"), "right_model", errors);
    c.right_model_desc = doc.at("right_model").dump();
  }

  if (doc.contains("L_list"))
    c.L_list = parse_range<int>(doc.at("L_list"), "L_list", errors);
  if (doc.contains("d_list"))
    c.d_list = parse_range<long>(doc.at("d_list"), "d_list", errors);
  if (doc.contains("n_list"))
    c.n_list = parse_range<double>(doc.at("n_list"), "n_list", errors);
  if (doc.contains("dk_list"))
    c.dk_list = parse_range<double>(doc.at("dk_list"), "dk_list", errors);
  if (doc.contains("alpha_list")) {
    c.alpha_list =
        parse_range<double>(doc.at("alpha_list"), "alpha_list", errors);
  } else if (doc.contains("alpha_points")) {
    const int n = doc.at("alpha_points").get<int>();
    if (n < 1) {
      errors.push_back("alpha_points: must be >= 1");
    } else {
      for (int j = 0; j < n; ++j)
        c.alpha_list.push_back(-kPi + 2.0 * kPi * (j + 0.5) / n);
    }
  }
  c.q_halfwidth = doc.value("q_halfwidth", 6);
  c.q_offsets = doc.value("q_offsets", 3);

  if (doc.contains("output") && doc.at("output").is_object()) {
    c.output_path = doc.at("output").value("path", "");
    c.output_format = doc.at("output").value("format", "csv");
    require(!c.output_path.empty(), "output.path: required", errors);
    require(c.output_format == "csv" || c.output_format == "json",
            "output.format: must be \"csv\" or \"json\"", errors);
  } else {
    errors.push_back("output: required object {path, format}");
  }

  for (int L : c.L_list)
    require(L >= 1, "L_list: all sizes must be >= 1", errors);
  for (double n : c.n_list)
    require(n > 0.0, "n_list: all orders must be > 0", errors);
  for (double a : c.alpha_list)
    require(std::abs(a) <= kPi + 1e-12,
            "alpha_list: all phases must lie in [-pi, pi]", errors);
  for (double dk : c.dk_list)
    require(dk >= 0.0 && c.k_fr + dk <= kPi + 1e-12,
            "dk_list: windows must stay inside [0, pi]", errors);

  // Per-experiment requirements.
  const std::string& e = c.experiment;
  auto need = [&](bool ok, const std::string& msg) {
    require(ok, e + ": " + msg, errors);
  };
  if (e == "vnee_scaling") {
    need(!c.L_list.empty(), "L_list required");
  } else if (e == "coefficient_sweep") {
    c.target = doc.value("target", "");
    need(c.target == "genfun" || c.target == "vnee",
         "target must be \"genfun\" or \"vnee\"");
    if (c.target == "genfun")
      need(!c.n_list.empty() && !c.alpha_list.empty(),
           "n_list and an alpha grid required");
    if (c.target == "vnee") need(!c.dk_list.empty(), "dk_list required");
  } else if (e == "resolved_profile") {
    need(!c.L_list.empty() && !c.n_list.empty(), "L_list and n_list required");
  } else if (e == "equipartition") {
    need(!c.L_list.empty(), "L_list required");
  } else if (e == "genfun_deviation") {
    need(!c.L_list.empty() && !c.n_list.empty() && !c.alpha_list.empty(),
         "L_list, n_list and an alpha grid required");
  } else if (e == "friedel") {
    need(!c.L_list.empty(), "L_list required");
    need(c.d_list.size() >= 16, "d_list with >= 16 uniform points required");
    for (std::size_t i = 2; i < c.d_list.size(); ++i)
      if (c.d_list[i] - c.d_list[i - 1] != c.d_list[1] - c.d_list[0]) {
        errors.push_back("friedel: d_list must be uniformly spaced");
        break;
      }
  } else if (e == "two_scatterer") {
    need(!c.L_list.empty(), "L_list required");
    need(c.right_model.has_value(), "right_model required");
  }
  return c;
}

Report run_experiment(const ExperimentConfig& c) {
  Report rep;
  if (c.experiment == "vnee_scaling")
    rep = vnee_scaling(c);
  else if (c.experiment == "coefficient_sweep")
    rep = coefficient_sweep(c);
  else if (c.experiment == "resolved_profile")
    rep = resolved_profile(c);
  else if (c.experiment == "equipartition")
    rep = equipartition(c);
  else if (c.experiment == "genfun_deviation")
    rep = genfun_deviation(c);
  else if (c.experiment == "friedel")
    rep = friedel(c);
  else if (c.experiment == "two_scatterer")
    rep = two_scatterer(c);
  else
    throw std::invalid_argument("unknown experiment: " + c.experiment);

  char hash[24];
  std::snprintf(hash, sizeof(hash), "%016llx",
                static_cast<unsigned long long>(c.config_hash));
  rep.meta = Json{{"tool", "nessent"},
                  {"version", kToolVersion},
                  {"schema_version", kSchemaVersion},
                  {"experiment", c.experiment},
                  {"config_hash", hash},
                  {"config", c.raw}};
  return rep;
}

std::string report_to_csv(const Report& report) {
  std::ostringstream out;
  out << "tool,version,config_hash";
  for (const auto& col : report.columns) out << ',' << csv_escape(col);
  out << "\r\n";
  const std::string prefix =
      report.meta.value("tool", "") + "," + report.meta.value("version", "") +
      "," + report.meta.value("config_hash", "");
  for (const auto& row : report.rows) {
    out << prefix;
    for (const auto& col : report.columns) {
      out << ',';
      if (row.contains(col)) out << format_cell(row.at(col));
    }
    out << "\r\n";
  }
  return out.str();
}

std::string report_to_json(const Report& report) {
  Json doc;
  doc["meta"] = report.meta;
  doc["columns"] = report.columns;
  doc["rows"] = report.rows;
  return doc.dump(2) + "\n";
}

void write_report(const Report& report, const ExperimentConfig& config) {
  std::ofstream out(config.output_path, std::ios::binary);
  if (!out)
    throw std::runtime_error("cannot open output file: " + config.output_path);
  out << (config.output_format == "json" ? report_to_json(report)
                                         : report_to_csv(report));
  if (!out)
    throw std::runtime_error("failed writing output file: " +
                             config.output_path);
}

PowerLawFit fit_power_law(const std::vector<double>& x,
                          const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 3)
    throw std::invalid_argument("power-law fit needs >= 3 matched points");
  std::vector<double> lx, ly;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] > 0.0) || y[i] == 0.0) continue;
    lx.push_back(std::log(x[i]));
    ly.push_back(std::log(std::abs(y[i])));
  }
  const std::size_t m = lx.size();
  if (m < 3)
    throw std::invalid_argument("power-law fit: too few usable points");
  double sx = 0.0, sy = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    sx += lx[i];
    sy += ly[i];
  }
  const double mx = sx / double(m);
  const double my = sy / double(m);
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    sxx += (lx[i] - mx) * (lx[i] - mx);
    sxy += (lx[i] - mx) * (ly[i] - my);
  }
  PowerLawFit fit;
  fit.exponent = sxy / sxx;
  fit.log_prefactor = my - fit.exponent * mx;
  double ss = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    const double r = ly[i] - fit.log_prefactor - fit.exponent * lx[i];
    ss += r * r;
  }
  fit.stderr_exponent = std::sqrt(ss / double(m - 2) / sxx);
  return fit;
}

double dominant_wavenumber(const std::vector<double>& samples) {
  const std::size_t n = samples.size();
  if (n < 8) throw std::invalid_argument("wavenumber needs >= 8 samples");
  double mean = 0.0;
  for (double s : samples) mean += s;
  mean /= double(n);
  // Hann window against spectral leakage from the algebraic envelope.
  std::vector<double> w(n);
  for (std::size_t j = 0; j < n; ++j)
    w[j] = (samples[j] - mean) *
           0.5 * (1.0 - std::cos(2.0 * kPi * double(j) / double(n - 1)));
  auto power = [&](std::size_t m) {
    Complex acc{0.0, 0.0};
    for (std::size_t j = 0; j < n; ++j)
      acc += w[j] * std::exp(Complex(0.0, -2.0 * kPi * double(m) *
                                              double(j) / double(n)));
    return std::norm(acc);
  };
  const std::size_t half = n / 2;
  std::size_t best = 1;
  double best_p = power(1);
  for (std::size_t m = 2; m <= half; ++m) {
    const double p = power(m);
    if (p > best_p) {
      best_p = p;
      best = m;
    }
  }
  // Parabolic refinement on the log-power of the neighboring bins.
  double delta = 0.0;
  if (best > 1 && best < half) {
    const double pm = std::log(power(best - 1) + 1e-300);
    const double p0 = std::log(best_p + 1e-300);
    const double pp = std::log(power(best + 1) + 1e-300);
    const double den = pm - 2.0 * p0 + pp;
    if (den < 0.0) delta = 0.5 * (pm - pp) / den;
  }
  return 2.0 * kPi * (double(best) + delta) / double(n);
}

std::vector<std::pair<double, double>> oscillation_envelope(
    const std::vector<double>& x, const std::vector<double>& y) {
  std::vector<std::pair<double, double>> out;
  for (std::size_t i = 1; i + 1 < y.size(); ++i) {
    const double a = std::abs(y[i]);
    if (a >= std::abs(y[i - 1]) && a > std::abs(y[i + 1]))
      out.emplace_back(x[i], a);
  }
  return out;
}

std::vector<std::pair<double, double>> period_average(
    const std::vector<double>& x, const std::vector<double>& y, int period) {
  if (period < 1) throw std::invalid_argument("period must be >= 1");
  std::vector<std::pair<double, double>> out;
  for (std::size_t i = 0; i + std::size_t(period) <= y.size();
       i += std::size_t(period)) {
    double sx = 0.0, sy = 0.0;
    for (int j = 0; j < period; ++j) {
      sx += x[i + std::size_t(j)];
      sy += y[i + std::size_t(j)];
    }
    out.emplace_back(sx / period, sy / period);
  }
  return out;
}

}  // namespace nessent
