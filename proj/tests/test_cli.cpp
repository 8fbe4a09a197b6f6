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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <string>
#include <vector>

#include "nessent/cli.hpp"

using namespace nessent;

namespace {

const double kPi = M_PI;

Json minimal_config(const std::string& experiment) {
  return Json{
      {"schema_version", 1},
      {"experiment", experiment},
      {"window", {{"k_fl", kPi / 2 + 0.05}, {"k_fr", kPi / 2 - 0.05}}},
      {"model", {{"type", "impurity"}, {"eps0_over_t", 1.0}}},
      {"output", {{"path", "/tmp/nessent_test_out"}, {"format", "csv"}}}};
}

ExperimentConfig parse_ok(const Json& doc) {
  std::vector<std::string> errors;
  auto c = parse_config(doc, errors);
  for (const auto& e : errors) INFO(e);
  REQUIRE(errors.empty());
  return c;
}

bool mentions(const std::vector<std::string>& errors,
              const std::string& needle) {
  for (const auto& e : errors)
    if (e.find(needle) != std::string::npos) return true;
  return false;
}

}  // namespace

TEST_CASE("config hash is deterministic and content sensitive") {
  CHECK(fnv1a_hash("") == 14695981039346656037ull);
  CHECK(fnv1a_hash("a") == 12638187200555641996ull);
  CHECK(fnv1a_hash("ab") != fnv1a_hash("ba"));
  auto doc = minimal_config("vnee_scaling");
  doc["L_list"] = {50};
  auto c1 = parse_ok(doc);
  auto c2 = parse_ok(doc);
  CHECK(c1.config_hash == c2.config_hash);
  doc["L_list"] = {60};
  CHECK(parse_ok(doc).config_hash != c1.config_hash);
}

TEST_CASE("validation collects named problems") {
  std::vector<std::string> errors;
  parse_config(Json::object(), errors);
  CHECK(mentions(errors, "schema_version"));
  CHECK(mentions(errors, "experiment"));
  CHECK(mentions(errors, "window"));
  CHECK(mentions(errors, "model"));
  CHECK(mentions(errors, "output"));

  auto doc = minimal_config("vnee_scaling");
  doc["L_list"] = {0};
  doc["window"]["k_fl"] = 4.0;
  doc["model"] = {{"type", "warp"}};
  errors.clear();
  parse_config(doc, errors);
  CHECK(mentions(errors, "L_list"));
  CHECK(mentions(errors, "window.k_fl"));
  CHECK(mentions(errors, "unknown model type"));

  auto two = minimal_config("two_scatterer");
  two["L_list"] = {100};
  errors.clear();
  parse_config(two, errors);
  CHECK(mentions(errors, "right_model"));
}

TEST_CASE("range fields accept arrays and from/to/step") {
  auto doc = minimal_config("vnee_scaling");
  doc["L_list"] = {{"from", 100}, {"to", 400}, {"step", 100}};
  auto c = parse_ok(doc);
  CHECK(c.L_list == std::vector<int>{100, 200, 300, 400});
  doc["L_list"] = {250, 500};
  CHECK(parse_ok(doc).L_list == std::vector<int>{250, 500});
}

TEST_CASE("alpha grid generation") {
  auto doc = minimal_config("genfun_deviation");
  doc["L_list"] = {50};
  doc["n_list"] = {2.0};
  doc["alpha_points"] = 4;
  auto c = parse_ok(doc);
  REQUIRE(c.alpha_list.size() == 4);
  CHECK(c.alpha_list.front() == doctest::Approx(-kPi + kPi / 4.0));
  CHECK(c.alpha_list.back() == doctest::Approx(kPi - kPi / 4.0));
}

TEST_CASE("power-law fit recovers exponents") {
  std::vector<double> x, y;
  for (int i = 1; i <= 40; ++i) {
    x.push_back(10.0 * i);
    y.push_back(3.0 * std::pow(10.0 * i, -1.5));
  }
  const auto fit = fit_power_law(x, y);
  CHECK(fit.exponent == doctest::Approx(-1.5).epsilon(1e-10));
  CHECK(fit.log_prefactor == doctest::Approx(std::log(3.0)).epsilon(1e-9));
  CHECK(fit.stderr_exponent < 1e-10);
  CHECK_THROWS_AS(fit_power_law({1.0, 2.0}, {1.0, 2.0}),
                  std::invalid_argument);
}

TEST_CASE("dominant wavenumber detection") {
  std::vector<double> y;
  for (int j = 0; j < 512; ++j) y.push_back(std::cos(0.7 * j + 0.3));
  CHECK(dominant_wavenumber(y) == doctest::Approx(0.7).epsilon(1e-3));
  y.clear();
  for (int j = 0; j < 512; ++j) y.push_back(j % 2 == 0 ? 1.0 : -1.0);
  CHECK(dominant_wavenumber(y) == doctest::Approx(kPi).epsilon(1e-12));
  CHECK_THROWS_AS(dominant_wavenumber({1.0, -1.0}), std::invalid_argument);
}

TEST_CASE("envelope and period averaging") {
  std::vector<double> x, y;
  for (int j = 0; j < 200; ++j) {
    x.push_back(j);
    y.push_back(std::pow(j + 10.0, -1.0) * std::cos(kPi * j / 4.0));
  }
  const auto env = oscillation_envelope(x, y);
  CHECK(env.size() > 20);
  const auto fit_env =
      fit_power_law([&] {
        std::vector<double> xs;
        for (auto& p : env) xs.push_back(p.first + 10.0);
        return xs;
      }(),
                    [&] {
                      std::vector<double> ys;
                      for (auto& p : env) ys.push_back(p.second);
                      return ys;
                    }());
  CHECK(fit_env.exponent == doctest::Approx(-1.0).epsilon(0.05));

  const auto avg = period_average(x, y, 8);
  CHECK(avg.size() == 25);
  CHECK(avg.front().first == doctest::Approx(3.5));
  // Full periods of the cosine cancel up to the envelope drift across
  // one period.
  for (const auto& p : avg) CHECK(std::abs(p.second) < 6e-3);
}

TEST_CASE("synthetic friedel-style analysis recovers both exponents") {
  // Oscillating part decaying one power slower than the smooth part,
  // like the impurity entropy deviation.
  std::vector<double> x, y;
  for (int d = 100; d < 1200; ++d) {
    x.push_back(d);
    y.push_back(0.07 / d * std::cos(kPi * d + 0.4) - 50.0 / double(d) / d);
  }
  std::vector<double> mx(x.size() - 1), dy(x.size() - 1);
  for (std::size_t i = 0; i + 1 < x.size(); ++i) {
    mx[i] = 0.5 * (x[i] + x[i + 1]);
    dy[i] = y[i + 1] - y[i];
  }
  // Odd sample counts put the Nyquist rate just off the DFT grid.
  CHECK(dominant_wavenumber(dy) == doctest::Approx(kPi).epsilon(5e-3));
  const auto env = oscillation_envelope(mx, dy);
  std::vector<double> ex, ey;
  for (auto& p : env) {
    ex.push_back(p.first);
    ey.push_back(p.second / 2.0);
  }
  CHECK(fit_power_law(ex, ey).exponent == doctest::Approx(-1.0).epsilon(0.05));
  const auto avg = period_average(x, y, 2);
  std::vector<double> ax, ay;
  for (auto& p : avg) {
    ax.push_back(p.first);
    ay.push_back(p.second);
  }
  CHECK(fit_power_law(ax, ay).exponent ==
        doctest::Approx(-2.0).epsilon(0.05));
}

TEST_CASE("vnee_scaling report is deterministic and self-describing") {
  auto doc = minimal_config("vnee_scaling");
  doc["L_list"] = {40, 80};
  const auto config = parse_ok(doc);
  const auto rep1 = run_experiment(config);
  const auto rep2 = run_experiment(config);
  const std::string csv1 = report_to_csv(rep1);
  CHECK(csv1 == report_to_csv(rep2));
  CHECK(rep1.rows.size() == 2);
  CHECK(rep1.meta.at("tool") == "nessent");
  CHECK(rep1.meta.at("version") == kToolVersion);
  CHECK(rep1.meta.contains("config_hash"));
  CHECK(csv1.find(rep1.meta.at("config_hash").get<std::string>()) !=
        std::string::npos);
  // Model description contains commas, so it must be quoted.
  CHECK(csv1.find("\"{\"\"eps0_over_t\"\"") != std::string::npos);
  for (const auto& row : rep1.rows) {
    CHECK(row.at("abs_dev").get<double>() < 0.05);
    CHECK(row.at("entropy_num").get<double>() > 0.0);
  }
}

TEST_CASE("json report carries meta and rows") {
  auto doc = minimal_config("coefficient_sweep");
  doc["target"] = "vnee";
  doc["dk_list"] = {0.1, 0.4};
  const auto rep = run_experiment(parse_ok(doc));
  CHECK(rep.rows.size() == 2);
  const auto parsed = Json::parse(report_to_json(rep));
  CHECK(parsed.at("meta").at("experiment") == "coefficient_sweep");
  CHECK(parsed.at("rows").size() == 2);
  CHECK(parsed.at("rows").at(1).at("const_approx") == true);
  CHECK(parsed.at("rows").at(0).at("const_approx") == false);
}

TEST_CASE("genfun_deviation grows toward the zone edge") {
  auto doc = minimal_config("genfun_deviation");
  doc["L_list"] = {200};
  doc["n_list"] = {2.0};
  doc["alpha_list"] = {0.5, 3.0};
  const auto rep = run_experiment(parse_ok(doc));
  REQUIRE(rep.rows.size() == 2);
  const double near = rep.rows[0].at("abs_dev").get<double>();
  const double far = rep.rows[1].at("abs_dev").get<double>();
  CHECK(far > near);
  CHECK(near < 0.01);
}

TEST_CASE("coefficient sweep emits divergence sentinels") {
  auto doc = minimal_config("coefficient_sweep");
  doc["model"] = {{"type", "impurity"}, {"eps0_over_t", 3.0}};
  doc["target"] = "genfun";
  doc["n_list"] = {1.0};
  doc["alpha_list"] = {0.5, kPi};
  const auto rep = run_experiment(parse_ok(doc));
  REQUIRE(rep.rows.size() == 2);
  CHECK(rep.rows[0].at("divergent") == false);
  CHECK(rep.rows[1].at("divergent") == true);
  // The sentinel column is present in the CSV, not a silent gap.
  const std::string csv = report_to_csv(rep);
  CHECK(csv.find("divergent") != std::string::npos);
  CHECK(csv.find("inf") != std::string::npos);
}

TEST_CASE("resolved_profile compares three paths per sector") {
  auto doc = minimal_config("resolved_profile");
  doc["L_list"] = {100};
  doc["n_list"] = {1.0, 2.0};
  doc["q_halfwidth"] = 2;
  const auto rep = run_experiment(parse_ok(doc));
  int moments = 0, sigmas = 0;
  for (const auto& row : rep.rows) {
    if (row.at("kind") == "moment") {
      ++moments;
      CHECK(row.at("abs_dev_analytic").get<double>() < 0.05);
      CHECK(row.at("abs_dev_gaussian").get<double>() < 0.05);
    } else if (row.at("kind") == "sigma") {
      ++sigmas;
      CHECK(std::isfinite(row.at("gaussian").get<double>()));
    }
  }
  CHECK(moments == 10);  // two orders, five sectors
  CHECK(sigmas == 5);
}

TEST_CASE("equipartition emits sector rows with the analytic slope") {
  auto doc = minimal_config("equipartition");
  doc["L_list"] = {200};
  doc["q_offsets"] = 2;
  const auto rep = run_experiment(parse_ok(doc));
  CHECK(rep.rows.size() == 5);
  for (const auto& row : rep.rows) {
    CHECK(std::isfinite(row.at("sigma_gauss").get<double>()));
    CHECK(row.at("slope_analytic").get<double>() < 0.0);
    if (row.at("offset").get<int>() == 0) {
      CHECK(row.at("empty_sector") == false);
      CHECK(row.at("sigma_exact").get<double>() > 0.0);
    }
  }
}

TEST_CASE("friedel experiment emits samples and fits") {
  auto doc = minimal_config("friedel");
  doc["window"] = {{"k_fl", 2.0 * kPi / 3.0}, {"k_fr", kPi / 2}};
  doc["L_list"] = {40};
  doc["d_list"] = Json{{"from", 60}, {"to", 379}, {"step", 1}};
  const auto rep = run_experiment(parse_ok(doc));
  double wavenumber = 0.0, amp = 0.0, avg = 0.0;
  int samples = 0;
  for (const auto& row : rep.rows) {
    if (row.at("kind") == "sample") ++samples;
    if (row.at("kind") == "fit") {
      const std::string q = row.at("quantity");
      if (q == "wavenumber") wavenumber = row.at("value").get<double>();
      if (q == "amplitude_exponent") amp = row.at("value").get<double>();
      if (q == "averaged_exponent") avg = row.at("value").get<double>();
    }
  }
  CHECK(samples == 320);
  CHECK(wavenumber == doctest::Approx(kPi).epsilon(0.02));
  CHECK(amp == doctest::Approx(-1.0).epsilon(0.25));
  CHECK(avg < -1.2);  // approaches -2 from above on short ranges
}

TEST_CASE("two_scatterer report tracks the exact entropy") {
  auto doc = minimal_config("two_scatterer");
  doc["right_model"] = {{"type", "impurity"}, {"eps0_over_t", 0.7}};
  doc["L_list"] = {200, 400};
  const auto rep = run_experiment(parse_ok(doc));
  REQUIRE(rep.rows.size() == 2);
  // No constant term: residuals are order one but nearly L-independent.
  const double r0 = rep.rows[0].at("residual").get<double>();
  const double r1 = rep.rows[1].at("residual").get<double>();
  CHECK(std::abs(r1 - r0) < 0.05);
}

TEST_CASE("csv cells survive a numeric round trip") {
  Report rep;
  rep.meta = Json{{"tool", "nessent"}, {"version", "x"}, {"config_hash", "0"}};
  rep.columns = {"value", "label"};
  const double tricky = 0.1 + 0.2;
  rep.rows.push_back(Json{{"value", tricky}, {"label", "a,b\"c"}});
  const std::string csv = report_to_csv(rep);
  CHECK(csv.find("\"a,b\"\"c\"") != std::string::npos);
  const auto pos = csv.find("0.30000000000000004");
  CHECK(pos != std::string::npos);
}
