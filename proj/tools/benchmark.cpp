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

// Compares the serial reference path with the OpenMP path on the three
// data-parallel kernels. Usage: nessent-bench [L] [repeats].

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <string>

#include "nessent/asymptotics.hpp"
#include "nessent/exact.hpp"
#include "nessent/symbols.hpp"

using namespace nessent;

namespace {

template <typename F>
double time_ms(int repeats, F&& f) {
  double best = 1e300;
  for (int r = 0; r < repeats; ++r) {
    const auto t0 = std::chrono::steady_clock::now();
    f();
    const auto t1 = std::chrono::steady_clock::now();
    best = std::min(best,
                    std::chrono::duration<double, std::milli>(t1 - t0).count());
  }
  return best;
}

void report(const char* name, double serial_ms, double parallel_ms) {
  std::printf("%-28s %10.1f ms %10.1f ms %8.2fx\n", name, serial_ms,
              parallel_ms, serial_ms / parallel_ms);
}

}  // namespace

int main(int argc, char** argv) {
  const int L = argc > 1 ? std::atoi(argv[1]) : 400;
  const int repeats = argc > 2 ? std::atoi(argv[2]) : 3;
  const FermiWindow window(M_PI / 2 + 0.05, M_PI / 2 - 0.05);
  const auto scatterer = ScattererModel::single_impurity(1.0);

  std::printf("L = %d, best of %d\n", L, repeats);
  std::printf("%-28s %13s %13s %9s\n", "kernel", "serial", "parallel",
              "speedup");

  report("correlation matrix build",
         time_ms(repeats,
                 [&] {
                   CorrelationBuilder b(window, scatterer, ExecPolicy::Serial);
                   b.full(L, 50);
                 }),
         time_ms(repeats, [&] {
           CorrelationBuilder b(window, scatterer, ExecPolicy::Parallel);
           b.full(L, 50);
         }));

  const auto spec = build_toeplitz_correlation(window, scatterer, L);
  report("exact charge resolution",
         time_ms(repeats,
                 [&] { resolved_moments(spec, 2.0, ExecPolicy::Serial); }),
         time_ms(repeats,
                 [&] { resolved_moments(spec, 2.0, ExecPolicy::Parallel); }));

  report("analytic charge resolution",
         time_ms(repeats,
                 [&] {
                   analytic_resolved_moments(window, scatterer, 2.0, L,
                                             ExecPolicy::Serial);
                 }),
         time_ms(repeats, [&] {
           analytic_resolved_moments(window, scatterer, 2.0, L,
                                     ExecPolicy::Parallel);
         }));
  return 0;
}
