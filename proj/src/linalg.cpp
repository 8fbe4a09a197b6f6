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

#include "nessent/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#define lapack_complex_float std::complex<float>
#define lapack_complex_double std::complex<double>
#include <lapacke.h>

namespace nessent {

std::vector<double> hermitian_eigenvalues(std::vector<std::complex<double>>& a,
                                          int n) {
  if (n < 1 || a.size() != std::size_t(n) * std::size_t(n))
    throw std::invalid_argument("hermitian_eigenvalues: bad dimensions");
  std::vector<double> w(n);
  const lapack_int info = LAPACKE_zheevd(LAPACK_ROW_MAJOR, 'N', 'U', n,
                                         a.data(), n, w.data());
  if (info != 0) {
    double max_abs = 0.0;
    for (const auto& z : a) max_abs = std::max(max_abs, std::abs(z));
    std::ostringstream msg;
    msg << "Hermitian eigensolve failed: info=" << info << ", n=" << n
        << ", max|A_ij|=" << max_abs;
    throw EigenSolveError(msg.str(), int(info), n, max_abs);
  }
  return w;
}

}  // namespace nessent
