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

#ifndef NESSENT_LINALG_HPP
#define NESSENT_LINALG_HPP

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace nessent {

class EigenSolveError : public std::runtime_error {
 public:
  EigenSolveError(const std::string& msg, int info, int n, double max_abs)
      : std::runtime_error(msg), info(info), n(n), max_abs_entry(max_abs) {}
  int info;
  int n;
  double max_abs_entry;
};

/// Eigenvalues (ascending) of the Hermitian matrix a, stored row-major
/// n x n. The matrix contents are destroyed.
std::vector<double> hermitian_eigenvalues(std::vector<std::complex<double>>& a,
                                          int n);

}  // namespace nessent

#endif
