#pragma once

#include "qbdecay/common.hpp"

namespace qbdecay {

// Perron-Frobenius data of a nonnegative square matrix.
struct PerronResult {
  double value = 0.0;    // spectral radius
  Vector left;           // nonnegative left eigenvector, 1-norm one
  Vector right;          // nonnegative right eigenvector, 1-norm one
  int iterations = 0;
  double residual = 0.0;  // max norm of M*right - value*right
};

// Spectral radius and Perron vectors by power iteration. A diagonal
// shift M + tol*I is applied (and subtracted from the reported value)
// so the iteration is defined for matrices with zero diagonal; genuinely
// periodic matrices still fail to converge and raise ConvergenceError.
// Callers are expected to have checked aperiodicity beforehand.
PerronResult perron(const Matrix& M, double tol = 1e-12, bool shift = true);

// Convergence parameter of the power series sum_n M^n: the reciprocal
// of the spectral radius, +infinity for a nilpotent matrix.
double cp_finite(const Matrix& M, double tol = 1e-12);

}  // namespace qbdecay
