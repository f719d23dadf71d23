#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "gmodel/csr.hpp"

namespace gmodel {

struct SolverConfig {
  double tol = 1e-10;  // relative residual threshold, 0 < tol < 1
  std::int64_t maxIter = 1000;
};

struct SolveResult {
  std::vector<double> x;
  std::int64_t iterations = 0;
  std::vector<double> residualHistory;  // ||r_k|| / ||b|| after each iteration
  bool converged = false;
};

/// Unpreconditioned conjugate gradient from x0 = 0, stopping once
/// ||r|| / ||b|| <= tol. A zero right-hand side returns x = 0 after 0
/// iterations. Dot products are summed left to right.
///
/// Throws DimensionMismatch, AsymmetricMatrix (sampled check),
/// BreakdownDetected when <p, Ap> <= 0, std::invalid_argument on a bad config.
SolveResult run_cg(const CsrMatrix& a, std::span<const double> b, const SolverConfig& config);

/// Checks a(i,j) == a(j,i) for every stored entry of about 64 evenly spaced
/// rows. Throws AsymmetricMatrix.
void check_sampled_symmetry(const CsrMatrix& a);

}  // namespace gmodel
