#include "gmodel/solver.hpp"

#include <cmath>
#include <stdexcept>

#include <fmt/format.h>

#include "gmodel/error.hpp"

namespace gmodel {
namespace {

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double ratio(double num, double den, const char* what) {
  if (!(den > 0.0)) throw BreakdownDetected(fmt::format("{} is not positive ({})", what, den));
  return num / den;
}

double rel_norm(double sq, double refsq) { return refsq > 0.0 ? std::sqrt(sq) / std::sqrt(refsq) : 0.0; }

}  // namespace

void check_sampled_symmetry(const CsrMatrix& a) {
  const std::int64_t step = std::max<std::int64_t>(1, a.n / 64);
  for (std::int64_t i = 0; i < a.n; i += step) {
    for (auto k = a.rowPtr[i]; k < a.rowPtr[i + 1]; ++k) {
      const auto j = a.colIdx[k];
      if (a.at(j, i) != a.values[k]) {
        throw AsymmetricMatrix(fmt::format("a({},{}) = {} but a({},{}) = {}", i, j, a.values[k], j, i, a.at(j, i)));
      }
    }
  }
}

SolveResult run_cg(const CsrMatrix& a, std::span<const double> b, const SolverConfig& config) {
  if (!(config.tol > 0.0 && config.tol < 1.0)) throw std::invalid_argument("tol must lie in (0, 1)");
  if (config.maxIter < 1) throw std::invalid_argument("maxIter must be positive");
  if (static_cast<std::int64_t>(b.size()) != a.n) {
    throw DimensionMismatch(fmt::format("rhs has length {}, matrix is {}x{}", b.size(), a.n, a.n));
  }
  check_sampled_symmetry(a);

  const auto n = b.size();
  SolveResult result;
  result.x.assign(n, 0.0);
  std::vector<double> r(b.begin(), b.end());
  std::vector<double> p(b.begin(), b.end());
  std::vector<double> ap(n);
  std::vector<double> t(n);

  const double bb = dot(b, b);
  double rr = dot(r, r);
  double relres = rel_norm(rr, bb);

  while (result.iterations < config.maxIter && relres > config.tol) {
    spmv_csr_rows(a.rowPtr, a.colIdx, a.values, p, ap, 0, a.n);
    const double alpha = ratio(rr, dot(p, ap), "<p, Ap>");
    for (std::size_t i = 0; i < n; ++i) result.x[i] = result.x[i] + alpha * p[i];
    for (std::size_t i = 0; i < n; ++i) t[i] = alpha * ap[i];
    for (std::size_t i = 0; i < n; ++i) r[i] = r[i] - t[i];
    const double rrNew = dot(r, r);
    relres = rel_norm(rrNew, bb);
    const double beta = ratio(rrNew, rr, "<r, r>");
    for (std::size_t i = 0; i < n; ++i) p[i] = r[i] + beta * p[i];
    rr = rrNew;

    result.residualHistory.push_back(relres);
    ++result.iterations;
  }
  result.converged = relres <= config.tol;
  return result;
}

}  // namespace gmodel
