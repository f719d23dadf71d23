#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace gmodel {

/// Square sparse matrix in compressed sparse row form.
struct CsrMatrix {
  std::int64_t n = 0;
  std::vector<std::int64_t> rowPtr{0};
  std::vector<std::int64_t> colIdx;
  std::vector<double> values;

  std::int64_t nnz() const noexcept { return static_cast<std::int64_t>(values.size()); }
  /// a(i,j), zero when not stored.
  double at(std::int64_t i, std::int64_t j) const;
  bool operator==(const CsrMatrix&) const = default;
};

/// Throws std::invalid_argument when rowPtr/colIdx break the CSR invariants
/// (columns strictly increasing within a row).
void check_csr(const CsrMatrix& a);

/// Builds a CSR matrix from (row, col, value) triplets, 0-based; duplicates
/// are summed, rows sorted by column.
struct Triplet {
  std::int64_t row;
  std::int64_t col;
  double value;
};
CsrMatrix csr_from_triplets(std::int64_t n, std::vector<Triplet> entries);

/// Matrix Market `coordinate` reader (real or integer; general or
/// symmetric). Symmetric input is expanded to full storage.
/// Throws MalformedHeader, NonSquare, IndexOutOfRange, MalformedEntry.
CsrMatrix load_matrix_market(std::string_view text);

/// `coordinate real general`, values with 17 significant digits.
std::string write_matrix_market(const CsrMatrix& a);

/// y = A x. Throws DimensionMismatch.
std::vector<double> spmv_csr(const CsrMatrix& a, std::span<const double> x);

/// y[i] = (A x)[i] for i in [begin, end), each row summed left to right.
void spmv_csr_rows(std::span<const std::int64_t> rowPtr, std::span<const std::int64_t> colIdx,
                   std::span<const double> values, std::span<const double> x, std::span<double> y,
                   std::int64_t begin, std::int64_t end);

CsrMatrix poisson_1d(std::int64_t n);
/// 5-point Laplacian on an m x m grid (n = m*m).
CsrMatrix poisson_2d(std::int64_t m);
/// A = M^T M + n I with M having about `density` * n * n nonzeros.
CsrMatrix random_spd(std::int64_t n, double density, std::uint64_t seed);

/// Whitespace-separated numbers. Throws MalformedEntry on a bad token.
std::vector<double> read_vector(std::string_view text);
/// One value per line, 17 significant digits.
std::string write_vector(std::span<const double> v);

}  // namespace gmodel
