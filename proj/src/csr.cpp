#include "gmodel/csr.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <random>
#include <stdexcept>

#include <fmt/format.h>

#include "gmodel/error.hpp"

namespace gmodel {

double CsrMatrix::at(std::int64_t i, std::int64_t j) const {
  const auto first = colIdx.begin() + rowPtr[i];
  const auto last = colIdx.begin() + rowPtr[i + 1];
  auto it = std::lower_bound(first, last, j);
  return it != last && *it == j ? values[it - colIdx.begin()] : 0.0;
}

void check_csr(const CsrMatrix& a) {
  if (a.n < 1) throw std::invalid_argument("matrix dimension must be positive");
  if (static_cast<std::int64_t>(a.rowPtr.size()) != a.n + 1) throw std::invalid_argument("rowPtr length is not n+1");
  if (a.colIdx.size() != a.values.size()) throw std::invalid_argument("colIdx and values differ in length");
  if (a.rowPtr.front() != 0 || a.rowPtr.back() != a.nnz()) throw std::invalid_argument("rowPtr bounds are wrong");
  for (std::int64_t i = 0; i < a.n; ++i) {
    if (a.rowPtr[i] > a.rowPtr[i + 1]) throw std::invalid_argument("rowPtr decreases");
    for (auto k = a.rowPtr[i]; k < a.rowPtr[i + 1]; ++k) {
      if (a.colIdx[k] < 0 || a.colIdx[k] >= a.n) throw std::invalid_argument("column index out of range");
      if (k > a.rowPtr[i] && a.colIdx[k] <= a.colIdx[k - 1]) {
        throw std::invalid_argument("columns not strictly increasing");
      }
    }
  }
}

CsrMatrix csr_from_triplets(std::int64_t n, std::vector<Triplet> entries) {
  std::stable_sort(entries.begin(), entries.end(), [](const Triplet& x, const Triplet& y) {
    return x.row != y.row ? x.row < y.row : x.col < y.col;
  });
  CsrMatrix a;
  a.n = n;
  a.rowPtr.assign(static_cast<std::size_t>(n) + 1, 0);
  for (std::size_t k = 0; k < entries.size(); ++k) {
    const auto& e = entries[k];
    if (!a.colIdx.empty() && k > 0 && entries[k - 1].row == e.row && entries[k - 1].col == e.col) {
      a.values.back() += e.value;
      continue;
    }
    a.colIdx.push_back(e.col);
    a.values.push_back(e.value);
    ++a.rowPtr[e.row + 1];
  }
  for (std::int64_t i = 0; i < n; ++i) a.rowPtr[i + 1] += a.rowPtr[i];
  return a;
}

namespace {

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) { return std::tolower(c); });
  return out;
}

std::vector<std::string_view> tokens(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    const auto start = i;
    while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    if (i > start) out.push_back(line.substr(start, i - start));
  }
  return out;
}

template <typename T>
bool parse_number(std::string_view tok, T& out) {
  if (!tok.empty() && tok.front() == '+') tok.remove_prefix(1);
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), out);
  return ec == std::errc() && ptr == tok.data() + tok.size();
}

class LineReader {
public:
  explicit LineReader(std::string_view text) : text_(text) {}

  bool next(std::string_view& line) {
    if (pos_ >= text_.size()) return false;
    auto end = text_.find('\n', pos_);
    if (end == std::string_view::npos) end = text_.size();
    line = text_.substr(pos_, end - pos_);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    pos_ = end + 1;
    ++number_;
    return true;
  }
  std::size_t number() const noexcept { return number_; }

private:
  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t number_ = 0;
};

}  // namespace

CsrMatrix load_matrix_market(std::string_view text) {
  LineReader reader(text);
  std::string_view line;
  if (!reader.next(line)) throw MalformedHeader("empty input");

  const auto banner = tokens(line);
  if (banner.size() != 5 || lower(banner[0]) != "%%matrixmarket" || lower(banner[1]) != "matrix") {
    throw MalformedHeader("missing %%MatrixMarket matrix banner");
  }
  if (lower(banner[2]) != "coordinate") throw MalformedHeader("only coordinate format is supported");
  const auto field = lower(banner[3]);
  if (field != "real" && field != "integer" && field != "double") {
    throw MalformedHeader(fmt::format("unsupported field '{}'", banner[3]));
  }
  const auto symmetry = lower(banner[4]);
  if (symmetry != "general" && symmetry != "symmetric") {
    throw MalformedHeader(fmt::format("unsupported symmetry '{}'", banner[4]));
  }
  const bool symmetric = symmetry == "symmetric";

  std::vector<std::string_view> size;
  while (reader.next(line)) {
    if (line.starts_with('%')) continue;
    size = tokens(line);
    if (!size.empty()) break;
  }
  std::int64_t rows = 0, cols = 0, declared = 0;
  if (size.size() != 3 || !parse_number(size[0], rows) || !parse_number(size[1], cols) ||
      !parse_number(size[2], declared) || rows < 1 || cols < 1 || declared < 0) {
    throw MalformedHeader("bad size line");
  }
  if (rows != cols) throw NonSquare(fmt::format("matrix is {}x{}", rows, cols));

  std::vector<Triplet> entries;
  entries.reserve(static_cast<std::size_t>(symmetric ? 2 * declared : declared));
  std::int64_t seen = 0;
  while (reader.next(line)) {
    if (line.starts_with('%')) continue;
    const auto tok = tokens(line);
    if (tok.empty()) continue;
    if (seen == declared) throw MalformedEntry(reader.number(), "more entries than declared");
    std::int64_t i = 0, j = 0;
    double v = 0.0;
    if (tok.size() != 3 || !parse_number(tok[0], i) || !parse_number(tok[1], j) || !parse_number(tok[2], v)) {
      throw MalformedEntry(reader.number(), "expected '<row> <col> <value>'");
    }
    if (i < 1 || i > rows || j < 1 || j > cols) throw IndexOutOfRange(reader.number());
    if (symmetric && j > i) throw MalformedEntry(reader.number(), "upper-triangle entry in symmetric file");
    entries.push_back({i - 1, j - 1, v});
    if (symmetric && i != j) entries.push_back({j - 1, i - 1, v});
    ++seen;
  }
  if (seen != declared) {
    throw MalformedEntry(reader.number(), fmt::format("expected {} entries, found {}", declared, seen));
  }
  return csr_from_triplets(rows, std::move(entries));
}

std::string write_matrix_market(const CsrMatrix& a) {
  std::string out = "%%MatrixMarket matrix coordinate real general\n";
  out += fmt::format("{} {} {}\n", a.n, a.n, a.nnz());
  for (std::int64_t i = 0; i < a.n; ++i) {
    for (auto k = a.rowPtr[i]; k < a.rowPtr[i + 1]; ++k) {
      out += fmt::format("{} {} {:.17g}\n", i + 1, a.colIdx[k] + 1, a.values[k]);
    }
  }
  return out;
}

void spmv_csr_rows(std::span<const std::int64_t> rowPtr, std::span<const std::int64_t> colIdx,
                   std::span<const double> values, std::span<const double> x, std::span<double> y,
                   std::int64_t begin, std::int64_t end) {
  for (auto i = begin; i < end; ++i) {
    double acc = 0.0;
    for (auto k = rowPtr[i]; k < rowPtr[i + 1]; ++k) acc += values[k] * x[colIdx[k]];
    y[i] = acc;
  }
}

std::vector<double> spmv_csr(const CsrMatrix& a, std::span<const double> x) {
  if (static_cast<std::int64_t>(x.size()) != a.n) {
    throw DimensionMismatch(fmt::format("vector has length {}, matrix is {}x{}", x.size(), a.n, a.n));
  }
  std::vector<double> y(x.size());
  spmv_csr_rows(a.rowPtr, a.colIdx, a.values, x, y, 0, a.n);
  return y;
}

CsrMatrix poisson_1d(std::int64_t n) {
  if (n < 1) throw std::invalid_argument("poisson_1d needs n >= 1");
  std::vector<Triplet> e;
  for (std::int64_t i = 0; i < n; ++i) {
    if (i > 0) e.push_back({i, i - 1, -1.0});
    e.push_back({i, i, 2.0});
    if (i + 1 < n) e.push_back({i, i + 1, -1.0});
  }
  return csr_from_triplets(n, std::move(e));
}

CsrMatrix poisson_2d(std::int64_t m) {
  if (m < 1) throw std::invalid_argument("poisson_2d needs m >= 1");
  const auto n = m * m;
  std::vector<Triplet> e;
  e.reserve(static_cast<std::size_t>(5 * n));
  for (std::int64_t r = 0; r < m; ++r) {
    for (std::int64_t c = 0; c < m; ++c) {
      const auto i = r * m + c;
      if (r > 0) e.push_back({i, i - m, -1.0});
      if (c > 0) e.push_back({i, i - 1, -1.0});
      e.push_back({i, i, 4.0});
      if (c + 1 < m) e.push_back({i, i + 1, -1.0});
      if (r + 1 < m) e.push_back({i, i + m, -1.0});
    }
  }
  return csr_from_triplets(n, std::move(e));
}

CsrMatrix random_spd(std::int64_t n, double density, std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("random_spd needs n >= 1");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> value(-1.0, 1.0);
  std::bernoulli_distribution keep(std::clamp(density, 0.0, 1.0));

  std::vector<double> m(static_cast<std::size_t>(n * n), 0.0);
  for (auto& v : m) {
    if (keep(rng)) v = value(rng);
  }
  std::vector<Triplet> e;
  for (std::int64_t i = 0; i < n; ++i) {
    for (std::int64_t j = 0; j < n; ++j) {
      double s = i == j ? static_cast<double>(n) : 0.0;
      for (std::int64_t k = 0; k < n; ++k) s += m[k * n + i] * m[k * n + j];
      if (s != 0.0) e.push_back({i, j, s});
    }
  }
  return csr_from_triplets(n, std::move(e));
}

std::vector<double> read_vector(std::string_view text) {
  LineReader reader(text);
  std::string_view line;
  std::vector<double> v;
  while (reader.next(line)) {
    if (line.starts_with('%') || line.starts_with('#')) continue;
    for (auto tok : tokens(line)) {
      double x = 0.0;
      if (!parse_number(tok, x)) throw MalformedEntry(reader.number(), fmt::format("bad number '{}'", tok));
      v.push_back(x);
    }
  }
  return v;
}

std::string write_vector(std::span<const double> v) {
  std::string out;
  for (double x : v) out += fmt::format("{:.17g}\n", x);
  return out;
}

}  // namespace gmodel
