#include "htwist/exactla.hpp"

#include <omp.h>

#include <algorithm>
#include <cctype>

#include "htwist/errors.hpp"
#include "htwist/parallel.hpp"

namespace htwist {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::CompositionNonzero: return "CompositionNonzero";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::AlgebraMismatch: return "AlgebraMismatch";
    case ErrorCode::NonHomogeneous: return "NonHomogeneous";
    case ErrorCode::InfiniteSlice: return "InfiniteSlice";
    case ErrorCode::ShapeError: return "ShapeError";
    case ErrorCode::JacobiFail: return "JacobiFail";
    case ErrorCode::DimError: return "DimError";
    case ErrorCode::ImageEscapesCochains: return "ImageEscapesCochains";
    case ErrorCode::InvalidInput: return "InvalidInput";
    case ErrorCode::BNotClosed: return "BNotClosed";
    case ErrorCode::NotDegree4: return "NotDegree4";
    case ErrorCode::NotNilpotent: return "NotNilpotent";
    case ErrorCode::CourantAxiomFail: return "CourantAxiomFail";
    case ErrorCode::InvalidAlgebra: return "InvalidAlgebra";
    case ErrorCode::NilpotenceFail: return "NilpotenceFail";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

namespace {

bool all_digits(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c); });
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string_view body = text;
  if (!body.empty() && (body.front() == '-' || body.front() == '+')) body.remove_prefix(1);
  const auto slash = body.find('/');
  const std::string_view num = body.substr(0, slash);
  const std::string_view den = slash == std::string_view::npos ? std::string_view{} : body.substr(slash + 1);
  if (!all_digits(num) || (slash != std::string_view::npos && !all_digits(den))) {
    throw Error(ErrorCode::ParseError, "not a rational: '" + std::string(text) + "'");
  }
  Integer n{std::string(num)};
  Integer d{den.empty() ? std::string("1") : std::string(den)};
  if (d == 0) throw Error(ErrorCode::ParseError, "zero denominator: '" + std::string(text) + "'");
  if (!text.empty() && text.front() == '-') n = -n;
  Rational q(n, d);
  q.canonicalize();
  return q;
}

std::string to_string(const Rational& value) { return value.get_str(); }

namespace parallel {
int max_threads() { return omp_get_max_threads(); }
void set_threads(int threads) { omp_set_num_threads(std::max(1, threads)); }
}  // namespace parallel

}  // namespace htwist

namespace htwist::exactla {

RMatrix::RMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols) {
  if (is_sparse()) {
    sparse_.resize(rows);
  } else {
    dense_.assign(rows, Vector(cols));
  }
}

RMatrix RMatrix::identity(std::size_t n) {
  RMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.set(i, i, 1);
  return m;
}

RMatrix RMatrix::from_rows(const std::vector<Vector>& rows, std::size_t cols) {
  RMatrix m(rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) throw Error(ErrorCode::DimensionMismatch, "ragged row");
    for (std::size_t c = 0; c < cols; ++c) {
      if (rows[r][c] != 0) m.set(r, c, rows[r][c]);
    }
  }
  return m;
}

RMatrix RMatrix::from_columns(const std::vector<Vector>& columns, std::size_t rows) {
  RMatrix m(rows, columns.size());
  for (std::size_t c = 0; c < columns.size(); ++c) m.set_column(c, columns[c]);
  return m;
}

void RMatrix::check(std::size_t r, std::size_t c) const {
  if (r >= rows_ || c >= cols_) {
    throw Error(ErrorCode::DimensionMismatch, "entry (" + std::to_string(r) + "," + std::to_string(c) +
                                                  ") outside " + std::to_string(rows_) + "x" +
                                                  std::to_string(cols_));
  }
}

Rational RMatrix::at(std::size_t r, std::size_t c) const {
  check(r, c);
  if (!is_sparse()) return dense_[r][c];
  const auto it = sparse_[r].find(c);
  return it == sparse_[r].end() ? Rational(0) : it->second;
}

void RMatrix::set(std::size_t r, std::size_t c, const Rational& value) {
  check(r, c);
  if (!is_sparse()) {
    dense_[r][c] = value;
  } else if (value == 0) {
    sparse_[r].erase(c);
  } else {
    sparse_[r][c] = value;
  }
}

void RMatrix::add(std::size_t r, std::size_t c, const Rational& value) {
  check(r, c);
  if (!is_sparse()) {
    dense_[r][c] += value;
    return;
  }
  auto& slot = sparse_[r][c];
  slot += value;
  if (slot == 0) sparse_[r].erase(c);
}

std::vector<std::pair<std::size_t, Rational>> RMatrix::row_entries(std::size_t r) const {
  if (r >= rows_) throw Error(ErrorCode::DimensionMismatch, "row " + std::to_string(r) + " outside matrix");
  std::vector<std::pair<std::size_t, Rational>> out;
  if (!is_sparse()) {
    for (std::size_t c = 0; c < cols_; ++c) {
      if (dense_[r][c] != 0) out.emplace_back(c, dense_[r][c]);
    }
  } else {
    out.assign(sparse_[r].begin(), sparse_[r].end());
  }
  return out;
}

Vector RMatrix::column(std::size_t c) const {
  Vector out(rows_);
  for (std::size_t r = 0; r < rows_; ++r) out[r] = at(r, c);
  return out;
}

void RMatrix::set_column(std::size_t c, const Vector& values) {
  if (values.size() != rows_) throw Error(ErrorCode::DimensionMismatch, "column length");
  for (std::size_t r = 0; r < rows_; ++r) set(r, c, values[r]);
}

bool RMatrix::is_zero() const { return nonzeros() == 0; }

std::size_t RMatrix::nonzeros() const {
  std::size_t count = 0;
  if (!is_sparse()) {
    for (const auto& row : dense_) {
      count += static_cast<std::size_t>(std::count_if(row.begin(), row.end(), [](const Rational& x) { return x != 0; }));
    }
  } else {
    for (const auto& row : sparse_) count += row.size();
  }
  return count;
}

Vector RMatrix::apply(const Vector& v) const {
  if (v.size() != cols_) throw Error(ErrorCode::DimensionMismatch, "apply: vector length");
  Vector out(rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (const auto& [c, x] : row_entries(r)) out[r] += x * v[c];
  }
  return out;
}

RMatrix RMatrix::transpose() const {
  RMatrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (const auto& [c, x] : row_entries(r)) t.set(c, r, x);
  }
  return t;
}

RMatrix operator*(const RMatrix& a, const RMatrix& b) {
  if (a.cols() != b.rows()) {
    throw Error(ErrorCode::DimensionMismatch, "product of " + std::to_string(a.rows()) + "x" +
                                                  std::to_string(a.cols()) + " and " + std::to_string(b.rows()) +
                                                  "x" + std::to_string(b.cols()));
  }
  std::vector<std::vector<std::pair<std::size_t, Rational>>> b_rows(b.rows());
  for (std::size_t k = 0; k < b.rows(); ++k) b_rows[k] = b.row_entries(k);
  RMatrix out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (const auto& [k, x] : a.row_entries(i)) {
      for (const auto& [j, y] : b_rows[k]) out.add(i, j, x * y);
    }
  }
  return out;
}

bool operator==(const RMatrix& a, const RMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  for (std::size_t r = 0; r < a.rows(); ++r) {
    if (a.row_entries(r) != b.row_entries(r)) return false;
  }
  return true;
}

namespace {

// Clears denominators row by row.
std::vector<std::vector<Integer>> integral_dense_rows(const RMatrix& m) {
  std::vector<std::vector<Integer>> rows(m.rows(), std::vector<Integer>(m.cols()));
  for (std::size_t r = 0; r < m.rows(); ++r) {
    const auto entries = m.row_entries(r);
    Integer scale = 1;
    for (const auto& [c, x] : entries) mpz_lcm(scale.get_mpz_t(), scale.get_mpz_t(), x.get_den_mpz_t());
    for (const auto& [c, x] : entries) rows[r][c] = x.get_num() * (scale / x.get_den());
  }
  return rows;
}

std::vector<std::map<std::size_t, Integer>> integral_sparse_rows(const RMatrix& m) {
  std::vector<std::map<std::size_t, Integer>> rows(m.rows());
  for (std::size_t r = 0; r < m.rows(); ++r) {
    const auto entries = m.row_entries(r);
    Integer scale = 1;
    for (const auto& [c, x] : entries) mpz_lcm(scale.get_mpz_t(), scale.get_mpz_t(), x.get_den_mpz_t());
    for (const auto& [c, x] : entries) rows[r].emplace(c, x.get_num() * (scale / x.get_den()));
  }
  return rows;
}

// Largest |entry| in column c among rows [from, end); ties go to the lowest row.
template <class Get>
std::optional<std::size_t> choose_pivot(std::size_t from, std::size_t end, Get&& get) {
  std::optional<std::size_t> best;
  Integer best_abs = 0;
  for (std::size_t i = from; i < end; ++i) {
    const Integer* x = get(i);
    if (x == nullptr || *x == 0) continue;
    Integer a = abs(*x);
    if (!best || a > best_abs) {
      best = i;
      best_abs = std::move(a);
    }
  }
  return best;
}

template <bool Parallel>
Echelon dense_echelon(const RMatrix& m) {
  auto a = integral_dense_rows(m);
  const std::size_t nrows = m.rows();
  const std::size_t ncols = m.cols();
  Echelon out;
  out.cols = ncols;
  Integer prev = 1;
  std::size_t r = 0;
  for (std::size_t c = 0; c < ncols && r < nrows; ++c) {
    const auto p = choose_pivot(r, nrows, [&](std::size_t i) { return &a[i][c]; });
    if (!p) continue;
    std::swap(a[r], a[*p]);
    const Integer pivot = a[r][c];
    auto update = [&](std::size_t k) {
      const std::size_t i = r + 1 + k;
      auto& row = a[i];
      const Integer factor = row[c];
      for (std::size_t j = c + 1; j < ncols; ++j) {
        Integer v = pivot * row[j];
        if (factor != 0) v -= factor * a[r][j];
        if constexpr (Parallel) {
          mpz_divexact(row[j].get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
        } else {
          Integer rem;
          mpz_tdiv_qr(row[j].get_mpz_t(), rem.get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
          if (rem != 0) throw std::logic_error("fraction-free elimination: inexact division");
        }
      }
      row[c] = 0;
    };
    if constexpr (Parallel) {
      parallel::parallel_for(nrows - r - 1, update);
    } else {
      parallel::serial_for(nrows - r - 1, update);
    }
    prev = pivot;
    out.pivots.push_back(c);
    ++r;
  }
  for (std::size_t k = 0; k < r; ++k) {
    std::map<std::size_t, Integer> row;
    for (std::size_t j = out.pivots[k]; j < ncols; ++j) {
      if (a[k][j] != 0) row.emplace(j, a[k][j]);
    }
    out.rows.push_back(std::move(row));
  }
  return out;
}

Echelon sparse_echelon(const RMatrix& m) {
  auto a = integral_sparse_rows(m);
  const std::size_t nrows = m.rows();
  Echelon out;
  out.cols = m.cols();
  Integer prev = 1;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < nrows; ++c) {
    const auto p = choose_pivot(r, nrows, [&](std::size_t i) -> const Integer* {
      const auto it = a[i].find(c);
      return it == a[i].end() ? nullptr : &it->second;
    });
    if (!p) continue;
    std::swap(a[r], a[*p]);
    const Integer pivot = a[r].at(c);
    for (std::size_t i = r + 1; i < nrows; ++i) {
      auto& row = a[i];
      const auto fit = row.find(c);
      const Integer factor = fit == row.end() ? Integer(0) : fit->second;
      if (fit != row.end()) row.erase(fit);
      std::map<std::size_t, Integer> next;
      for (const auto& [j, x] : row) next[j] = pivot * x;
      if (factor != 0) {
        for (const auto& [j, y] : a[r]) {
          if (j == c) continue;
          next[j] -= factor * y;
        }
      }
      row.clear();
      for (auto& [j, v] : next) {
        if (v == 0) continue;
        Integer q;
        mpz_divexact(q.get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
        row.emplace(j, std::move(q));
      }
    }
    prev = pivot;
    out.pivots.push_back(c);
    ++r;
  }
  for (std::size_t k = 0; k < r; ++k) out.rows.push_back(std::move(a[k]));
  return out;
}

}  // namespace

Echelon echelon(const RMatrix& m) { return m.is_sparse() ? sparse_echelon(m) : dense_echelon<true>(m); }

std::size_t rank(const RMatrix& m) { return echelon(m).pivots.size(); }

namespace serial {
Echelon echelon(const RMatrix& m) { return m.is_sparse() ? sparse_echelon(m) : dense_echelon<false>(m); }
std::size_t rank(const RMatrix& m) { return serial::echelon(m).pivots.size(); }
}  // namespace serial

namespace {

// Back substitution through an echelon form, with x preset on free columns.
void back_substitute(const Echelon& e, Vector& x, const std::vector<Rational>* rhs) {
  for (std::size_t k = e.rows.size(); k-- > 0;) {
    const auto& row = e.rows[k];
    const std::size_t p = e.pivots[k];
    Rational acc = rhs ? (*rhs)[k] : Rational(0);
    for (const auto& [j, v] : row) {
      if (j == p || j >= x.size()) continue;
      acc -= Rational(v) * x[j];
    }
    x[p] = acc / Rational(row.at(p));
  }
}

}  // namespace

Kernel kernel(const RMatrix& m) {
  const Echelon e = echelon(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (const auto p : e.pivots) is_pivot[p] = true;
  Kernel out;
  for (std::size_t f = 0; f < m.cols(); ++f) {
    if (is_pivot[f]) continue;
    Vector x(m.cols());
    x[f] = 1;
    back_substitute(e, x, nullptr);
    out.vectors.push_back(std::move(x));
    out.free_columns.push_back(f);
  }
  return out;
}

std::vector<Vector> kernel_basis(const RMatrix& m) { return kernel(m).vectors; }

std::optional<Vector> solve(const RMatrix& m, const Vector& b) {
  if (b.size() != m.rows()) throw Error(ErrorCode::DimensionMismatch, "solve: right-hand side length");
  RMatrix aug(m.rows(), m.cols() + 1);
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (const auto& [c, x] : m.row_entries(r)) aug.set(r, c, x);
    aug.set(r, m.cols(), b[r]);
  }
  const Echelon e = echelon(aug);
  if (!e.pivots.empty() && e.pivots.back() == m.cols()) return std::nullopt;
  std::vector<Rational> rhs;
  rhs.reserve(e.rows.size());
  for (const auto& row : e.rows) {
    const auto it = row.find(m.cols());
    rhs.push_back(it == row.end() ? Rational(0) : Rational(it->second));
  }
  Vector x(m.cols());
  back_substitute(e, x, &rhs);
  return x;
}

std::size_t cohomology_dim(const RMatrix& d_in, const RMatrix& d_out) {
  if (d_out.cols() != d_in.rows()) {
    throw Error(ErrorCode::DimensionMismatch, "complex: d_out has " + std::to_string(d_out.cols()) +
                                                  " columns, d_in has " + std::to_string(d_in.rows()) + " rows");
  }
  if (!(d_out * d_in).is_zero()) throw Error(ErrorCode::CompositionNonzero, "d_out * d_in != 0");
  const std::size_t dim = d_out.cols();
  return dim - rank(d_out) - rank(d_in);
}

}  // namespace htwist::exactla
