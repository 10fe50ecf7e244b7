#pragma once

// Exact rational linear algebra: rank, kernels, linear solves and the
// cohomology dimension of a two-step complex.

#include <gmpxx.h>

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace htwist {

using Rational = mpq_class;
using Integer = mpz_class;

/// Parses "p", "-p", "p/q" exactly; throws Error(ParseError) otherwise.
Rational parse_rational(std::string_view text);
std::string to_string(const Rational& value);

}  // namespace htwist

namespace htwist::exactla {

using Vector = std::vector<Rational>;

/// Matrices with more columns than this keep their rows as sparse maps.
inline constexpr std::size_t kDenseColumnLimit = 5000;

class RMatrix {
 public:
  RMatrix() = default;
  RMatrix(std::size_t rows, std::size_t cols);

  static RMatrix identity(std::size_t n);
  static RMatrix from_rows(const std::vector<Vector>& rows, std::size_t cols);
  static RMatrix from_columns(const std::vector<Vector>& columns, std::size_t rows);

  [[nodiscard]] std::size_t rows() const noexcept { return rows_; }
  [[nodiscard]] std::size_t cols() const noexcept { return cols_; }
  [[nodiscard]] bool is_sparse() const noexcept { return cols_ > kDenseColumnLimit; }

  [[nodiscard]] Rational at(std::size_t r, std::size_t c) const;
  void set(std::size_t r, std::size_t c, const Rational& value);
  void add(std::size_t r, std::size_t c, const Rational& value);

  /// Nonzero entries of row r in increasing column order.
  [[nodiscard]] std::vector<std::pair<std::size_t, Rational>> row_entries(std::size_t r) const;
  [[nodiscard]] Vector column(std::size_t c) const;
  void set_column(std::size_t c, const Vector& values);

  [[nodiscard]] bool is_zero() const;
  [[nodiscard]] std::size_t nonzeros() const;
  [[nodiscard]] Vector apply(const Vector& v) const;
  [[nodiscard]] RMatrix transpose() const;

  friend RMatrix operator*(const RMatrix& a, const RMatrix& b);
  friend bool operator==(const RMatrix& a, const RMatrix& b);

 private:
  void check(std::size_t r, std::size_t c) const;

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Vector> dense_;
  std::vector<std::map<std::size_t, Rational>> sparse_;
};

/// Row echelon form produced by fraction-free elimination. Each stored row is
/// integral; pivots[k] is the pivot column of rows[k].
struct Echelon {
  std::size_t cols = 0;
  std::vector<std::size_t> pivots;
  std::vector<std::map<std::size_t, Integer>> rows;
};

Echelon echelon(const RMatrix& m);
std::size_t rank(const RMatrix& m);

struct Kernel {
  std::vector<Vector> vectors;
  /// vectors[k] has entry 1 at free_columns[k] and 0 at every other free column.
  std::vector<std::size_t> free_columns;
};

Kernel kernel(const RMatrix& m);
std::vector<Vector> kernel_basis(const RMatrix& m);

/// One solution of m x = b with free variables set to zero, or nullopt.
std::optional<Vector> solve(const RMatrix& m, const Vector& b);

/// dim ker(d_out) - rank(d_in); throws CompositionNonzero unless d_out d_in = 0.
std::size_t cohomology_dim(const RMatrix& d_in, const RMatrix& d_out);

namespace serial {
// Single-threaded reference for the dense elimination kernel.
Echelon echelon(const RMatrix& m);
std::size_t rank(const RMatrix& m);
}  // namespace serial

}  // namespace htwist::exactla
