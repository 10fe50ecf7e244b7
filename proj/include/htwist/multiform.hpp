#pragma once

// Elements of Lambda^p E* (x) S^q E as sparse coefficients over monomial bases.

#include <compare>
#include <map>
#include <string>
#include <vector>

#include "htwist/exactla.hpp"

namespace htwist {

struct FormKey {
  std::vector<int> wedge;  // strictly increasing form indices
  std::vector<int> sym;    // weakly increasing vector indices
  auto operator<=>(const FormKey&) const = default;
};

/// Sorts in place; returns the permutation sign, or 0 if an index repeats.
int sort_with_sign(std::vector<int>& indices);

class MultiForm {
 public:
  MultiForm() = default;
  MultiForm(std::size_t n, std::size_t p, std::size_t q);

  [[nodiscard]] std::size_t n() const noexcept { return n_; }
  [[nodiscard]] std::size_t p() const noexcept { return p_; }
  [[nodiscard]] std::size_t q() const noexcept { return q_; }
  [[nodiscard]] const std::map<FormKey, Rational>& coeffs() const noexcept { return coeffs_; }
  [[nodiscard]] bool is_zero() const noexcept { return coeffs_.empty(); }
  [[nodiscard]] Rational at(const FormKey& key) const;
  [[nodiscard]] Rational max_abs() const;

  /// Adds value to the basis element given by unsorted index lists; the
  /// wedge part is sorted with sign, the symmetric part without.
  void add(std::vector<int> wedge, std::vector<int> sym, const Rational& value);
  void add_sorted(const FormKey& key, const Rational& value);

  MultiForm& operator+=(const MultiForm& other);
  MultiForm& operator-=(const MultiForm& other);
  MultiForm& operator*=(const Rational& c);
  friend MultiForm operator+(MultiForm a, const MultiForm& b) { return a += b; }
  friend MultiForm operator-(MultiForm a, const MultiForm& b) { return a -= b; }
  friend MultiForm operator*(const Rational& c, MultiForm a) { return a *= c; }
  friend bool operator==(const MultiForm& a, const MultiForm& b);

  [[nodiscard]] std::string to_string() const;

 private:
  void check_shape(const MultiForm& other) const;

  std::size_t n_ = 0;
  std::size_t p_ = 0;
  std::size_t q_ = 0;
  std::map<FormKey, Rational> coeffs_;
};

MultiForm wedge(const MultiForm& a, const MultiForm& b);

/// Deterministic basis of the (p,q) slice: wedge tuples outer, sym tuples inner, both lexicographic.
class SliceBasis {
 public:
  SliceBasis(std::size_t n, std::size_t p, std::size_t q);

  [[nodiscard]] std::size_t n() const noexcept { return n_; }
  [[nodiscard]] std::size_t p() const noexcept { return p_; }
  [[nodiscard]] std::size_t q() const noexcept { return q_; }
  [[nodiscard]] std::size_t size() const noexcept { return keys_.size(); }
  [[nodiscard]] const FormKey& key(std::size_t i) const { return keys_.at(i); }
  [[nodiscard]] std::size_t index(const FormKey& key) const;

  [[nodiscard]] MultiForm element(std::size_t i) const;
  [[nodiscard]] exactla::Vector coordinates(const MultiForm& f) const;
  [[nodiscard]] MultiForm form(const exactla::Vector& coords) const;

 private:
  std::size_t n_, p_, q_;
  std::vector<FormKey> keys_;
  std::map<FormKey, std::size_t> index_;
};

std::size_t binomial(std::size_t n, std::size_t k);

}  // namespace htwist
