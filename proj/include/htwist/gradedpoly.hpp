#pragma once

// Free graded-commutative polynomial algebras, graded derivations and
// constant Poisson brackets of fixed negative degree.

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "htwist/exactla.hpp"

namespace htwist::gradedpoly {

struct GeneratorSpec {
  std::string name;
  int degree = 0;
  std::size_t index = 0;
  [[nodiscard]] bool odd() const noexcept { return (degree & 1) != 0; }
};

class GradedAlgebra {
 public:
  /// Generators in their fixed total order; names must be unique, degrees >= 0.
  explicit GradedAlgebra(const std::vector<std::pair<std::string, int>>& generators);

  [[nodiscard]] std::size_t size() const noexcept { return gens_.size(); }
  [[nodiscard]] const GeneratorSpec& generator(std::size_t i) const { return gens_.at(i); }
  [[nodiscard]] std::optional<std::size_t> find(const std::string& name) const;
  [[nodiscard]] std::size_t index_of(const std::string& name) const;
  [[nodiscard]] bool has_degree_zero() const noexcept;

 private:
  std::vector<GeneratorSpec> gens_;
  std::map<std::string, std::size_t> by_name_;
};

using AlgebraPtr = std::shared_ptr<const GradedAlgebra>;
AlgebraPtr make_algebra(const std::vector<std::pair<std::string, int>>& generators);

/// Exponent per generator, in generator order.
using Monomial = std::vector<int>;

int monomial_degree(const GradedAlgebra& alg, const Monomial& m);
/// Parity of the monomial as an element of the algebra.
bool monomial_odd(const GradedAlgebra& alg, const Monomial& m);
/// Product of two sorted monomials: Koszul sign (0 if an odd generator repeats) and result.
std::pair<int, Monomial> monomial_product(const GradedAlgebra& alg, const Monomial& a, const Monomial& b);

class GPoly {
 public:
  GPoly() = default;
  explicit GPoly(AlgebraPtr alg) : alg_(std::move(alg)) {}

  static GPoly constant(AlgebraPtr alg, const Rational& c);
  static GPoly generator(AlgebraPtr alg, std::size_t i, const Rational& c = 1);
  static GPoly monomial(AlgebraPtr alg, Monomial m, const Rational& c = 1);

  [[nodiscard]] const AlgebraPtr& algebra() const noexcept { return alg_; }
  [[nodiscard]] const std::map<Monomial, Rational>& terms() const noexcept { return terms_; }
  [[nodiscard]] bool is_zero() const noexcept { return terms_.empty(); }
  [[nodiscard]] Rational coefficient(const Monomial& m) const;
  /// Common degree of all terms; nullopt for zero or mixed degrees.
  [[nodiscard]] std::optional<int> homogeneous_degree() const;

  void add_term(const Monomial& m, const Rational& c);
  GPoly& operator+=(const GPoly& other);
  GPoly& operator-=(const GPoly& other);
  GPoly& operator*=(const Rational& c);

  friend GPoly operator+(GPoly a, const GPoly& b) { return a += b; }
  friend GPoly operator-(GPoly a, const GPoly& b) { return a -= b; }
  friend GPoly operator*(const Rational& c, GPoly a) { return a *= c; }
  friend GPoly operator-(GPoly a) { return a *= Rational(-1); }
  friend bool operator==(const GPoly& a, const GPoly& b) { return a.terms_ == b.terms_; }

  [[nodiscard]] std::string to_string() const;

 private:
  AlgebraPtr alg_;
  std::map<Monomial, Rational> terms_;
};

void require_same(const AlgebraPtr& a, const AlgebraPtr& b);

GPoly multiply(const GPoly& f, const GPoly& g);

/// Graded left derivation given by its values on generators.
class GVectorField {
 public:
  GVectorField() = default;
  GVectorField(AlgebraPtr alg, int degree);

  static GVectorField partial(AlgebraPtr alg, std::size_t i);

  [[nodiscard]] const AlgebraPtr& algebra() const noexcept { return alg_; }
  [[nodiscard]] int degree() const noexcept { return degree_; }
  [[nodiscard]] bool odd() const noexcept { return (degree_ & 1) != 0; }
  [[nodiscard]] const GPoly& image(std::size_t i) const { return images_.at(i); }
  [[nodiscard]] const std::vector<GPoly>& images() const noexcept { return images_; }
  /// Throws NonHomogeneous if the image has the wrong degree.
  void set_image(std::size_t i, GPoly value);
  [[nodiscard]] bool is_zero() const;

  GVectorField& operator+=(const GVectorField& other);
  GVectorField& operator*=(const Rational& c);
  friend GVectorField operator+(GVectorField a, const GVectorField& b) { return a += b; }
  friend GVectorField operator-(GVectorField a, const GVectorField& b) { return a += Rational(-1) * b; }
  friend GVectorField operator*(const Rational& c, GVectorField a) { return a *= c; }
  friend bool operator==(const GVectorField& a, const GVectorField& b);

  [[nodiscard]] std::string to_string() const;

 private:
  AlgebraPtr alg_;
  int degree_ = 0;
  std::vector<GPoly> images_;
};

GPoly apply(const GVectorField& v, const GPoly& f);
GVectorField vf_commutator(const GVectorField& v, const GVectorField& w);

class PoissonSpec {
 public:
  PoissonSpec(AlgebraPtr alg, int bracket_degree);

  /// Sets {g_i, g_j} = value and the partner entry {g_j, g_i} by graded antisymmetry.
  void set_pairing(std::size_t i, std::size_t j, const Rational& value);

  [[nodiscard]] const AlgebraPtr& algebra() const noexcept { return alg_; }
  [[nodiscard]] int bracket_degree() const noexcept { return degree_; }
  [[nodiscard]] Rational pairing(std::size_t i, std::size_t j) const;
  [[nodiscard]] const std::map<std::pair<std::size_t, std::size_t>, Rational>& table() const noexcept { return table_; }

 private:
  AlgebraPtr alg_;
  int degree_;
  std::map<std::pair<std::size_t, std::size_t>, Rational> table_;
};

GPoly poisson_bracket(const GPoly& f, const GPoly& g, const PoissonSpec& p);
GVectorField hamiltonian_vf(const GPoly& f, const PoissonSpec& p);

/// Monomials of total degree k, descending lexicographic in exponents.
/// With degree-0 generators present a cap on their total exponent is required.
std::vector<Monomial> degree_monomials(const GradedAlgebra& alg, int k, std::optional<int> zero_degree_cap = {});

}  // namespace htwist::gradedpoly
