#pragma once

// Degree-2 realization of a twisted algebra over a point: coordinates xi^a (1)
// and b^B (2), a homological vector field Q, and cohomology of [Q, .] on
// polynomial vector fields.

#include <vector>

#include "htwist/gradedpoly.hpp"
#include "htwist/parallel.hpp"
#include "htwist/twistcore.hpp"

namespace htwist::regq {

using gradedpoly::GVectorField;

struct RegularRealization {
  std::size_t n = 0;
  gradedpoly::AlgebraPtr alg;  // xi1..xin, b1..bn
  GVectorField Q;

  [[nodiscard]] std::size_t xi(std::size_t a) const { return a; }
  [[nodiscard]] std::size_t b(std::size_t a) const { return n + a; }
  /// l(e_a) = d/dxi^a
  [[nodiscard]] GVectorField l(std::size_t a) const;
  /// l'(e_B) = -d/db^B
  [[nodiscard]] GVectorField lprime(std::size_t a) const;
  [[nodiscard]] GVectorField lprime(const exactla::Vector& v) const;
  [[nodiscard]] GVectorField l(const exactla::Vector& v) const;
};

gradedpoly::AlgebraPtr regular_algebra(std::size_t n);

/// Q = -1/2 C^c_ab xi^a xi^b d/dxi^c + b^c d/dxi^c - C^C_aB xi^a b^B d/db^C + 1/6 H^C_abd xi^a xi^b xi^d d/db^C,
/// without any check.
GVectorField regular_q(const TwistedLieAlgebra& T, const gradedpoly::AlgebraPtr& alg);

/// Throws InvalidAlgebra if T fails its axioms, NilpotenceFail if [Q,Q] != 0.
RegularRealization build_regular_q(const TwistedLieAlgebra& T);

/// [[[Q, l e_a], l e_b], l e_c]
GVectorField triple_commutator(const RegularRealization& R, std::size_t a, std::size_t b, std::size_t c);

struct IdentityReport {
  std::size_t bracket_failures = 0;     // l[x,y] = pr [[l x, Q], l y]
  std::size_t twist_failures = 0;       // l' H(x,y,z) = [[[Q, l x], l y], l z]
  std::size_t connection_failures = 0;  // l' nabla_x y = [[Q, l x], l' y]
  [[nodiscard]] bool valid() const { return bracket_failures == 0 && twist_failures == 0 && connection_failures == 0; }
};

IdentityReport derived_identity_check(const RegularRealization& R, const TwistedLieAlgebra& T);

struct FieldBasis {
  std::vector<GVectorField> fields;  // monomial * d/dxi^c, then monomial * d/db^C
};

/// Basis of the degree-k vector fields; empty for k < -2.
FieldBasis vector_field_basis(const RegularRealization& R, int k);

/// Coordinates of a degree-k field in vector_field_basis(R, k).
exactla::Vector field_coordinates(const RegularRealization& R, int k, const GVectorField& v);

struct RegularTable {
  int kmin = 0, kmax = 0;
  std::vector<std::size_t> slice_dims;
  std::vector<std::size_t> dims;
  bool d_squared_zero = true;
};

/// Throws InvalidInput if kmin < -2 or kmin > kmax.
RegularTable regular_cohomology(const TwistedLieAlgebra& T, int kmin, int kmax,
                                parallel::Exec exec = parallel::Exec::Parallel);

}  // namespace htwist::regq
