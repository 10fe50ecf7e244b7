#pragma once

// Two-term L-infinity algebras V1 -> V0 with constant coefficients, the
// functor from twisted Lie algebras, and L-infinity morphisms between
// twisted Lie algebras.

#include <optional>
#include <vector>

#include "htwist/exactla.hpp"
#include "htwist/twistcore.hpp"

namespace htwist {

struct L2Algebra {
  std::size_t dimV1 = 0;
  std::size_t dimV0 = 0;
  exactla::RMatrix del;              // dimV0 x dimV1
  std::vector<Rational> bracket_;    // [c][a][b], a,b,c in V0
  std::vector<Rational> action_;     // [g][a][f], a in V0, f,g in V1
  std::vector<Rational> l3_;         // [f][a][b][c], a,b,c in V0, f in V1

  L2Algebra() = default;
  L2Algebra(std::size_t v1, std::size_t v0);

  Rational& bracket(std::size_t c, std::size_t a, std::size_t b) { return bracket_[(c * dimV0 + a) * dimV0 + b]; }
  [[nodiscard]] const Rational& bracket(std::size_t c, std::size_t a, std::size_t b) const {
    return bracket_[(c * dimV0 + a) * dimV0 + b];
  }
  Rational& action(std::size_t g, std::size_t a, std::size_t f) { return action_[(g * dimV0 + a) * dimV1 + f]; }
  [[nodiscard]] const Rational& action(std::size_t g, std::size_t a, std::size_t f) const {
    return action_[(g * dimV0 + a) * dimV1 + f];
  }
  Rational& l3(std::size_t f, std::size_t a, std::size_t b, std::size_t c) {
    return l3_[((f * dimV0 + a) * dimV0 + b) * dimV0 + c];
  }
  [[nodiscard]] const Rational& l3(std::size_t f, std::size_t a, std::size_t b, std::size_t c) const {
    return l3_[((f * dimV0 + a) * dimV0 + b) * dimV0 + c];
  }
  /// Sets l3(a,b,c) component f and all its permutations with sign.
  void set_l3(std::size_t a, std::size_t b, std::size_t c, std::size_t f, const Rational& v);

  /// Throws ShapeError unless the bracket is skew, l3 alternating and del sized dimV0 x dimV1.
  void validate_shape() const;

  // multilinear evaluation on coordinate vectors
  [[nodiscard]] exactla::Vector br(const exactla::Vector& x, const exactla::Vector& y) const;
  [[nodiscard]] exactla::Vector act(const exactla::Vector& x, const exactla::Vector& f) const;
  [[nodiscard]] exactla::Vector l3v(const exactla::Vector& x, const exactla::Vector& y, const exactla::Vector& z) const;
};

/// V1 = V0 = E, del = id, bracket = C, action = connection, l3 = H.
L2Algebra from_twisted(const TwistedLieAlgebra& T);

struct L2Report {
  Rational n2, n2b, n3, n3b, n4;  // max |residual| per axiom over basis tuples
  [[nodiscard]] bool valid() const { return n2 == 0 && n2b == 0 && n3 == 0 && n3b == 0 && n4 == 0; }
};

L2Report check_l2_axioms(const L2Algebra& L);

struct L2Morphism {
  exactla::RMatrix phi1;       // n2 x n1
  std::vector<Rational> phi2;  // [c][a][b], c in E2, a,b in E1; alternating in (a,b)
  [[nodiscard]] std::size_t source_dim() const { return phi1.cols(); }
  [[nodiscard]] std::size_t target_dim() const { return phi1.rows(); }
  [[nodiscard]] const Rational& p2(std::size_t c, std::size_t a, std::size_t b) const {
    return phi2[(c * source_dim() + a) * source_dim() + b];
  }
  Rational& p2(std::size_t c, std::size_t a, std::size_t b) { return phi2[(c * source_dim() + a) * source_dim() + b]; }
  [[nodiscard]] bool strict() const;
  friend bool operator==(const L2Morphism&, const L2Morphism&) = default;
};

L2Morphism identity_morphism(std::size_t n);
/// phi2 = 0.
L2Morphism strict_morphism(const exactla::RMatrix& phi1);

struct MorphismReport {
  // module, ring-multiplicativity and anchor rules hold trivially over constant coefficients
  bool rule1_vacuous = true, rule2_vacuous = true, rule4_vacuous = true;
  Rational rule3;  // max |phi1[x,y] - [phi1 x, phi1 y] - phi2(x,y)|
  Rational rule5;  // max |phi1 H1 - H2 o phi1 - (nabla phi2 - phi2([,],) + cycl.)|
  [[nodiscard]] bool valid() const { return rule3 == 0 && rule5 == 0; }
};

/// Throws DimError on shape mismatch.
MorphismReport check_morphism(const TwistedLieAlgebra& A, const TwistedLieAlgebra& B, const L2Morphism& m);

/// (outer o inner): phi1 = outer.phi1 inner.phi1, phi2 = outer.phi2 o ^2 inner.phi1 + outer.phi1 o inner.phi2.
L2Morphism compose_morphisms(const L2Morphism& outer, const L2Morphism& inner);

/// The unique target structure making (phi1, phi2) a morphism out of A, for invertible phi1:
/// bracket transported by phi1 and shifted by -phi2, twist its Jacobiator.
TwistedLieAlgebra pushforward(const TwistedLieAlgebra& A, const L2Morphism& m);

}  // namespace htwist
