#pragma once

// Finite-dimensional H-twisted Lie algebras (anchor zero): connection,
// exterior covariant derivative D, the twist operator, trace, axiom residuals.

#include <array>
#include <string>
#include <vector>

#include "htwist/exactla.hpp"
#include "htwist/multiform.hpp"

namespace htwist {

class TwistedLieAlgebra {
 public:
  TwistedLieAlgebra() = default;
  explicit TwistedLieAlgebra(std::size_t n);

  [[nodiscard]] std::size_t n() const noexcept { return n_; }
  /// C^c_{ab}
  [[nodiscard]] const Rational& C(std::size_t c, std::size_t a, std::size_t b) const { return C_[(c * n_ + a) * n_ + b]; }
  /// H^d_{abc}
  [[nodiscard]] const Rational& H(std::size_t d, std::size_t a, std::size_t b, std::size_t c) const {
    return H_[((d * n_ + a) * n_ + b) * n_ + c];
  }

  /// Sets C^c_{ab} = value and C^c_{ba} = -value.
  void set_bracket(std::size_t a, std::size_t b, std::size_t c, const Rational& value);
  /// Sets H^d_{abc} = value together with all permutations of (a,b,c) with sign.
  void set_twist(std::size_t a, std::size_t b, std::size_t c, std::size_t d, const Rational& value);
  void clear_twist();

  [[nodiscard]] exactla::Vector bracket(const exactla::Vector& x, const exactla::Vector& y) const;
  [[nodiscard]] exactla::Vector bracket(std::size_t a, std::size_t b) const;
  [[nodiscard]] exactla::Vector twist(const exactla::Vector& x, const exactla::Vector& y, const exactla::Vector& z) const;
  [[nodiscard]] bool has_twist() const;

  /// Throws ShapeError unless C is skew and H alternating.
  void validate_shape() const;

  /// The twist as the (3,1)-form sum_{a<b<c} H^d_{abc} xi^a xi^b xi^c (x) X_d.
  [[nodiscard]] MultiForm twist_form() const;

  friend bool operator==(const TwistedLieAlgebra& a, const TwistedLieAlgebra& b) {
    return a.n_ == b.n_ && a.C_ == b.C_ && a.H_ == b.H_;
  }

 private:
  friend TwistedLieAlgebra from_dense(std::size_t, std::vector<Rational>, std::vector<Rational>);
  std::size_t n_ = 0;
  std::vector<Rational> C_;
  std::vector<Rational> H_;
};

/// Builds from raw index-major arrays C[c][a][b], H[d][a][b][c]; throws ShapeError on bad symmetry.
TwistedLieAlgebra from_dense(std::size_t n, std::vector<Rational> C, std::vector<Rational> H);

exactla::Vector basis_vector(std::size_t n, std::size_t i);

/// [[a,b],c] cyclic defect: cyc [x,[y,z]] as a vector.
exactla::Vector jacobiator(const TwistedLieAlgebra& T, const exactla::Vector& x, const exactla::Vector& y,
                           const exactla::Vector& z);
/// The (3,1)-form of the untwisted Jacobiator of the bracket.
MultiForm jacobiator_form(const TwistedLieAlgebra& T);

struct AxiomReport {
  Rational jacobi_max;
  std::vector<std::array<std::size_t, 4>> jacobi_failures;  // (a,b,c,d) with a<b<c, 0-based
  MultiForm dh;                                             // D H as a (4,1)-form
  Rational dh_max;
  [[nodiscard]] bool valid() const { return jacobi_max == 0 && dh_max == 0; }
};

AxiomReport check_axioms(const TwistedLieAlgebra& T);

/// nabla_{e_phi} psi = [e_phi, psi].
exactla::Vector connection(const TwistedLieAlgebra& T, std::size_t phi, const exactla::Vector& psi);

MultiForm exterior_derivative(const TwistedLieAlgebra& T, const MultiForm& psi);

/// Even derivation extending alpha -> -alpha o K and phi -> K(phi, ...) for a (k,1)-form K.
MultiForm form_twist_operator(const MultiForm& K, const MultiForm& psi);
MultiForm h_tilde(const TwistedLieAlgebra& T, const MultiForm& psi);

MultiForm trace(const MultiForm& psi);

TwistedLieAlgebra add_bracket(const TwistedLieAlgebra& L, const MultiForm& B);

/// Bracket C + B with H the Jacobiator of the new bracket (equal to D_0 B when the quadratic part vanishes).
TwistedLieAlgebra from_rank3_twist(const TwistedLieAlgebra& L, const MultiForm& B);

struct TwistResidual {
  MultiForm H;              // D_0 B
  MultiForm residual;       // B~(D_0 B), the part of D_B H linear in B
  MultiForm jacobi_defect;  // Jacobiator(C + B) - D_0 B
  [[nodiscard]] bool twisted_algebra_valid() const { return residual.is_zero() && jacobi_defect.is_zero(); }
};

TwistResidual twist_residual(const TwistedLieAlgebra& L, const MultiForm& B);

namespace algebras {
TwistedLieAlgebra su2();
TwistedLieAlgebra sl2();
TwistedLieAlgebra heisenberg();
TwistedLieAlgebra abelian(std::size_t n);
}  // namespace algebras

}  // namespace htwist
