#pragma once

// Split twisted algebras and their degree-4 Hamiltonians Theta on the
// symplectic graded space with coordinates x (0), xi (1), b (2), theta (3).

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "htwist/exactla.hpp"
#include "htwist/gradedpoly.hpp"
#include "htwist/multiform.hpp"
#include "htwist/parallel.hpp"
#include "htwist/twistcore.hpp"

namespace htwist::pq3 {

using gradedpoly::GPoly;

/// Polynomial in the base coordinates x^1..x^m: exponent vector -> coefficient.
using BasePoly = std::map<std::vector<int>, Rational>;

BasePoly base_constant(std::size_t m, const Rational& c);
/// c * x^i
BasePoly base_variable(std::size_t m, std::size_t i, const Rational& c = 1);
BasePoly operator+(const BasePoly& a, const BasePoly& b);
BasePoly operator*(const BasePoly& a, const BasePoly& b);
BasePoly operator*(const Rational& s, const BasePoly& a);
bool is_zero(const BasePoly& p);
std::string to_string(const BasePoly& p, const std::vector<std::string>& names);

struct SplitData {
  std::size_t n = 0;
  std::vector<Rational> C;  // [c][a][b], skew in (a,b)
  std::vector<Rational> h;  // [a][b][c][d], alternating
  std::vector<Rational> B;  // [a][b], symmetric

  SplitData() = default;
  explicit SplitData(std::size_t n);

  Rational& c(std::size_t c_, std::size_t a, std::size_t b) { return C[(c_ * n + a) * n + b]; }
  [[nodiscard]] const Rational& c(std::size_t c_, std::size_t a, std::size_t b) const { return C[(c_ * n + a) * n + b]; }
  [[nodiscard]] const Rational& hh(std::size_t a, std::size_t b, std::size_t c_, std::size_t d) const {
    return h[((a * n + b) * n + c_) * n + d];
  }
  [[nodiscard]] const Rational& bb(std::size_t a, std::size_t b) const { return B[a * n + b]; }

  void set_bracket(std::size_t a, std::size_t b, std::size_t c, const Rational& v);
  /// Sets h_{abcd} and all permutations with sign.
  void set_h(std::size_t a, std::size_t b, std::size_t c, std::size_t d, const Rational& v);
  void set_B(std::size_t a, std::size_t b, const Rational& v);

  /// Throws ShapeError on wrong sizes or symmetry types.
  void validate() const;
  friend bool operator==(const SplitData&, const SplitData&) = default;
};

struct PQ3Data {
  std::size_t m = 0;
  std::size_t n = 0;
  std::vector<BasePoly> rho;  // [i][a]
  std::vector<BasePoly> C;    // [c][a][b]
  std::vector<BasePoly> h;    // [a][b][c][d]
  std::vector<BasePoly> B;    // [a][b]

  PQ3Data() = default;
  PQ3Data(std::size_t m, std::size_t n);

  BasePoly& r(std::size_t i, std::size_t a) { return rho[i * n + a]; }
  [[nodiscard]] const BasePoly& r(std::size_t i, std::size_t a) const { return rho[i * n + a]; }
  BasePoly& c(std::size_t c_, std::size_t a, std::size_t b) { return C[(c_ * n + a) * n + b]; }
  [[nodiscard]] const BasePoly& c(std::size_t c_, std::size_t a, std::size_t b) const { return C[(c_ * n + a) * n + b]; }
  BasePoly& hh(std::size_t a, std::size_t b, std::size_t c_, std::size_t d) { return h[((a * n + b) * n + c_) * n + d]; }
  [[nodiscard]] const BasePoly& hh(std::size_t a, std::size_t b, std::size_t c_, std::size_t d) const {
    return h[((a * n + b) * n + c_) * n + d];
  }
  BasePoly& bb(std::size_t a, std::size_t b) { return B[a * n + b]; }
  [[nodiscard]] const BasePoly& bb(std::size_t a, std::size_t b) const { return B[a * n + b]; }

  void validate() const;
  friend bool operator==(const PQ3Data&, const PQ3Data&) = default;
};

PQ3Data to_pq3(const SplitData& S);

/// Generators x1..xm, xi1..xin, b1..bn, th1..thm with {b_a, xi^b} = {th_i, x^j} = delta.
struct PQ3Space {
  std::size_t m = 0, n = 0;
  gradedpoly::AlgebraPtr alg;
  gradedpoly::PoissonSpec poisson;

  [[nodiscard]] std::size_t x(std::size_t i) const { return i; }
  [[nodiscard]] std::size_t xi(std::size_t a) const { return m + a; }
  [[nodiscard]] std::size_t b(std::size_t a) const { return m + n + a; }
  [[nodiscard]] std::size_t th(std::size_t i) const { return m + 2 * n + i; }
  [[nodiscard]] GPoly base(const BasePoly& p) const;
};

PQ3Space make_space(std::size_t m, std::size_t n);

// Normalization of the derived brackets against the Theta coefficients.
inline constexpr int kBracketConstant = -1;
inline constexpr int kAnchorConstant = -1;
inline constexpr int kBConstant = 1;
inline constexpr int kHConstant = 1;

struct SplitReport {
  Rational jacobi;  // max |Jacobiator(C) - B# o h~|
  Rational dh;      // max |D h|
  Rational db;      // max |D B|
  bool rho_vacuous = true;
  bool axioms_crosscheck = false;  // twistcore check_axioms on the induced algebra
  [[nodiscard]] bool valid() const { return jacobi == 0 && dh == 0 && db == 0; }
};

/// The twisted algebra with bracket C and H^e_{pqr} = B^{ea} h_{apqr}.
TwistedLieAlgebra induced_twisted(const SplitData& S);
MultiForm h_form(const SplitData& S);
/// B as the polynomial (1/2) B^{ab} X_a X_b, a (0,2)-form.
MultiForm b_form(const SplitData& S);

SplitReport check_split(const SplitData& S);

/// One h with H = B# o h~ and D h = 0, or nullopt; throws BNotClosed if D B != 0.
std::optional<MultiForm> solve_h_given_B(const TwistedLieAlgebra& T, const std::vector<Rational>& B);

GPoly build_theta(const PQ3Data& P, const PQ3Space& space);
inline GPoly build_theta(const SplitData& S) { return build_theta(to_pq3(S), make_space(0, S.n)); }

struct NilpotenceReport {
  GPoly total;  // (1/2){Theta, Theta}
  // keyed by monomial type: theta_xi_xi, theta_b, xi5, xi3_b, xi_b_b
  std::map<std::string, GPoly> components;
  [[nodiscard]] bool zero() const { return total.is_zero(); }
  [[nodiscard]] std::vector<std::string> nonzero_components() const;
};

/// Throws NotDegree4 unless Theta is zero or homogeneous of degree 4.
NilpotenceReport nilpotence_residual(const GPoly& theta, const PQ3Space& space);

/// Recovers (rho, C, B, h) from Theta by iterated brackets, divided by the constants above.
/// Throws NotNilpotent if {Theta, Theta} != 0.
PQ3Data derived_structures(const GPoly& theta, const PQ3Space& space);

struct CourantData {
  std::size_t m = 0, n = 0;
  std::vector<BasePoly> rho;  // [i][a]
  std::vector<Rational> g;    // [a][b] inverse metric, symmetric invertible
  std::vector<BasePoly> C;    // [a][b][c] alternating

  CourantData() = default;
  CourantData(std::size_t m, std::size_t n);
  BasePoly& r(std::size_t i, std::size_t a) { return rho[i * n + a]; }
  [[nodiscard]] const BasePoly& r(std::size_t i, std::size_t a) const { return rho[i * n + a]; }
  Rational& gg(std::size_t a, std::size_t b) { return g[a * n + b]; }
  [[nodiscard]] const Rational& gg(std::size_t a, std::size_t b) const { return g[a * n + b]; }
  BasePoly& c(std::size_t a, std::size_t b, std::size_t c_) { return C[(a * n + b) * n + c_]; }
  [[nodiscard]] const BasePoly& c(std::size_t a, std::size_t b, std::size_t c_) const { return C[(a * n + b) * n + c_]; }
  /// Sets C_{abc} and all permutations with sign.
  void set_c(std::size_t a, std::size_t b, std::size_t c_, const BasePoly& v);
  void validate() const;
};

struct CourantLift {
  GPoly theta_A;       // on x, xi^a (a<n), b_i (i<m) with {xi^a, xi^b} = g^{ab}, {b_i, x^j} = delta
  GPoly theta;         // on the PQ3 space of rank n+m
  PQ3Space space;      // rank n+m: xi^{n+i} is the momentum of b_i
  PQ3Data expected;    // rho, C, B, h read off the lift formulas
  bool theta_nilpotent = false;
  bool structures_match = false;  // derived_structures(theta) == expected
};

/// Degree -2 space of the Courant data: generators x, xi, b.
struct CourantSpace {
  gradedpoly::AlgebraPtr alg;
  gradedpoly::PoissonSpec poisson;
};
CourantSpace make_courant_space(const CourantData& D);
GPoly courant_theta(const CourantData& D, const CourantSpace& space);

/// Throws CourantAxiomFail if {Theta_A, Theta_A} != 0.
CourantLift lift_courant(const CourantData& D);

struct CohomologyTable {
  std::vector<std::size_t> slice_dims;  // dim of degree-k functions
  std::vector<std::size_t> dims;        // H^k
  bool d_squared_zero = true;
};

/// H^k of {Theta, .} for 0 <= k <= max_degree; throws NotNilpotent.
CohomologyTable split_cohomology(const SplitData& S, int max_degree, parallel::Exec exec = parallel::Exec::Parallel);
/// Throws InfiniteSlice when m > 0.
CohomologyTable split_cohomology(const PQ3Data& P, int max_degree, parallel::Exec exec = parallel::Exec::Parallel);

struct TangentReport {
  bool vacuous = false;                              // m = 0
  std::vector<std::pair<std::size_t, std::size_t>> rho_b_failures;  // (i, b) with (rho B)^{ib} != 0
  std::vector<std::pair<std::size_t, std::size_t>> b_rhot_failures;  // (a, i) with (B rho^T)^{ai} != 0
  [[nodiscard]] bool valid() const { return rho_b_failures.empty() && b_rhot_failures.empty(); }
};

TangentReport tangent_complex_check(const PQ3Data& P);

}  // namespace htwist::pq3
