#include <array>

#include "doctest.h"
#include "htwist/errors.hpp"
#include "htwist/instances.hpp"
#include "htwist/l2alg.hpp"

using namespace htwist;
using exactla::RMatrix;

namespace {

TwistedLieAlgebra su2_twisted() {
  MultiForm B(3, 2, 1);
  B.add({0, 1}, {0}, 1);
  return from_rank3_twist(algebras::su2(), B);
}

// phi2 with value -coefficient of a (2,1)-form
L2Morphism shift_morphism(const MultiForm& B, const Rational& s) {
  const std::size_t n = B.n();
  L2Morphism m = identity_morphism(n);
  for (const auto& [key, v] : B.coeffs()) {
    const auto a = static_cast<std::size_t>(key.wedge[0]), b = static_cast<std::size_t>(key.wedge[1]);
    const auto c = static_cast<std::size_t>(key.sym[0]);
    m.p2(c, a, b) += s * v;
    m.p2(c, b, a) -= s * v;
  }
  return m;
}

L2Morphism random_morphism(instances::Rng& rng, std::size_t n) {
  L2Morphism m = strict_morphism(instances::random_invertible(rng, n));
  const MultiForm p = instances::random_form(rng, n, 2, 1, 0.4);
  for (const auto& [key, v] : p.coeffs()) {
    const auto a = static_cast<std::size_t>(key.wedge[0]), b = static_cast<std::size_t>(key.wedge[1]);
    m.p2(static_cast<std::size_t>(key.sym[0]), a, b) = v;
    m.p2(static_cast<std::size_t>(key.sym[0]), b, a) = -v;
  }
  return m;
}

}  // namespace

TEST_CASE("from_twisted on twisted su(2)") {
  const auto L = from_twisted(su2_twisted());
  CHECK(L.del == RMatrix::identity(3));
  // l3(X1,X2,X3) = X2
  CHECK(L.l3(1, 0, 1, 2) == 1);
  CHECK(L.l3(0, 0, 1, 2) == 0);
  CHECK(L.l3(2, 0, 1, 2) == 0);
  CHECK(L.l3(1, 2, 1, 0) == -1);
  CHECK(check_l2_axioms(L).valid());
}

TEST_CASE("abelian image is trivial apart from del") {
  const auto L = from_twisted(algebras::abelian(4));
  CHECK(L.del == RMatrix::identity(4));
  for (const auto& v : L.bracket_) CHECK(v == 0);
  for (const auto& v : L.action_) CHECK(v == 0);
  for (const auto& v : L.l3_) CHECK(v == 0);
  CHECK(check_l2_axioms(L).valid());
}

TEST_CASE("zero maps satisfy every axiom") {
  L2Algebra L(2, 3);
  L.validate_shape();
  CHECK(check_l2_axioms(L).valid());
}

TEST_CASE("from_twisted rejects invalid input") {
  TwistedLieAlgebra T = algebras::su2();
  T.set_twist(0, 1, 2, 0, 1);
  CHECK_THROWS_AS(from_twisted(T), Error);
}

TEST_CASE("random twisted algebras give L2 algebras") {
  instances::Rng rng(11);
  for (int t = 0; t < 8; ++t) {
    const auto T = instances::random_rank3_twist(rng, static_cast<instances::Base>(t % 4));
    CHECK(check_l2_axioms(from_twisted(T)).valid());
  }
  for (std::size_t n : {4u, 5u}) {
    for (int t = 0; t < 4; ++t) {
      const auto T = instances::random_jacobiator_twist(rng, n);
      REQUIRE(check_axioms(T).valid());
      const auto r = check_l2_axioms(from_twisted(T));
      CHECK(r.valid());
      CHECK(r.n2b == 0);
    }
  }
}

TEST_CASE("perturbing l3 is detected") {
  instances::Rng rng(5);
  for (std::size_t n : {3u, 4u, 5u}) {
    auto L = from_twisted(n == 3 ? su2_twisted() : instances::random_jacobiator_twist(rng, n));
    L.set_l3(0, 1, 2, 0, L.l3(0, 0, 1, 2) + 1);
    L.validate_shape();
    const auto r = check_l2_axioms(L);
    CHECK(!r.valid());
    CHECK((r.n3 != 0 || r.n4 != 0));
  }
}

TEST_CASE("n=4 axiom sees a D-nonclosed l3 that still has the right boundary") {
  // Abelian V0 = V1 = Q^4 with del = 0: only the (n=4) axiom constrains l3 through the action.
  L2Algebra L(4, 4);
  for (std::size_t a = 0; a < 4; ++a) L.action(a, a, a) = 1;  // phi_a |> f_a = f_a
  L.set_l3(0, 1, 2, 3, 1);
  const auto r = check_l2_axioms(L);
  CHECK(r.n3 == 0);
  CHECK(r.n4 != 0);
}

TEST_CASE("shape validation") {
  L2Algebra L(2, 2);
  L.bracket(0, 0, 1) = 1;
  CHECK_THROWS_AS(L.validate_shape(), Error);
}

TEST_CASE("identity and strict morphisms") {
  instances::Rng rng(2);
  const auto T = instances::random_rank3_twist(rng, instances::Base::Sl2);
  auto r = check_morphism(T, T, identity_morphism(3));
  CHECK(r.valid());
  CHECK(r.rule1_vacuous);
  CHECK(r.rule2_vacuous);
  CHECK(r.rule4_vacuous);
  // cyclic permutation X1 -> X2 -> X3 -> X1 is an automorphism of su(2)
  RMatrix P(3, 3);
  P.set(1, 0, 1);
  P.set(2, 1, 1);
  P.set(0, 2, 1);
  const auto su2 = algebras::su2();
  CHECK(check_morphism(su2, su2, strict_morphism(P)).valid());
  // a transposition is not (it flips the sign of the bracket)
  RMatrix S(3, 3);
  S.set(1, 0, 1);
  S.set(0, 1, 1);
  S.set(2, 2, 1);
  CHECK(check_morphism(su2, su2, strict_morphism(S)).rule3 != 0);
  CHECK_THROWS_AS(check_morphism(su2, algebras::abelian(4), identity_morphism(3)), Error);
}

TEST_CASE("identity with phi2 from B links untwisted and twisted su(2)") {
  MultiForm B(3, 2, 1);
  B.add({0, 1}, {0}, 1);
  const auto src = algebras::su2();
  const auto dst = su2_twisted();
  // phi1[x,y]_0 - [x,y]_B = -B(x,y)
  const auto r = check_morphism(src, dst, shift_morphism(B, -1));
  CHECK(r.rule3 == 0);
  CHECK(r.rule5 == 0);
  const auto wrong = check_morphism(src, dst, shift_morphism(B, 1));
  CHECK(wrong.rule3 == 2);
  CHECK(!check_morphism(src, dst, identity_morphism(3)).valid());
}

TEST_CASE("composition") {
  instances::Rng rng(21);
  for (int t = 0; t < 5; ++t) {
    const auto T1 = instances::random_jacobiator_twist(rng, 4);
    const auto f = random_morphism(rng, 4);
    const auto T2 = pushforward(T1, f);
    REQUIRE(check_axioms(T2).valid());
    REQUIRE(check_morphism(T1, T2, f).valid());
    const auto g = random_morphism(rng, 4);
    const auto T3 = pushforward(T2, g);
    REQUIRE(check_morphism(T2, T3, g).valid());
    const auto h = random_morphism(rng, 4);
    const auto T4 = pushforward(T3, h);

    const auto gf = compose_morphisms(g, f);
    CHECK(check_morphism(T1, T3, gf).valid());
    CHECK(compose_morphisms(h, gf) == compose_morphisms(compose_morphisms(h, g), f));
    CHECK(check_morphism(T1, T4, compose_morphisms(h, gf)).valid());
    CHECK(compose_morphisms(identity_morphism(4), f) == f);
    CHECK(compose_morphisms(f, identity_morphism(4)) == f);
    CHECK(!gf.strict());
  }
  const auto a = strict_morphism(instances::random_invertible(rng, 3));
  const auto b = strict_morphism(instances::random_invertible(rng, 3));
  CHECK(compose_morphisms(a, b).strict());
  CHECK_THROWS_AS(compose_morphisms(a, identity_morphism(4)), Error);
}

TEST_CASE("composite phi2 follows the formula coefficientwise") {
  instances::Rng rng(8);
  const auto f = random_morphism(rng, 3), g = random_morphism(rng, 3);
  const auto gf = compose_morphisms(g, f);
  for (std::size_t c = 0; c < 3; ++c) {
    for (std::size_t a = 0; a < 3; ++a) {
      for (std::size_t b = 0; b < 3; ++b) {
        Rational want = 0;
        for (std::size_t i = 0; i < 3; ++i) {
          for (std::size_t j = 0; j < 3; ++j) want += g.p2(c, i, j) * f.phi1.at(i, a) * f.phi1.at(j, b);
          want += g.phi1.at(c, i) * f.p2(i, a, b);
        }
        CHECK(gf.p2(c, a, b) == want);
      }
    }
  }
}

TEST_CASE("all-plus reading of the n=4 sum is not an identity") {
  instances::Rng rng(17);
  bool seen = false;
  for (int t = 0; t < 6 && !seen; ++t) {
    const auto L = from_twisted(instances::random_jacobiator_twist(rng, 4, 0.6));
    const std::size_t n = 4;
    std::array<std::size_t, 4> e{0, 1, 2, 3};
    exactla::Vector v(n);
    for (std::size_t i = 0; i < 4; ++i) {
      std::vector<exactla::Vector> rest;
      for (std::size_t k = 0; k < 4; ++k) {
        if (k != i) rest.push_back(basis_vector(n, e[k]));
      }
      const auto x = L.act(basis_vector(n, e[i]), L.l3v(rest[0], rest[1], rest[2]));
      for (std::size_t c = 0; c < n; ++c) v[c] += x[c];
    }
    for (std::size_t i = 0; i < 4; ++i) {
      for (std::size_t j = i + 1; j < 4; ++j) {
        std::vector<exactla::Vector> rest;
        for (std::size_t k = 0; k < 4; ++k) {
          if (k != i && k != j) rest.push_back(basis_vector(n, e[k]));
        }
        const auto x = L.l3v(L.br(basis_vector(n, e[i]), basis_vector(n, e[j])), rest[0], rest[1]);
        for (std::size_t c = 0; c < n; ++c) v[c] += x[c];
      }
    }
    for (const auto& c : v) seen = seen || c != 0;
    CHECK(check_l2_axioms(L).valid());
  }
  CHECK(seen);
}
