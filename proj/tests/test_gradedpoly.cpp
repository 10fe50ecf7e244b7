#include <random>

#include "doctest.h"
#include "htwist/errors.hpp"
#include "htwist/gradedpoly.hpp"

using namespace htwist;
using namespace htwist::gradedpoly;

namespace {

// Word oracle: a product of generators in arbitrary order, brought to sorted
// order by adjacent transpositions with explicit sign counting.
using Word = std::vector<std::size_t>;

GPoly word_to_poly(const AlgebraPtr& alg, Word w, Rational coef) {
  int sign = 1;
  for (std::size_t i = 0; i < w.size(); ++i) {
    for (std::size_t j = 0; j + 1 < w.size() - i; ++j) {
      if (w[j] > w[j + 1]) {
        if (alg->generator(w[j]).odd() && alg->generator(w[j + 1]).odd()) sign = -sign;
        std::swap(w[j], w[j + 1]);
      }
    }
  }
  Monomial m(alg->size(), 0);
  for (auto g : w) ++m[g];
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (alg->generator(i).odd() && m[i] > 1) return GPoly(alg);
  }
  GPoly p(alg);
  p.add_term(m, coef * sign);
  return p;
}

Word poly_word(const Monomial& m) {
  Word w;
  for (std::size_t i = 0; i < m.size(); ++i) {
    for (int e = 0; e < m[i]; ++e) w.push_back(i);
  }
  return w;
}

int word_degree(const AlgebraPtr& alg, const Word& w) {
  int d = 0;
  for (auto g : w) d += alg->generator(g).degree;
  return d;
}

GPoly oracle_product(const GPoly& f, const GPoly& g) {
  GPoly out(f.algebra());
  for (const auto& [a, ca] : f.terms()) {
    for (const auto& [b, cb] : g.terms()) {
      Word w = poly_word(a);
      const Word wb = poly_word(b);
      w.insert(w.end(), wb.begin(), wb.end());
      out += word_to_poly(f.algebra(), w, ca * cb);
    }
  }
  return out;
}

// Poisson bracket of words by recursive Leibniz expansion, result as (coef, word) list.
struct Term {
  Rational coef;
  Word word;
};

std::vector<Term> oracle_bracket_words(const AlgebraPtr& alg, const PoissonSpec& p, const Word& u, const Word& v) {
  const int d = p.bracket_degree();
  auto odd = [](int x) { return (x % 2 + 2) % 2 == 1; };
  std::vector<Term> out;
  if (u.empty() || v.empty()) return out;
  if (u.size() > 1) {
    // {f g, h} = f {g,h} + (-1)^{|g|(|h|+d)} {f,h} g
    const Word f{u[0]};
    const Word g(u.begin() + 1, u.end());
    for (auto& t : oracle_bracket_words(alg, p, g, v)) {
      Word w = f;
      w.insert(w.end(), t.word.begin(), t.word.end());
      out.push_back({t.coef, w});
    }
    const bool s = odd(word_degree(alg, g)) && odd(word_degree(alg, v) + d);
    for (auto& t : oracle_bracket_words(alg, p, f, v)) {
      Word w = t.word;
      w.insert(w.end(), g.begin(), g.end());
      out.push_back({s ? Rational(-t.coef) : t.coef, w});
    }
    return out;
  }
  if (v.size() > 1) {
    // {u, g h} = {u,g} h + (-1)^{(|u|+d)|g|} g {u,h}
    const Word g{v[0]};
    const Word h(v.begin() + 1, v.end());
    for (auto& t : oracle_bracket_words(alg, p, u, g)) {
      Word w = t.word;
      w.insert(w.end(), h.begin(), h.end());
      out.push_back({t.coef, w});
    }
    const bool s = odd(word_degree(alg, u) + d) && odd(word_degree(alg, g));
    for (auto& t : oracle_bracket_words(alg, p, u, h)) {
      Word w = g;
      w.insert(w.end(), t.word.begin(), t.word.end());
      out.push_back({s ? Rational(-t.coef) : t.coef, w});
    }
    return out;
  }
  const Rational c = p.pairing(u[0], v[0]);
  if (c != 0) out.push_back({c, {}});
  return out;
}

GPoly oracle_bracket(const GPoly& f, const GPoly& g, const PoissonSpec& p) {
  GPoly out(f.algebra());
  for (const auto& [a, ca] : f.terms()) {
    for (const auto& [b, cb] : g.terms()) {
      for (const auto& t : oracle_bracket_words(f.algebra(), p, poly_word(a), poly_word(b))) {
        out += word_to_poly(f.algebra(), t.word, t.coef * ca * cb);
      }
    }
  }
  return out;
}

// generators xi1..xi3 (1), b1..b3 (2)
AlgebraPtr xib_algebra() { return make_algebra({{"xi1", 1}, {"xi2", 1}, {"xi3", 1}, {"b1", 2}, {"b2", 2}, {"b3", 2}}); }

PoissonSpec degree3_spec(const AlgebraPtr& alg) {
  PoissonSpec p(alg, -3);
  for (std::size_t a = 0; a < 3; ++a) p.set_pairing(3 + a, a, 1);
  return p;
}

// generators x (0), xi1, xi2 (1), b1, b2 (2), theta (3)
AlgebraPtr full_algebra() {
  return make_algebra({{"x", 0}, {"xi1", 1}, {"xi2", 1}, {"b1", 2}, {"b2", 2}, {"theta", 3}});
}

PoissonSpec full_spec(const AlgebraPtr& alg) {
  PoissonSpec p(alg, -3);
  p.set_pairing(3, 1, 1);
  p.set_pairing(4, 2, 1);
  p.set_pairing(5, 0, 1);
  return p;
}

GPoly random_homogeneous(std::mt19937_64& rng, const AlgebraPtr& alg, int degree, std::optional<int> cap = {}) {
  const auto monos = degree_monomials(*alg, degree, cap);
  GPoly f(alg);
  std::uniform_int_distribution<int> coef(-3, 3);
  for (const auto& m : monos) {
    if (rng() % 2) f.add_term(m, coef(rng));
  }
  return f;
}

GPoly gen(const AlgebraPtr& alg, const char* name) { return GPoly::generator(alg, alg->index_of(name)); }

}  // namespace

TEST_CASE("odd generators anticommute and square to zero") {
  auto alg = xib_algebra();
  const GPoly x1 = gen(alg, "xi1"), x2 = gen(alg, "xi2");
  const GPoly x12 = multiply(x1, x2);
  CHECK(x12.terms().size() == 1);
  CHECK(x12.coefficient({1, 1, 0, 0, 0, 0}) == 1);
  CHECK(multiply(x2, x1) == -x12);
  CHECK(multiply(x1, x1).is_zero());
}

TEST_CASE("product with a mixed polynomial matches the word oracle") {
  auto alg = xib_algebra();
  const GPoly b1 = gen(alg, "b1");
  const GPoly f = b1 + multiply(gen(alg, "xi1"), gen(alg, "xi2"));
  const GPoly prod = multiply(f, b1);
  GPoly expected(alg);
  expected.add_term({0, 0, 0, 2, 0, 0}, 1);
  expected.add_term({1, 1, 0, 1, 0, 0}, 1);
  CHECK(prod == expected);
  CHECK(prod == oracle_product(f, b1));
}

TEST_CASE("multiply: random agreement with the oracle, graded commutativity, associativity") {
  std::mt19937_64 rng(5);
  auto alg = full_algebra();
  for (int t = 0; t < 80; ++t) {
    const int da = rng() % 5, db = rng() % 5, dc = rng() % 4;
    const GPoly f = random_homogeneous(rng, alg, da, 1);
    const GPoly g = random_homogeneous(rng, alg, db, 1);
    const GPoly h = random_homogeneous(rng, alg, dc, 1);
    CHECK(multiply(f, g) == oracle_product(f, g));
    const Rational sign = ((da * db) & 1) ? -1 : 1;
    CHECK(multiply(f, g) == sign * multiply(g, f));
    CHECK(multiply(multiply(f, g), h) == multiply(f, multiply(g, h)));
  }
}

TEST_CASE("basic pairings and constants") {
  auto alg = xib_algebra();
  const auto p = degree3_spec(alg);
  for (std::size_t a = 0; a < 3; ++a) {
    for (std::size_t b = 0; b < 3; ++b) {
      const GPoly r = poisson_bracket(GPoly::generator(alg, 3 + a), GPoly::generator(alg, b), p);
      CHECK(r == GPoly::constant(alg, a == b ? 1 : 0));
    }
  }
  CHECK(poisson_bracket(gen(alg, "b2"), GPoly::constant(alg, 5), p).is_zero());
  CHECK(poisson_bracket(GPoly::constant(alg, 5), gen(alg, "xi2"), p).is_zero());
  // partner entry by graded antisymmetry
  CHECK(p.pairing(0, 3) == -1);
}

TEST_CASE("bracket of a quadratic b-term with xi") {
  auto alg = xib_algebra();
  const auto p = degree3_spec(alg);
  const Rational B[3] = {1, 2, 0};
  GPoly f(alg);
  for (std::size_t a = 0; a < 3; ++a) {
    f += Rational(1, 2) * B[a] * multiply(GPoly::generator(alg, 3 + a), GPoly::generator(alg, 3 + a));
  }
  for (std::size_t c = 0; c < 3; ++c) {
    const GPoly r = poisson_bracket(f, GPoly::generator(alg, c), p);
    CHECK(r == B[c] * GPoly::generator(alg, 3 + c));
    CHECK(r == oracle_bracket(f, GPoly::generator(alg, c), p));
  }
}

TEST_CASE("poisson bracket agrees with the recursive Leibniz oracle") {
  std::mt19937_64 rng(9);
  auto alg = full_algebra();
  const auto p = full_spec(alg);
  for (int t = 0; t < 60; ++t) {
    const GPoly f = random_homogeneous(rng, alg, rng() % 5, 1);
    const GPoly g = random_homogeneous(rng, alg, rng() % 5, 1);
    CHECK(poisson_bracket(f, g, p) == oracle_bracket(f, g, p));
  }
}

TEST_CASE("graded antisymmetry, Leibniz and Jacobi on random homogeneous triples") {
  std::mt19937_64 rng(21);
  for (int variant = 0; variant < 2; ++variant) {
    AlgebraPtr alg;
    std::optional<PoissonSpec> p;
    if (variant == 0) {
      alg = full_algebra();
      p.emplace(full_spec(alg));
    } else {
      // degree -2 with a symmetric pairing on odd generators
      alg = make_algebra({{"x", 0}, {"e1", 1}, {"e2", 1}, {"p", 2}});
      p.emplace(alg, -2);
      p->set_pairing(1, 1, 1);
      p->set_pairing(1, 2, 3);
      p->set_pairing(2, 2, -1);
      p->set_pairing(3, 0, 1);
    }
    const int d = p->bracket_degree();
    auto sgn = [](int e) { return Rational((e % 2 + 2) % 2 ? -1 : 1); };
    for (int t = 0; t < 60; ++t) {
      const int a = rng() % 5, b = rng() % 5, c = rng() % 4;
      const GPoly f = random_homogeneous(rng, alg, a, 1);
      const GPoly g = random_homogeneous(rng, alg, b, 1);
      const GPoly h = random_homogeneous(rng, alg, c, 1);
      CHECK(poisson_bracket(f, g, *p) == -sgn((a + d) * (b + d)) * poisson_bracket(g, f, *p));
      CHECK(poisson_bracket(f, multiply(g, h), *p) ==
            multiply(poisson_bracket(f, g, *p), h) + sgn((a + d) * b) * multiply(g, poisson_bracket(f, h, *p)));
      CHECK(poisson_bracket(multiply(f, g), h, *p) ==
            multiply(f, poisson_bracket(g, h, *p)) + sgn(b * (c + d)) * multiply(poisson_bracket(f, h, *p), g));
      const GPoly lhs = poisson_bracket(f, poisson_bracket(g, h, *p), *p);
      const GPoly rhs = poisson_bracket(poisson_bracket(f, g, *p), h, *p) +
                        sgn((a + d) * (b + d)) * poisson_bracket(g, poisson_bracket(f, h, *p), *p);
      CHECK(lhs == rhs);
    }
  }
}

TEST_CASE("hamiltonian fields form a bracket homomorphism") {
  std::mt19937_64 rng(33);
  auto alg = full_algebra();
  const auto p = full_spec(alg);
  for (int t = 0; t < 40; ++t) {
    const GPoly f = random_homogeneous(rng, alg, 1 + rng() % 4, 1);
    const GPoly g = random_homogeneous(rng, alg, 1 + rng() % 4, 1);
    if (f.is_zero() || g.is_zero()) continue;
    const GPoly fg = poisson_bracket(f, g, p);
    const GVectorField lhs = hamiltonian_vf(fg, p);
    const GVectorField rhs = vf_commutator(hamiltonian_vf(f, p), hamiltonian_vf(g, p));
    CHECK(lhs == rhs);
    // the field acts as the bracket
    const GPoly k = random_homogeneous(rng, alg, rng() % 4, 1);
    CHECK(apply(hamiltonian_vf(f, p), k) == poisson_bracket(f, k, p));
  }
}

TEST_CASE("hamiltonian fields of constants and momenta") {
  auto alg = xib_algebra();
  const auto p = degree3_spec(alg);
  CHECK(hamiltonian_vf(GPoly::constant(alg, 4), p).is_zero());
  for (std::size_t a = 0; a < 3; ++a) {
    CHECK(hamiltonian_vf(GPoly::generator(alg, 3 + a), p) == GVectorField::partial(alg, a));
  }
  GPoly mixed = gen(alg, "xi1") + gen(alg, "b1");
  CHECK_THROWS_AS(hamiltonian_vf(mixed, p), Error);
}

TEST_CASE("hamiltonian field of the su(2) bracket term") {
  auto alg = xib_algebra();
  const auto p = degree3_spec(alg);
  // Theta = 1/2 C^c_ab xi^a xi^b b_c with C^3_12 = C^1_23 = C^2_31 = 1
  const int cyc[3][3] = {{0, 1, 2}, {1, 2, 0}, {2, 0, 1}};
  GPoly theta(alg);
  for (const auto& t : cyc) {
    const GPoly xa = GPoly::generator(alg, t[0]), xb = GPoly::generator(alg, t[1]);
    const GPoly bc = GPoly::generator(alg, 3 + t[2]);
    theta += Rational(1, 2) * multiply(multiply(xa, xb), bc);
    theta += Rational(-1, 2) * multiply(multiply(xb, xa), bc);
  }
  const GVectorField Q = hamiltonian_vf(theta, p);
  CHECK(Q.degree() == 1);
  // symbolic expansion: {Theta, xi^c} = +1/2 C^c_ab xi^a xi^b under {b_a, xi^b} = delta
  for (const auto& t : cyc) {
    const GPoly expected = multiply(GPoly::generator(alg, t[0]), GPoly::generator(alg, t[1]));
    CHECK(Q.image(t[2]) == expected);
  }
}

TEST_CASE("vector field commutators") {
  auto alg = xib_algebra();
  const GVectorField d1 = GVectorField::partial(alg, 0);
  GVectorField euler1(alg, 0);
  euler1.set_image(0, gen(alg, "xi1"));
  CHECK(vf_commutator(d1, euler1) == d1);
  GVectorField even(alg, 0);
  even.set_image(3, multiply(gen(alg, "xi1"), gen(alg, "xi2")));
  even.set_image(0, gen(alg, "xi2"));
  CHECK(vf_commutator(even, even).is_zero());
  CHECK_THROWS_AS(even.set_image(1, gen(alg, "b1")), Error);
}

TEST_CASE("degree slices") {
  auto odd3 = make_algebra({{"xi1", 1}, {"xi2", 1}, {"xi3", 1}});
  auto s3 = degree_monomials(*odd3, 3);
  REQUIRE(s3.size() == 1);
  CHECK(s3[0] == Monomial{1, 1, 1});
  auto s0 = degree_monomials(*odd3, 0);
  REQUIRE(s0.size() == 1);
  CHECK(s0[0] == Monomial{0, 0, 0});
  auto mixed = make_algebra({{"xi1", 1}, {"xi2", 1}, {"b1", 2}});
  auto s2 = degree_monomials(*mixed, 2);
  REQUIRE(s2.size() == 2);
  CHECK(s2[0] == Monomial{1, 1, 0});
  CHECK(s2[1] == Monomial{0, 0, 1});
  // exhaustive enumeration oracle
  auto alg = xib_algebra();
  for (int k = 0; k <= 7; ++k) {
    std::size_t count = 0;
    for (int code = 0; code < 8 * 8 * 8 * 8; ++code) {
      Monomial m{code & 1, (code >> 1) & 1, (code >> 2) & 1, (code >> 3) & 7, (code >> 6) & 7, (code >> 9) & 7};
      if (monomial_degree(*alg, m) == k) ++count;
    }
    CHECK(degree_monomials(*alg, k).size() == count);
  }
  auto with_x = full_algebra();
  CHECK_THROWS_AS(degree_monomials(*with_x, 2), Error);
  CHECK(degree_monomials(*with_x, 0, 2).size() == 3);
}

TEST_CASE("mixing algebras is rejected") {
  auto a = xib_algebra();
  auto b = make_algebra({{"xi1", 1}, {"b1", 2}});
  CHECK_THROWS_AS(multiply(gen(a, "xi1"), gen(b, "xi1")), Error);
  // identical generator lists are the same algebra
  auto c = xib_algebra();
  CHECK(multiply(gen(a, "xi1"), gen(c, "b1")) == multiply(gen(a, "xi1"), gen(a, "b1")));
}
