#include "htwist/pq3.hpp"

#include <algorithm>
#include <array>
#include <numeric>
#include <sstream>

#include "htwist/errors.hpp"

namespace htwist::pq3 {

using exactla::RMatrix;
using exactla::Vector;
using gradedpoly::Monomial;

// ---- base polynomials ----

BasePoly base_constant(std::size_t m, const Rational& c) {
  BasePoly p;
  if (c != 0) p[std::vector<int>(m, 0)] = c;
  return p;
}

BasePoly base_variable(std::size_t m, std::size_t i, const Rational& c) {
  BasePoly p;
  std::vector<int> e(m, 0);
  e.at(i) = 1;
  if (c != 0) p[e] = c;
  return p;
}

BasePoly operator+(const BasePoly& a, const BasePoly& b) {
  BasePoly out = a;
  for (const auto& [e, c] : b) {
    auto& slot = out[e];
    slot += c;
    if (slot == 0) out.erase(e);
  }
  return out;
}

BasePoly operator*(const BasePoly& a, const BasePoly& b) {
  BasePoly out;
  for (const auto& [ea, ca] : a) {
    for (const auto& [eb, cb] : b) {
      std::vector<int> e(ea.size());
      for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb.at(i);
      auto& slot = out[e];
      slot += ca * cb;
      if (slot == 0) out.erase(e);
    }
  }
  return out;
}

BasePoly operator*(const Rational& s, const BasePoly& a) {
  BasePoly out;
  if (s == 0) return out;
  for (const auto& [e, c] : a) out[e] = s * c;
  return out;
}

bool is_zero(const BasePoly& p) {
  return std::all_of(p.begin(), p.end(), [](const auto& t) { return t.second == 0; });
}

std::string to_string(const BasePoly& p, const std::vector<std::string>& names) {
  if (is_zero(p)) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : p) {
    if (c == 0) continue;
    if (!first) os << " + ";
    first = false;
    os << htwist::to_string(c);
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      os << '*' << names.at(i);
      if (e[i] > 1) os << '^' << e[i];
    }
  }
  return os.str();
}

namespace {

// Signs on the x, xi and b parts of the cotangent lift; with these the lift
// matches the closed-form lift (rho xi theta + rho g b b + ...) term by term.
constexpr std::array<int, 3> kLiftSign{1, 1, -1};

BasePoly negate(const BasePoly& p) { return Rational(-1) * p; }

constexpr std::array<std::array<int, 4>, 24> kPerms4 = [] {
  std::array<std::array<int, 4>, 24> out{};
  std::array<int, 4> p{0, 1, 2, 3};
  for (int k = 0; k < 24; ++k) {
    out[static_cast<std::size_t>(k)] = p;
    std::next_permutation(p.begin(), p.end());
  }
  return out;
}();

int perm_sign(const std::array<int, 4>& p) {
  int inv = 0;
  for (int i = 0; i < 4; ++i) {
    for (int j = i + 1; j < 4; ++j) inv += p[i] > p[j];
  }
  return inv % 2 ? -1 : 1;
}

template <class T, class Neg>
void fill_alternating4(std::vector<T>& h, std::size_t n, std::array<std::size_t, 4> idx, const T& v, Neg neg) {
  for (const auto& p : kPerms4) {
    const std::size_t at = ((idx[p[0]] * n + idx[p[1]]) * n + idx[p[2]]) * n + idx[p[3]];
    h[at] = perm_sign(p) > 0 ? v : neg(v);
  }
}

template <class T, class Eq, class Neg>
bool alternating4(const std::vector<T>& h, std::size_t n, Eq eq, Neg neg) {
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      for (std::size_t c = 0; c < n; ++c) {
        for (std::size_t d = 0; d < n; ++d) {
          const T& v = h[((a * n + b) * n + c) * n + d];
          if (!eq(v, neg(h[((b * n + a) * n + c) * n + d])) || !eq(v, neg(h[((a * n + c) * n + b) * n + d])) ||
              !eq(v, neg(h[((a * n + b) * n + d) * n + c]))) {
            return false;
          }
        }
      }
    }
  }
  return true;
}

}  // namespace

// ---- split data ----

SplitData::SplitData(std::size_t n_) : n(n_), C(n_ * n_ * n_), h(n_ * n_ * n_ * n_), B(n_ * n_) {}

void SplitData::set_bracket(std::size_t a, std::size_t b, std::size_t c_, const Rational& v) {
  c(c_, a, b) = v;
  c(c_, b, a) = -v;
}

void SplitData::set_h(std::size_t a, std::size_t b, std::size_t c_, std::size_t d, const Rational& v) {
  fill_alternating4(h, n, {a, b, c_, d}, v, [](const Rational& x) { return Rational(-x); });
}

void SplitData::set_B(std::size_t a, std::size_t b, const Rational& v) {
  B[a * n + b] = v;
  B[b * n + a] = v;
}

void SplitData::validate() const {
  if (C.size() != n * n * n || h.size() != n * n * n * n || B.size() != n * n) {
    throw Error(ErrorCode::ShapeError, "split data arrays do not match n");
  }
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = 0; b < n; ++b) {
        if (c(k, a, b) != -c(k, b, a)) throw Error(ErrorCode::ShapeError, "C not skew");
      }
    }
  }
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      if (bb(a, b) != bb(b, a)) throw Error(ErrorCode::ShapeError, "B not symmetric");
    }
  }
  if (!alternating4(h, n, std::equal_to<>(), [](const Rational& x) { return Rational(-x); })) {
    throw Error(ErrorCode::ShapeError, "h not alternating");
  }
}

PQ3Data::PQ3Data(std::size_t m_, std::size_t n_)
    : m(m_), n(n_), rho(m_ * n_), C(n_ * n_ * n_), h(n_ * n_ * n_ * n_), B(n_ * n_) {}

void PQ3Data::validate() const {
  if (rho.size() != m * n || C.size() != n * n * n || h.size() != n * n * n * n || B.size() != n * n) {
    throw Error(ErrorCode::ShapeError, "PQ3 data arrays do not match (m, n)");
  }
  auto check_len = [&](const BasePoly& p) {
    for (const auto& [e, v] : p) {
      if (e.size() != m) throw Error(ErrorCode::ShapeError, "base polynomial in the wrong number of variables");
    }
  };
  for (const auto* v : {&rho, &C, &h, &B}) {
    for (const auto& p : *v) check_len(p);
  }
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = 0; b < n; ++b) {
        if (c(k, a, b) != negate(c(k, b, a))) throw Error(ErrorCode::ShapeError, "C not skew");
      }
    }
  }
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      if (bb(a, b) != bb(b, a)) throw Error(ErrorCode::ShapeError, "B not symmetric");
    }
  }
  if (!alternating4(h, n, std::equal_to<>(), negate)) throw Error(ErrorCode::ShapeError, "h not alternating");
}

PQ3Data to_pq3(const SplitData& S) {
  S.validate();
  PQ3Data P(0, S.n);
  auto lift = [](const Rational& v) { return base_constant(0, v); };
  std::transform(S.C.begin(), S.C.end(), P.C.begin(), lift);
  std::transform(S.h.begin(), S.h.end(), P.h.begin(), lift);
  std::transform(S.B.begin(), S.B.end(), P.B.begin(), lift);
  return P;
}

// ---- graded space ----

GPoly PQ3Space::base(const BasePoly& p) const {
  GPoly out(alg);
  for (const auto& [e, c] : p) {
    Monomial mono(alg->size(), 0);
    for (std::size_t i = 0; i < m; ++i) mono[x(i)] = e.at(i);
    out.add_term(mono, c);
  }
  return out;
}

PQ3Space make_space(std::size_t m, std::size_t n) {
  std::vector<std::pair<std::string, int>> gens;
  for (std::size_t i = 0; i < m; ++i) gens.emplace_back("x" + std::to_string(i + 1), 0);
  for (std::size_t a = 0; a < n; ++a) gens.emplace_back("xi" + std::to_string(a + 1), 1);
  for (std::size_t a = 0; a < n; ++a) gens.emplace_back("b" + std::to_string(a + 1), 2);
  for (std::size_t i = 0; i < m; ++i) gens.emplace_back("th" + std::to_string(i + 1), 3);
  auto alg = gradedpoly::make_algebra(gens);
  PQ3Space s{m, n, alg, gradedpoly::PoissonSpec(alg, -3)};
  for (std::size_t a = 0; a < n; ++a) s.poisson.set_pairing(s.b(a), s.xi(a), 1);
  for (std::size_t i = 0; i < m; ++i) s.poisson.set_pairing(s.th(i), s.x(i), 1);
  return s;
}

// ---- split checks ----

TwistedLieAlgebra induced_twisted(const SplitData& S) {
  S.validate();
  const std::size_t n = S.n;
  TwistedLieAlgebra T(n);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a + 1; b < n; ++b) {
      for (std::size_t c = 0; c < n; ++c) T.set_bracket(a, b, c, S.c(c, a, b));
    }
  }
  for (std::size_t p = 0; p < n; ++p) {
    for (std::size_t q = p + 1; q < n; ++q) {
      for (std::size_t r = q + 1; r < n; ++r) {
        for (std::size_t e = 0; e < n; ++e) {
          Rational v = 0;
          for (std::size_t a = 0; a < n; ++a) v += S.bb(e, a) * S.hh(a, p, q, r);
          if (v != 0) T.set_twist(p, q, r, e, v);
        }
      }
    }
  }
  return T;
}

MultiForm h_form(const SplitData& S) {
  const std::size_t n = S.n;
  MultiForm f(n, 4, 0);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a + 1; b < n; ++b) {
      for (std::size_t c = b + 1; c < n; ++c) {
        for (std::size_t d = c + 1; d < n; ++d) {
          const Rational& v = S.hh(a, b, c, d);
          if (v != 0) f.add_sorted(FormKey{{int(a), int(b), int(c), int(d)}, {}}, v);
        }
      }
    }
  }
  return f;
}

MultiForm b_form(const SplitData& S) {
  const std::size_t n = S.n;
  MultiForm f(n, 0, 2);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a; b < n; ++b) {
      const Rational v = a == b ? Rational(S.bb(a, a) / 2) : S.bb(a, b);
      if (v != 0) f.add_sorted(FormKey{{}, {int(a), int(b)}}, v);
    }
  }
  return f;
}

SplitReport check_split(const SplitData& S) {
  const TwistedLieAlgebra T = induced_twisted(S);
  SplitReport r;
  const AxiomReport ax = check_axioms(T);
  r.jacobi = ax.jacobi_max;
  if (S.n >= 5) r.dh = exterior_derivative(T, h_form(S)).max_abs();
  if (S.n >= 1) r.db = exterior_derivative(T, b_form(S)).max_abs();
  r.axioms_crosscheck = ax.valid();
  return r;
}

std::optional<MultiForm> solve_h_given_B(const TwistedLieAlgebra& T, const std::vector<Rational>& B) {
  const std::size_t n = T.n();
  if (B.size() != n * n) throw Error(ErrorCode::ShapeError, "B must be n x n");
  SplitData S(n);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      if (B[a * n + b] != B[b * n + a]) throw Error(ErrorCode::ShapeError, "B not symmetric");
      S.B[a * n + b] = B[a * n + b];
    }
  }
  if (!exterior_derivative(T, b_form(S)).is_zero()) throw Error(ErrorCode::BNotClosed, "D B != 0");

  const SliceBasis four(n, 4, 0);
  const SliceBasis three(n, 3, 0);
  const std::size_t unknowns = four.size();
  // rows: (e, p<q<r) for the twist equation, then the coordinates of D h in 5-forms
  const std::size_t twist_rows = n * three.size();
  const std::size_t closed_rows = n >= 5 ? binomial(n, 5) : 0;
  RMatrix A(twist_rows + closed_rows, unknowns);
  Vector rhs(twist_rows + closed_rows);
  for (std::size_t e = 0; e < n; ++e) {
    for (std::size_t t = 0; t < three.size(); ++t) {
      const auto& w = three.key(t).wedge;
      const std::size_t row = e * three.size() + t;
      rhs[row] = T.H(e, std::size_t(w[0]), std::size_t(w[1]), std::size_t(w[2]));
      for (std::size_t a = 0; a < n; ++a) {
        if (B[e * n + a] == 0) continue;
        std::vector<int> k{int(a), w[0], w[1], w[2]};
        const int s = sort_with_sign(k);
        if (s == 0) continue;
        const std::size_t col = four.index(FormKey{k, {}});
        A.add(row, col, s * B[e * n + a]);
      }
    }
  }
  if (closed_rows > 0) {
    const SliceBasis five(n, 5, 0);
    for (std::size_t j = 0; j < unknowns; ++j) {
      const Vector d = five.coordinates(exterior_derivative(T, four.element(j)));
      for (std::size_t i = 0; i < d.size(); ++i) {
        if (d[i] != 0) A.add(twist_rows + i, j, d[i]);
      }
    }
  }
  const auto x = exactla::solve(A, rhs);
  if (!x) return std::nullopt;
  MultiForm h(n, 4, 0);
  for (std::size_t j = 0; j < unknowns; ++j) {
    if ((*x)[j] != 0) h.add_sorted(four.key(j), (*x)[j]);
  }
  return h;
}

// ---- Theta ----

namespace {

GPoly product(const PQ3Space& s, const BasePoly& coef, const Rational& scale, std::initializer_list<std::size_t> gens) {
  GPoly out = scale * s.base(coef);
  for (std::size_t g : gens) out = gradedpoly::multiply(out, GPoly::generator(s.alg, g));
  return out;
}

void check_space(const PQ3Data& P, const PQ3Space& s) {
  if (P.m != s.m || P.n != s.n) throw Error(ErrorCode::ShapeError, "data and graded space disagree on (m, n)");
}

}  // namespace

GPoly build_theta(const PQ3Data& P, const PQ3Space& s) {
  P.validate();
  check_space(P, s);
  const std::size_t m = P.m, n = P.n;
  GPoly theta(s.alg);
  const Rational half(1, 2), sixth(1, 24);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t a = 0; a < n; ++a) {
      if (!is_zero(P.r(i, a))) theta += product(s, P.r(i, a), 1, {s.th(i), s.xi(a)});
    }
  }
  for (std::size_t c = 0; c < n; ++c) {
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = 0; b < n; ++b) {
        if (!is_zero(P.c(c, a, b))) theta += product(s, P.c(c, a, b), half, {s.xi(a), s.xi(b), s.b(c)});
      }
    }
  }
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      for (std::size_t c = 0; c < n; ++c) {
        for (std::size_t d = 0; d < n; ++d) {
          if (!is_zero(P.hh(a, b, c, d))) {
            theta += product(s, P.hh(a, b, c, d), sixth, {s.xi(a), s.xi(b), s.xi(c), s.xi(d)});
          }
        }
      }
    }
  }
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      if (!is_zero(P.bb(a, b))) theta += product(s, P.bb(a, b), half, {s.b(a), s.b(b)});
    }
  }
  return theta;
}

std::vector<std::string> NilpotenceReport::nonzero_components() const {
  std::vector<std::string> out;
  for (const auto& [k, v] : components) {
    if (!v.is_zero()) out.push_back(k);
  }
  return out;
}

NilpotenceReport nilpotence_residual(const GPoly& theta, const PQ3Space& s) {
  gradedpoly::require_same(theta.algebra(), s.alg);
  if (!theta.is_zero() && theta.homogeneous_degree() != 4) {
    throw Error(ErrorCode::NotDegree4, "Theta must be homogeneous of degree 4");
  }
  NilpotenceReport r;
  r.total = Rational(1, 2) * gradedpoly::poisson_bracket(theta, theta, s.poisson);
  for (const char* k : {"theta_xi_xi", "theta_b", "xi5", "xi3_b", "xi_b_b"}) r.components.emplace(k, GPoly(s.alg));
  for (const auto& [mono, c] : r.total.terms()) {
    int t = 0, k = 0, l = 0;
    for (std::size_t i = 0; i < s.m; ++i) t += mono[s.th(i)];
    for (std::size_t a = 0; a < s.n; ++a) {
      k += mono[s.xi(a)];
      l += mono[s.b(a)];
    }
    std::string key = "other";
    if (t == 1 && k == 2 && l == 0) key = "theta_xi_xi";
    if (t == 1 && k == 0 && l == 1) key = "theta_b";
    if (t == 0 && k == 5 && l == 0) key = "xi5";
    if (t == 0 && k == 3 && l == 1) key = "xi3_b";
    if (t == 0 && k == 1 && l == 2) key = "xi_b_b";
    auto it = r.components.try_emplace(key, GPoly(s.alg)).first;
    it->second.add_term(mono, c);
  }
  return r;
}

namespace {

// Coefficient polynomial of terms whose non-base part equals `rest`; other terms are ignored.
BasePoly extract(const GPoly& f, const PQ3Space& s, const Monomial& rest) {
  BasePoly out;
  for (const auto& [mono, c] : f.terms()) {
    bool match = true;
    for (std::size_t i = s.m; i < mono.size(); ++i) match = match && mono[i] == rest[i];
    if (!match) continue;
    std::vector<int> e(s.m);
    for (std::size_t i = 0; i < s.m; ++i) e[i] = mono[s.x(i)];
    out[e] += c;
  }
  return out;
}

}  // namespace

PQ3Data derived_structures(const GPoly& theta, const PQ3Space& s) {
  if (!nilpotence_residual(theta, s).zero()) throw Error(ErrorCode::NotNilpotent, "{Theta, Theta} != 0");
  const std::size_t m = s.m, n = s.n;
  const auto& ps = s.poisson;
  auto gen = [&](std::size_t i) { return GPoly::generator(s.alg, i); };
  auto br = [&](const GPoly& f, const GPoly& g) { return gradedpoly::poisson_bracket(f, g, ps); };
  PQ3Data P(m, n);

  std::vector<GPoly> tb(n);
  for (std::size_t a = 0; a < n; ++a) tb[a] = br(theta, gen(s.b(a)));

  const Monomial none(s.alg->size(), 0);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t i = 0; i < m; ++i) {
      P.r(i, a) = (Rational(1) / kAnchorConstant) * extract(br(tb[a], gen(s.x(i))), s, none);
    }
    for (std::size_t b = 0; b < n; ++b) {
      const GPoly ab = br(tb[a], gen(s.b(b)));
      for (std::size_t c = 0; c < n; ++c) {
        Monomial bc = none;
        bc[s.b(c)] = 1;
        P.c(c, a, b) = (Rational(1) / kBracketConstant) * extract(ab, s, bc);
      }
    }
  }
  for (std::size_t a = 0; a < n; ++a) {
    const GPoly ta = br(theta, gen(s.xi(a)));
    for (std::size_t b = 0; b < n; ++b) {
      P.bb(a, b) = (Rational(1) / kBConstant) * extract(br(ta, gen(s.xi(b))), s, none);
    }
  }
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a + 1; b < n; ++b) {
      const GPoly ab = br(tb[a], gen(s.b(b)));
      for (std::size_t c = b + 1; c < n; ++c) {
        const GPoly abc = br(ab, gen(s.b(c)));
        for (std::size_t d = c + 1; d < n; ++d) {
          const BasePoly v = (Rational(1) / kHConstant) * extract(br(abc, gen(s.b(d))), s, none);
          fill_alternating4(P.h, n, {a, b, c, d}, v, negate);
        }
      }
    }
  }
  for (auto* v : {&P.rho, &P.C, &P.h, &P.B}) {
    for (auto& p : *v) std::erase_if(p, [](const auto& t) { return t.second == 0; });
  }
  return P;
}

// ---- Courant algebroids ----

CourantData::CourantData(std::size_t m_, std::size_t n_) : m(m_), n(n_), rho(m_ * n_), g(n_ * n_), C(n_ * n_ * n_) {}

void CourantData::set_c(std::size_t a, std::size_t b, std::size_t c_, const BasePoly& v) {
  const std::array<std::array<std::size_t, 3>, 6> perms{
      {{a, b, c_}, {b, c_, a}, {c_, a, b}, {b, a, c_}, {a, c_, b}, {c_, b, a}}};
  for (std::size_t p = 0; p < 6; ++p) c(perms[p][0], perms[p][1], perms[p][2]) = p < 3 ? v : negate(v);
}

void CourantData::validate() const {
  if (rho.size() != m * n || g.size() != n * n || C.size() != n * n * n) {
    throw Error(ErrorCode::ShapeError, "Courant data arrays do not match (m, n)");
  }
  RMatrix G(n, n);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      if (gg(a, b) != gg(b, a)) throw Error(ErrorCode::ShapeError, "metric not symmetric");
      G.set(a, b, gg(a, b));
    }
  }
  if (exactla::rank(G) != n) throw Error(ErrorCode::ShapeError, "metric not invertible");
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      for (std::size_t c_ = 0; c_ < n; ++c_) {
        if (c(a, b, c_) != negate(c(b, a, c_)) || c(a, b, c_) != negate(c(a, c_, b))) {
          throw Error(ErrorCode::ShapeError, "C not alternating");
        }
      }
    }
  }
}

CourantSpace make_courant_space(const CourantData& D) {
  std::vector<std::pair<std::string, int>> gens;
  for (std::size_t i = 0; i < D.m; ++i) gens.emplace_back("x" + std::to_string(i + 1), 0);
  for (std::size_t a = 0; a < D.n; ++a) gens.emplace_back("xi" + std::to_string(a + 1), 1);
  for (std::size_t i = 0; i < D.m; ++i) gens.emplace_back("b" + std::to_string(i + 1), 2);
  auto alg = gradedpoly::make_algebra(gens);
  CourantSpace s{alg, gradedpoly::PoissonSpec(alg, -2)};
  for (std::size_t a = 0; a < D.n; ++a) {
    for (std::size_t b = a; b < D.n; ++b) s.poisson.set_pairing(D.m + a, D.m + b, D.gg(a, b));
  }
  for (std::size_t i = 0; i < D.m; ++i) s.poisson.set_pairing(D.m + D.n + i, i, 1);
  return s;
}

namespace {

GPoly courant_base(const CourantSpace& s, std::size_t m, const BasePoly& p) {
  GPoly out(s.alg);
  for (const auto& [e, c] : p) {
    Monomial mono(s.alg->size(), 0);
    for (std::size_t i = 0; i < m; ++i) mono[i] = e.at(i);
    out.add_term(mono, c);
  }
  return out;
}

BasePoly derivative(const BasePoly& p, std::size_t j) {
  BasePoly out;
  for (const auto& [e, c] : p) {
    if (e.at(j) == 0) continue;
    auto f = e;
    --f[j];
    out[f] += c * e[j];
  }
  return out;
}

}  // namespace

GPoly courant_theta(const CourantData& D, const CourantSpace& s) {
  D.validate();
  const std::size_t m = D.m, n = D.n;
  auto gen = [&](std::size_t i) { return GPoly::generator(s.alg, i); };
  GPoly out(s.alg);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t a = 0; a < n; ++a) {
      if (is_zero(D.r(i, a))) continue;
      out += gradedpoly::multiply(gradedpoly::multiply(courant_base(s, m, D.r(i, a)), gen(m + a)), gen(m + n + i));
    }
  }
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      for (std::size_t c = 0; c < n; ++c) {
        if (is_zero(D.c(a, b, c))) continue;
        GPoly t = Rational(1, 6) * courant_base(s, m, D.c(a, b, c));
        for (std::size_t g : {a, b, c}) t = gradedpoly::multiply(t, gen(m + g));
        out += t;
      }
    }
  }
  return out;
}

namespace {

// Cotangent lift: Theta = sum over coordinates y of Q_A(y) * p_y, with p_x = theta,
// p_{xi^a} = b_a, p_{b_i} = xi^{n+i}.
GPoly courant_lift_theta(const CourantData& D, const CourantSpace& cs, const PQ3Space& s) {
  const std::size_t m = D.m, n = D.n;
  auto to_space = [&](const GPoly& f) {
    GPoly out(s.alg);
    for (const auto& [mono, c] : f.terms()) {
      Monomial e(s.alg->size(), 0);
      for (std::size_t i = 0; i < m; ++i) e[s.x(i)] = mono[i];
      for (std::size_t a = 0; a < n; ++a) e[s.xi(a)] = mono[m + a];
      for (std::size_t i = 0; i < m; ++i) e[s.b(n + i)] = mono[m + n + i];
      out.add_term(e, c);
    }
    return out;
  };
  const GPoly theta_A = courant_theta(D, cs);
  auto q = [&](std::size_t y) {
    return to_space(gradedpoly::poisson_bracket(theta_A, GPoly::generator(cs.alg, y), cs.poisson));
  };
  auto gen = [&](std::size_t i) { return GPoly::generator(s.alg, i); };
  GPoly out(s.alg);
  for (std::size_t i = 0; i < m; ++i) out += Rational(kLiftSign[0]) * gradedpoly::multiply(q(i), gen(s.th(i)));
  for (std::size_t a = 0; a < n; ++a) out += Rational(kLiftSign[1]) * gradedpoly::multiply(q(m + a), gen(s.b(a)));
  for (std::size_t i = 0; i < m; ++i) {
    out += Rational(kLiftSign[2]) * gradedpoly::multiply(q(m + n + i), gen(s.xi(n + i)));
  }
  return out;
}

}  // namespace

CourantLift lift_courant(const CourantData& D) {
  D.validate();
  const std::size_t m = D.m, n = D.n;
  const CourantSpace cs = make_courant_space(D);
  CourantLift L{courant_theta(D, cs), GPoly(), make_space(m, n + m), PQ3Data(m, n + m), false, false};
  if (!gradedpoly::poisson_bracket(L.theta_A, L.theta_A, cs.poisson).is_zero()) {
    throw Error(ErrorCode::CourantAxiomFail, "{Theta_A, Theta_A} != 0");
  }
  const std::size_t N = n + m;
  PQ3Data& E = L.expected;
  // the lift carries rho xi theta = -rho theta xi
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t a = 0; a < n; ++a) E.r(i, a) = negate(D.r(i, a));
  }
  // bracket: C^d_{ab} = C_{abc} g^{cd}; C^{n+i}_{a,n+j} = d_j rho^i_a
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      for (std::size_t d = 0; d < n; ++d) {
        BasePoly v;
        for (std::size_t c = 0; c < n; ++c) v = v + D.gg(c, d) * D.c(a, b, c);
        E.c(d, a, b) = v;
      }
    }
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = 0; j < m; ++j) {
        const BasePoly v = derivative(D.r(i, a), j);
        E.c(n + i, a, n + j) = v;
        E.c(n + i, n + j, a) = negate(v);
      }
    }
  }
  // B^{n+i, b} = rho^i_a g^{ab}
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t b = 0; b < n; ++b) {
      BasePoly v;
      for (std::size_t a = 0; a < n; ++a) v = v + D.gg(a, b) * D.r(i, a);
      E.bb(n + i, b) = v;
      E.bb(b, n + i) = v;
    }
  }
  // h_{abc,n+i} = d_i C_{abc}
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a + 1; b < n; ++b) {
      for (std::size_t c = b + 1; c < n; ++c) {
        for (std::size_t i = 0; i < m; ++i) {
          const BasePoly v = derivative(D.c(a, b, c), i);
          if (!is_zero(v)) fill_alternating4(E.h, N, {a, b, c, n + i}, v, negate);
        }
      }
    }
  }
  for (auto* v : {&E.rho, &E.C, &E.h, &E.B}) {
    for (auto& p : *v) std::erase_if(p, [](const auto& t) { return t.second == 0; });
  }
  L.theta = courant_lift_theta(D, cs, L.space);
  L.theta_nilpotent = nilpotence_residual(L.theta, L.space).zero();
  if (L.theta_nilpotent) L.structures_match = derived_structures(L.theta, L.space) == E;
  return L;
}

// ---- cohomology ----

CohomologyTable split_cohomology(const PQ3Data& P, int max_degree, parallel::Exec exec) {
  if (P.m > 0) throw Error(ErrorCode::InfiniteSlice, "degree-0 coordinates make the degree slices infinite");
  const PQ3Space s = make_space(0, P.n);
  const GPoly theta = build_theta(P, s);
  if (!nilpotence_residual(theta, s).zero()) throw Error(ErrorCode::NotNilpotent, "{Theta, Theta} != 0");
  CohomologyTable t;
  std::vector<std::vector<Monomial>> slices;
  for (int k = 0; k <= max_degree + 1; ++k) {
    slices.push_back(gradedpoly::degree_monomials(*s.alg, k));
    if (k <= max_degree) t.slice_dims.push_back(slices.back().size());
  }
  // d_k : slice k -> slice k+1
  std::vector<RMatrix> d;
  for (int k = 0; k <= max_degree; ++k) {
    const auto& src = slices[std::size_t(k)];
    const auto& dst = slices[std::size_t(k) + 1];
    std::map<Monomial, std::size_t> row;
    for (std::size_t i = 0; i < dst.size(); ++i) row.emplace(dst[i], i);
    std::vector<Vector> cols(src.size());
    parallel::run_for(exec, src.size(), [&](std::size_t j) {
      const GPoly img = gradedpoly::poisson_bracket(theta, GPoly::monomial(s.alg, src[j]), s.poisson);
      Vector v(dst.size());
      for (const auto& [mono, c] : img.terms()) v[row.at(mono)] = c;
      cols[j] = std::move(v);
    });
    d.push_back(RMatrix::from_columns(cols, dst.size()));
  }
  for (int k = 0; k <= max_degree; ++k) {
    const RMatrix in = k == 0 ? RMatrix(slices[0].size(), 0) : d[std::size_t(k) - 1];
    t.dims.push_back(exactla::cohomology_dim(in, d[std::size_t(k)]));
    if (k > 0 && !(d[std::size_t(k)] * d[std::size_t(k) - 1]).is_zero()) t.d_squared_zero = false;
  }
  return t;
}

CohomologyTable split_cohomology(const SplitData& S, int max_degree, parallel::Exec exec) {
  return split_cohomology(to_pq3(S), max_degree, exec);
}

TangentReport tangent_complex_check(const PQ3Data& P) {
  P.validate();
  TangentReport r;
  r.vacuous = P.m == 0;
  for (std::size_t i = 0; i < P.m; ++i) {
    for (std::size_t b = 0; b < P.n; ++b) {
      BasePoly v;
      for (std::size_t a = 0; a < P.n; ++a) v = v + P.r(i, a) * P.bb(a, b);
      if (!is_zero(v)) r.rho_b_failures.emplace_back(i, b);
      BasePoly w;
      for (std::size_t a = 0; a < P.n; ++a) w = w + P.bb(b, a) * P.r(i, a);
      if (!is_zero(w)) r.b_rhot_failures.emplace_back(b, i);
    }
  }
  return r;
}

}  // namespace htwist::pq3
