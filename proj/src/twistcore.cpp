#include "htwist/twistcore.hpp"

#include <algorithm>

#include "htwist/errors.hpp"

namespace htwist {

using exactla::Vector;

TwistedLieAlgebra::TwistedLieAlgebra(std::size_t n) : n_(n), C_(n * n * n), H_(n * n * n * n) {}

void TwistedLieAlgebra::set_bracket(std::size_t a, std::size_t b, std::size_t c, const Rational& value) {
  if (a >= n_ || b >= n_ || c >= n_) throw Error(ErrorCode::ShapeError, "bracket index out of range");
  if (a == b) {
    if (value != 0) throw Error(ErrorCode::ShapeError, "C^c_{aa} must vanish");
    return;
  }
  C_[(c * n_ + a) * n_ + b] = value;
  C_[(c * n_ + b) * n_ + a] = -value;
}

void TwistedLieAlgebra::set_twist(std::size_t a, std::size_t b, std::size_t c, std::size_t d, const Rational& value) {
  if (a >= n_ || b >= n_ || c >= n_ || d >= n_) throw Error(ErrorCode::ShapeError, "twist index out of range");
  std::vector<int> idx{static_cast<int>(a), static_cast<int>(b), static_cast<int>(c)};
  std::vector<int> sorted = idx;
  const int base = sort_with_sign(sorted);
  if (base == 0) {
    if (value != 0) throw Error(ErrorCode::ShapeError, "H^d_{abc} with a repeated index must vanish");
    return;
  }
  std::array<int, 3> perm{sorted[0], sorted[1], sorted[2]};
  do {
    std::vector<int> p(perm.begin(), perm.end());
    const int s = sort_with_sign(p);
    H_[((d * n_ + perm[0]) * n_ + perm[1]) * n_ + perm[2]] = value * base * s;
  } while (std::next_permutation(perm.begin(), perm.end()));
}

void TwistedLieAlgebra::clear_twist() { std::fill(H_.begin(), H_.end(), Rational(0)); }

Vector TwistedLieAlgebra::bracket(const Vector& x, const Vector& y) const {
  Vector out(n_);
  for (std::size_t a = 0; a < n_; ++a) {
    if (x[a] == 0) continue;
    for (std::size_t b = 0; b < n_; ++b) {
      if (y[b] == 0) continue;
      const Rational xy = x[a] * y[b];
      for (std::size_t c = 0; c < n_; ++c) {
        const Rational& k = C(c, a, b);
        if (k != 0) out[c] += k * xy;
      }
    }
  }
  return out;
}

Vector TwistedLieAlgebra::bracket(std::size_t a, std::size_t b) const {
  Vector out(n_);
  for (std::size_t c = 0; c < n_; ++c) out[c] = C(c, a, b);
  return out;
}

Vector TwistedLieAlgebra::twist(const Vector& x, const Vector& y, const Vector& z) const {
  Vector out(n_);
  for (std::size_t a = 0; a < n_; ++a) {
    if (x[a] == 0) continue;
    for (std::size_t b = 0; b < n_; ++b) {
      if (y[b] == 0) continue;
      for (std::size_t c = 0; c < n_; ++c) {
        if (z[c] == 0) continue;
        const Rational xyz = x[a] * y[b] * z[c];
        for (std::size_t d = 0; d < n_; ++d) {
          const Rational& h = H(d, a, b, c);
          if (h != 0) out[d] += h * xyz;
        }
      }
    }
  }
  return out;
}

bool TwistedLieAlgebra::has_twist() const {
  return std::any_of(H_.begin(), H_.end(), [](const Rational& x) { return x != 0; });
}

void TwistedLieAlgebra::validate_shape() const {
  for (std::size_t c = 0; c < n_; ++c) {
    for (std::size_t a = 0; a < n_; ++a) {
      for (std::size_t b = 0; b < n_; ++b) {
        if (C(c, a, b) != -C(c, b, a)) {
          throw Error(ErrorCode::ShapeError, "bracket not skew at (" + std::to_string(a + 1) + "," +
                                                 std::to_string(b + 1) + "," + std::to_string(c + 1) + ")");
        }
      }
    }
  }
  for (std::size_t d = 0; d < n_; ++d) {
    for (std::size_t a = 0; a < n_; ++a) {
      for (std::size_t b = 0; b < n_; ++b) {
        for (std::size_t c = 0; c < n_; ++c) {
          const Rational& h = H(d, a, b, c);
          if (h != -H(d, b, a, c) || h != -H(d, a, c, b)) {
            throw Error(ErrorCode::ShapeError, "twist not alternating at (" + std::to_string(a + 1) + "," +
                                                   std::to_string(b + 1) + "," + std::to_string(c + 1) + "," +
                                                   std::to_string(d + 1) + ")");
          }
        }
      }
    }
  }
}

MultiForm TwistedLieAlgebra::twist_form() const {
  MultiForm f(n_, 3, 1);
  for (std::size_t a = 0; a < n_; ++a) {
    for (std::size_t b = a + 1; b < n_; ++b) {
      for (std::size_t c = b + 1; c < n_; ++c) {
        for (std::size_t d = 0; d < n_; ++d) {
          f.add_sorted(FormKey{{int(a), int(b), int(c)}, {int(d)}}, H(d, a, b, c));
        }
      }
    }
  }
  return f;
}

TwistedLieAlgebra from_dense(std::size_t n, std::vector<Rational> C, std::vector<Rational> H) {
  if (C.size() != n * n * n || H.size() != n * n * n * n) throw Error(ErrorCode::ShapeError, "array sizes");
  TwistedLieAlgebra T;
  T.n_ = n;
  T.C_ = std::move(C);
  T.H_ = std::move(H);
  T.validate_shape();
  return T;
}

Vector basis_vector(std::size_t n, std::size_t i) {
  Vector v(n);
  v.at(i) = 1;
  return v;
}

Vector jacobiator(const TwistedLieAlgebra& T, const Vector& x, const Vector& y, const Vector& z) {
  Vector out = T.bracket(x, T.bracket(y, z));
  const Vector b = T.bracket(y, T.bracket(z, x));
  const Vector c = T.bracket(z, T.bracket(x, y));
  for (std::size_t i = 0; i < out.size(); ++i) out[i] += b[i] + c[i];
  return out;
}

MultiForm jacobiator_form(const TwistedLieAlgebra& T) {
  const std::size_t n = T.n();
  MultiForm f(n, 3, 1);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a + 1; b < n; ++b) {
      for (std::size_t c = b + 1; c < n; ++c) {
        const Vector j = jacobiator(T, basis_vector(n, a), basis_vector(n, b), basis_vector(n, c));
        for (std::size_t d = 0; d < n; ++d) f.add_sorted(FormKey{{int(a), int(b), int(c)}, {int(d)}}, j[d]);
      }
    }
  }
  return f;
}

AxiomReport check_axioms(const TwistedLieAlgebra& T) {
  T.validate_shape();
  const std::size_t n = T.n();
  AxiomReport r;
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a + 1; b < n; ++b) {
      for (std::size_t c = b + 1; c < n; ++c) {
        const Vector j = jacobiator(T, basis_vector(n, a), basis_vector(n, b), basis_vector(n, c));
        for (std::size_t d = 0; d < n; ++d) {
          const Rational res = j[d] - T.H(d, a, b, c);
          if (res == 0) continue;
          r.jacobi_max = std::max(r.jacobi_max, Rational(abs(res)));
          r.jacobi_failures.push_back({a, b, c, d});
        }
      }
    }
  }
  if (n >= 4) {
    r.dh = exterior_derivative(T, T.twist_form());
  } else {
    r.dh = MultiForm(n, 4, 1);
  }
  r.dh_max = r.dh.max_abs();
  return r;
}

Vector connection(const TwistedLieAlgebra& T, std::size_t phi, const Vector& psi) {
  return T.bracket(basis_vector(T.n(), phi), psi);
}

namespace {

// nabla_{e_k} acting as a derivation on the symmetric monomial X^J.
void nabla_sym(const TwistedLieAlgebra& T, std::size_t k, const std::vector<int>& J, const Rational& scale,
               const std::vector<int>& wedge, int sign, MultiForm& out) {
  for (std::size_t m = 0; m < J.size(); ++m) {
    for (std::size_t c = 0; c < T.n(); ++c) {
      const Rational& coef = T.C(c, k, static_cast<std::size_t>(J[m]));
      if (coef == 0) continue;
      std::vector<int> s = J;
      s[m] = static_cast<int>(c);
      std::sort(s.begin(), s.end());
      out.add_sorted(FormKey{wedge, std::move(s)}, sign * scale * coef);
    }
  }
}

}  // namespace

MultiForm exterior_derivative(const TwistedLieAlgebra& T, const MultiForm& psi) {
  const std::size_t n = T.n();
  if (!psi.is_zero() && psi.n() != n) throw Error(ErrorCode::ShapeError, "form rank differs from algebra dimension");
  if (psi.p() + 1 > n) throw Error(ErrorCode::ShapeError, "D of a top-degree form");
  MultiForm out(n, psi.p() + 1, psi.q());
  for (const auto& [key, v] : psi.coeffs()) {
    const auto& I = key.wedge;
    // connection part
    if (!key.sym.empty()) {
      for (std::size_t k = 0; k < n; ++k) {
        if (std::binary_search(I.begin(), I.end(), static_cast<int>(k))) continue;
        std::vector<int> K = I;
        const auto pos = std::lower_bound(K.begin(), K.end(), static_cast<int>(k)) - K.begin();
        K.insert(K.begin() + pos, static_cast<int>(k));
        nabla_sym(T, k, key.sym, v, K, (pos & 1) ? -1 : 1, out);
      }
    }
    // bracket part
    for (std::size_t t = 0; t < I.size(); ++t) {
      const auto c = static_cast<std::size_t>(I[t]);
      std::vector<int> rest = I;
      rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(t));
      const Rational vt = (t & 1) ? Rational(-v) : v;
      for (std::size_t a = 0; a < n; ++a) {
        if (std::binary_search(rest.begin(), rest.end(), static_cast<int>(a))) continue;
        for (std::size_t b = a + 1; b < n; ++b) {
          const Rational& coef = T.C(c, a, b);
          if (coef == 0) continue;
          if (std::binary_search(rest.begin(), rest.end(), static_cast<int>(b))) continue;
          std::vector<int> K = rest;
          K.push_back(static_cast<int>(a));
          K.push_back(static_cast<int>(b));
          std::sort(K.begin(), K.end());
          const auto i = std::lower_bound(K.begin(), K.end(), static_cast<int>(a)) - K.begin();
          const auto j = std::lower_bound(K.begin(), K.end(), static_cast<int>(b)) - K.begin();
          const int sign = ((i + j) & 1) ? -1 : 1;
          out.add_sorted(FormKey{std::move(K), key.sym}, sign * coef * vt);
        }
      }
    }
  }
  return out;
}

MultiForm form_twist_operator(const MultiForm& K, const MultiForm& psi) {
  const std::size_t k = K.p();
  if (k == 0) throw Error(ErrorCode::ShapeError, "twist operator needs a form of degree >= 1");
  const std::size_t n = psi.is_zero() ? K.n() : psi.n();
  MultiForm out(n, psi.p() + k - 1, psi.q());
  if (K.is_zero() || psi.is_zero()) return out;
  if (K.q() != 1 || K.n() != psi.n()) throw Error(ErrorCode::ShapeError, "twist operator needs a (k,1)-form of the same rank");
  if (psi.p() + k - 1 > n) return out;
  // K^d_I grouped by value index d, and contraction images of X_e.
  std::vector<std::vector<std::pair<std::vector<int>, Rational>>> by_value(n);
  std::vector<std::vector<std::pair<FormKey, Rational>>> on_vector(n);
  for (const auto& [key, v] : K.coeffs()) {
    const int d = key.sym[0];
    by_value[d].emplace_back(key.wedge, v);
    for (std::size_t t = 0; t < key.wedge.size(); ++t) {
      std::vector<int> rest = key.wedge;
      const int e = rest[t];
      rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(t));
      on_vector[e].emplace_back(FormKey{std::move(rest), {d}}, (t & 1) ? Rational(-v) : v);
    }
  }
  const bool odd_op = ((k - 1) & 1) != 0;
  for (const auto& [key, v] : psi.coeffs()) {
    const auto& I = key.wedge;
    for (std::size_t i = 0; i < I.size(); ++i) {
      std::vector<int> rest = I;
      rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(i));
      const int si = (i & 1) ? -1 : 1;
      for (const auto& [J, h] : by_value[I[i]]) {
        std::vector<int> w = J;
        w.insert(w.end(), rest.begin(), rest.end());
        const int s = sort_with_sign(w);
        if (s == 0) continue;
        out.add_sorted(FormKey{std::move(w), key.sym}, -h * v * (si * s));
      }
    }
    const int sp = (odd_op && (I.size() & 1)) ? -1 : 1;
    for (std::size_t m = 0; m < key.sym.size(); ++m) {
      for (const auto& [img, h] : on_vector[key.sym[m]]) {
        std::vector<int> w = I;
        w.insert(w.end(), img.wedge.begin(), img.wedge.end());
        const int s = sort_with_sign(w);
        if (s == 0) continue;
        std::vector<int> sym = key.sym;
        sym[m] = img.sym[0];
        std::sort(sym.begin(), sym.end());
        out.add_sorted(FormKey{std::move(w), std::move(sym)}, h * v * (s * sp));
      }
    }
  }
  return out;
}

MultiForm h_tilde(const TwistedLieAlgebra& T, const MultiForm& psi) {
  if (!psi.is_zero() && psi.n() != T.n()) throw Error(ErrorCode::ShapeError, "form rank differs from algebra dimension");
  MultiForm H = T.twist_form();
  if (H.is_zero()) return MultiForm(T.n(), psi.p() + 2, psi.q());
  return form_twist_operator(H, psi);
}

MultiForm trace(const MultiForm& psi) {
  if (psi.p() < 1 || psi.q() < 1) throw Error(ErrorCode::ShapeError, "trace needs p >= 1 and q >= 1");
  MultiForm out(psi.n(), psi.p() - 1, psi.q() - 1);
  for (const auto& [key, v] : psi.coeffs()) {
    for (std::size_t i = 0; i < key.wedge.size(); ++i) {
      const int a = key.wedge[i];
      const auto count = std::count(key.sym.begin(), key.sym.end(), a);
      if (count == 0) continue;
      std::vector<int> w = key.wedge;
      w.erase(w.begin() + static_cast<std::ptrdiff_t>(i));
      std::vector<int> s = key.sym;
      s.erase(std::find(s.begin(), s.end(), a));
      out.add_sorted(FormKey{std::move(w), std::move(s)}, v * static_cast<long>(count) * ((i & 1) ? -1 : 1));
    }
  }
  return out;
}

TwistedLieAlgebra add_bracket(const TwistedLieAlgebra& L, const MultiForm& B) {
  const std::size_t n = L.n();
  if (!B.is_zero() && (B.n() != n || B.p() != 2 || B.q() != 1)) {
    throw Error(ErrorCode::ShapeError, "bracket shift must be a (2,1)-form of rank " + std::to_string(n));
  }
  TwistedLieAlgebra out = L;
  for (const auto& [key, v] : B.coeffs()) {
    const auto a = static_cast<std::size_t>(key.wedge[0]);
    const auto b = static_cast<std::size_t>(key.wedge[1]);
    const auto c = static_cast<std::size_t>(key.sym[0]);
    out.set_bracket(a, b, c, L.C(c, a, b) + v);
  }
  return out;
}

namespace {

void require_lie(const TwistedLieAlgebra& L) {
  L.validate_shape();
  if (L.has_twist()) throw Error(ErrorCode::JacobiFail, "input algebra carries a twist");
  if (!jacobiator_form(L).is_zero()) throw Error(ErrorCode::JacobiFail, "input bracket violates the Jacobi identity");
}

}  // namespace

TwistedLieAlgebra from_rank3_twist(const TwistedLieAlgebra& L, const MultiForm& B) {
  if (L.n() != 3) throw Error(ErrorCode::DimError, "rank-3 construction needs n = 3, got " + std::to_string(L.n()));
  require_lie(L);
  TwistedLieAlgebra out = add_bracket(L, B);
  const MultiForm J = jacobiator_form(out);
  for (const auto& [key, v] : J.coeffs()) {
    out.set_twist(key.wedge[0], key.wedge[1], key.wedge[2], key.sym[0], v);
  }
  return out;
}

TwistResidual twist_residual(const TwistedLieAlgebra& L, const MultiForm& B) {
  require_lie(L);
  const std::size_t n = L.n();
  TwistResidual r;
  if (B.is_zero()) {
    r.H = MultiForm(n, 3, 1);
    r.residual = MultiForm(n, 4, 1);
    r.jacobi_defect = MultiForm(n, 3, 1);
    return r;
  }
  if (B.n() != n || B.p() != 2 || B.q() != 1) throw Error(ErrorCode::ShapeError, "B must be a (2,1)-form");
  r.H = exterior_derivative(L, B);
  const TwistedLieAlgebra Bonly = add_bracket(TwistedLieAlgebra(n), B);
  r.residual = n >= 4 ? exterior_derivative(Bonly, r.H) : MultiForm(n, 4, 1);
  r.jacobi_defect = jacobiator_form(add_bracket(L, B)) - r.H;
  return r;
}

namespace algebras {

TwistedLieAlgebra su2() {
  TwistedLieAlgebra T(3);
  T.set_bracket(0, 1, 2, 1);
  T.set_bracket(1, 2, 0, 1);
  T.set_bracket(2, 0, 1, 1);
  return T;
}

TwistedLieAlgebra sl2() {
  // basis h, e, f
  TwistedLieAlgebra T(3);
  T.set_bracket(0, 1, 1, 2);
  T.set_bracket(0, 2, 2, -2);
  T.set_bracket(1, 2, 0, 1);
  return T;
}

TwistedLieAlgebra heisenberg() {
  TwistedLieAlgebra T(3);
  T.set_bracket(0, 1, 2, 1);
  return T;
}

TwistedLieAlgebra abelian(std::size_t n) { return TwistedLieAlgebra(n); }

}  // namespace algebras

}  // namespace htwist
