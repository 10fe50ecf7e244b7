#include "htwist/l2alg.hpp"

#include <algorithm>
#include <array>

#include "htwist/errors.hpp"
#include "htwist/instances.hpp"

namespace htwist {

using exactla::RMatrix;
using exactla::Vector;

namespace {

void axpy(Vector& y, const Rational& s, const Vector& x) {
  if (s == 0) return;
  for (std::size_t i = 0; i < y.size(); ++i) y[i] += s * x[i];
}

void track_max(Rational& m, const Vector& v) {
  for (const auto& x : v) m = std::max(m, Rational(abs(x)));
}

Vector unit(std::size_t n, std::size_t i) { return basis_vector(n, i); }

Vector phi2_apply(const L2Morphism& m, const Vector& x, const Vector& y) {
  const std::size_t n1 = m.source_dim();
  Vector out(m.target_dim());
  for (std::size_t a = 0; a < n1; ++a) {
    if (x[a] == 0) continue;
    for (std::size_t b = 0; b < n1; ++b) {
      if (y[b] == 0) continue;
      const Rational s = x[a] * y[b];
      for (std::size_t c = 0; c < out.size(); ++c) out[c] += s * m.p2(c, a, b);
    }
  }
  return out;
}

void check_dims(const L2Morphism& m, std::size_t n1, std::size_t n2) {
  if (m.phi1.cols() != n1 || m.phi1.rows() != n2 || m.phi2.size() != n2 * n1 * n1) {
    throw Error(ErrorCode::DimError, "morphism shape does not match the algebras");
  }
}

}  // namespace

L2Algebra::L2Algebra(std::size_t v1, std::size_t v0)
    : dimV1(v1), dimV0(v0), del(v0, v1), bracket_(v0 * v0 * v0), action_(v1 * v0 * v1), l3_(v1 * v0 * v0 * v0) {}

void L2Algebra::set_l3(std::size_t a, std::size_t b, std::size_t c, std::size_t f, const Rational& v) {
  std::array<std::size_t, 3> idx{a, b, c};
  static constexpr std::array<std::array<int, 3>, 6> perms{
      {{0, 1, 2}, {1, 2, 0}, {2, 0, 1}, {1, 0, 2}, {0, 2, 1}, {2, 1, 0}}};
  for (std::size_t p = 0; p < 6; ++p) {
    const auto& q = perms[p];
    l3(f, idx[q[0]], idx[q[1]], idx[q[2]]) = p < 3 ? v : Rational(-v);
  }
}

void L2Algebra::validate_shape() const {
  if (del.rows() != dimV0 || del.cols() != dimV1) throw Error(ErrorCode::ShapeError, "del has the wrong shape");
  for (std::size_t c = 0; c < dimV0; ++c) {
    for (std::size_t a = 0; a < dimV0; ++a) {
      for (std::size_t b = 0; b < dimV0; ++b) {
        if (bracket(c, a, b) != -bracket(c, b, a)) throw Error(ErrorCode::ShapeError, "bracket not skew");
      }
    }
  }
  for (std::size_t f = 0; f < dimV1; ++f) {
    for (std::size_t a = 0; a < dimV0; ++a) {
      for (std::size_t b = 0; b < dimV0; ++b) {
        for (std::size_t c = 0; c < dimV0; ++c) {
          const Rational& v = l3(f, a, b, c);
          if (v != -l3(f, b, a, c) || v != -l3(f, a, c, b)) throw Error(ErrorCode::ShapeError, "l3 not alternating");
        }
      }
    }
  }
}

Vector L2Algebra::br(const Vector& x, const Vector& y) const {
  Vector out(dimV0);
  for (std::size_t a = 0; a < dimV0; ++a) {
    if (x[a] == 0) continue;
    for (std::size_t b = 0; b < dimV0; ++b) {
      if (y[b] == 0) continue;
      const Rational s = x[a] * y[b];
      for (std::size_t c = 0; c < dimV0; ++c) out[c] += s * bracket(c, a, b);
    }
  }
  return out;
}

Vector L2Algebra::act(const Vector& x, const Vector& f) const {
  Vector out(dimV1);
  for (std::size_t a = 0; a < dimV0; ++a) {
    if (x[a] == 0) continue;
    for (std::size_t k = 0; k < dimV1; ++k) {
      if (f[k] == 0) continue;
      const Rational s = x[a] * f[k];
      for (std::size_t g = 0; g < dimV1; ++g) out[g] += s * action(g, a, k);
    }
  }
  return out;
}

Vector L2Algebra::l3v(const Vector& x, const Vector& y, const Vector& z) const {
  Vector out(dimV1);
  for (std::size_t a = 0; a < dimV0; ++a) {
    if (x[a] == 0) continue;
    for (std::size_t b = 0; b < dimV0; ++b) {
      if (y[b] == 0) continue;
      for (std::size_t c = 0; c < dimV0; ++c) {
        if (z[c] == 0) continue;
        const Rational s = x[a] * y[b] * z[c];
        for (std::size_t f = 0; f < dimV1; ++f) out[f] += s * l3(f, a, b, c);
      }
    }
  }
  return out;
}

L2Algebra from_twisted(const TwistedLieAlgebra& T) {
  if (!check_axioms(T).valid()) throw Error(ErrorCode::InvalidInput, "twisted algebra fails its axioms");
  const std::size_t n = T.n();
  L2Algebra L(n, n);
  L.del = RMatrix::identity(n);
  for (std::size_t c = 0; c < n; ++c) {
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = 0; b < n; ++b) {
        L.bracket(c, a, b) = T.C(c, a, b);
        L.action(c, a, b) = T.C(c, a, b);
        for (std::size_t d = 0; d < n; ++d) L.l3(c, a, b, d) = T.H(c, a, b, d);
      }
    }
  }
  return L;
}

L2Report check_l2_axioms(const L2Algebra& L) {
  L2Report r;
  const std::size_t n0 = L.dimV0, n1 = L.dimV1;
  std::vector<Vector> e0(n0), e1(n1), dE(n1);
  for (std::size_t i = 0; i < n0; ++i) e0[i] = unit(n0, i);
  for (std::size_t i = 0; i < n1; ++i) {
    e1[i] = unit(n1, i);
    dE[i] = L.del.column(i);
  }

  for (std::size_t a = 0; a < n0; ++a) {
    for (std::size_t f = 0; f < n1; ++f) {
      Vector v = L.br(e0[a], dE[f]);
      axpy(v, -1, L.del.apply(L.act(e0[a], e1[f])));
      track_max(r.n2, v);
    }
  }
  for (std::size_t f = 0; f < n1; ++f) {
    for (std::size_t g = f; g < n1; ++g) {
      Vector v = L.act(dE[f], e1[g]);
      axpy(v, 1, L.act(dE[g], e1[f]));
      track_max(r.n2b, v);
    }
  }
  for (std::size_t a = 0; a < n0; ++a) {
    for (std::size_t b = a + 1; b < n0; ++b) {
      for (std::size_t c = b + 1; c < n0; ++c) {
        Vector v(n0);
        axpy(v, 1, L.br(e0[a], L.br(e0[b], e0[c])));
        axpy(v, 1, L.br(e0[b], L.br(e0[c], e0[a])));
        axpy(v, 1, L.br(e0[c], L.br(e0[a], e0[b])));
        axpy(v, -1, L.del.apply(L.l3v(e0[a], e0[b], e0[c])));
        track_max(r.n3, v);
      }
    }
  }
  for (std::size_t a = 0; a < n0; ++a) {
    for (std::size_t b = a + 1; b < n0; ++b) {
      for (std::size_t f = 0; f < n1; ++f) {
        Vector v = L.act(e0[a], L.act(e0[b], e1[f]));
        axpy(v, -1, L.act(e0[b], L.act(e0[a], e1[f])));
        axpy(v, -1, L.act(L.br(e0[a], e0[b]), e1[f]));
        axpy(v, -1, L.l3v(e0[a], e0[b], dE[f]));
        track_max(r.n3b, v);
      }
    }
  }
  // sum_i (-1)^i phi_i |> l3(rest) + sum_{i<j} (-1)^{i+j} l3([phi_i, phi_j], rest)
  std::array<std::size_t, 4> t{};
  for (t[0] = 0; t[0] < n0; ++t[0]) {
    for (t[1] = t[0] + 1; t[1] < n0; ++t[1]) {
      for (t[2] = t[1] + 1; t[2] < n0; ++t[2]) {
        for (t[3] = t[2] + 1; t[3] < n0; ++t[3]) {
          Vector v(n1);
          for (std::size_t i = 0; i < 4; ++i) {
            std::array<std::size_t, 3> rest{};
            for (std::size_t k = 0, m = 0; k < 4; ++k) {
              if (k != i) rest[m++] = t[k];
            }
            axpy(v, i % 2 ? -1 : 1, L.act(e0[t[i]], L.l3v(e0[rest[0]], e0[rest[1]], e0[rest[2]])));
          }
          for (std::size_t i = 0; i < 4; ++i) {
            for (std::size_t j = i + 1; j < 4; ++j) {
              std::array<std::size_t, 2> rest{};
              for (std::size_t k = 0, m = 0; k < 4; ++k) {
                if (k != i && k != j) rest[m++] = t[k];
              }
              axpy(v, (i + j) % 2 ? -1 : 1, L.l3v(L.br(e0[t[i]], e0[t[j]]), e0[rest[0]], e0[rest[1]]));
            }
          }
          track_max(r.n4, v);
        }
      }
    }
  }
  return r;
}

bool L2Morphism::strict() const {
  return std::all_of(phi2.begin(), phi2.end(), [](const Rational& x) { return x == 0; });
}

L2Morphism identity_morphism(std::size_t n) { return strict_morphism(RMatrix::identity(n)); }

L2Morphism strict_morphism(const RMatrix& phi1) {
  L2Morphism m;
  m.phi1 = phi1;
  m.phi2.assign(phi1.rows() * phi1.cols() * phi1.cols(), Rational(0));
  return m;
}

MorphismReport check_morphism(const TwistedLieAlgebra& A, const TwistedLieAlgebra& B, const L2Morphism& m) {
  const std::size_t n1 = A.n(), n2 = B.n();
  check_dims(m, n1, n2);
  MorphismReport r;
  std::vector<Vector> e(n1), img(n1);
  for (std::size_t i = 0; i < n1; ++i) {
    e[i] = unit(n1, i);
    img[i] = m.phi1.column(i);
  }
  for (std::size_t a = 0; a < n1; ++a) {
    for (std::size_t b = a + 1; b < n1; ++b) {
      Vector v = m.phi1.apply(A.bracket(a, b));
      axpy(v, -1, B.bracket(img[a], img[b]));
      axpy(v, -1, phi2_apply(m, e[a], e[b]));
      track_max(r.rule3, v);
    }
  }
  for (std::size_t a = 0; a < n1; ++a) {
    for (std::size_t b = a + 1; b < n1; ++b) {
      for (std::size_t c = b + 1; c < n1; ++c) {
        Vector v = m.phi1.apply(A.twist(e[a], e[b], e[c]));
        axpy(v, -1, B.twist(img[a], img[b], img[c]));
        const std::array<std::array<std::size_t, 3>, 3> cyc{{{a, b, c}, {b, c, a}, {c, a, b}}};
        for (const auto& [x, y, z] : cyc) {
          axpy(v, -1, B.bracket(img[x], phi2_apply(m, e[y], e[z])));
          axpy(v, 1, phi2_apply(m, A.bracket(x, y), e[z]));
        }
        track_max(r.rule5, v);
      }
    }
  }
  return r;
}

L2Morphism compose_morphisms(const L2Morphism& outer, const L2Morphism& inner) {
  if (inner.target_dim() != outer.source_dim()) throw Error(ErrorCode::DimError, "morphisms are not composable");
  const std::size_t n1 = inner.source_dim();
  L2Morphism out;
  out.phi1 = outer.phi1 * inner.phi1;
  out.phi2.assign(out.phi1.rows() * n1 * n1, Rational(0));
  std::vector<Vector> img(n1);
  for (std::size_t i = 0; i < n1; ++i) img[i] = inner.phi1.column(i);
  for (std::size_t a = 0; a < n1; ++a) {
    for (std::size_t b = 0; b < n1; ++b) {
      Vector v = phi2_apply(outer, img[a], img[b]);
      axpy(v, 1, outer.phi1.apply(phi2_apply(inner, unit(n1, a), unit(n1, b))));
      for (std::size_t c = 0; c < v.size(); ++c) out.p2(c, a, b) = v[c];
    }
  }
  return out;
}

TwistedLieAlgebra pushforward(const TwistedLieAlgebra& A, const L2Morphism& m) {
  const std::size_t n = A.n();
  check_dims(m, n, n);
  const RMatrix inv = instances::inverse(m.phi1);
  std::vector<Vector> pre(n);
  for (std::size_t i = 0; i < n; ++i) pre[i] = inv.column(i);
  TwistedLieAlgebra out(n);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a + 1; b < n; ++b) {
      Vector v = m.phi1.apply(A.bracket(pre[a], pre[b]));
      axpy(v, -1, phi2_apply(m, pre[a], pre[b]));
      for (std::size_t c = 0; c < n; ++c) out.set_bracket(a, b, c, v[c]);
    }
  }
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a + 1; b < n; ++b) {
      for (std::size_t c = b + 1; c < n; ++c) {
        const Vector j = jacobiator(out, unit(n, a), unit(n, b), unit(n, c));
        for (std::size_t d = 0; d < n; ++d) {
          if (j[d] != 0) out.set_twist(a, b, c, d, j[d]);
        }
      }
    }
  }
  return out;
}

}  // namespace htwist
