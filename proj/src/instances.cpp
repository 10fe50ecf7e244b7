#include "htwist/instances.hpp"

#include <algorithm>
#include <numeric>

#include "htwist/errors.hpp"

namespace htwist::instances {

using exactla::RMatrix;
using exactla::Vector;

Rational small_rational(Rng& rng, int span, int max_den) {
  std::uniform_int_distribution<int> num(-span, span);
  std::uniform_int_distribution<int> den(1, max_den);
  Rational x(num(rng), den(rng));
  x.canonicalize();
  return x;
}

MultiForm random_form(Rng& rng, std::size_t n, std::size_t p, std::size_t q, double density) {
  const SliceBasis basis(n, p, q);
  std::bernoulli_distribution keep(density);
  MultiForm f(n, p, q);
  for (std::size_t i = 0; i < basis.size(); ++i) {
    if (keep(rng)) f.add_sorted(basis.key(i), small_rational(rng));
  }
  return f;
}

RMatrix random_invertible(Rng& rng, std::size_t n, int span) {
  while (true) {
    RMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) m.set(i, j, small_rational(rng, span, 1));
    }
    if (exactla::rank(m) == n) return m;
  }
}

RMatrix inverse(const RMatrix& m) {
  const std::size_t n = m.rows();
  RMatrix inv(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    Vector e(n);
    e[j] = 1;
    auto x = exactla::solve(m, e);
    if (!x) throw Error(ErrorCode::InvalidInput, "matrix not invertible");
    inv.set_column(j, *x);
  }
  return inv;
}

TwistedLieAlgebra change_basis(const TwistedLieAlgebra& T, const RMatrix& M) {
  const std::size_t n = T.n();
  const RMatrix Minv = inverse(M);
  std::vector<Vector> f(n);
  for (std::size_t i = 0; i < n; ++i) f[i] = M.column(i);
  auto to_new = [&](const Vector& v) { return Minv.apply(v); };
  TwistedLieAlgebra out(n);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a + 1; b < n; ++b) {
      const Vector c = to_new(T.bracket(f[a], f[b]));
      for (std::size_t k = 0; k < n; ++k) out.set_bracket(a, b, k, c[k]);
      for (std::size_t c3 = b + 1; c3 < n; ++c3) {
        const Vector h = to_new(T.twist(f[a], f[b], f[c3]));
        for (std::size_t d = 0; d < n; ++d) {
          if (h[d] != 0) out.set_twist(a, b, c3, d, h[d]);
        }
      }
    }
  }
  return out;
}

TwistedLieAlgebra base_algebra(Base b) {
  switch (b) {
    case Base::Su2: return algebras::su2();
    case Base::Sl2: return algebras::sl2();
    case Base::Heisenberg: return algebras::heisenberg();
    case Base::Abelian: return algebras::abelian(3);
  }
  return algebras::abelian(3);
}

TwistedLieAlgebra random_rank3_twist(Rng& rng, Base b, bool basis_change) {
  TwistedLieAlgebra L = base_algebra(b);
  if (basis_change) L = change_basis(L, random_invertible(rng, 3));
  return from_rank3_twist(L, random_form(rng, 3, 2, 1, 0.4));
}

TwistedLieAlgebra random_jacobiator_twist(Rng& rng, std::size_t n, double density) {
  TwistedLieAlgebra T = add_bracket(TwistedLieAlgebra(n), random_form(rng, n, 2, 1, density));
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a + 1; b < n; ++b) {
      for (std::size_t c = b + 1; c < n; ++c) {
        const Vector j = jacobiator(T, basis_vector(n, a), basis_vector(n, b), basis_vector(n, c));
        for (std::size_t d = 0; d < n; ++d) {
          if (j[d] != 0) T.set_twist(a, b, c, d, j[d]);
        }
      }
    }
  }
  return T;
}

pq3::SplitData change_basis(const pq3::SplitData& S, const RMatrix& M) {
  const std::size_t n = S.n;
  const RMatrix Minv = inverse(M);
  const TwistedLieAlgebra L = change_basis(pq3::induced_twisted(S), M);
  pq3::SplitData out(n);
  for (std::size_t c = 0; c < n; ++c) {
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = 0; b < n; ++b) out.c(c, a, b) = L.C(c, a, b);
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      Rational v = 0;
      for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = 0; b < n; ++b) v += Minv.at(i, a) * Minv.at(j, b) * S.bb(a, b);
      }
      out.B[i * n + j] = v;
    }
  }
  // contract one slot at a time: h_{abcd} -> sum M_{a i} ...
  std::vector<Rational> h = S.h;
  for (int slot = 0; slot < 4; ++slot) {
    std::vector<Rational> next(h.size());
    std::size_t stride = 1;
    for (int k = 3; k > slot; --k) stride *= n;
    for (std::size_t idx = 0; idx < h.size(); ++idx) {
      const std::size_t i = (idx / stride) % n;
      const std::size_t base = idx - i * stride;
      Rational v = 0;
      for (std::size_t a = 0; a < n; ++a) {
        const Rational& x = h[base + a * stride];
        if (x != 0) v += M.at(a, i) * x;
      }
      next[idx] = v;
    }
    h = std::move(next);
  }
  out.h = std::move(h);
  return out;
}

pq3::SplitData random_split(Rng& rng, std::size_t n, bool basis_change) {
  if (n != 4 && n != 5) throw Error(ErrorCode::DimError, "random_split supports n = 4 or 5");
  const std::size_t k = n - 1;  // dim g; z = k
  std::uniform_int_distribution<int> pick(0, 3);
  TwistedLieAlgebra g = base_algebra(static_cast<Base>(pick(rng)));
  if (k == 4) {
    TwistedLieAlgebra g4(4);
    for (std::size_t a = 0; a < 3; ++a) {
      for (std::size_t b = a + 1; b < 3; ++b) {
        for (std::size_t c = 0; c < 3; ++c) g4.set_bracket(a, b, c, g.C(c, a, b));
      }
    }
    g = g4;
  }
  if (basis_change) g = change_basis(g, random_invertible(rng, k));
  TwistedLieAlgebra ext(n);
  const MultiForm omega = random_form(rng, k, 2, 0, 0.7);
  for (std::size_t a = 0; a < k; ++a) {
    for (std::size_t b = a + 1; b < k; ++b) {
      for (std::size_t c = 0; c < k; ++c) ext.set_bracket(a, b, c, g.C(c, a, b));
      ext.set_bracket(a, b, k, omega.at(FormKey{{int(a), int(b)}, {}}));
    }
  }
  Rational s = small_rational(rng);
  while (s == 0) s = small_rational(rng);
  pq3::SplitData S(n);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      for (std::size_t c = 0; c < n; ++c) S.c(c, a, b) = ext.C(c, a, b);
    }
  }
  S.set_B(k, k, s);
  if (k == 4) S.set_h(0, 1, 2, 3, small_rational(rng));
  for (std::size_t p = 0; p < k; ++p) {
    for (std::size_t q = p + 1; q < k; ++q) {
      for (std::size_t r = q + 1; r < k; ++r) {
        const Vector j = jacobiator(ext, basis_vector(n, p), basis_vector(n, q), basis_vector(n, r));
        if (j[k] != 0) S.set_h(k, p, q, r, j[k] / s);
      }
    }
  }
  return basis_change ? change_basis(S, random_invertible(rng, n)) : S;
}

pq3::SplitData perturb_split(Rng& rng, const pq3::SplitData& S) {
  const std::size_t n = S.n;
  pq3::SplitData out = S;
  std::uniform_int_distribution<std::size_t> idx(0, n - 1);
  std::uniform_int_distribution<int> kind(0, n >= 4 ? 2 : 1);
  Rational delta = small_rational(rng);
  while (delta == 0) delta = small_rational(rng);
  switch (kind(rng)) {
    case 0: {
      std::size_t a = idx(rng), b = idx(rng);
      while (b == a) b = idx(rng);
      const std::size_t c = idx(rng);
      out.set_bracket(a, b, c, S.c(c, a, b) + delta);
      break;
    }
    case 1: {
      const std::size_t a = idx(rng), b = idx(rng);
      out.set_B(a, b, S.bb(a, b) + delta);
      break;
    }
    default: {
      std::vector<std::size_t> all(n);
      std::iota(all.begin(), all.end(), 0);
      std::shuffle(all.begin(), all.end(), rng);
      out.set_h(all[0], all[1], all[2], all[3], S.hh(all[0], all[1], all[2], all[3]) + delta);
    }
  }
  return out;
}

}  // namespace htwist::instances
