#include "htwist/regq.hpp"

#include <map>

#include "htwist/errors.hpp"

namespace htwist::regq {

using exactla::RMatrix;
using exactla::Vector;
using gradedpoly::GPoly;
using gradedpoly::Monomial;

gradedpoly::AlgebraPtr regular_algebra(std::size_t n) {
  std::vector<std::pair<std::string, int>> gens;
  for (std::size_t a = 0; a < n; ++a) gens.emplace_back("xi" + std::to_string(a + 1), 1);
  for (std::size_t a = 0; a < n; ++a) gens.emplace_back("b" + std::to_string(a + 1), 2);
  return gradedpoly::make_algebra(gens);
}

GVectorField RegularRealization::l(std::size_t a) const { return GVectorField::partial(alg, xi(a)); }

GVectorField RegularRealization::lprime(std::size_t a) const {
  return Rational(-1) * GVectorField::partial(alg, b(a));
}

GVectorField RegularRealization::l(const Vector& v) const {
  GVectorField out(alg, -1);
  for (std::size_t a = 0; a < n; ++a) {
    if (v[a] != 0) out += v[a] * l(a);
  }
  return out;
}

GVectorField RegularRealization::lprime(const Vector& v) const {
  GVectorField out(alg, -2);
  for (std::size_t a = 0; a < n; ++a) {
    if (v[a] != 0) out += v[a] * lprime(a);
  }
  return out;
}

GVectorField regular_q(const TwistedLieAlgebra& T, const gradedpoly::AlgebraPtr& alg) {
  const std::size_t n = T.n();
  auto g = [&](std::size_t i) { return GPoly::generator(alg, i); };
  GVectorField Q(alg, 1);
  for (std::size_t c = 0; c < n; ++c) {
    GPoly qx = g(n + c);
    GPoly qb(alg);
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = a + 1; b < n; ++b) {
        // -1/2 C^c_ab xi^a xi^b summed over all a, b
        if (T.C(c, a, b) != 0) qx -= T.C(c, a, b) * gradedpoly::multiply(g(a), g(b));
      }
      for (std::size_t B = 0; B < n; ++B) {
        if (T.C(c, a, B) != 0) qb -= T.C(c, a, B) * gradedpoly::multiply(g(a), g(n + B));
      }
      for (std::size_t b = a + 1; b < n; ++b) {
        for (std::size_t d = b + 1; d < n; ++d) {
          if (T.H(c, a, b, d) != 0) qb += T.H(c, a, b, d) * gradedpoly::multiply(gradedpoly::multiply(g(a), g(b)), g(d));
        }
      }
    }
    Q.set_image(c, std::move(qx));
    Q.set_image(n + c, std::move(qb));
  }
  return Q;
}

RegularRealization build_regular_q(const TwistedLieAlgebra& T) {
  if (!check_axioms(T).valid()) throw Error(ErrorCode::InvalidAlgebra, "twisted algebra fails its axioms");
  RegularRealization R{T.n(), regular_algebra(T.n()), {}};
  R.Q = regular_q(T, R.alg);
  if (!gradedpoly::vf_commutator(R.Q, R.Q).is_zero()) {
    throw Error(ErrorCode::NilpotenceFail, "[Q,Q] != 0 for a valid algebra");
  }
  return R;
}

GVectorField triple_commutator(const RegularRealization& R, std::size_t a, std::size_t b, std::size_t c) {
  using gradedpoly::vf_commutator;
  return vf_commutator(vf_commutator(vf_commutator(R.Q, R.l(a)), R.l(b)), R.l(c));
}

IdentityReport derived_identity_check(const RegularRealization& R, const TwistedLieAlgebra& T) {
  using gradedpoly::vf_commutator;
  const std::size_t n = R.n;
  if (T.n() != n) throw Error(ErrorCode::DimError, "realization and algebra differ in rank");
  IdentityReport r;
  for (std::size_t a = 0; a < n; ++a) {
    const GVectorField lq = vf_commutator(R.l(a), R.Q);
    const GVectorField ql = vf_commutator(R.Q, R.l(a));
    for (std::size_t b = 0; b < n; ++b) {
      GVectorField lhs = R.l(T.bracket(a, b));
      GVectorField rhs = vf_commutator(lq, R.l(b));
      // pr: keep the d/dxi part
      GVectorField pr(R.alg, -1);
      for (std::size_t c = 0; c < n; ++c) pr.set_image(R.xi(c), rhs.image(R.xi(c)));
      if (!(lhs == pr)) ++r.bracket_failures;
      if (!(R.lprime(T.bracket(a, b)) == vf_commutator(ql, R.lprime(b)))) ++r.connection_failures;
      const GVectorField qlb = vf_commutator(ql, R.l(b));
      for (std::size_t c = 0; c < n; ++c) {
        const Vector h = T.twist(basis_vector(n, a), basis_vector(n, b), basis_vector(n, c));
        if (!(R.lprime(h) == vf_commutator(qlb, R.l(c)))) ++r.twist_failures;
      }
    }
  }
  return r;
}

FieldBasis vector_field_basis(const RegularRealization& R, int k) {
  FieldBasis out;
  for (int part = 0; part < 2; ++part) {
    const int coeff_degree = k + 1 + part;
    if (coeff_degree < 0) continue;
    const auto monos = gradedpoly::degree_monomials(*R.alg, coeff_degree);
    for (std::size_t c = 0; c < R.n; ++c) {
      for (const auto& m : monos) {
        GVectorField v(R.alg, k);
        v.set_image(part == 0 ? R.xi(c) : R.b(c), GPoly::monomial(R.alg, m));
        out.fields.push_back(std::move(v));
      }
    }
  }
  return out;
}

namespace {

struct SliceIndex {
  std::map<std::pair<std::size_t, Monomial>, std::size_t> index;  // (generator, monomial) -> row
  std::size_t size = 0;
};

SliceIndex slice_index(const RegularRealization& R, int k) {
  SliceIndex s;
  for (int part = 0; part < 2; ++part) {
    const int coeff_degree = k + 1 + part;
    if (coeff_degree < 0) continue;
    const auto monos = gradedpoly::degree_monomials(*R.alg, coeff_degree);
    for (std::size_t c = 0; c < R.n; ++c) {
      const std::size_t gen = part == 0 ? R.xi(c) : R.b(c);
      for (const auto& m : monos) s.index.emplace(std::make_pair(gen, m), s.size++);
    }
  }
  return s;
}

Vector coordinates(const SliceIndex& s, const GVectorField& v) {
  Vector out(s.size);
  for (std::size_t g = 0; g < v.images().size(); ++g) {
    for (const auto& [m, c] : v.image(g).terms()) out[s.index.at({g, m})] = c;
  }
  return out;
}

}  // namespace

Vector field_coordinates(const RegularRealization& R, int k, const GVectorField& v) {
  return coordinates(slice_index(R, k), v);
}

RegularTable regular_cohomology(const TwistedLieAlgebra& T, int kmin, int kmax, parallel::Exec exec) {
  if (kmin < -2 || kmin > kmax) throw Error(ErrorCode::InvalidInput, "degree range must satisfy -2 <= kmin <= kmax");
  const RegularRealization R = build_regular_q(T);
  RegularTable t;
  t.kmin = kmin;
  t.kmax = kmax;
  // d_k : X_k -> X_{k+1} for k = kmin-1 .. kmax
  std::map<int, RMatrix> d;
  for (int k = kmin - 1; k <= kmax; ++k) {
    const FieldBasis src = vector_field_basis(R, k);
    const SliceIndex dst = slice_index(R, k + 1);
    std::vector<Vector> cols(src.fields.size());
    parallel::run_for(exec, cols.size(), [&](std::size_t j) {
      cols[j] = coordinates(dst, gradedpoly::vf_commutator(R.Q, src.fields[j]));
    });
    d.emplace(k, RMatrix::from_columns(cols, dst.size));
  }
  for (int k = kmin; k <= kmax; ++k) {
    t.slice_dims.push_back(d.at(k).cols());
    t.dims.push_back(exactla::cohomology_dim(d.at(k - 1), d.at(k)));
    if (!(d.at(k) * d.at(k - 1)).is_zero()) t.d_squared_zero = false;
  }
  return t;
}

}  // namespace htwist::regq
