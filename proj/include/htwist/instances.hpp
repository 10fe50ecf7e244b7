#pragma once

// Random valid instances for property tests, the acceptance run and benchmarks.

#include <random>

#include "htwist/exactla.hpp"
#include "htwist/multiform.hpp"
#include "htwist/pq3.hpp"
#include "htwist/twistcore.hpp"

namespace htwist::instances {

using Rng = std::mt19937_64;

Rational small_rational(Rng& rng, int span = 3, int max_den = 2);
MultiForm random_form(Rng& rng, std::size_t n, std::size_t p, std::size_t q, double density = 0.5);
exactla::RMatrix random_invertible(Rng& rng, std::size_t n, int span = 2);
exactla::RMatrix inverse(const exactla::RMatrix& m);

/// New basis f_i = sum_j M_{ji} e_j; structure constants transform tensorially.
TwistedLieAlgebra change_basis(const TwistedLieAlgebra& T, const exactla::RMatrix& M);

enum class Base { Su2, Sl2, Heisenberg, Abelian };
TwistedLieAlgebra base_algebra(Base b);

/// Rank-3 twist C + B over one of the base algebras, optionally in a random basis.
TwistedLieAlgebra random_rank3_twist(Rng& rng, Base b, bool basis_change = true);

/// Random skew bracket on n generators with H its Jacobiator; always a valid twisted algebra at a point.
TwistedLieAlgebra random_jacobiator_twist(Rng& rng, std::size_t n, double density = 0.4);

/// Tensorial basis change of split data: C as in change_basis, h covariant, B contravariant.
pq3::SplitData change_basis(const pq3::SplitData& S, const exactla::RMatrix& M);

/// Valid split data with H != 0 in general, n = 4 or 5: a Lie algebra g of dimension n-1
/// centrally extended by z through a random 2-form, B = s z z, h = h0 + (z-part forced by
/// the Jacobiator); optionally in a random basis.
pq3::SplitData random_split(Rng& rng, std::size_t n, bool basis_change = true);

/// One coefficient of C, h or B shifted by a nonzero amount (symmetry kept).
pq3::SplitData perturb_split(Rng& rng, const pq3::SplitData& S);

}  // namespace htwist::instances
