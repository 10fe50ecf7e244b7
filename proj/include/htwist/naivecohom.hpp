#pragma once

// Naive cochains C^{p,q} = ker H~, the differential d_E = D on them, the trace
// operator delta, and cohomology tables at fixed q.

#include <optional>
#include <vector>

#include "htwist/exactla.hpp"
#include "htwist/multiform.hpp"
#include "htwist/parallel.hpp"
#include "htwist/twistcore.hpp"

namespace htwist {

struct CochainBasis {
  std::size_t p = 0;
  std::size_t q = 0;
  SliceBasis slice;
  exactla::Kernel kernel;  // coordinates in the slice basis
  std::vector<MultiForm> vectors;

  [[nodiscard]] std::size_t dim() const noexcept { return vectors.size(); }
  /// Coordinates in this basis, or nullopt if f is not a cochain.
  [[nodiscard]] std::optional<exactla::Vector> coordinates(const MultiForm& f) const;
  [[nodiscard]] MultiForm form(const exactla::Vector& coords) const;
};

CochainBasis cochain_basis(const TwistedLieAlgebra& T, std::size_t p, std::size_t q);

/// Matrix of D from C^{p,q} to C^{p+1,q}; throws ImageEscapesCochains if D leaves the cochains.
exactla::RMatrix naive_d_matrix(const TwistedLieAlgebra& T, std::size_t p, std::size_t q,
                                 parallel::Exec exec = parallel::Exec::Parallel);

/// Matrix of tr from C^{p,q} to C^{p-1,q-1}; ShapeError unless p, q >= 1.
exactla::RMatrix delta_matrix(const TwistedLieAlgebra& T, std::size_t p, std::size_t q);

struct NaiveTable {
  std::size_t pmax = 0;
  std::size_t qmax = 0;
  std::vector<std::vector<std::size_t>> dims;                         // dims[q][p]
  std::vector<std::vector<std::vector<MultiForm>>> representatives;  // [q][p]
};

NaiveTable naive_cohomology_table(const TwistedLieAlgebra& T, std::size_t pmax, std::size_t qmax,
                                  parallel::Exec exec = parallel::Exec::Parallel);

}  // namespace htwist
