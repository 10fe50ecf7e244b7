#include "htwist/naivecohom.hpp"

#include <functional>

#include "htwist/errors.hpp"

namespace htwist {

using exactla::RMatrix;
using exactla::Vector;

std::optional<Vector> CochainBasis::coordinates(const MultiForm& f) const {
  const Vector full = slice.coordinates(f);
  Vector coords(dim());
  for (std::size_t k = 0; k < dim(); ++k) coords[k] = full[kernel.free_columns[k]];
  Vector check(full.size());
  for (std::size_t k = 0; k < dim(); ++k) {
    if (coords[k] == 0) continue;
    const Vector& v = kernel.vectors[k];
    for (std::size_t i = 0; i < v.size(); ++i) check[i] += coords[k] * v[i];
  }
  if (check != full) return std::nullopt;
  return coords;
}

MultiForm CochainBasis::form(const Vector& coords) const {
  Vector full(slice.size());
  for (std::size_t k = 0; k < dim(); ++k) {
    for (std::size_t i = 0; i < full.size(); ++i) full[i] += coords.at(k) * kernel.vectors[k][i];
  }
  return slice.form(full);
}

CochainBasis cochain_basis(const TwistedLieAlgebra& T, std::size_t p, std::size_t q) {
  const std::size_t n = T.n();
  CochainBasis cb{p, q, SliceBasis(n, p, q), {}, {}};
  if (p + 2 > n || !T.has_twist()) {
    for (std::size_t i = 0; i < cb.slice.size(); ++i) {
      Vector e(cb.slice.size());
      e[i] = 1;
      cb.kernel.vectors.push_back(std::move(e));
      cb.kernel.free_columns.push_back(i);
    }
  } else {
    const SliceBasis target(n, p + 2, q);
    RMatrix m(target.size(), cb.slice.size());
    for (std::size_t j = 0; j < cb.slice.size(); ++j) {
      const MultiForm img = h_tilde(T, cb.slice.element(j));
      for (const auto& [key, v] : img.coeffs()) m.set(target.index(key), j, v);
    }
    cb.kernel = exactla::kernel(m);
  }
  for (const auto& v : cb.kernel.vectors) cb.vectors.push_back(cb.slice.form(v));
  return cb;
}

namespace {

RMatrix map_between(const CochainBasis& from, const CochainBasis& to, parallel::Exec exec,
                    const std::function<MultiForm(const MultiForm&)>& op, const char* what) {
  std::vector<Vector> columns(from.dim());
  parallel::run_for(exec, from.dim(), [&](std::size_t j) {
    const MultiForm img = op(from.vectors[j]);
    auto coords = to.coordinates(img);
    if (!coords) {
      throw Error(ErrorCode::ImageEscapesCochains, std::string(what) + " of cochain " + std::to_string(j) + " in C^{" +
                                                       std::to_string(from.p) + "," + std::to_string(from.q) +
                                                       "} leaves C^{" + std::to_string(to.p) + "," +
                                                       std::to_string(to.q) + "}");
    }
    columns[j] = std::move(*coords);
  });
  return RMatrix::from_columns(columns, to.dim());
}

}  // namespace

RMatrix naive_d_matrix(const TwistedLieAlgebra& T, std::size_t p, std::size_t q, parallel::Exec exec) {
  const CochainBasis from = cochain_basis(T, p, q);
  if (p + 1 > T.n()) return RMatrix(0, from.dim());
  const CochainBasis to = cochain_basis(T, p + 1, q);
  return map_between(from, to, exec, [&](const MultiForm& f) { return exterior_derivative(T, f); }, "D");
}

RMatrix delta_matrix(const TwistedLieAlgebra& T, std::size_t p, std::size_t q) {
  if (p < 1 || q < 1) throw Error(ErrorCode::ShapeError, "delta needs p >= 1 and q >= 1");
  const CochainBasis from = cochain_basis(T, p, q);
  const CochainBasis to = cochain_basis(T, p - 1, q - 1);
  if (p >= 2 && q >= 2) {
    for (const auto& v : from.vectors) {
      if (!trace(trace(v)).is_zero()) throw Error(ErrorCode::CompositionNonzero, "tr^2 != 0");
    }
  }
  return map_between(from, to, parallel::Exec::Serial, [](const MultiForm& f) { return trace(f); }, "tr");
}

namespace {

std::vector<MultiForm> representatives(const CochainBasis& cb, const RMatrix& d_in, const RMatrix& d_out) {
  const auto cycles = exactla::kernel_basis(d_out);
  std::vector<Vector> cols;
  for (std::size_t j = 0; j < d_in.cols(); ++j) cols.push_back(d_in.column(j));
  const std::size_t boundaries = cols.size();
  cols.insert(cols.end(), cycles.begin(), cycles.end());
  std::vector<MultiForm> out;
  if (cols.empty()) return out;
  const auto e = exactla::echelon(RMatrix::from_columns(cols, cb.dim()));
  for (const auto pivot : e.pivots) {
    if (pivot >= boundaries) out.push_back(cb.form(cols[pivot]));
  }
  return out;
}

}  // namespace

NaiveTable naive_cohomology_table(const TwistedLieAlgebra& T, std::size_t pmax, std::size_t qmax,
                                  parallel::Exec exec) {
  NaiveTable table{pmax, qmax, {}, {}};
  for (std::size_t q = 0; q <= qmax; ++q) {
    std::vector<CochainBasis> cbs;
    for (std::size_t p = 0; p <= pmax + 1; ++p) cbs.push_back(cochain_basis(T, p, q));
    std::vector<RMatrix> d(pmax + 1);
    parallel::run_for(exec, pmax + 1, [&](std::size_t p) {
      if (p + 1 > T.n()) {
        d[p] = RMatrix(cbs[p + 1].dim(), cbs[p].dim());
      } else {
        d[p] = map_between(cbs[p], cbs[p + 1], parallel::Exec::Serial,
                           [&](const MultiForm& f) { return exterior_derivative(T, f); }, "D");
      }
    });
    std::vector<std::size_t> row;
    std::vector<std::vector<MultiForm>> reps;
    for (std::size_t p = 0; p <= pmax; ++p) {
      const RMatrix d_in = p == 0 ? RMatrix(cbs[0].dim(), 0) : d[p - 1];
      row.push_back(exactla::cohomology_dim(d_in, d[p]));
      reps.push_back(representatives(cbs[p], d_in, d[p]));
    }
    table.dims.push_back(std::move(row));
    table.representatives.push_back(std::move(reps));
  }
  return table;
}

}  // namespace htwist
