#include "htwist/gradedpoly.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

#include "htwist/errors.hpp"

namespace htwist::gradedpoly {

GradedAlgebra::GradedAlgebra(const std::vector<std::pair<std::string, int>>& generators) {
  for (const auto& [name, degree] : generators) {
    if (degree < 0) throw Error(ErrorCode::InvalidInput, "negative generator degree for " + name);
    if (!by_name_.emplace(name, gens_.size()).second) {
      throw Error(ErrorCode::InvalidInput, "duplicate generator " + name);
    }
    gens_.push_back({name, degree, gens_.size()});
  }
}

std::optional<std::size_t> GradedAlgebra::find(const std::string& name) const {
  const auto it = by_name_.find(name);
  if (it == by_name_.end()) return std::nullopt;
  return it->second;
}

std::size_t GradedAlgebra::index_of(const std::string& name) const {
  const auto i = find(name);
  if (!i) throw Error(ErrorCode::InvalidInput, "unknown generator " + name);
  return *i;
}

bool GradedAlgebra::has_degree_zero() const noexcept {
  return std::any_of(gens_.begin(), gens_.end(), [](const GeneratorSpec& g) { return g.degree == 0; });
}

AlgebraPtr make_algebra(const std::vector<std::pair<std::string, int>>& generators) {
  return std::make_shared<const GradedAlgebra>(generators);
}

int monomial_degree(const GradedAlgebra& alg, const Monomial& m) {
  int d = 0;
  for (std::size_t i = 0; i < m.size(); ++i) d += m[i] * alg.generator(i).degree;
  return d;
}

bool monomial_odd(const GradedAlgebra& alg, const Monomial& m) { return (monomial_degree(alg, m) & 1) != 0; }

// The one place Koszul signs are counted: moving each odd factor of b left
// past the odd factors of a with larger index.
std::pair<int, Monomial> monomial_product(const GradedAlgebra& alg, const Monomial& a, const Monomial& b) {
  Monomial out(a.size());
  int odd_seen = 0;
  int swaps = 0;
  for (std::size_t i = a.size(); i-- > 0;) {
    const bool odd = alg.generator(i).odd();
    if (odd && a[i] != 0 && b[i] != 0) return {0, {}};
    if (odd && b[i] != 0) swaps += odd_seen;
    if (odd && a[i] != 0) ++odd_seen;
    out[i] = a[i] + b[i];
  }
  return {(swaps & 1) ? -1 : 1, std::move(out)};
}

GPoly GPoly::constant(AlgebraPtr alg, const Rational& c) {
  GPoly p(alg);
  p.add_term(Monomial(alg->size(), 0), c);
  return p;
}

GPoly GPoly::generator(AlgebraPtr alg, std::size_t i, const Rational& c) {
  Monomial m(alg->size(), 0);
  m.at(i) = 1;
  return monomial(std::move(alg), std::move(m), c);
}

GPoly GPoly::monomial(AlgebraPtr alg, Monomial m, const Rational& c) {
  if (m.size() != alg->size()) throw Error(ErrorCode::DimensionMismatch, "monomial length");
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (m[i] < 0) throw Error(ErrorCode::InvalidInput, "negative exponent");
    if (alg->generator(i).odd() && m[i] > 1) return GPoly(std::move(alg));
  }
  GPoly p(std::move(alg));
  p.add_term(m, c);
  return p;
}

Rational GPoly::coefficient(const Monomial& m) const {
  const auto it = terms_.find(m);
  return it == terms_.end() ? Rational(0) : it->second;
}

std::optional<int> GPoly::homogeneous_degree() const {
  std::optional<int> deg;
  for (const auto& [m, c] : terms_) {
    const int d = monomial_degree(*alg_, m);
    if (deg && *deg != d) return std::nullopt;
    deg = d;
  }
  return deg;
}

void GPoly::add_term(const Monomial& m, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.emplace(m, c);
  if (inserted) return;
  it->second += c;
  if (it->second == 0) terms_.erase(it);
}

// Distinct objects with the same generator list count as the same algebra.
void require_same(const AlgebraPtr& a, const AlgebraPtr& b) {
  if (a == b) return;
  bool same = a && b && a->size() == b->size();
  for (std::size_t i = 0; same && i < a->size(); ++i) {
    same = a->generator(i).name == b->generator(i).name && a->generator(i).degree == b->generator(i).degree;
  }
  if (!same) throw Error(ErrorCode::AlgebraMismatch, "operands live on different algebras");
}

GPoly& GPoly::operator+=(const GPoly& other) {
  if (!alg_) alg_ = other.alg_;
  if (other.alg_) require_same(alg_, other.alg_);
  for (const auto& [m, c] : other.terms_) add_term(m, c);
  return *this;
}

GPoly& GPoly::operator-=(const GPoly& other) {
  if (!alg_) alg_ = other.alg_;
  if (other.alg_) require_same(alg_, other.alg_);
  for (const auto& [m, c] : other.terms_) add_term(m, -c);
  return *this;
}

GPoly& GPoly::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, v] : terms_) v *= c;
  return *this;
}

std::string GPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    Rational coef = c;
    if (!first) {
      os << (coef < 0 ? " - " : " + ");
      if (coef < 0) coef = -coef;
    }
    first = false;
    bool any = false;
    for (std::size_t i = 0; i < m.size(); ++i) any = any || m[i] != 0;
    if (!any || (coef != 1 && coef != -1)) {
      os << coef.get_str();
      if (any) os << '*';
    } else if (coef == -1) {
      os << '-';
    }
    bool sep = false;
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (m[i] == 0) continue;
      if (sep) os << '*';
      os << alg_->generator(i).name;
      if (m[i] > 1) os << '^' << m[i];
      sep = true;
    }
  }
  return os.str();
}

GPoly multiply(const GPoly& f, const GPoly& g) {
  require_same(f.algebra(), g.algebra());
  GPoly out(f.algebra());
  for (const auto& [a, ca] : f.terms()) {
    for (const auto& [b, cb] : g.terms()) {
      auto [sign, m] = monomial_product(*f.algebra(), a, b);
      if (sign != 0) out.add_term(m, sign * ca * cb);
    }
  }
  return out;
}

GVectorField::GVectorField(AlgebraPtr alg, int degree) : alg_(std::move(alg)), degree_(degree) {
  images_.assign(alg_->size(), GPoly(alg_));
}

GVectorField GVectorField::partial(AlgebraPtr alg, std::size_t i) {
  GVectorField v(alg, -alg->generator(i).degree);
  v.set_image(i, GPoly::constant(alg, 1));
  return v;
}

void GVectorField::set_image(std::size_t i, GPoly value) {
  require_same(alg_, value.algebra());
  const int want = alg_->generator(i).degree + degree_;
  for (const auto& [m, c] : value.terms()) {
    if (monomial_degree(*alg_, m) != want) {
      throw Error(ErrorCode::NonHomogeneous, "image of " + alg_->generator(i).name + " has degree " +
                                                 std::to_string(monomial_degree(*alg_, m)) + ", expected " +
                                                 std::to_string(want));
    }
  }
  images_.at(i) = std::move(value);
}

bool GVectorField::is_zero() const {
  return std::all_of(images_.begin(), images_.end(), [](const GPoly& p) { return p.is_zero(); });
}

GVectorField& GVectorField::operator+=(const GVectorField& other) {
  require_same(alg_, other.alg_);
  if (other.is_zero()) return *this;
  if (is_zero()) degree_ = other.degree_;
  if (degree_ != other.degree_) throw Error(ErrorCode::NonHomogeneous, "sum of fields of different degree");
  for (std::size_t i = 0; i < images_.size(); ++i) images_[i] += other.images_[i];
  return *this;
}

GVectorField& GVectorField::operator*=(const Rational& c) {
  for (auto& p : images_) p *= c;
  return *this;
}

bool operator==(const GVectorField& a, const GVectorField& b) {
  if (a.alg_ != b.alg_) return false;
  if (a.is_zero() && b.is_zero()) return true;
  return a.degree_ == b.degree_ && a.images_ == b.images_;
}

std::string GVectorField::to_string() const {
  std::ostringstream os;
  bool any = false;
  for (std::size_t i = 0; i < images_.size(); ++i) {
    if (images_[i].is_zero()) continue;
    if (any) os << " + ";
    os << '(' << images_[i].to_string() << ")*d/d" << alg_->generator(i).name;
    any = true;
  }
  if (!any) os << '0';
  return os.str();
}

GPoly apply(const GVectorField& v, const GPoly& f) {
  require_same(v.algebra(), f.algebra());
  const auto& alg = *f.algebra();
  GPoly out(f.algebra());
  for (const auto& [m, c] : f.terms()) {
    int prefix_odd = 0;
    for (std::size_t k = 0; k < m.size(); ++k) {
      if (m[k] == 0) continue;
      const GPoly& image = v.image(k);
      const bool gen_odd = alg.generator(k).odd();
      if (!image.is_zero()) {
        Monomial prefix(m.size(), 0);
        Monomial suffix(m.size(), 0);
        for (std::size_t i = 0; i < k; ++i) prefix[i] = m[i];
        prefix[k] = m[k] - 1;
        for (std::size_t i = k + 1; i < m.size(); ++i) suffix[i] = m[i];
        const int sign = (v.odd() && (prefix_odd & 1)) ? -1 : 1;
        const Rational scale = c * m[k] * sign;
        for (const auto& [t, d] : image.terms()) {
          auto [s1, left] = monomial_product(alg, prefix, t);
          if (s1 == 0) continue;
          auto [s2, full] = monomial_product(alg, left, suffix);
          if (s2 == 0) continue;
          out.add_term(full, scale * d * (s1 * s2));
        }
      }
      if (gen_odd) prefix_odd += m[k];
    }
  }
  return out;
}

GVectorField vf_commutator(const GVectorField& v, const GVectorField& w) {
  require_same(v.algebra(), w.algebra());
  GVectorField out(v.algebra(), v.degree() + w.degree());
  const bool both_odd = v.odd() && w.odd();
  for (std::size_t i = 0; i < v.algebra()->size(); ++i) {
    GPoly img = apply(v, w.image(i));
    GPoly back = apply(w, v.image(i));
    if (both_odd) {
      img += back;
    } else {
      img -= back;
    }
    out.set_image(i, std::move(img));
  }
  return out;
}

PoissonSpec::PoissonSpec(AlgebraPtr alg, int bracket_degree) : alg_(std::move(alg)), degree_(bracket_degree) {
  if (bracket_degree >= 0) throw Error(ErrorCode::InvalidInput, "bracket degree must be negative");
}

void PoissonSpec::set_pairing(std::size_t i, std::size_t j, const Rational& value) {
  const int di = alg_->generator(i).degree;
  const int dj = alg_->generator(j).degree;
  if (value != 0 && di + dj + degree_ != 0) {
    throw Error(ErrorCode::InvalidInput, "pairing {" + alg_->generator(i).name + "," + alg_->generator(j).name +
                                             "} violates the degree condition");
  }
  const bool odd = (((di + degree_) & 1) != 0) && (((dj + degree_) & 1) != 0);
  const Rational partner = odd ? value : Rational(-value);
  if (i == j && value != 0 && partner != value) {
    throw Error(ErrorCode::InvalidInput, "self pairing of " + alg_->generator(i).name + " must vanish");
  }
  auto put = [&](std::size_t a, std::size_t b, const Rational& x) {
    if (x == 0) {
      table_.erase({a, b});
    } else {
      table_[{a, b}] = x;
    }
  };
  put(i, j, value);
  put(j, i, partner);
}

Rational PoissonSpec::pairing(std::size_t i, std::size_t j) const {
  const auto it = table_.find({i, j});
  return it == table_.end() ? Rational(0) : it->second;
}

GPoly poisson_bracket(const GPoly& f, const GPoly& g, const PoissonSpec& p) {
  require_same(f.algebra(), g.algebra());
  require_same(f.algebra(), p.algebra());
  const auto& alg = *f.algebra();
  const int d = p.bracket_degree();
  const std::size_t n = alg.size();
  GPoly out(f.algebra());
  auto parity = [](int x) { return (x % 2 + 2) % 2; };
  for (const auto& [u, cu] : f.terms()) {
    for (const auto& [v, cv] : g.terms()) {
      const int deg_v = monomial_degree(alg, v);
      for (std::size_t i = 0; i < n; ++i) {
        if (u[i] == 0) continue;
        Monomial a(n, 0);
        Monomial c(n, 0);
        for (std::size_t k = 0; k < i; ++k) a[k] = u[k];
        a[i] = u[i] - 1;
        for (std::size_t k = i + 1; k < n; ++k) c[k] = u[k];
        const int deg_ui = alg.generator(i).degree;
        const int deg_c = monomial_degree(alg, c);
        for (std::size_t j = 0; j < n; ++j) {
          if (v[j] == 0) continue;
          const Rational pij = p.pairing(i, j);
          if (pij == 0) continue;
          Monomial pre(n, 0);
          Monomial post(n, 0);
          for (std::size_t k = 0; k < j; ++k) pre[k] = v[k];
          pre[j] = v[j] - 1;
          for (std::size_t k = j + 1; k < n; ++k) post[k] = v[k];
          const int deg_pre = monomial_degree(alg, pre);
          const int exponent = parity(deg_c) * parity(deg_v + d) + parity(deg_ui + d) * parity(deg_pre);
          auto [s1, m1] = monomial_product(alg, a, pre);
          if (s1 == 0) continue;
          auto [s2, m2] = monomial_product(alg, m1, post);
          if (s2 == 0) continue;
          auto [s3, m3] = monomial_product(alg, m2, c);
          if (s3 == 0) continue;
          const int sign = ((exponent & 1) ? -1 : 1) * s1 * s2 * s3;
          out.add_term(m3, cu * cv * pij * u[i] * v[j] * sign);
        }
      }
    }
  }
  return out;
}

GVectorField hamiltonian_vf(const GPoly& f, const PoissonSpec& p) {
  require_same(f.algebra(), p.algebra());
  if (f.is_zero()) return GVectorField(f.algebra(), p.bracket_degree());
  const auto deg = f.homogeneous_degree();
  if (!deg) throw Error(ErrorCode::NonHomogeneous, "hamiltonian of a non-homogeneous function");
  GVectorField v(f.algebra(), *deg + p.bracket_degree());
  for (std::size_t i = 0; i < f.algebra()->size(); ++i) {
    v.set_image(i, poisson_bracket(f, GPoly::generator(f.algebra(), i), p));
  }
  return v;
}

std::vector<Monomial> degree_monomials(const GradedAlgebra& alg, int k, std::optional<int> zero_degree_cap) {
  if (alg.has_degree_zero() && !zero_degree_cap) {
    throw Error(ErrorCode::InfiniteSlice, "degree-0 generators present; an exponent cap is required");
  }
  std::vector<Monomial> out;
  if (k < 0) return out;
  const std::size_t n = alg.size();
  Monomial cur(n, 0);
  std::function<void(std::size_t, int, int)> rec = [&](std::size_t i, int left, int zero_used) {
    if (i == n) {
      if (left == 0) out.push_back(cur);
      return;
    }
    const auto& g = alg.generator(i);
    int max_e = 0;
    if (g.degree == 0) {
      max_e = *zero_degree_cap - zero_used;
    } else {
      max_e = left / g.degree;
    }
    if (g.odd()) max_e = std::min(max_e, 1);
    for (int e = 0; e <= max_e; ++e) {
      cur[i] = e;
      rec(i + 1, left - e * g.degree, zero_used + (g.degree == 0 ? e : 0));
    }
    cur[i] = 0;
  };
  rec(0, k, 0);
  std::sort(out.begin(), out.end(), std::greater<>());
  return out;
}

}  // namespace htwist::gradedpoly
