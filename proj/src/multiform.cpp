#include "htwist/multiform.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

#include "htwist/errors.hpp"

namespace htwist {

int sort_with_sign(std::vector<int>& indices) {
  int sign = 1;
  for (std::size_t i = 1; i < indices.size(); ++i) {
    for (std::size_t j = i; j > 0 && indices[j - 1] >= indices[j]; --j) {
      if (indices[j - 1] == indices[j]) return 0;
      std::swap(indices[j - 1], indices[j]);
      sign = -sign;
    }
  }
  return sign;
}

MultiForm::MultiForm(std::size_t n, std::size_t p, std::size_t q) : n_(n), p_(p), q_(q) {}

Rational MultiForm::at(const FormKey& key) const {
  const auto it = coeffs_.find(key);
  return it == coeffs_.end() ? Rational(0) : it->second;
}

Rational MultiForm::max_abs() const {
  Rational m = 0;
  for (const auto& [k, v] : coeffs_) m = std::max(m, Rational(abs(v)));
  return m;
}

void MultiForm::add(std::vector<int> wedge, std::vector<int> sym, const Rational& value) {
  if (value == 0) return;
  if (wedge.size() != p_ || sym.size() != q_) {
    throw Error(ErrorCode::ShapeError, "basis element of shape (" + std::to_string(wedge.size()) + "," +
                                           std::to_string(sym.size()) + ") in a (" + std::to_string(p_) + "," +
                                           std::to_string(q_) + ")-form");
  }
  for (int i : wedge) {
    if (i < 0 || static_cast<std::size_t>(i) >= n_) throw Error(ErrorCode::ShapeError, "form index out of range");
  }
  for (int i : sym) {
    if (i < 0 || static_cast<std::size_t>(i) >= n_) throw Error(ErrorCode::ShapeError, "vector index out of range");
  }
  const int sign = sort_with_sign(wedge);
  if (sign == 0) return;
  std::sort(sym.begin(), sym.end());
  add_sorted(FormKey{std::move(wedge), std::move(sym)}, sign * value);
}

void MultiForm::add_sorted(const FormKey& key, const Rational& value) {
  if (value == 0) return;
  auto [it, inserted] = coeffs_.emplace(key, value);
  if (inserted) return;
  it->second += value;
  if (it->second == 0) coeffs_.erase(it);
}

void MultiForm::check_shape(const MultiForm& other) const {
  if (other.is_zero()) return;
  if (other.n_ != n_ || other.p_ != p_ || other.q_ != q_) {
    throw Error(ErrorCode::ShapeError, "adding forms of different shape");
  }
}

MultiForm& MultiForm::operator+=(const MultiForm& other) {
  check_shape(other);
  for (const auto& [k, v] : other.coeffs_) add_sorted(k, v);
  return *this;
}

MultiForm& MultiForm::operator-=(const MultiForm& other) {
  check_shape(other);
  for (const auto& [k, v] : other.coeffs_) add_sorted(k, -v);
  return *this;
}

MultiForm& MultiForm::operator*=(const Rational& c) {
  if (c == 0) {
    coeffs_.clear();
    return *this;
  }
  for (auto& [k, v] : coeffs_) v *= c;
  return *this;
}

bool operator==(const MultiForm& a, const MultiForm& b) {
  if (a.is_zero() && b.is_zero()) return true;
  return a.n_ == b.n_ && a.p_ == b.p_ && a.q_ == b.q_ && a.coeffs_ == b.coeffs_;
}

std::string MultiForm::to_string() const {
  if (coeffs_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [k, v] : coeffs_) {
    if (!first) os << " + ";
    first = false;
    os << v.get_str();
    for (int i : k.wedge) os << "*xi" << i + 1;
    for (int i : k.sym) os << "*X" << i + 1;
  }
  return os.str();
}

MultiForm wedge(const MultiForm& a, const MultiForm& b) {
  if (a.n() != b.n()) throw Error(ErrorCode::ShapeError, "wedge of forms over different ranks");
  MultiForm out(a.n(), a.p() + b.p(), a.q() + b.q());
  for (const auto& [ka, va] : a.coeffs()) {
    for (const auto& [kb, vb] : b.coeffs()) {
      std::vector<int> w = ka.wedge;
      w.insert(w.end(), kb.wedge.begin(), kb.wedge.end());
      std::vector<int> s = ka.sym;
      s.insert(s.end(), kb.sym.begin(), kb.sym.end());
      out.add(std::move(w), std::move(s), va * vb);
    }
  }
  return out;
}

std::size_t binomial(std::size_t n, std::size_t k) {
  if (k > n) return 0;
  std::size_t r = 1;
  for (std::size_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

SliceBasis::SliceBasis(std::size_t n, std::size_t p, std::size_t q) : n_(n), p_(p), q_(q) {
  std::vector<std::vector<int>> wedges;
  std::vector<std::vector<int>> syms;
  std::vector<int> cur;
  std::function<void(int, std::size_t, bool, std::vector<std::vector<int>>&)> rec =
      [&](int start, std::size_t left, bool strict, std::vector<std::vector<int>>& out) {
        if (left == 0) {
          out.push_back(cur);
          return;
        }
        for (int i = start; i < static_cast<int>(n); ++i) {
          cur.push_back(i);
          rec(strict ? i + 1 : i, left - 1, strict, out);
          cur.pop_back();
        }
      };
  rec(0, p, true, wedges);
  rec(0, q, false, syms);
  for (const auto& w : wedges) {
    for (const auto& s : syms) {
      index_.emplace(FormKey{w, s}, keys_.size());
      keys_.push_back(FormKey{w, s});
    }
  }
}

std::size_t SliceBasis::index(const FormKey& key) const {
  const auto it = index_.find(key);
  if (it == index_.end()) throw Error(ErrorCode::ShapeError, "key outside the slice");
  return it->second;
}

MultiForm SliceBasis::element(std::size_t i) const {
  MultiForm f(n_, p_, q_);
  f.add_sorted(key(i), 1);
  return f;
}

exactla::Vector SliceBasis::coordinates(const MultiForm& f) const {
  exactla::Vector out(keys_.size());
  if (f.is_zero()) return out;
  if (f.n() != n_ || f.p() != p_ || f.q() != q_) throw Error(ErrorCode::ShapeError, "form outside the slice");
  for (const auto& [k, v] : f.coeffs()) out[index(k)] = v;
  return out;
}

MultiForm SliceBasis::form(const exactla::Vector& coords) const {
  if (coords.size() != keys_.size()) throw Error(ErrorCode::DimensionMismatch, "coordinate length");
  MultiForm f(n_, p_, q_);
  for (std::size_t i = 0; i < coords.size(); ++i) f.add_sorted(keys_[i], coords[i]);
  return f;
}

}  // namespace htwist
