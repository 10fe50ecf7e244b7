#include "htwist/io.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <array>
#include <cstdio>
#include <fstream>
#include <functional>
#include <numeric>
#include <sstream>

#include <json.hpp>

#include "htwist/errors.hpp"

namespace htwist::io {

using nlohmann::json;
using ojson = nlohmann::ordered_json;
using pq3::BasePoly;
using pq3::operator+;
using pq3::operator*;

namespace {

[[noreturn]] void fail(const std::string& where, const std::string& msg) {
  throw Error(ErrorCode::ParseError, "field " + where + ": " + msg);
}

std::string tuple_str(const std::vector<std::size_t>& t) {
  std::string s = "(";
  for (std::size_t i = 0; i < t.size(); ++i) s += (i ? "," : "") + std::to_string(t[i] + 1);
  return s + ")";
}

// ---- values ------------------------------------------------------------------

Rational read_rational(const json& j, const std::string& where) {
  if (j.is_string()) {
    try {
      return parse_rational(j.get<std::string>());
    } catch (const Error& e) {
      fail(where, e.what());
    }
  }
  if (j.is_number_integer()) return Rational(j.get<long>());
  fail(where, "expected a rational string \"p/q\"");
}

struct Ctx {
  std::vector<std::string> vars;
};

BasePoly read_poly(const json& j, const Ctx& ctx, const std::string& where) {
  const std::size_t m = ctx.vars.size();
  if (j.is_string() || j.is_number_integer()) return pq3::base_constant(m, read_rational(j, where));
  if (!j.is_array()) fail(where, "expected a rational or a list of [coef, {var: exp}] terms");
  BasePoly p;
  for (std::size_t t = 0; t < j.size(); ++t) {
    const std::string w = where + "/" + std::to_string(t);
    const json& term = j[t];
    if (!term.is_array() || term.empty() || term.size() > 2) fail(w, "expected [coef, {var: exp}]");
    const Rational c = read_rational(term[0], w + "/0");
    std::vector<int> e(m, 0);
    if (term.size() == 2) {
      if (!term[1].is_object()) fail(w + "/1", "expected an object of exponents");
      for (const auto& [name, ex] : term[1].items()) {
        const auto it = std::find(ctx.vars.begin(), ctx.vars.end(), name);
        if (it == ctx.vars.end()) fail(w + "/1/" + name, "unknown base variable '" + name + "'");
        if (!ex.is_number_integer() || ex.get<long long>() < 0) fail(w + "/1/" + name, "exponent must be a nonnegative integer");
        e[static_cast<std::size_t>(it - ctx.vars.begin())] += ex.get<int>();
      }
    }
    p = p + BasePoly{{e, c}};
  }
  return p;
}

bool zero(const Rational& r) { return r == 0; }
bool zero(const BasePoly& p) { return pq3::is_zero(p); }
Rational neg(const Rational& r) { return -r; }
BasePoly neg(const BasePoly& p) { return Rational(-1) * p; }
bool same(const Rational& a, const Rational& b) { return a == b; }
bool same(const BasePoly& a, const BasePoly& b) { return pq3::is_zero(a + neg(b)); }

// ---- sparse tensor assembly ------------------------------------------------------

enum class Sym { None, Skew, Symmetric };

/// Places one entry into a dense tensor together with its images under permutations of
/// the slots in `group` (with sign for Skew), rejecting contradictions with earlier entries.
template <class T>
class Tensor {
 public:
  Tensor(std::vector<std::size_t> dims, std::vector<std::size_t> group, Sym sym, T zero_value)
      : dims_(std::move(dims)), group_(std::move(group)), sym_(sym) {
    std::size_t total = 1;
    for (auto d : dims_) total *= d;
    data_.assign(total, zero_value);
    set_.assign(total, false);
  }

  void place(const std::vector<std::size_t>& idx, const T& v, const std::vector<std::size_t>& shown,
             const std::string& where) {
    std::vector<std::size_t> perm(group_.size());
    std::iota(perm.begin(), perm.end(), 0);
    do {
      std::vector<std::size_t> t = idx;
      for (std::size_t k = 0; k < group_.size(); ++k) t[group_[k]] = idx[group_[perm[k]]];
      const bool odd = sym_ == Sym::Skew && parity(perm);
      const T val = odd ? neg(v) : v;
      const std::size_t f = flat(t);
      if (t == idx && odd && !zero(v)) fail(where, "repeated index in alternating slots " + tuple_str(shown));
      if (set_[f] && !same(data_[f], val)) fail(where, "symmetry conflict at " + tuple_str(shown));
      data_[f] = val;
      set_[f] = true;
      if (sym_ == Sym::None) break;
    } while (std::next_permutation(perm.begin(), perm.end()));
  }

  std::vector<T> take() { return std::move(data_); }

 private:
  static bool parity(const std::vector<std::size_t>& p) {
    bool odd = false;
    for (std::size_t i = 0; i < p.size(); ++i)
      for (std::size_t j = i + 1; j < p.size(); ++j)
        if (p[i] > p[j]) odd = !odd;
    return odd;
  }
  std::size_t flat(const std::vector<std::size_t>& t) const {
    std::size_t f = 0;
    for (std::size_t k = 0; k < t.size(); ++k) f = f * dims_[k] + t[k];
    return f;
  }
  std::vector<std::size_t> dims_, group_;
  Sym sym_;
  std::vector<T> data_;
  std::vector<bool> set_;
};

struct Layout {
  std::vector<std::size_t> bounds;   // per entry position, upper bound (1-based inclusive)
  std::vector<std::size_t> storage;  // storage slot k takes entry position storage[k]
  std::vector<std::size_t> group;    // storage slots permuted by the symmetry
  Sym sym;
};

template <class T, class Read>
std::vector<T> read_tensor(const json& doc, const std::string& key, const Layout& L, T zero_value, Read read,
                           const std::string& base, bool required = false) {
  std::vector<std::size_t> dims(L.storage.size());
  for (std::size_t k = 0; k < L.storage.size(); ++k) dims[k] = L.bounds[L.storage[k]];
  Tensor<T> tensor(dims, L.group, L.sym, zero_value);
  const std::string where = base + "/" + key;
  if (!doc.contains(key)) {
    if (required) fail(where, "missing");
    return tensor.take();
  }
  const json& list = doc[key];
  if (!list.is_array()) fail(where, "expected a list of entries");
  const std::size_t arity = L.bounds.size();
  for (std::size_t e = 0; e < list.size(); ++e) {
    const std::string w = where + "/" + std::to_string(e);
    const json& entry = list[e];
    if (!entry.is_array() || entry.size() != arity + 1)
      fail(w, "expected " + std::to_string(arity) + " indices followed by a value");
    std::vector<std::size_t> idx(arity);
    for (std::size_t k = 0; k < arity; ++k) {
      if (!entry[k].is_number_integer()) fail(w + "/" + std::to_string(k), "index must be an integer");
      const long long v = entry[k].get<long long>();
      if (v < 1) fail(w + "/" + std::to_string(k), "indices are 1-based, got " + std::to_string(v));
      idx[k] = static_cast<std::size_t>(v - 1);
    }
    for (std::size_t k = 0; k < arity; ++k)
      if (idx[k] >= L.bounds[k])
        fail(w, "index out of range in " + tuple_str(idx) + ": position " + std::to_string(k + 1) + " exceeds " +
                    std::to_string(L.bounds[k]));
    const T v = read(entry[arity], w + "/" + std::to_string(arity));
    std::vector<std::size_t> st(L.storage.size());
    for (std::size_t k = 0; k < st.size(); ++k) st[k] = idx[L.storage[k]];
    tensor.place(st, v, idx, w);
  }
  return tensor.take();
}

std::size_t read_dim(const json& doc, const std::string& key, const std::string& base, bool allow_zero = false) {
  const std::string w = base + "/" + key;
  if (!doc.contains(key)) fail(w, "missing");
  const json& j = doc[key];
  if (!j.is_number_integer() || j.get<long long>() < (allow_zero ? 0 : 1))
    fail(w, allow_zero ? "expected a nonnegative integer" : "expected a positive integer");
  return static_cast<std::size_t>(j.get<long long>());
}

std::string read_name(const json& doc) {
  if (doc.contains("name") && doc["name"].is_string()) return doc["name"].get<std::string>();
  return {};
}

Ctx read_vars(const json& doc, std::size_t m, const std::string& base) {
  Ctx ctx;
  if (!doc.contains("base_variables")) {
    for (std::size_t i = 0; i < m; ++i) ctx.vars.push_back("x" + std::to_string(i + 1));
    return ctx;
  }
  const json& v = doc["base_variables"];
  if (!v.is_array() || v.size() != m) fail(base + "/base_variables", "expected " + std::to_string(m) + " names");
  for (std::size_t i = 0; i < m; ++i) {
    if (!v[i].is_string()) fail(base + "/base_variables/" + std::to_string(i), "expected a string");
    ctx.vars.push_back(v[i].get<std::string>());
  }
  return ctx;
}

auto rational_reader() {
  return [](const json& j, const std::string& w) { return read_rational(j, w); };
}

TwistedLieAlgebra read_twisted(const json& doc, const std::string& base) {
  const std::size_t n = read_dim(doc, "n", base);
  auto C = read_tensor<Rational>(doc, "bracket", {{n, n, n}, {2, 0, 1}, {1, 2}, Sym::Skew}, Rational(0),
                                 rational_reader(), base);
  auto H = read_tensor<Rational>(doc, "twist", {{n, n, n, n}, {3, 0, 1, 2}, {1, 2, 3}, Sym::Skew}, Rational(0),
                                 rational_reader(), base);
  return from_dense(n, std::move(C), std::move(H));
}

InputDocument build(const json& doc) {
  if (!doc.is_object()) fail("/", "expected an object");
  if (!doc.contains("kind") || !doc["kind"].is_string()) fail("/kind", "missing");
  const std::string kind = doc["kind"].get<std::string>();
  if (kind == "twisted_algebra") {
    TwistedDoc d{read_name(doc), read_twisted(doc, ""), {}};
    if (doc.contains("B")) {
      const std::size_t n = d.algebra.n();
      d.B = read_tensor<Rational>(doc, "B", {{n, n}, {0, 1}, {0, 1}, Sym::Symmetric}, Rational(0), rational_reader(), "");
    }
    return d;
  }
  if (kind == "split_data") {
    const std::size_t n = read_dim(doc, "n", "");
    SplitDoc d{read_name(doc), pq3::SplitData(n)};
    d.data.C = read_tensor<Rational>(doc, "bracket", {{n, n, n}, {2, 0, 1}, {1, 2}, Sym::Skew}, Rational(0),
                                     rational_reader(), "");
    d.data.h = read_tensor<Rational>(doc, "h", {{n, n, n, n}, {0, 1, 2, 3}, {0, 1, 2, 3}, Sym::Skew}, Rational(0),
                                     rational_reader(), "");
    d.data.B = read_tensor<Rational>(doc, "B", {{n, n}, {0, 1}, {0, 1}, Sym::Symmetric}, Rational(0),
                                     rational_reader(), "");
    return d;
  }
  if (kind == "pq3_data") {
    const std::size_t m = read_dim(doc, "m", "", true);
    const std::size_t n = read_dim(doc, "n", "");
    const Ctx ctx = read_vars(doc, m, "");
    auto poly = [&ctx](const json& j, const std::string& w) { return read_poly(j, ctx, w); };
    PQ3Doc d{read_name(doc), ctx.vars, pq3::PQ3Data(m, n)};
    d.data.rho = read_tensor<BasePoly>(doc, "rho", {{m, n}, {0, 1}, {}, Sym::None}, BasePoly{}, poly, "");
    d.data.C = read_tensor<BasePoly>(doc, "bracket", {{n, n, n}, {2, 0, 1}, {1, 2}, Sym::Skew}, BasePoly{}, poly, "");
    d.data.h = read_tensor<BasePoly>(doc, "h", {{n, n, n, n}, {0, 1, 2, 3}, {0, 1, 2, 3}, Sym::Skew}, BasePoly{},
                                     poly, "");
    d.data.B = read_tensor<BasePoly>(doc, "B", {{n, n}, {0, 1}, {0, 1}, Sym::Symmetric}, BasePoly{}, poly, "");
    return d;
  }
  if (kind == "courant_data") {
    const std::size_t m = read_dim(doc, "m", "", true);
    const std::size_t n = read_dim(doc, "n", "");
    const Ctx ctx = read_vars(doc, m, "");
    auto poly = [&ctx](const json& j, const std::string& w) { return read_poly(j, ctx, w); };
    CourantDoc d{read_name(doc), ctx.vars, pq3::CourantData(m, n)};
    d.data.rho = read_tensor<BasePoly>(doc, "rho", {{m, n}, {0, 1}, {}, Sym::None}, BasePoly{}, poly, "");
    d.data.g = read_tensor<Rational>(doc, "g", {{n, n}, {0, 1}, {0, 1}, Sym::Symmetric}, Rational(0),
                                     rational_reader(), "", true);
    d.data.C = read_tensor<BasePoly>(doc, "C", {{n, n, n}, {0, 1, 2}, {0, 1, 2}, Sym::Skew}, BasePoly{}, poly, "");
    try {
      d.data.validate();
    } catch (const Error& e) {
      fail("/", e.what());
    }
    return d;
  }
  if (kind == "l2_morphism") {
    for (const char* k : {"source", "target"})
      if (!doc.contains(k) || !doc[k].is_object()) fail(std::string("/") + k, "missing algebra object");
    MorphismDoc d{read_name(doc), read_twisted(doc["source"], "/source"), read_twisted(doc["target"], "/target"), {}};
    const std::size_t n1 = d.source.n(), n2 = d.target.n();
    const auto p1 = read_tensor<Rational>(doc, "phi1", {{n2, n1}, {0, 1}, {}, Sym::None}, Rational(0),
                                          rational_reader(), "", true);
    d.morphism.phi1 = exactla::RMatrix(n2, n1);
    for (std::size_t r = 0; r < n2; ++r)
      for (std::size_t c = 0; c < n1; ++c)
        if (p1[r * n1 + c] != 0) d.morphism.phi1.set(r, c, p1[r * n1 + c]);
    // entry [a, b, c, v]: phi2(X_a, X_b) has component v along Y_c
    d.morphism.phi2 = read_tensor<Rational>(doc, "phi2", {{n1, n1, n2}, {2, 0, 1}, {1, 2}, Sym::Skew}, Rational(0),
                                            rational_reader(), "");
    return d;
  }
  fail("/kind", "unknown kind '" + kind + "'");
}

// ---- serialization -----------------------------------------------------------------

ojson rational_json(const Rational& r) { return to_string(r); }

ojson poly_json(const BasePoly& p, const std::vector<std::string>& vars) {
  std::vector<std::pair<std::vector<int>, Rational>> terms;
  for (const auto& [e, c] : p)
    if (c != 0) terms.emplace_back(e, c);
  if (terms.empty()) return "0";
  if (terms.size() == 1 && std::all_of(terms[0].first.begin(), terms[0].first.end(), [](int x) { return x == 0; }))
    return rational_json(terms[0].second);
  ojson out = ojson::array();
  for (const auto& [e, c] : terms) {
    ojson ex = ojson::object();
    for (std::size_t i = 0; i < e.size(); ++i)
      if (e[i] != 0) ex[vars[i]] = e[i];
    out.push_back(ojson::array({rational_json(c), ex}));
  }
  return out;
}

/// Lists entries with storage tuples ordered so that the symmetric slots are nondecreasing
/// (strictly increasing for Skew), in entry order.
template <class T, class Emit>
ojson write_tensor(const std::vector<T>& data, const Layout& L, Emit emit) {
  ojson out = ojson::array();
  const std::size_t arity = L.bounds.size();
  std::vector<std::size_t> idx(arity, 0);
  std::vector<std::size_t> dims(L.storage.size());
  for (std::size_t k = 0; k < L.storage.size(); ++k) dims[k] = L.bounds[L.storage[k]];
  if (arity == 0 || std::find(L.bounds.begin(), L.bounds.end(), 0) != L.bounds.end()) return out;
  while (true) {
    bool canonical = true;
    for (std::size_t k = 1; k < L.group.size(); ++k) {
      const std::size_t lo = idx[L.storage[L.group[k - 1]]], hi = idx[L.storage[L.group[k]]];
      if (L.sym == Sym::Skew ? lo >= hi : lo > hi) canonical = false;
    }
    if (canonical) {
      std::size_t f = 0;
      for (std::size_t k = 0; k < L.storage.size(); ++k) f = f * dims[k] + idx[L.storage[k]];
      if (!zero(data[f])) {
        ojson e = ojson::array();
        for (auto i : idx) e.push_back(i + 1);
        e.push_back(emit(data[f]));
        out.push_back(e);
      }
    }
    std::size_t k = arity;
    while (k > 0) {
      --k;
      if (++idx[k] < L.bounds[k]) break;
      idx[k] = 0;
      if (k == 0) return out;
    }
  }
}

void write_twisted(ojson& j, const TwistedLieAlgebra& T) {
  const std::size_t n = T.n();
  std::vector<Rational> C(n * n * n), H(n * n * n * n);
  for (std::size_t c = 0; c < n; ++c)
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b) {
        C[(c * n + a) * n + b] = T.C(c, a, b);
        for (std::size_t d = 0; d < n; ++d) H[((d * n + a) * n + b) * n + c] = T.H(d, a, b, c);
      }
  j["n"] = n;
  j["bracket"] = write_tensor(C, {{n, n, n}, {2, 0, 1}, {1, 2}, Sym::Skew}, rational_json);
  j["twist"] = write_tensor(H, {{n, n, n, n}, {3, 0, 1, 2}, {1, 2, 3}, Sym::Skew}, rational_json);
}

ojson to_json(const InputDocument& doc) {
  ojson j = ojson::object();
  j["kind"] = std::string(kind_name(doc));
  std::visit(
      [&j](const auto& d) {
        using D = std::decay_t<decltype(d)>;
        if (!d.name.empty()) j["name"] = d.name;
        if constexpr (std::is_same_v<D, TwistedDoc>) {
          write_twisted(j, d.algebra);
          const std::size_t n = d.algebra.n();
          if (!d.B.empty()) j["B"] = write_tensor(d.B, {{n, n}, {0, 1}, {0, 1}, Sym::Symmetric}, rational_json);
        } else if constexpr (std::is_same_v<D, SplitDoc>) {
          const std::size_t n = d.data.n;
          j["n"] = n;
          j["bracket"] = write_tensor(d.data.C, {{n, n, n}, {2, 0, 1}, {1, 2}, Sym::Skew}, rational_json);
          j["h"] = write_tensor(d.data.h, {{n, n, n, n}, {0, 1, 2, 3}, {0, 1, 2, 3}, Sym::Skew}, rational_json);
          j["B"] = write_tensor(d.data.B, {{n, n}, {0, 1}, {0, 1}, Sym::Symmetric}, rational_json);
        } else if constexpr (std::is_same_v<D, PQ3Doc>) {
          const std::size_t m = d.data.m, n = d.data.n;
          auto poly = [&d](const BasePoly& p) { return poly_json(p, d.variables); };
          j["m"] = m;
          j["n"] = n;
          j["base_variables"] = d.variables;
          j["rho"] = write_tensor(d.data.rho, {{m, n}, {0, 1}, {}, Sym::None}, poly);
          j["bracket"] = write_tensor(d.data.C, {{n, n, n}, {2, 0, 1}, {1, 2}, Sym::Skew}, poly);
          j["h"] = write_tensor(d.data.h, {{n, n, n, n}, {0, 1, 2, 3}, {0, 1, 2, 3}, Sym::Skew}, poly);
          j["B"] = write_tensor(d.data.B, {{n, n}, {0, 1}, {0, 1}, Sym::Symmetric}, poly);
        } else if constexpr (std::is_same_v<D, CourantDoc>) {
          const std::size_t m = d.data.m, n = d.data.n;
          auto poly = [&d](const BasePoly& p) { return poly_json(p, d.variables); };
          j["m"] = m;
          j["n"] = n;
          j["base_variables"] = d.variables;
          j["rho"] = write_tensor(d.data.rho, {{m, n}, {0, 1}, {}, Sym::None}, poly);
          j["g"] = write_tensor(d.data.g, {{n, n}, {0, 1}, {0, 1}, Sym::Symmetric}, rational_json);
          j["C"] = write_tensor(d.data.C, {{n, n, n}, {0, 1, 2}, {0, 1, 2}, Sym::Skew}, poly);
        } else {
          ojson s = ojson::object(), t = ojson::object();
          write_twisted(s, d.source);
          write_twisted(t, d.target);
          j["source"] = s;
          j["target"] = t;
          const std::size_t n1 = d.source.n(), n2 = d.target.n();
          std::vector<Rational> p1(n2 * n1);
          for (std::size_t r = 0; r < n2; ++r)
            for (std::size_t c = 0; c < n1; ++c) p1[r * n1 + c] = d.morphism.phi1.at(r, c);
          j["phi1"] = write_tensor(p1, {{n2, n1}, {0, 1}, {}, Sym::None}, rational_json);
          j["phi2"] = write_tensor(d.morphism.phi2, {{n1, n1, n2}, {2, 0, 1}, {1, 2}, Sym::Skew}, rational_json);
        }
      },
      doc);
  return j;
}

void pretty(const ojson& j, std::string& out, int indent) {
  const std::string pad(static_cast<std::size_t>(indent), ' ');
  if (j.is_object() && !j.empty()) {
    out += "{\n";
    std::size_t i = 0;
    for (auto it = j.begin(); it != j.end(); ++it, ++i) {
      out += pad + "  " + ojson(it.key()).dump() + ": ";
      pretty(it.value(), out, indent + 2);
      out += i + 1 < j.size() ? ",\n" : "\n";
    }
    out += pad + "}";
  } else if (j.is_array() && !j.empty() && j[0].is_array()) {
    // one tensor entry per line
    out += "[\n";
    for (std::size_t i = 0; i < j.size(); ++i) out += pad + "  " + j[i].dump(-1, ' ', false) + (i + 1 < j.size() ? ",\n" : "\n");
    out += pad + "]";
  } else {
    out += j.dump();
  }
}

std::size_t line_of(std::string_view text, std::size_t byte) {
  byte = std::min(byte, text.size());
  return 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(byte), '\n'));
}

}  // namespace

std::string_view kind_name(const InputDocument& doc) {
  static constexpr std::array<std::string_view, 5> names{"twisted_algebra", "split_data", "pq3_data", "courant_data",
                                                         "l2_morphism"};
  return names[doc.index()];
}

InputDocument parse_document(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    // the reported byte is one past the offending character
    const std::size_t byte = e.byte > 0 ? e.byte - 1 : 0;
    throw Error(ErrorCode::ParseError, "line " + std::to_string(line_of(text, byte)) + ": " + e.what());
  }
  try {
    return build(doc);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::ParseError) throw;
    throw Error(ErrorCode::ParseError, e.what());
  }
}

InputDocument load_document(const std::string& path, std::string* raw) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::ParseError, "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  const std::string text = ss.str();
  if (raw) *raw = text;
  return parse_document(text);
}

std::string serialize(const InputDocument& doc) {
  std::string out;
  pretty(to_json(doc), out, 0);
  return out + "\n";
}

bool equivalent(const InputDocument& a, const InputDocument& b) {
  ojson ja = to_json(a), jb = to_json(b);
  ja.erase("name");
  jb.erase("name");
  return ja == jb;
}

std::string sha256_hex(std::string_view bytes) {
  std::array<unsigned char, EVP_MAX_MD_SIZE> md{};
  unsigned int len = 0;
  EVP_MD_CTX* ctx = EVP_MD_CTX_new();
  if (ctx == nullptr || EVP_DigestInit_ex(ctx, EVP_sha256(), nullptr) != 1 ||
      EVP_DigestUpdate(ctx, bytes.data(), bytes.size()) != 1 || EVP_DigestFinal_ex(ctx, md.data(), &len) != 1) {
    EVP_MD_CTX_free(ctx);
    throw Error(ErrorCode::InvalidInput, "sha256 failed");
  }
  EVP_MD_CTX_free(ctx);
  std::string hex;
  char buf[3];
  for (unsigned int i = 0; i < len; ++i) {
    std::snprintf(buf, sizeof buf, "%02x", md[i]);
    hex += buf;
  }
  return hex;
}

}  // namespace htwist::io
