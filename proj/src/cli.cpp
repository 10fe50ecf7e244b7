#include "htwist/cli.hpp"

#include <algorithm>
#include <functional>
#include <iomanip>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "htwist/errors.hpp"
#include "htwist/io.hpp"
#include "htwist/l2alg.hpp"
#include "htwist/naivecohom.hpp"
#include "htwist/pq3.hpp"
#include "htwist/regq.hpp"

namespace htwist::cli {

using nlohmann::json;
using pq3::operator+;
using pq3::operator*;

namespace {

struct Row {
  std::string label;
  std::vector<long long> values;
};

struct Report {
  std::string command;
  std::string input_hash;
  std::string name;
  std::vector<Row> table;                                    // first row is the header when present
  std::vector<std::pair<std::string, std::string>> residuals;  // name -> exact value or flag
  std::vector<std::string> failures;                          // residual locations
  std::vector<std::string> notes;
  std::string error;
  int exit = 0;
};

int exit_for(ErrorCode c) {
  switch (c) {
    case ErrorCode::ParseError:
    case ErrorCode::ShapeError:
    case ErrorCode::DimError:
    case ErrorCode::DimensionMismatch:
    case ErrorCode::InvalidInput:
    case ErrorCode::AlgebraMismatch:
      return 2;
    default:
      return 1;
  }
}

std::string idx1(std::initializer_list<std::size_t> t) {
  std::string s = "(";
  bool first = true;
  for (auto i : t) {
    s += (first ? "" : ",") + std::to_string(i + 1);
    first = false;
  }
  return s + ")";
}

std::string flag(bool b) { return b ? "true" : "false"; }

// ---- rendering -----------------------------------------------------------------

json to_json(const Report& r) {
  json j = json::object();
  j["command"] = r.command;
  j["input_hash"] = r.input_hash;
  if (!r.name.empty()) j["name"] = r.name;
  if (!r.table.empty()) {
    json dims = json::object();
    for (const auto& row : r.table) dims[row.label] = row.values;
    j["dims"] = dims;
  }
  if (!r.residuals.empty()) {
    json res = json::object();
    for (const auto& [k, v] : r.residuals) res[k] = v;
    j["residuals"] = res;
  }
  if (!r.failures.empty()) j["failures"] = r.failures;
  if (!r.notes.empty()) j["notes"] = r.notes;
  if (!r.error.empty()) j["error"] = r.error;
  j["exit"] = r.exit;
  return j;
}

void render_text(const Report& r, std::ostream& out) {
  out << r.command;
  if (!r.name.empty()) out << "  " << r.name;
  if (!r.input_hash.empty()) out << "  sha256:" << r.input_hash.substr(0, 16);
  out << "\n";
  if (!r.table.empty()) {
    std::size_t lw = 0, vw = 1;
    for (const auto& row : r.table) {
      lw = std::max(lw, row.label.size());
      for (auto v : row.values) vw = std::max(vw, std::to_string(v).size());
    }
    for (const auto& row : r.table) {
      out << "  " << std::setw(static_cast<int>(lw)) << row.label;
      for (auto v : row.values) out << "  " << std::setw(static_cast<int>(vw)) << v;
      out << "\n";
    }
  }
  std::size_t kw = 0;
  for (const auto& [k, v] : r.residuals) kw = std::max(kw, k.size());
  for (const auto& [k, v] : r.residuals) out << "  " << std::left << std::setw(static_cast<int>(kw)) << k << std::right << "  " << v << "\n";
  for (const auto& f : r.failures) out << "  FAIL " << f << "\n";
  for (const auto& n : r.notes) out << "  " << n << "\n";
  if (!r.error.empty()) out << "  error: " << r.error << "\n";
  out << "  exit " << r.exit << "\n";
}

// ---- document access ---------------------------------------------------------------

template <class D>
const D& expect(const io::InputDocument& doc, const char* what) {
  if (const auto* d = std::get_if<D>(&doc)) return *d;
  throw Error(ErrorCode::InvalidInput,
              "this command needs a " + std::string(what) + " document, got " + std::string(io::kind_name(doc)));
}

std::string doc_name(const io::InputDocument& doc) {
  return std::visit([](const auto& d) { return d.name; }, doc);
}

pq3::PQ3Data pq3_of(const io::InputDocument& doc, std::vector<std::string>* vars = nullptr) {
  if (const auto* s = std::get_if<io::SplitDoc>(&doc)) return pq3::to_pq3(s->data);
  if (const auto* p = std::get_if<io::PQ3Doc>(&doc)) {
    if (vars) *vars = p->variables;
    return p->data;
  }
  throw Error(ErrorCode::InvalidInput, "this command needs split_data or pq3_data, got " + std::string(io::kind_name(doc)));
}

// ---- residual reports ------------------------------------------------------------------

void axioms_into(const TwistedLieAlgebra& T, Report& r, const std::string& prefix = "") {
  const AxiomReport a = check_axioms(T);
  r.residuals.emplace_back(prefix + "jacobi", to_string(a.jacobi_max));
  r.residuals.emplace_back(prefix + "dH", to_string(a.dh_max));
  for (const auto& t : a.jacobi_failures)
    r.failures.push_back(prefix + "jacobi at " + idx1({t[0], t[1], t[2]}) + " component " + std::to_string(t[3] + 1));
  if (!a.dh.is_zero()) r.failures.push_back(prefix + "dH = " + a.dh.to_string());
  if (!a.valid()) r.exit = 1;
}

void split_into(const pq3::SplitData& S, Report& r) {
  const pq3::SplitReport s = pq3::check_split(S);
  r.residuals.emplace_back("jacobi", to_string(s.jacobi));
  r.residuals.emplace_back("dh", to_string(s.dh));
  r.residuals.emplace_back("dB", to_string(s.db));
  r.residuals.emplace_back("axioms_crosscheck", flag(s.axioms_crosscheck));
  if (s.jacobi != 0) r.failures.push_back("Jacobiator of C differs from the B-contracted h");
  if (s.dh != 0) r.failures.push_back("D h != 0");
  if (s.db != 0) r.failures.push_back("D B != 0");
  if (!s.valid()) r.exit = 1;
}

void nilpotence_into(const pq3::PQ3Data& P, Report& r) {
  const pq3::PQ3Space space = pq3::make_space(P.m, P.n);
  const pq3::NilpotenceReport nr = pq3::nilpotence_residual(pq3::build_theta(P, space), space);
  for (const auto& [k, v] : nr.components) r.residuals.emplace_back(k, v.is_zero() ? "0" : "nonzero");
  for (const auto& k : nr.nonzero_components()) r.failures.push_back(k + ": " + nr.components.at(k).to_string());
  if (!nr.zero()) r.exit = 1;
}

// ---- commands -------------------------------------------------------------------------

struct Options {
  std::size_t pmax = 3, qmax = 1;
  int max_degree = 4;
  int min_degree = -2, reg_max_degree = 3;
};

void cmd_validate(const io::InputDocument& doc, const Options&, Report& r) {
  if (const auto* t = std::get_if<io::TwistedDoc>(&doc)) {
    axioms_into(t->algebra, r);
  } else if (const auto* s = std::get_if<io::SplitDoc>(&doc)) {
    split_into(s->data, r);
  } else if (const auto* p = std::get_if<io::PQ3Doc>(&doc)) {
    nilpotence_into(p->data, r);
  } else if (const auto* c = std::get_if<io::CourantDoc>(&doc)) {
    const pq3::CourantSpace cs = pq3::make_courant_space(c->data);
    const auto th = pq3::courant_theta(c->data, cs);
    const auto sq = gradedpoly::poisson_bracket(th, th, cs.poisson);
    r.residuals.emplace_back("theta_A_squared", sq.is_zero() ? "0" : "nonzero");
    if (!sq.is_zero()) {
      r.failures.push_back("{Theta_A, Theta_A} = " + sq.to_string());
      r.exit = 1;
    }
  } else {
    const auto& m = std::get<io::MorphismDoc>(doc);
    axioms_into(m.source, r, "source.");
    axioms_into(m.target, r, "target.");
    const MorphismReport mr = check_morphism(m.source, m.target, m.morphism);
    r.residuals.emplace_back("rule3", to_string(mr.rule3));
    r.residuals.emplace_back("rule5", to_string(mr.rule5));
    if (!mr.valid()) r.exit = 1;
  }
}

void cmd_naive(const io::InputDocument& doc, const Options& o, Report& r) {
  const auto& t = expect<io::TwistedDoc>(doc, "twisted_algebra");
  const NaiveTable tab = naive_cohomology_table(t.algebra, o.pmax, o.qmax);
  Row head{"p", {}};
  for (std::size_t p = 0; p <= o.pmax; ++p) head.values.push_back(static_cast<long long>(p));
  r.table.push_back(head);
  for (std::size_t q = 0; q <= o.qmax; ++q) {
    Row row{"q=" + std::to_string(q), {}};
    for (auto d : tab.dims[q]) row.values.push_back(static_cast<long long>(d));
    r.table.push_back(row);
  }
}

void cmd_linfty(const io::InputDocument& doc, const Options&, Report& r) {
  const auto& t = expect<io::TwistedDoc>(doc, "twisted_algebra");
  const L2Report l = check_l2_axioms(from_twisted(t.algebra));
  const std::pair<const char*, const Rational*> items[] = {
      {"n2", &l.n2}, {"n2b", &l.n2b}, {"n3", &l.n3}, {"n3b", &l.n3b}, {"n4", &l.n4}};
  for (const auto& [k, v] : items) {
    r.residuals.emplace_back(k, to_string(*v));
    if (*v != 0) r.failures.push_back(std::string("axiom ") + k + " residual " + to_string(*v));
  }
  if (!l.valid()) r.exit = 1;
}

void cmd_morphism(const io::InputDocument& doc, const Options&, Report& r) {
  const auto& m = expect<io::MorphismDoc>(doc, "l2_morphism");
  const MorphismReport mr = check_morphism(m.source, m.target, m.morphism);
  r.residuals.emplace_back("rule1", mr.rule1_vacuous ? "vacuous" : "checked");
  r.residuals.emplace_back("rule2", mr.rule2_vacuous ? "vacuous" : "checked");
  r.residuals.emplace_back("rule3", to_string(mr.rule3));
  r.residuals.emplace_back("rule4", mr.rule4_vacuous ? "vacuous" : "checked");
  r.residuals.emplace_back("rule5", to_string(mr.rule5));
  if (mr.rule3 != 0) r.failures.push_back("bracket compatibility residual " + to_string(mr.rule3));
  if (mr.rule5 != 0) r.failures.push_back("twist compatibility residual " + to_string(mr.rule5));
  if (!mr.valid()) r.exit = 1;
}

void cmd_split_check(const io::InputDocument& doc, const Options&, Report& r) {
  split_into(expect<io::SplitDoc>(doc, "split_data").data, r);
}

void cmd_solve_h(const io::InputDocument& doc, const Options&, Report& r) {
  const auto& t = expect<io::TwistedDoc>(doc, "twisted_algebra");
  if (t.B.empty()) throw Error(ErrorCode::InvalidInput, "solve-h needs a \"B\" field");
  const auto h = pq3::solve_h_given_B(t.algebra, t.B);
  r.residuals.emplace_back("solvable", flag(h.has_value()));
  if (h) {
    r.notes.push_back("h = " + (h->is_zero() ? std::string("0") : h->to_string()));
  } else {
    r.failures.push_back("no h with B# o h~ = H and D h = 0");
    r.exit = 1;
  }
}

void cmd_pq3_verify(const io::InputDocument& doc, const Options&, Report& r) { nilpotence_into(pq3_of(doc), r); }

void cmd_derived(const io::InputDocument& doc, const Options&, Report& r) {
  std::vector<std::string> vars;
  const pq3::PQ3Data P = pq3_of(doc, &vars);
  if (vars.empty())
    for (std::size_t i = 0; i < P.m; ++i) vars.push_back("x" + std::to_string(i + 1));
  const pq3::PQ3Space space = pq3::make_space(P.m, P.n);
  const pq3::PQ3Data D = pq3::derived_structures(pq3::build_theta(P, space), space);
  auto compare = [&](const char* what, const std::vector<pq3::BasePoly>& a, const std::vector<pq3::BasePoly>& b) {
    std::size_t bad = 0;
    for (std::size_t k = 0; k < a.size(); ++k)
      if (!pq3::is_zero(a[k] + Rational(-1) * b[k])) ++bad;
    r.residuals.emplace_back(std::string(what) + "_mismatches", std::to_string(bad));
    if (bad) {
      r.failures.push_back(std::string(what) + " differs in " + std::to_string(bad) + " entries");
      r.exit = 1;
    }
  };
  compare("rho", D.rho, P.rho);
  compare("bracket", D.C, P.C);
  compare("B", D.B, P.B);
  compare("h", D.h, P.h);
  r.notes.push_back("constants: bracket " + std::to_string(pq3::kBracketConstant) + ", anchor " +
                    std::to_string(pq3::kAnchorConstant) + ", B " + std::to_string(pq3::kBConstant) + ", h " +
                    std::to_string(pq3::kHConstant));
  // listing stays readable for small ranks only
  if (P.n > 3) return;
  for (std::size_t c = 0; c < P.n; ++c)
    for (std::size_t a = 0; a < P.n; ++a)
      for (std::size_t b = a + 1; b < P.n; ++b)
        if (!pq3::is_zero(D.c(c, a, b)))
          r.notes.push_back("[X" + std::to_string(a + 1) + ",X" + std::to_string(b + 1) + "]^" + std::to_string(c + 1) +
                            " = " + pq3::to_string(D.c(c, a, b), vars));
  for (std::size_t a = 0; a < P.n; ++a)
    for (std::size_t b = a; b < P.n; ++b)
      if (!pq3::is_zero(D.bb(a, b)))
        r.notes.push_back("B^" + idx1({a, b}) + " = " + pq3::to_string(D.bb(a, b), vars));
}

void cmd_courant(const io::InputDocument& doc, const Options&, Report& r) {
  const auto& c = expect<io::CourantDoc>(doc, "courant_data");
  const pq3::CourantLift L = pq3::lift_courant(c.data);
  r.residuals.emplace_back("theta_A_nilpotent", "true");
  r.residuals.emplace_back("theta_nilpotent", flag(L.theta_nilpotent));
  r.residuals.emplace_back("structures_match", flag(L.structures_match));
  std::vector<std::string> vars = c.variables;
  const std::size_t N = L.expected.n;
  for (std::size_t a = 0; a < N; ++a)
    for (std::size_t b = a; b < N; ++b)
      if (!pq3::is_zero(L.expected.bb(a, b)))
        r.notes.push_back("B^" + idx1({a, b}) + " = " + pq3::to_string(L.expected.bb(a, b), vars));
  if (!L.theta_nilpotent) r.failures.push_back("{Theta, Theta} != 0 on the lift");
  if (!L.structures_match) r.failures.push_back("derived structures differ from the lift formulas");
  if (!L.theta_nilpotent || !L.structures_match) r.exit = 1;
}

void degree_table(Report& r, int kmin, const std::vector<std::size_t>& slices, const std::vector<std::size_t>& dims,
                  bool d2) {
  Row head{"k", {}}, slice{"slice", {}}, h{"H", {}};
  for (std::size_t i = 0; i < dims.size(); ++i) {
    head.values.push_back(kmin + static_cast<long long>(i));
    slice.values.push_back(static_cast<long long>(slices[i]));
    h.values.push_back(static_cast<long long>(dims[i]));
  }
  r.table = {head, slice, h};
  r.residuals.emplace_back("d_squared_zero", flag(d2));
  if (!d2) {
    r.failures.push_back("differential does not square to zero");
    r.exit = 1;
  }
}

void cmd_split_cohom(const io::InputDocument& doc, const Options& o, Report& r) {
  const pq3::CohomologyTable t = std::holds_alternative<io::SplitDoc>(doc)
                                     ? pq3::split_cohomology(std::get<io::SplitDoc>(doc).data, o.max_degree)
                                     : pq3::split_cohomology(pq3_of(doc), o.max_degree);
  degree_table(r, 0, t.slice_dims, t.dims, t.d_squared_zero);
}

void cmd_regular(const io::InputDocument& doc, const Options& o, Report& r) {
  const auto& t = expect<io::TwistedDoc>(doc, "twisted_algebra");
  const regq::RegularTable tab = regq::regular_cohomology(t.algebra, o.min_degree, o.reg_max_degree);
  degree_table(r, tab.kmin, tab.slice_dims, tab.dims, tab.d_squared_zero);
}

void cmd_tangent(const io::InputDocument& doc, const Options&, Report& r) {
  const pq3::TangentReport t = pq3::tangent_complex_check(pq3_of(doc));
  r.residuals.emplace_back("vacuous", flag(t.vacuous));
  r.residuals.emplace_back("rho_B_failures", std::to_string(t.rho_b_failures.size()));
  r.residuals.emplace_back("B_rhoT_failures", std::to_string(t.b_rhot_failures.size()));
  for (const auto& [i, b] : t.rho_b_failures) r.failures.push_back("(rho B) at " + idx1({i, b}));
  for (const auto& [a, i] : t.b_rhot_failures) r.failures.push_back("(B rho^T) at " + idx1({a, i}));
  if (!t.valid()) r.exit = 1;
}

using Handler = std::function<void(const io::InputDocument&, const Options&, Report&)>;

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact invariants of twisted Lie algebras and their graded symplectic models"};
  app.require_subcommand(1);
  std::string format = "text";
  app.add_option("--format", format, "output format")->check(CLI::IsMember({"text", "json"}));
  Options opt;
  std::string input;

  struct Entry {
    const char* name;
    const char* help;
    Handler handler;
  };
  const std::vector<Entry> entries = {
      {"validate", "check the structural axioms of any document", cmd_validate},
      {"naive-cohom", "naive cohomology table of a twisted algebra", cmd_naive},
      {"linfty-check", "two-term L-infinity axioms of the associated algebra", cmd_linfty},
      {"morphism-check", "L-infinity morphism rules", cmd_morphism},
      {"split-check", "axioms of split data", cmd_split_check},
      {"solve-h", "find h for the given B", cmd_solve_h},
      {"pq3-verify", "nilpotence of the degree-4 Hamiltonian", cmd_pq3_verify},
      {"derived-brackets", "structures recovered from iterated brackets", cmd_derived},
      {"courant-lift", "lift of Courant data", cmd_courant},
      {"split-cohom", "cohomology of the Hamiltonian differential", cmd_split_cohom},
      {"regular-cohom", "regular cohomology of the vector-field realization", cmd_regular},
      {"tangent-complex", "tangent complex conditions", cmd_tangent},
  };
  std::vector<CLI::App*> subs;
  for (const auto& e : entries) {
    CLI::App* s = app.add_subcommand(e.name, e.help);
    s->add_option("input", input, "input document (JSON)")->required();
    s->fallthrough();
    subs.push_back(s);
  }
  subs[1]->add_option("--pmax", opt.pmax, "largest p")->capture_default_str();
  subs[1]->add_option("--qmax", opt.qmax, "largest q")->capture_default_str();
  subs[9]->add_option("--max-degree", opt.max_degree, "largest degree")->capture_default_str();
  subs[10]->add_option("--min-degree", opt.min_degree, "smallest degree")->capture_default_str();
  subs[10]->add_option("--max-degree", opt.reg_max_degree, "largest degree")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  std::size_t which = 0;
  while (!subs[which]->parsed()) ++which;
  Report r;
  r.command = entries[which].name;
  try {
    std::string raw;
    try {
      const io::InputDocument doc = io::load_document(input, &raw);
      r.input_hash = io::sha256_hex(raw);
      r.name = doc_name(doc);
      entries[which].handler(doc, opt, r);
    } catch (...) {
      if (!raw.empty() && r.input_hash.empty()) r.input_hash = io::sha256_hex(raw);
      throw;
    }
  } catch (const Error& e) {
    r.error = e.what();
    r.exit = exit_for(e.code());
  } catch (const std::exception& e) {
    r.error = e.what();
    r.exit = 2;
  }

  if (format == "json") {
    out << to_json(r).dump(2) << "\n";
  } else {
    render_text(r, out);
    if (!r.error.empty()) err << r.command << ": " << r.error << "\n";
  }
  return r.exit;
}

}  // namespace htwist::cli
