#include "emdyn/surfaces.hpp"

#include <algorithm>
#include <array>

namespace emdyn {

bool ParamConstraint::holds(const ExactParameters& p) const {
  const Rational& v = param == "s" ? p.s : param == "r" ? p.r : p.c;
  return v == value;
}

bool InvariantSurface::admits(const ExactParameters& p) const {
  return std::all_of(constraints.begin(), constraints.end(),
                     [&](const ParamConstraint& c) { return c.holds(p); });
}

const VarList& ansatz_vars() {
  static const VarList v = [] {
    std::vector<Variable> vars;
    for (int i = 0; i <= 9; ++i) vars.push_back({"a" + std::to_string(i), VarRole::unknown});
    for (int i = 1; i <= 4; ++i) vars.push_back({"k" + std::to_string(i), VarRole::unknown});
    for (const char* p : {"s", "r", "c"}) vars.push_back({p, VarRole::parameter});
    return VarList(std::move(vars));
  }();
  return v;
}

namespace {

const VarList& full_vars() {
  static const VarList v = [] {
    std::vector<Variable> vars{{"x", VarRole::state}, {"y", VarRole::state}, {"z", VarRole::state}};
    for (const auto& a : ansatz_vars()) vars.push_back(a);
    return VarList(std::move(vars));
  }();
  return v;
}

const std::array<const char*, 6> kQuadraticSlots{"a4", "a5", "a6", "a7", "a8", "a9"};

struct EquationSpec {
  const char* label;
  Exponents monomial;
  int sign;
};

// Which monomial of X f - k f each printed equation collects, and the sign it
// is printed with.
const std::vector<EquationSpec>& equation_specs() {
  static const std::vector<EquationSpec> specs{
      {"i", {0, 0, 0}, 1},     {"ii", {1, 0, 0}, 1},    {"iii", {0, 1, 0}, -1},
      {"iv", {0, 0, 1}, -1},   {"v", {2, 0, 0}, -1},    {"vi", {0, 2, 0}, -1},
      {"vii", {0, 0, 2}, -1},  {"viii", {0, 1, 1}, -1}, {"ix", {1, 0, 1}, -1},
      {"x", {1, 2, 0}, 1},     {"xi", {2, 1, 0}, 1},    {"xii", {2, 0, 1}, -1},
      {"xiii", {1, 1, 1}, -1}, {"xiv", {0, 2, 1}, -1},  {"xv", {1, 0, 2}, -1},
      {"xvi", {0, 1, 2}, -1},  {"xvii", {3, 0, 0}, -1}, {"xviii", {0, 3, 0}, -1},
      {"xix", {0, 0, 3}, -1},  {"xx", {1, 1, 0}, 1}};
  return specs;
}

}  // namespace

MultiPoly surface_ansatz() {
  return parse_poly("a0 + a1*x + a2*y + a3*z + a4*x^2 + a5*x*y + a6*x*z + a7*y^2 + a8*y*z + a9*z^2",
                    full_vars());
}

MultiPoly cofactor_ansatz() { return parse_poly("k1*x + k2*y + k3*z + k4", full_vars()); }

std::vector<MatchingEquation> build_matching_system(const SymbolicParameters& params) {
  PolyVectorField X = em_field(params);
  std::vector<MultiPoly> comps;
  for (const auto& c : X.components()) comps.push_back(c.rebase(full_vars()));
  PolyVectorField field(X.coords(), std::move(comps));

  MultiPoly f = surface_ansatz();
  MultiPoly E = lie_derivative(field, f) - cofactor_ansatz() * f;
  auto coeffs = coefficients_in(E, {"x", "y", "z"});

  std::vector<MatchingEquation> out;
  for (const auto& spec : equation_specs()) {
    MultiPoly eq(ansatz_vars());
    if (auto it = coeffs.find(spec.monomial); it != coeffs.end()) eq = it->second * Rational(spec.sign);
    coeffs.erase(spec.monomial);
    out.push_back({spec.label, spec.monomial, spec.sign, std::move(eq)});
  }
  if (!coeffs.empty()) throw StructuralError("matching system: uncollected monomial in X f - k f");
  return out;
}

// ---------------------------------------------------------------- case tree

namespace {

class Reduction {
 public:
  Reduction(std::vector<std::string>* log, std::string branch) : log_(log), branch_(std::move(branch)) {
    for (auto& e : build_matching_system()) {
      order_.push_back(e.label);
      eqs_.emplace(e.label, std::move(e.equation));
    }
  }

  Reduction fork(const std::string& branch) const {
    Reduction r = *this;
    r.branch_ = branch;
    return r;
  }

  void note(const std::string& text) { log_->push_back("[" + branch_ + "] " + text); }

  MultiPoly P(const std::string& s) const { return parse_poly(s, ansatz_vars()); }

  const MultiPoly& eq(const std::string& label) const { return eqs_.at(label); }

  void assume_nonzero(const std::string& poly, const std::string& why) {
    nonzero_.push_back(apply(P(poly)));
    note("assume " + poly + " != 0 (" + why + ")");
  }

  void set(const std::string& var, const MultiPoly& value, const std::string& why) {
    std::map<std::string, MultiPoly> b{{var, value}};
    for (auto& [l, e] : eqs_) e = substitute(e, b);
    for (auto& [v, val] : assigned_) val = substitute(val, b);
    for (auto& n : nonzero_) {
      n = substitute(n, b);
      if (n.is_zero()) throw StructuralError("case tree: assumed-nonzero factor vanished after " + var);
    }
    assigned_[var] = value;
    if (ansatz_vars()[ansatz_vars().index_of(var)].role == VarRole::parameter) {
      if (!value.is_constant()) throw StructuralError("case tree: non-constant parameter value");
      constraints_.push_back({var, value.constant_term()});
    }
    note(var + " = " + value.to_string() + "  (" + why + ")");
  }

  void set(const std::string& var, const std::string& value, const std::string& why) {
    set(var, P(value), why);
  }

  /// Asserts the reduced equation is exactly `expected`.
  void expect(const std::string& label, const std::string& expected) {
    MultiPoly want = P(expected);
    if (!(eq(label) == want))
      throw StructuralError("case tree [" + branch_ + "]: (" + label + ") reduced to " +
                            eq(label).to_string() + ", expected " + want.to_string());
    note("(" + label + ") reads " + expected + " = 0");
  }

  /// Solves a reduced equation that is linear in `var`: A*var + B = 0. A must
  /// be provably nonzero in this branch.
  void solve(const std::string& label, const std::string& var) {
    const MultiPoly& e = eq(label);
    if (e.degree_in(var) != 1)
      throw StructuralError("case tree [" + branch_ + "]: (" + label + ") = " + e.to_string() +
                            " is not linear in " + var);
    MultiPoly A(ansatz_vars()), B(ansatz_vars());
    std::size_t vi = ansatz_vars().index_of(var);
    for (const auto& [ex, c] : e.terms()) {
      Exponents r = ex;
      r[vi] = 0;
      (ex[vi] ? A : B) += MultiPoly::monomial(ansatz_vars(), r, c);
    }
    if (!nonzero(A))
      throw StructuralError("case tree [" + branch_ + "]: cannot certify " + A.to_string() +
                            " != 0 in (" + label + ")");
    MultiPoly value(ansatz_vars());
    if (A.is_constant()) {
      value = -B * Rational(1 / A.constant_term());
    } else if (!B.is_zero()) {
      if (A.term_count() != 1) throw StructuralError("case tree: non-monomial divisor " + A.to_string());
      const auto& [ma, ca] = *A.terms().begin();
      value = -divide_by_monomial(B, ma) * Rational(1 / ca);
    }
    std::string why = "(" + label + ") " + e.to_string() + " = 0";
    set(var, value, why);
  }

  bool all_quadratic_zero() const {
    for (const char* a : kQuadraticSlots) {
      auto it = assigned_.find(a);
      if (it == assigned_.end() || !it->second.is_zero()) return false;
    }
    return true;
  }

  void require_contradiction() {
    if (!all_quadratic_zero())
      throw StructuralError("case tree [" + branch_ + "]: expected every quadratic coefficient to vanish");
    note("all quadratic coefficients vanish: f is not of degree 2, contradiction");
  }

  bool all_equations_zero() const {
    return std::all_of(eqs_.begin(), eqs_.end(), [](const auto& kv) { return kv.second.is_zero(); });
  }

  InvariantSurface finish(const std::string& label) {
    if (!all_equations_zero()) {
      for (const auto& l : order_)
        if (!eqs_.at(l).is_zero())
          throw StructuralError("case tree [" + branch_ + "]: (" + l + ") left as " +
                                eqs_.at(l).to_string());
    }
    std::map<std::string, MultiPoly> b;
    for (const auto& [v, val] : assigned_) b.emplace(v, val.rebase(full_vars()));
    MultiPoly f = substitute(surface_ansatz(), b);
    MultiPoly k = substitute(cofactor_ansatz(), b);

    // Keep state, parameters and whatever coefficients are still free.
    std::vector<Variable> keep(state_param_vars().begin(), state_param_vars().end());
    for (const auto& v : ansatz_vars())
      if (v.role == VarRole::unknown && (f.depends_on(v.name) || k.depends_on(v.name)))
        keep.push_back(v);
    VarList target(std::move(keep));
    InvariantSurface s{label, f.rebase(target), k.rebase(target), constraints_};
    note("family " + (label.empty() ? std::string("(degenerate)") : "(" + label + ")") +
         ": f = " + s.f.to_string() + ", k = " + s.cofactor.to_string());
    return s;
  }

 private:
  MultiPoly apply(const MultiPoly& p) const {
    return assigned_.empty() ? p : substitute(p, assigned_);
  }

  bool nonzero(const MultiPoly& A) const {
    if (A.is_zero()) return false;
    if (A.is_constant() || certified_positive(A)) return true;
    for (const auto& n : nonzero_) {
      if (n.term_count() == A.term_count() && !n.is_zero()) {
        Rational ratio = A.terms().begin()->second / n.terms().begin()->second;
        if (A == n * ratio) return true;
      }
    }
    // monomial in variables each assumed nonzero
    if (A.term_count() == 1) {
      const Exponents& e = A.terms().begin()->first;
      for (std::size_t i = 0; i < e.size(); ++i) {
        if (!e[i]) continue;
        MultiPoly v = MultiPoly::variable(ansatz_vars(), ansatz_vars()[i].name);
        if (std::none_of(nonzero_.begin(), nonzero_.end(), [&](const MultiPoly& n) { return n == v; }))
          return false;
      }
      return true;
    }
    return false;
  }

  std::vector<std::string>* log_;
  std::string branch_;
  std::vector<std::string> order_;
  std::map<std::string, MultiPoly> eqs_;
  std::map<std::string, MultiPoly> assigned_;
  std::vector<MultiPoly> nonzero_;
  std::vector<ParamConstraint> constraints_;
};

}  // namespace

Table1Result solve_table1() {
  Table1Result out;
  Reduction root(&out.log, "root");

  {
    Reduction t = root.fork("k1 != 0");
    t.assume_nonzero("k1", "hypothesis");
    t.solve("xvii", "a4");
    t.solve("xi", "a6");
    t.solve("xii", "a5");
    t.solve("x", "a8");
    t.solve("xv", "a9");
    t.solve("xiii", "a7");
    t.require_contradiction();
  }
  root.set("k1", "0", "k1 != 0 is contradictory");
  {
    Reduction t = root.fork("k2 != 0");
    t.assume_nonzero("k2", "hypothesis");
    t.solve("xviii", "a7");
    t.solve("xiv", "a8");
    t.solve("xvi", "a9");
    t.solve("x", "a5");
    t.solve("xi", "a6");
    t.expect("xiii", "a4*k2^2");
    t.solve("xiii", "a4");
    t.require_contradiction();
  }
  root.set("k2", "0", "k2 != 0 is contradictory");
  {
    Reduction t = root.fork("k3 != 0");
    t.assume_nonzero("k3", "hypothesis");
    t.solve("xix", "a9");
    t.solve("xiv", "a7");
    t.solve("xvi", "a8");
    t.solve("xv", "a6");
    t.solve("xiii", "a5");
    t.solve("xii", "a4");
    t.require_contradiction();
  }
  root.set("k3", "0", "k3 != 0 is contradictory");

  for (const char* l : {"xiv", "xvi", "xvii", "xviii", "xix"}) root.expect(l, "0");
  root.solve("xii", "a5");
  root.solve("xi", "a6");
  root.solve("xv", "a8");
  root.solve("ix", "a2");
  root.solve("xiii", "a7");
  root.expect("i", "-a0*k4");
  root.expect("vii", "a9*(2 + k4)");

  // Case 1: a9 = 0
  {
    Reduction c1 = root.fork("case 1");
    c1.set("a9", "0", "(vii) first factor");
    c1.assume_nonzero("a4", "degree 2, a4 is the only quadratic slot left");
    c1.solve("v", "k4");
    c1.solve("xx", "a3");
    c1.expect("iv", "2*a4*s*(2*s - 1)");
    {
      Reduction a = c1.fork("case 1, s = 1/2");
      a.set("s", "1/2", "(iv) with a4 != 0");
      a.solve("iii", "a1");
      a.solve("i", "a0");
      a.set("a4", "1", "normalization");
      out.families.push_back(a.finish("a"));
    }
    {
      Reduction d = c1.fork("case 1, s = 0");
      d.set("s", "0", "(iv) with a4 != 0");
      d.set("a4", "1", "normalization");
      out.degenerate.push_back(d.finish(""));
    }
  }

  // Case 2: k4 = -2
  {
    Reduction c2 = root.fork("case 2");
    c2.assume_nonzero("a9", "(vii) first factor nonzero");
    c2.set("k4", "-2", "(vii) second factor");
    c2.solve("i", "a0");
    c2.solve("iv", "a3");
    c2.expect("v", "2*a4*(s - 1)");
    {
      Reduction s1 = c2.fork("subcase 2.1");
      s1.set("a4", "0", "(v) first factor");
      s1.solve("xx", "r");
      s1.expect("ii", "a1*(2 - s)");
      {
        Reduction b = s1.fork("subcase 2.1, s = 2");
        b.set("s", "2", "(ii) second factor");
        b.solve("iii", "a1");
        b.set("a9", "1", "normalization");
        out.families.push_back(b.finish("b"));
      }
      {
        Reduction c = s1.fork("subcase 2.1, a1 = 0");
        c.assume_nonzero("2 - s", "complement of s = 2");
        c.solve("ii", "a1");
        c.solve("iii", "c");
        c.set("a9", "1", "normalization");
        out.families.push_back(c.finish("c"));
      }
    }
    {
      Reduction s2 = c2.fork("subcase 2.2");
      s2.set("s", "1", "(v) second factor");
      s2.solve("ii", "a1");
      s2.solve("iii", "c");
      s2.solve("xx", "a4");
      s2.set("a9", "1", "normalization");
      out.families.push_back(s2.finish("d"));
    }
  }
  return out;
}

// ---------------------------------------------------------------- checks

namespace {

std::map<std::string, Rational> constraint_values(const InvariantSurface& s) {
  std::map<std::string, Rational> v;
  for (const auto& c : s.constraints) v[c.param] = c.value;
  return v;
}

bool identity_holds(const InvariantSurface& s, const PolyVectorField& X) {
  const VarList& vars = s.f.vars();
  std::vector<MultiPoly> comps;
  for (const auto& c : X.components()) comps.push_back(c.rebase(vars));
  PolyVectorField field(X.coords(), std::move(comps));
  return (lie_derivative(field, s.f) - s.cofactor.rebase(vars) * s.f).is_zero();
}

const std::vector<InvariantSurface>& table1_families() {
  static const std::vector<InvariantSurface> fam = solve_table1().families;
  return fam;
}

}  // namespace

bool verify_invariance(const InvariantSurface& surface, const ExactParameters& params) {
  for (const auto& c : surface.constraints)
    if (!c.holds(params))
      throw PreconditionError("constraint " + c.to_string() + " violated by " + describe(params));
  InvariantSurface bound = surface;
  if (surface.f.vars().contains("s")) {
    bound.f = bind_params(surface.f, params);
    bound.cofactor = bind_params(surface.cofactor.rebase(surface.f.vars()), params);
  }
  return identity_holds(bound, em_field(params));
}

bool verify_invariance_symbolic(const InvariantSurface& surface) {
  auto v = constraint_values(surface);
  SymbolicParameters sp;
  if (v.count("s")) sp.s = v["s"];
  if (v.count("r")) sp.r = v["r"];
  if (v.count("c")) sp.c = v["c"];
  InvariantSurface s = surface;
  std::map<std::string, MultiPoly> b;
  for (const auto& [name, val] : v) b.emplace(name, MultiPoly::constant(s.f.vars(), val));
  s.f = substitute(s.f, b);
  s.cofactor = substitute(s.cofactor.rebase(s.f.vars()), b);
  return identity_holds(s, em_field(sp));
}

std::vector<InvariantSurface> find_surfaces_numeric(const ExactParameters& params) {
  std::vector<InvariantSurface> out;
  for (const auto& fam : table1_families()) {
    if (!fam.admits(params)) continue;
    InvariantSurface inst{fam.label, bind_params(fam.f, params),
                          bind_params(fam.cofactor.rebase(fam.f.vars()), params), fam.constraints};
    if (!verify_invariance(inst, params))
      throw StructuralError("surface (" + fam.label + ") failed re-verification at " + describe(params));
    out.push_back(std::move(inst));
  }
  return out;
}

DarbouxInvariant darboux_from_surface(const InvariantSurface& surface) {
  if (!surface.cofactor.is_constant())
    throw UnsupportedError("cofactor " + surface.cofactor.to_string() + " is not constant");
  return {surface.f, -surface.cofactor.constant_term()};
}

MultiPoly darboux_residual(const DarbouxInvariant& inv, const PolyVectorField& field) {
  std::vector<MultiPoly> comps;
  for (const auto& c : field.components()) comps.push_back(c.rebase(inv.f.vars()));
  PolyVectorField X(field.coords(), std::move(comps));
  return lie_derivative(X, inv.f) + inv.f * inv.exponent;
}

}  // namespace emdyn
