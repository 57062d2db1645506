#include "emdyn/polyalg.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <ostream>
#include <sstream>

namespace emdyn {

Rational parse_rational(std::string_view text) {
  std::string s(text);
  auto bad = [&] { return ParseError("not a rational number: '" + s + "'"); };
  if (s.empty()) throw bad();
  std::size_t i = 0;
  bool neg = false;
  if (s[i] == '+' || s[i] == '-') neg = s[i++] == '-';
  if (i >= s.size()) throw bad();

  if (auto slash = s.find('/'); slash != std::string::npos) {
    std::string num = s.substr(i, slash - i), den = s.substr(slash + 1);
    auto digits = [](const std::string& d) {
      return !d.empty() && std::all_of(d.begin(), d.end(), [](unsigned char ch) { return std::isdigit(ch); });
    };
    if (!digits(num) || !digits(den)) throw bad();
    mpz_class n(num, 10), d(den, 10);
    if (d == 0) throw bad();
    Rational q{n, d};
    q.canonicalize();
    return neg ? Rational(-q) : q;
  }

  // decimal with optional exponent, converted exactly
  std::string mant;
  long exp10 = 0;
  bool seen_digit = false, seen_dot = false;
  for (; i < s.size(); ++i) {
    char ch = s[i];
    if (std::isdigit(static_cast<unsigned char>(ch))) {
      mant.push_back(ch);
      seen_digit = true;
      if (seen_dot) --exp10;
    } else if (ch == '.' && !seen_dot) {
      seen_dot = true;
    } else {
      break;
    }
  }
  if (!seen_digit) throw bad();
  if (i < s.size()) {
    if (s[i] != 'e' && s[i] != 'E') throw bad();
    ++i;
    std::size_t used = 0;
    long e = 0;
    try {
      e = std::stol(s.substr(i), &used);
    } catch (const std::exception&) {
      throw bad();
    }
    if (i + used != s.size() || used == 0) throw bad();
    exp10 += e;
  }
  mpz_class m(mant, 10);
  mpz_class p;
  mpz_ui_pow_ui(p.get_mpz_t(), 10, static_cast<unsigned long>(std::labs(exp10)));
  Rational q = exp10 >= 0 ? Rational(m * p) : Rational(m, p);
  q.canonicalize();
  return neg ? Rational(-q) : q;
}

std::string to_string(const Rational& q) { return q.get_str(); }

double to_double(const Rational& q) { return q.get_d(); }

// ---------------------------------------------------------------- VarList

VarList::VarList() : vars_(std::make_shared<const std::vector<Variable>>()) {}

VarList::VarList(std::initializer_list<Variable> vars) : VarList(std::vector<Variable>(vars)) {}

VarList::VarList(std::vector<Variable> vars) {
  for (std::size_t i = 0; i < vars.size(); ++i)
    for (std::size_t j = 0; j < i; ++j)
      if (vars[i].name == vars[j].name)
        throw StructuralError("duplicate variable '" + vars[i].name + "'");
  vars_ = std::make_shared<const std::vector<Variable>>(std::move(vars));
}

VarList VarList::of(std::initializer_list<std::string_view> names, VarRole role) {
  std::vector<Variable> v;
  for (auto n : names) v.push_back({std::string(n), role});
  return VarList(std::move(v));
}

std::optional<std::size_t> VarList::find(std::string_view name) const {
  for (std::size_t i = 0; i < vars_->size(); ++i)
    if ((*vars_)[i].name == name) return i;
  return std::nullopt;
}

std::size_t VarList::index_of(std::string_view name) const {
  if (auto i = find(name)) return *i;
  throw StructuralError("unknown variable '" + std::string(name) + "'");
}

VarList VarList::extended(const std::vector<Variable>& extra) const {
  std::vector<Variable> v(*vars_);
  for (const auto& e : extra)
    if (!contains(e.name)) v.push_back(e);
  return VarList(std::move(v));
}

VarList VarList::without(const std::vector<std::string>& names) const {
  std::vector<Variable> v;
  for (const auto& x : *vars_)
    if (std::find(names.begin(), names.end(), x.name) == names.end()) v.push_back(x);
  return VarList(std::move(v));
}

std::vector<std::string> VarList::names() const {
  std::vector<std::string> out;
  for (const auto& v : *vars_) out.push_back(v.name);
  return out;
}

bool VarList::operator==(const VarList& other) const {
  return vars_ == other.vars_ || *vars_ == *other.vars_;
}

// ---------------------------------------------------------------- ordering

int total_degree(const Exponents& e) {
  return std::accumulate(e.begin(), e.end(), 0);
}

bool GradedLexDescending::operator()(const Exponents& a, const Exponents& b) const {
  int da = total_degree(a), db = total_degree(b);
  if (da != db) return da > db;
  return std::lexicographical_compare(b.begin(), b.end(), a.begin(), a.end());
}

// ---------------------------------------------------------------- MultiPoly

MultiPoly::MultiPoly(VarList vars, TermMap terms) : vars_(std::move(vars)) {
  for (auto& [e, c] : terms) {
    if (e.size() != vars_.size()) throw StructuralError("exponent vector length mismatch");
    add_term(e, c);
  }
}

MultiPoly MultiPoly::constant(const VarList& vars, const Rational& value) {
  MultiPoly p(vars);
  p.add_term(Exponents(vars.size(), 0), value);
  return p;
}

MultiPoly MultiPoly::variable(const VarList& vars, std::string_view name) {
  Exponents e(vars.size(), 0);
  e[vars.index_of(name)] = 1;
  return monomial(vars, std::move(e), 1);
}

MultiPoly MultiPoly::monomial(const VarList& vars, Exponents exps, const Rational& coeff) {
  if (exps.size() != vars.size()) throw StructuralError("exponent vector length mismatch");
  MultiPoly p(vars);
  p.add_term(exps, coeff);
  return p;
}

void MultiPoly::add_term(const Exponents& e, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

void MultiPoly::require_same_vars(const MultiPoly& q, const char* op) const {
  if (!(vars_ == q.vars_))
    throw StructuralError(std::string(op) + ": operands have different variable lists");
}

bool MultiPoly::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && emdyn::total_degree(terms_.begin()->first) == 0);
}

Rational MultiPoly::constant_term() const { return coefficient(Exponents(vars_.size(), 0)); }

Rational MultiPoly::coefficient(const Exponents& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? Rational(0) : it->second;
}

int MultiPoly::total_degree() const {
  return terms_.empty() ? -1 : emdyn::total_degree(terms_.begin()->first);
}

int MultiPoly::degree_in(std::string_view var) const {
  std::size_t i = vars_.index_of(var);
  int d = terms_.empty() ? -1 : 0;
  for (const auto& [e, c] : terms_) d = std::max(d, int(e[i]));
  return d;
}

int MultiPoly::degree_in(std::span<const std::size_t> indices) const {
  int d = -1;
  for (const auto& [e, c] : terms_) {
    int k = 0;
    for (auto i : indices) k += e[i];
    d = std::max(d, k);
  }
  return d;
}

int MultiPoly::low_degree_in(std::span<const std::size_t> indices) const {
  int d = -1;
  for (const auto& [e, c] : terms_) {
    int k = 0;
    for (auto i : indices) k += e[i];
    d = d < 0 ? k : std::min(d, k);
  }
  return d;
}

bool MultiPoly::depends_on(std::string_view var) const { return degree_in(var) > 0; }

MultiPoly MultiPoly::operator-() const {
  MultiPoly p(*this);
  for (auto& [e, c] : p.terms_) c = -c;
  return p;
}

MultiPoly& MultiPoly::operator+=(const MultiPoly& q) {
  require_same_vars(q, "add");
  for (const auto& [e, c] : q.terms_) add_term(e, c);
  return *this;
}

MultiPoly& MultiPoly::operator-=(const MultiPoly& q) {
  require_same_vars(q, "subtract");
  for (const auto& [e, c] : q.terms_) add_term(e, -c);
  return *this;
}

MultiPoly operator*(const MultiPoly& p, const MultiPoly& q) {
  p.require_same_vars(q, "multiply");
  MultiPoly r(p.vars_);
  Exponents e(p.vars_.size());
  for (const auto& [ea, ca] : p.terms_)
    for (const auto& [eb, cb] : q.terms_) {
      for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
      r.add_term(e, ca * cb);
    }
  return r;
}

MultiPoly& MultiPoly::operator*=(const MultiPoly& q) { return *this = *this * q; }

MultiPoly& MultiPoly::operator*=(const Rational& q) {
  if (q == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, c] : terms_) c *= q;
  return *this;
}

MultiPoly operator+(MultiPoly p, const Rational& q) {
  p.add_term(Exponents(p.vars_.size(), 0), q);
  return p;
}

MultiPoly MultiPoly::pow(unsigned k) const {
  MultiPoly result = constant(vars_, 1), base = *this;
  while (k) {
    if (k & 1u) result *= base;
    k >>= 1;
    if (k) base *= base;
  }
  return result;
}

bool operator==(const MultiPoly& p, const MultiPoly& q) {
  return p.vars_ == q.vars_ && p.terms_ == q.terms_;
}

double MultiPoly::evaluate(std::span<const double> point) const {
  if (point.size() != vars_.size()) throw StructuralError("evaluate: point dimension mismatch");
  double s = 0;
  for (const auto& [e, c] : terms_) {
    double t = c.get_d();
    for (std::size_t i = 0; i < e.size(); ++i)
      for (int k = 0; k < e[i]; ++k) t *= point[i];
    s += t;
  }
  return s;
}

Rational MultiPoly::evaluate(std::span<const Rational> point) const {
  if (point.size() != vars_.size()) throw StructuralError("evaluate: point dimension mismatch");
  Rational s = 0;
  for (const auto& [e, c] : terms_) {
    Rational t = c;
    for (std::size_t i = 0; i < e.size(); ++i)
      for (int k = 0; k < e[i]; ++k) t *= point[i];
    s += t;
  }
  return s;
}

MultiPoly MultiPoly::rebase(const VarList& target) const {
  if (vars_ == target) return *this;
  std::vector<std::size_t> map(vars_.size());
  std::vector<bool> used(vars_.size(), false);
  for (const auto& [e, c] : terms_)
    for (std::size_t i = 0; i < e.size(); ++i)
      if (e[i]) used[i] = true;
  for (std::size_t i = 0; i < vars_.size(); ++i) {
    auto j = target.find(vars_[i].name);
    if (!j) {
      if (used[i])
        throw StructuralError("rebase: variable '" + vars_[i].name + "' missing from target");
      continue;
    }
    map[i] = *j;
  }
  MultiPoly r(target);
  for (const auto& [e, c] : terms_) {
    Exponents f(target.size(), 0);
    for (std::size_t i = 0; i < e.size(); ++i)
      if (e[i]) f[map[i]] = e[i];
    r.add_term(f, c);
  }
  return r;
}

std::string MultiPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    Rational mag = abs(c);
    if (first) {
      if (c < 0) os << '-';
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    first = false;
    bool any_var = emdyn::total_degree(e) > 0;
    bool wrote = false;
    if (!any_var || mag != 1) {
      os << mag.get_str();
      wrote = true;
    }
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (!e[i]) continue;
      if (wrote) os << '*';
      os << vars_[i].name;
      if (e[i] > 1) os << '^' << e[i];
      wrote = true;
    }
  }
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const MultiPoly& p) { return os << p.to_string(); }

// ---------------------------------------------------------------- operators

MultiPoly partial_derivative(const MultiPoly& p, std::string_view var) {
  std::size_t i = p.vars().index_of(var);
  MultiPoly::TermMap out;
  for (const auto& [e, c] : p.terms()) {
    if (!e[i]) continue;
    Exponents f = e;
    --f[i];
    out[f] += c * e[i];
  }
  return MultiPoly(p.vars(), std::move(out));
}

MultiPoly substitute(const MultiPoly& p, const std::map<std::string, MultiPoly>& bindings,
                     const VarList& target) {
  const VarList& src = p.vars();
  for (const auto& [name, q] : bindings) {
    if (!src.contains(name)) throw StructuralError("substitute: unknown variable '" + name + "'");
    if (!(q.vars() == target))
      throw StructuralError("substitute: binding for '" + name + "' is not over the target variables");
  }
  // Per source variable: either a bound polynomial or a target slot.
  std::vector<const MultiPoly*> bound(src.size(), nullptr);
  std::vector<std::optional<std::size_t>> slot(src.size());
  for (std::size_t i = 0; i < src.size(); ++i) {
    if (auto it = bindings.find(src[i].name); it != bindings.end())
      bound[i] = &it->second;
    else
      slot[i] = target.find(src[i].name);
  }
  std::map<std::pair<std::size_t, int>, MultiPoly> powers;
  auto power = [&](std::size_t i, int k) -> const MultiPoly& {
    auto key = std::make_pair(i, k);
    auto it = powers.find(key);
    if (it == powers.end()) it = powers.emplace(key, bound[i]->pow(k)).first;
    return it->second;
  };

  MultiPoly result(target);
  for (const auto& [e, c] : p.terms()) {
    Exponents base(target.size(), 0);
    MultiPoly term = MultiPoly::constant(target, c);
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (!e[i]) continue;
      if (bound[i]) {
        term *= power(i, e[i]);
      } else {
        if (!slot[i])
          throw StructuralError("substitute: variable '" + src[i].name + "' missing from target");
        base[*slot[i]] += e[i];
      }
    }
    result += term * MultiPoly::monomial(target, base, 1);
  }
  return result;
}

MultiPoly substitute(const MultiPoly& p, const std::map<std::string, MultiPoly>& bindings) {
  std::map<std::string, MultiPoly> rebased;
  for (const auto& [k, v] : bindings) rebased.emplace(k, v.rebase(p.vars()));
  return substitute(p, rebased, p.vars());
}

MultiPoly bind(const MultiPoly& p, const std::map<std::string, Rational>& values) {
  std::vector<std::string> names;
  for (const auto& [k, v] : values) {
    if (!p.vars().contains(k)) throw StructuralError("bind: unknown variable '" + k + "'");
    names.push_back(k);
  }
  VarList target = p.vars().without(names);
  std::map<std::string, MultiPoly> b;
  for (const auto& [k, v] : values) b.emplace(k, MultiPoly::constant(target, v));
  return substitute(p, b, target);
}

MultiPoly projective_substitute(const MultiPoly& p, const std::vector<std::string>& coords,
                                const std::vector<MultiPoly>& numerators,
                                std::string_view denominator, int n, const VarList& target) {
  if (coords.size() != numerators.size())
    throw StructuralError("projective_substitute: coordinate/numerator count mismatch");
  const VarList& src = p.vars();
  std::vector<std::size_t> ci;
  for (const auto& c : coords) ci.push_back(src.index_of(c));
  MultiPoly w = MultiPoly::variable(target, denominator);

  // Split p by coordinate-degree, then bind each homogeneous slice.
  std::map<std::string, MultiPoly> b;
  for (std::size_t k = 0; k < coords.size(); ++k) b.emplace(coords[k], numerators[k]);
  MultiPoly result(target);
  int top = p.degree_in(std::span<const std::size_t>(ci));
  if (top > n) throw PreconditionError("projective_substitute: degree exceeds n");
  for (int d = 0; d <= top; ++d) {
    MultiPoly slice = homogeneous_part(p, d, coords);
    if (slice.is_zero()) continue;
    result += substitute(slice, b, target) * w.pow(n - d);
  }
  return result;
}

MultiPoly homogeneous_part(const MultiPoly& p, int d, const std::vector<std::string>& over) {
  if (d < 0) throw PreconditionError("homogeneous_part: negative degree");
  std::vector<std::size_t> idx;
  if (over.empty()) {
    idx.resize(p.vars().size());
    std::iota(idx.begin(), idx.end(), 0);
  } else {
    for (const auto& v : over) idx.push_back(p.vars().index_of(v));
  }
  MultiPoly::TermMap out;
  for (const auto& [e, c] : p.terms()) {
    int k = 0;
    for (auto i : idx) k += e[i];
    if (k == d) out.emplace(e, c);
  }
  return MultiPoly(p.vars(), std::move(out));
}

std::map<Exponents, MultiPoly, GradedLexDescending> coefficients_in(
    const MultiPoly& p, const std::vector<std::string>& over) {
  std::vector<std::size_t> idx;
  for (const auto& v : over) idx.push_back(p.vars().index_of(v));
  VarList rest = p.vars().without(over);
  std::vector<std::size_t> rest_idx;
  for (const auto& v : rest) rest_idx.push_back(p.vars().index_of(v.name));

  std::map<Exponents, MultiPoly::TermMap, GradedLexDescending> acc;
  for (const auto& [e, c] : p.terms()) {
    Exponents key, r;
    for (auto i : idx) key.push_back(e[i]);
    for (auto i : rest_idx) r.push_back(e[i]);
    acc[key][r] += c;
  }
  std::map<Exponents, MultiPoly, GradedLexDescending> out;
  for (auto& [k, t] : acc) {
    MultiPoly q(rest, std::move(t));
    if (!q.is_zero()) out.emplace(k, std::move(q));
  }
  return out;
}

Exponents monomial_content(const MultiPoly& p) {
  Exponents m(p.vars().size(), 0);
  bool first = true;
  for (const auto& [e, c] : p.terms()) {
    if (first) {
      m = e;
      first = false;
    } else {
      m = monomial_gcd(m, e);
    }
  }
  return m;
}

Exponents monomial_gcd(const Exponents& a, const Exponents& b) {
  if (a.size() != b.size()) throw StructuralError("monomial_gcd: length mismatch");
  Exponents g(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) g[i] = std::min(a[i], b[i]);
  return g;
}

MultiPoly divide_by_monomial(const MultiPoly& p, const Exponents& m) {
  if (m.size() != p.vars().size()) throw StructuralError("divide_by_monomial: length mismatch");
  MultiPoly::TermMap out;
  for (const auto& [e, c] : p.terms()) {
    Exponents f = e;
    for (std::size_t i = 0; i < f.size(); ++i) {
      if (f[i] < m[i]) throw PreconditionError("divide_by_monomial: division is not exact");
      f[i] -= m[i];
    }
    out.emplace(std::move(f), c);
  }
  return MultiPoly(p.vars(), std::move(out));
}

MultiPoly divide_by_variable(const MultiPoly& p, std::string_view var) {
  Exponents m(p.vars().size(), 0);
  m[p.vars().index_of(var)] = 1;
  try {
    return divide_by_monomial(p, m);
  } catch (const PreconditionError&) {
    throw PreconditionError("not divisible by " + std::string(var) + ": " + p.to_string());
  }
}

bool certified_positive(const MultiPoly& p) {
  if (p.constant_term() <= 0) return false;
  for (const auto& [e, c] : p.terms()) {
    if (c <= 0) return false;
    for (auto k : e)
      if (k % 2) return false;
  }
  return true;
}

// ---------------------------------------------------------------- fields

PolyVectorField::PolyVectorField(std::vector<std::string> coords, std::vector<MultiPoly> components)
    : coords_(std::move(coords)), components_(std::move(components)) {
  if (coords_.empty() || coords_.size() != components_.size())
    throw StructuralError("vector field: coordinate/component count mismatch");
  if (coords_.size() > 4) throw StructuralError("vector field: dimension above 4");
  for (const auto& c : components_)
    if (!(c.vars() == components_.front().vars()))
      throw StructuralError("vector field: components over different variable lists");
  for (const auto& c : coords_) components_.front().vars().index_of(c);
}

std::vector<std::size_t> PolyVectorField::coord_indices() const {
  std::vector<std::size_t> idx;
  for (const auto& c : coords_) idx.push_back(vars().index_of(c));
  return idx;
}

int PolyVectorField::degree() const {
  auto idx = coord_indices();
  int d = -1;
  for (const auto& c : components_) d = std::max(d, c.degree_in(std::span<const std::size_t>(idx)));
  return d;
}

MultiPoly lie_derivative(const PolyVectorField& field, const MultiPoly& f) {
  if (!(f.vars() == field.vars()))
    throw StructuralError("lie_derivative: function is not over the field's variables");
  MultiPoly r(f.vars());
  for (std::size_t i = 0; i < field.dimension(); ++i)
    r += field[i] * partial_derivative(f, field.coords()[i]);
  return r;
}

MultiPoly divergence(const PolyVectorField& field) {
  MultiPoly r(field.vars());
  for (std::size_t i = 0; i < field.dimension(); ++i)
    r += partial_derivative(field[i], field.coords()[i]);
  return r;
}

std::vector<std::vector<MultiPoly>> jacobian(const PolyVectorField& field) {
  std::vector<std::vector<MultiPoly>> j(field.dimension());
  for (std::size_t i = 0; i < field.dimension(); ++i)
    for (const auto& c : field.coords()) j[i].push_back(partial_derivative(field[i], c));
  return j;
}

PolyVectorField bind(const PolyVectorField& field, const std::map<std::string, Rational>& values) {
  std::vector<MultiPoly> comps;
  for (const auto& c : field.components()) comps.push_back(bind(c, values));
  return PolyVectorField(field.coords(), std::move(comps));
}

PolyVectorField scale(const PolyVectorField& field, const Rational& factor) {
  std::vector<MultiPoly> comps;
  for (const auto& c : field.components()) comps.push_back(c * factor);
  return PolyVectorField(field.coords(), std::move(comps));
}

PolyVectorField parse_field(const std::vector<std::string>& coords,
                            const std::vector<std::string>& components, const VarList& vars) {
  std::vector<MultiPoly> comps;
  for (const auto& s : components) comps.push_back(parse_poly(s, vars));
  return PolyVectorField(coords, std::move(comps));
}

std::ostream& operator<<(std::ostream& os, const PolyVectorField& f) {
  for (std::size_t i = 0; i < f.dimension(); ++i) {
    if (i) os << "; ";
    os << f.coords()[i] << "' = " << f[i];
  }
  return os;
}

}  // namespace emdyn
