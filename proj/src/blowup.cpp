#include "emdyn/blowup.hpp"

#include <cctype>

#include "numeric_util.hpp"

namespace emdyn {

std::string to_string(StepKind k) {
  switch (k) {
    case StepKind::twist: return "twist";
    case StepKind::vertical_blowup: return "vertical_blowup";
    case StepKind::rescale: return "rescale";
    case StepKind::translate: return "translate";
  }
  return "?";
}

namespace {

void require_planar(const PolyVectorField& f) {
  if (f.dimension() != 2) throw PreconditionError("blow-up needs a planar field");
}

std::vector<std::string> coords_of(const PolyVectorField& f) { return f.coords(); }

bool origin_is_equilibrium(const PolyVectorField& f) {
  for (const auto& c : f.components())
    if (!homogeneous_part(c, 0, coords_of(f)).is_zero()) return false;
  return true;
}

// Variables of `f` with the coordinates renamed.
VarList renamed(const PolyVectorField& f, const std::vector<std::string>& new_coords) {
  std::vector<Variable> vars;
  for (std::size_t i = 0; i < new_coords.size(); ++i)
    vars.push_back({new_coords[i], f.vars()[f.vars().index_of(f.coords()[i])].role});
  for (const auto& v : f.vars())
    if (std::find(f.coords().begin(), f.coords().end(), v.name) == f.coords().end()) vars.push_back(v);
  return VarList(std::move(vars));
}

std::vector<std::string> default_next(const PolyVectorField& f, std::vector<std::string> given) {
  if (!given.empty()) return given;
  return {next_coordinate_name(f.coords()[0]), next_coordinate_name(f.coords()[1])};
}

// Old coordinates expressed over the new variable list; returns the old
// field components evaluated there.
std::array<MultiPoly, 2> pull_back(const PolyVectorField& f, const VarList& target, const MultiPoly& X,
                                   const MultiPoly& Y) {
  std::map<std::string, MultiPoly> sub{{f.coords()[0], X}, {f.coords()[1], Y}};
  return {substitute(f[0], sub, target), substitute(f[1], sub, target)};
}

MultiPoly coord_zero_part(const MultiPoly& p, const std::vector<std::string>& coords) {
  return homogeneous_part(p, 0, coords);
}

}  // namespace

int lowest_degree(const PolyVectorField& field) {
  require_planar(field);
  auto idx = field.coord_indices();
  int n = -1;
  for (const auto& c : field.components()) {
    int d = c.low_degree_in(idx);
    if (d >= 0 && (n < 0 || d < n)) n = d;
  }
  return n;
}

MultiPoly characteristic_poly(const PolyVectorField& field) {
  require_planar(field);
  if (!origin_is_equilibrium(field))
    throw PreconditionError("the origin is not an equilibrium of " + field[0].to_string() + ", " +
                            field[1].to_string());
  int n = lowest_degree(field);
  const auto& co = field.coords();
  if (n < 0) return MultiPoly(field.vars());
  MultiPoly Pn = homogeneous_part(field[0], n, co), Qn = homogeneous_part(field[1], n, co);
  return Pn * MultiPoly::variable(field.vars(), co[1]) - Qn * MultiPoly::variable(field.vars(), co[0]);
}

bool first_axis_characteristic(const PolyVectorField& field) {
  MultiPoly R = characteristic_poly(field);
  // x = 0 is characteristic iff R(0, y) vanishes identically
  return bind(R, {{field.coords()[0], 0}}).is_zero();
}

std::string next_coordinate_name(const std::string& name) {
  std::size_t i = name.size();
  while (i > 0 && std::isdigit(static_cast<unsigned char>(name[i - 1]))) --i;
  int n = i < name.size() ? std::stoi(name.substr(i)) : 0;
  return name.substr(0, i) + std::to_string(n + 1);
}

BlowupStep vertical_blowup(const PolyVectorField& field, std::vector<std::string> new_coords) {
  require_planar(field);
  if (first_axis_characteristic(field))
    throw PreconditionError(field.coords()[0] + " = 0 is a characteristic direction; twist first");
  new_coords = default_next(field, std::move(new_coords));
  VarList t = renamed(field, new_coords);
  MultiPoly a = MultiPoly::variable(t, new_coords[0]), b = MultiPoly::variable(t, new_coords[1]);
  auto [P, Q] = pull_back(field, t, a, a * b);
  MultiPoly db = divide_by_variable(Q - b * P, new_coords[0]);
  return {StepKind::vertical_blowup, 0, MultiPoly::constant(t, 1), field,
          PolyVectorField(new_coords, {P, db}),
          "(" + field.coords()[0] + ", " + field.coords()[1] + ") = (" + new_coords[0] + ", " + new_coords[0] +
              "*" + new_coords[1] + ")"};
}

BlowupStep twist(const PolyVectorField& field, const Rational& alpha, std::vector<std::string> new_coords) {
  require_planar(field);
  if (alpha == 0) throw PreconditionError("twist needs alpha != 0");
  new_coords = default_next(field, std::move(new_coords));
  VarList t = renamed(field, new_coords);
  MultiPoly a = MultiPoly::variable(t, new_coords[0]), b = MultiPoly::variable(t, new_coords[1]);
  auto [P, Q] = pull_back(field, t, b + a * alpha, b);
  return {StepKind::twist, alpha, MultiPoly::constant(t, 1), field,
          PolyVectorField(new_coords, {(P - Q) * Rational(1 / alpha), Q}),
          "(" + field.coords()[0] + ", " + field.coords()[1] + ") = (" + new_coords[1] + " + " +
              alpha.get_str() + "*" + new_coords[0] + ", " + new_coords[1] + ")"};
}

BlowupStep inverse_twist(const PolyVectorField& field, const Rational& alpha, std::vector<std::string> new_coords) {
  require_planar(field);
  if (alpha == 0) throw PreconditionError("twist needs alpha != 0");
  new_coords = default_next(field, std::move(new_coords));
  VarList t = renamed(field, new_coords);
  MultiPoly a = MultiPoly::variable(t, new_coords[0]), b = MultiPoly::variable(t, new_coords[1]);
  auto [P, Q] = pull_back(field, t, (a - b) * Rational(1 / alpha), b);
  return {StepKind::twist, 1 / alpha, MultiPoly::constant(t, 1), field,
          PolyVectorField(new_coords, {P * alpha + Q, Q}), "inverse of the shear " + alpha.get_str()};
}

BlowupStep rescale_common_factor(const PolyVectorField& field) {
  require_planar(field);
  Exponents m = monomial_gcd(monomial_content(field[0]), monomial_content(field[1]));
  auto idx = field.coord_indices();
  Exponents only(m.size(), 0);
  for (std::size_t i : idx) only[i] = m[i];
  MultiPoly factor = MultiPoly::monomial(field.vars(), only, 1);
  PolyVectorField after(field.coords(), {divide_by_monomial(field[0], only), divide_by_monomial(field[1], only)});
  std::string note;
  for (std::size_t i : idx)
    if (only[i] % 2) note += (note.empty() ? "" : "; ") + std::string("orbits reversed where ") + field.vars()[i].name + " < 0";
  return {StepKind::rescale, 0, factor, field, after, note};
}

BlowupStep translate_second(const PolyVectorField& field, const Rational& offset) {
  require_planar(field);
  const VarList& t = field.vars();
  const auto& co = field.coords();
  auto [P, Q] = pull_back(field, t, MultiPoly::variable(t, co[0]), MultiPoly::variable(t, co[1]) + offset);
  return {StepKind::translate, offset, MultiPoly::constant(t, 1), field, PolyVectorField(co, {P, Q}),
          co[1] + " -> " + co[1] + " + " + offset.get_str()};
}

std::optional<std::array<Rational, 2>> rational_eigenvalues(const Rational& a, const Rational& b,
                                                            const Rational& c, const Rational& d) {
  Rational disc = (a - d) * (a - d) + 4 * b * c;
  if (disc < 0) return std::nullopt;
  mpz_class n = disc.get_num(), q = disc.get_den();
  if (!mpz_perfect_square_p(n.get_mpz_t()) || !mpz_perfect_square_p(q.get_mpz_t())) return std::nullopt;
  Rational s(mpz_class(sqrt(n)), mpz_class(sqrt(q)));
  s.canonicalize();
  Rational T = a + d;
  return std::array<Rational, 2>{(T - s) / 2, (T + s) / 2};
}

namespace {

// Linear part at the origin when it does not depend on free parameters.
std::optional<std::array<Rational, 4>> constant_linear_part(const PolyVectorField& f) {
  std::array<Rational, 4> J;
  const auto& co = f.coords();
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      MultiPoly e = coord_zero_part(partial_derivative(f[i], co[j]), co);
      if (!e.is_constant()) return std::nullopt;
      J[2 * i + j] = e.constant_term();
    }
  return J;
}

bool resolved_type(EquilibriumType t) {
  switch (t) {
    case EquilibriumType::saddle:
    case EquilibriumType::attracting_node:
    case EquilibriumType::repelling_node:
    case EquilibriumType::attracting_focus:
    case EquilibriumType::repelling_focus:
    case EquilibriumType::semi_hyperbolic_saddle_node:
      return true;
    default:
      return false;
  }
}

BlowupNode analyze(const PolyVectorField& field, std::vector<Rational> location, int depth) {
  BlowupNode node;
  node.location = std::move(location);
  node.field = field;
  auto J = constant_linear_part(field);
  if (!J) {
    node.unresolved = true;
    node.note = "linear part depends on free parameters";
    return node;
  }
  bool zero = std::all_of(J->begin(), J->end(), [](const Rational& q) { return q == 0; });
  if (!zero) {
    EquilibriumReport rep;
    rep.chart = field.coords()[0] + "," + field.coords()[1];
    for (const auto& q : node.location) rep.location.push_back(q.get_d());
    rep.exact = node.location;
    auto ev = eigenvalues_2x2((*J)[0].get_d(), (*J)[1].get_d(), (*J)[2].get_d(), (*J)[3].get_d());
    rep.eigenvalues = {ev[0], ev[1]};
    rep.type = classify_planar((*J)[0].get_d(), (*J)[1].get_d(), (*J)[2].get_d(), (*J)[3].get_d());
    node.exact_eigenvalues = rational_eigenvalues((*J)[0], (*J)[1], (*J)[2], (*J)[3]);
    if (node.exact_eigenvalues)
      rep.eigenvalues = {(*node.exact_eigenvalues)[0].get_d(), (*node.exact_eigenvalues)[1].get_d()};
    node.leaf = rep;
    if (!resolved_type(rep.type)) {
      node.unresolved = true;
      node.note = "nonzero linear part of type " + to_string(rep.type);
    }
    return node;
  }
  if (depth <= 0) {
    node.unresolved = true;
    node.note = "depth exhausted";
    return node;
  }

  PolyVectorField cur = field;
  if (first_axis_characteristic(cur)) {
    if (characteristic_poly(cur).is_zero()) {
      node.unresolved = true;
      node.note = "every direction is characteristic";
      return node;
    }
    bool done = false;
    for (Rational alpha : {Rational(-1), Rational(1), Rational(-2), Rational(2), Rational(1, 2), Rational(-1, 2)}) {
      BlowupStep t = twist(cur, alpha);
      if (first_axis_characteristic(t.after)) continue;
      cur = t.after;
      node.steps.push_back(std::move(t));
      done = true;
      break;
    }
    if (!done) {
      node.unresolved = true;
      node.note = "no small shear moves the characteristic directions off the vertical axis";
      return node;
    }
  }
  BlowupStep b = vertical_blowup(cur);
  cur = b.after;
  node.steps.push_back(std::move(b));
  BlowupStep r = rescale_common_factor(cur);
  if (!r.factor.is_constant()) {
    cur = r.after;
    node.steps.push_back(std::move(r));
  }

  // equilibria on the exceptional divisor {first coordinate = 0}
  const auto& co = cur.coords();
  MultiPoly g1 = bind(cur[0], {{co[0], 0}}), g2 = bind(cur[1], {{co[0], 0}});
  if (g1.is_zero() && g2.is_zero()) {
    node.unresolved = true;
    node.note = "exceptional divisor consists of equilibria";
    return node;
  }
  if (g1.vars().size() != 1 || g2.vars().size() != 1) {
    // free parameters: only proceed if the divisor restriction ignores them
    for (const auto& v : g1.vars())
      if (v.name != co[1] && (g1.depends_on(v.name) || g2.depends_on(v.name))) {
        node.unresolved = true;
        node.note = "divisor equilibria depend on free parameters";
        return node;
      }
    VarList only = VarList::of({co[1]}, VarRole::chart);
    g1 = g1.rebase(only);
    g2 = g2.rebase(only);
  }
  const MultiPoly& g = g2.is_zero() ? g1 : g2;
  std::vector<double> coeffs(std::max(g.total_degree(), 0) + 1, 0.0);
  for (const auto& [e, c] : g.terms()) coeffs[e[0]] = c.get_d();
  for (auto [v, mult] : detail::real_roots(coeffs)) {
    std::optional<Rational> exact;
    for (const auto& q : detail::convergents(v, 1000000)) {
      std::array<Rational, 1> qa{q};
      if (g1.evaluate(qa) == 0 && g2.evaluate(qa) == 0) {
        exact = q;
        break;
      }
    }
    if (!exact) {
      std::array<double, 1> va{v};
      if (std::abs(g1.evaluate(va)) > 1e-9 || std::abs(g2.evaluate(va)) > 1e-9) continue;
      BlowupNode child;
      child.location = {};
      child.field = cur;
      child.unresolved = true;
      child.note = "irrational divisor equilibrium at " + co[1] + " = " + std::to_string(v);
      node.children.push_back(std::move(child));
      continue;
    }
    PolyVectorField shifted = cur;
    std::vector<BlowupStep> pre;
    if (*exact != 0) {
      BlowupStep tr = translate_second(cur, *exact);
      shifted = tr.after;
      pre.push_back(std::move(tr));
    }
    BlowupNode child = analyze(shifted, {0, *exact}, depth - 1);
    child.steps.insert(child.steps.begin(), pre.begin(), pre.end());
    node.children.push_back(std::move(child));
  }
  return node;
}

void collect(const BlowupNode& n, std::vector<const BlowupNode*>& out) {
  if (n.children.empty()) out.push_back(&n);
  for (const auto& c : n.children) collect(c, out);
}

}  // namespace

BlowupNode analyze_linearly_zero(const PolyVectorField& field, int max_depth) {
  require_planar(field);
  if (!origin_is_equilibrium(field)) throw PreconditionError("the origin is not an equilibrium");
  return analyze(field, {0, 0}, max_depth);
}

std::vector<const BlowupNode*> leaves(const BlowupNode& root) {
  std::vector<const BlowupNode*> out;
  collect(root, out);
  return out;
}

}  // namespace emdyn
