#include "emdyn/restrict.hpp"

namespace emdyn {

const InvariantSurface& table1_family(const std::string& label) {
  static const Table1Result t = solve_table1();
  for (const auto& f : t.families)
    if (f.label == label) return f;
  throw PreconditionError("no tabulated family '" + label + "'");
}

RestrictedSystem restrict(const InvariantSurface& surface, const SymbolicParameters& params) {
  SymbolicParameters sp = params;
  for (const auto& c : surface.constraints) {
    std::optional<Rational>& slot = c.param == "s" ? sp.s : c.param == "r" ? sp.r : sp.c;
    if (slot && *slot != c.value) throw PreconditionError("constraint " + c.to_string() + " violated");
    slot = c.value;
  }
  PolyVectorField X = em_field(sp);
  const VarList& full = X.vars();

  std::map<std::string, MultiPoly> bound;
  if (sp.s) bound.emplace("s", MultiPoly::constant(full, *sp.s));
  if (sp.r) bound.emplace("r", MultiPoly::constant(full, *sp.r));
  if (sp.c) bound.emplace("c", MultiPoly::constant(full, *sp.c));
  MultiPoly f = substitute(surface.f.rebase(full), bound);

  std::vector<std::string> kept_names;
  for (const char* p : {"s", "r", "c"})
    if (!bound.count(p)) kept_names.push_back(p);

  for (const char* v : {"x", "y", "z"}) {
    if (f.degree_in(v) != 1) continue;
    auto coeffs = coefficients_in(f, {v});
    const MultiPoly& a = coeffs.at(Exponents{1});
    if (!a.is_constant()) continue;
    Rational k = a.constant_term();
    MultiPoly value = (f - MultiPoly::variable(full, v) * k) * Rational(-1 / k);

    std::vector<Variable> out_vars;
    std::vector<std::string> coords;
    std::vector<std::size_t> comp_idx;
    for (std::size_t i = 0; i < 3; ++i) {
      if (X.coords()[i] == v) continue;
      coords.push_back(X.coords()[i]);
      out_vars.push_back({X.coords()[i], VarRole::state});
      comp_idx.push_back(i);
    }
    for (const auto& p : kept_names) out_vars.push_back({p, VarRole::parameter});
    VarList target(std::move(out_vars));

    std::map<std::string, MultiPoly> sub{{v, value}};
    std::vector<MultiPoly> comps;
    for (std::size_t i : comp_idx) comps.push_back(substitute(X[i], sub).rebase(target));
    return {surface, PolyVectorField(coords, std::move(comps)), v, value.rebase(target)};
  }
  throw UnsupportedError("surface " + f.to_string() +
                         " = 0 is not a graph over two coordinates with constant coefficient");
}

RestrictedSystem restrict(const InvariantSurface& surface, const ExactParameters& params) {
  return restrict(surface, SymbolicParameters::from(params));
}

std::vector<double> RestrictedSystem::lift(std::span<const double> point) const {
  std::vector<double> out(3);
  double e = elimination.evaluate(point);
  std::size_t k = 0;
  for (std::size_t i = 0; i < 3; ++i) {
    const char* name = i == 0 ? "x" : i == 1 ? "y" : "z";
    out[i] = name == eliminated ? e : point[k++];
  }
  return out;
}

}  // namespace emdyn
