#include "emdyn/system.hpp"

namespace emdyn {

FloatParameters to_float(const ExactParameters& p) {
  return {p.s.get_d(), p.r.get_d(), p.c.get_d()};
}

std::string describe(const ExactParameters& p) {
  return "s=" + p.s.get_str() + " r=" + p.r.get_str() + " c=" + p.c.get_str();
}

const VarList& state_vars() {
  static const VarList v = VarList::of({"x", "y", "z"}, VarRole::state);
  return v;
}

const VarList& state_param_vars() {
  static const VarList v({{"x", VarRole::state},
                          {"y", VarRole::state},
                          {"z", VarRole::state},
                          {"s", VarRole::parameter},
                          {"r", VarRole::parameter},
                          {"c", VarRole::parameter}});
  return v;
}

namespace {

PolyVectorField build(const VarList& v, const MultiPoly& s, const MultiPoly& r, const MultiPoly& c) {
  MultiPoly x = MultiPoly::variable(v, "x"), y = MultiPoly::variable(v, "y"),
            z = MultiPoly::variable(v, "z");
  return PolyVectorField({"x", "y", "z"}, {s * (y - x), r * x - x * z - y + c, x * y - z});
}

}  // namespace

PolyVectorField em_field(const ExactParameters& p) {
  const VarList& v = state_vars();
  return build(v, MultiPoly::constant(v, p.s), MultiPoly::constant(v, p.r),
               MultiPoly::constant(v, p.c));
}

PolyVectorField em_field(const SymbolicParameters& p) {
  const VarList& v = state_param_vars();
  auto slot = [&](const std::optional<Rational>& q, const char* name) {
    return q ? MultiPoly::constant(v, *q) : MultiPoly::variable(v, name);
  };
  return build(v, slot(p.s, "s"), slot(p.r, "r"), slot(p.c, "c"));
}

MultiPoly bind_params(const MultiPoly& p, const ExactParameters& params) {
  std::map<std::string, Rational> values;
  if (p.vars().contains("s")) values["s"] = params.s;
  if (p.vars().contains("r")) values["r"] = params.r;
  if (p.vars().contains("c")) values["c"] = params.c;
  return emdyn::bind(p, values);
}

}  // namespace emdyn
