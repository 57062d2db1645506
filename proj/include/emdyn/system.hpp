#pragma once

// The Ehrhard-Mueller field
//   x' = s(y - x),  y' = r x - x z - y + c,  z' = x y - z
// and its parameter triple.

#include <optional>
#include <string>

#include "emdyn/polyalg.hpp"

namespace emdyn {

template <class T>
struct Parameters {
  T s{};
  T r{};
  T c{};
};

using ExactParameters = Parameters<Rational>;
using FloatParameters = Parameters<double>;

/// Any unset slot stays a parameter-role indeterminate.
struct SymbolicParameters {
  std::optional<Rational> s, r, c;
  static SymbolicParameters all_free() { return {}; }
  static SymbolicParameters from(const ExactParameters& p) { return {p.s, p.r, p.c}; }
};

FloatParameters to_float(const ExactParameters& p);
std::string describe(const ExactParameters& p);

/// x, y, z
const VarList& state_vars();
/// x, y, z, s, r, c
const VarList& state_param_vars();

PolyVectorField em_field(const ExactParameters& p);
/// Over state_param_vars(); bound slots are constants.
PolyVectorField em_field(const SymbolicParameters& p);

/// Binds s, r, c in a polynomial over state_param_vars() (or any list that
/// contains them) and drops them.
MultiPoly bind_params(const MultiPoly& p, const ExactParameters& params);

}  // namespace emdyn
