#pragma once

// Degree-2 invariant algebraic surfaces f = 0 with X f = k f, k of degree <= 1,
// and the Darboux invariants f e^{sigma t} they induce.

#include <string>
#include <vector>

#include "emdyn/polyalg.hpp"
#include "emdyn/system.hpp"

namespace emdyn {

/// One parameter relation "name = value".
struct ParamConstraint {
  std::string param;
  Rational value;
  bool holds(const ExactParameters& p) const;
  std::string to_string() const { return param + " = " + value.get_str(); }
  bool operator==(const ParamConstraint&) const = default;
};

struct InvariantSurface {
  std::string label;  // "a".."d", empty when not one of the tabulated families
  MultiPoly f;        // over state_param_vars() or state_vars()
  MultiPoly cofactor;
  std::vector<ParamConstraint> constraints;

  bool admits(const ExactParameters& p) const;
};

struct DarbouxInvariant {
  MultiPoly f;
  Rational exponent;  // I = f e^{exponent t}
};

/// The unknown-coefficient polynomial ring: a0..a9, k1..k4 (unknown role)
/// followed by s, r, c.
const VarList& ansatz_vars();

/// f = a0 + a1 x + a2 y + a3 z + a4 x^2 + a5 xy + a6 xz + a7 y^2 + a8 yz + a9 z^2
/// and k = k1 x + k2 y + k3 z + k4, over x, y, z followed by ansatz_vars().
MultiPoly surface_ansatz();
MultiPoly cofactor_ansatz();

struct MatchingEquation {
  std::string label;    // "i".."xx"
  Exponents monomial;   // exponents of x, y, z whose coefficient this is
  int sign = 1;         // equation = sign * coefficient
  MultiPoly equation;   // over ansatz_vars()
};

/// The 20 coefficient equations of X f - k f = 0 for the unresolved ansatz,
/// in the order (i)..(xx). Unbound slots of `params` stay symbolic.
std::vector<MatchingEquation> build_matching_system(const SymbolicParameters& params = {});

struct Table1Result {
  std::vector<InvariantSurface> families;   // rows a..d
  std::vector<InvariantSurface> degenerate;  // s = 0: f = a4 x^2 + a1 x + a0, k = 0
  std::vector<std::string> log;              // one line per deduction
};

/// Case analysis of the matching system. Every deduction is checked against
/// the exact reduced equation before it is applied; a mismatch throws
/// StructuralError.
Table1Result solve_table1();

/// Table 1 rows that hold at the given parameters, each bound to them and
/// re-verified exactly.
std::vector<InvariantSurface> find_surfaces_numeric(const ExactParameters& params);

/// X f - k f == 0 exactly. Throws PreconditionError naming the first violated
/// constraint.
bool verify_invariance(const InvariantSurface& surface, const ExactParameters& params);
/// Same identity with only the surface's own constraints imposed, remaining
/// parameters symbolic.
bool verify_invariance_symbolic(const InvariantSurface& surface);

/// Throws UnsupportedError when the cofactor is not constant.
DarbouxInvariant darboux_from_surface(const InvariantSurface& surface);

/// X f + exponent * f, i.e. e^{-exponent t} dI/dt. Zero for a genuine invariant.
MultiPoly darboux_residual(const DarbouxInvariant& inv, const PolyVectorField& field);

}  // namespace emdyn
