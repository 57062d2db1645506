#pragma once

// Restriction of the 3D field to an invariant surface that is a graph over
// two of the state coordinates.

#include <string>

#include "emdyn/surfaces.hpp"

namespace emdyn {

struct RestrictedSystem {
  InvariantSurface surface;
  PolyVectorField field;   // over the two retained coordinates plus free parameters
  std::string eliminated;  // the coordinate solved for
  MultiPoly elimination;   // its value on the surface, over field.vars()

  /// The 3D point over `point`, given in the order of field.vars().
  std::vector<double> lift(std::span<const double> point) const;
};

/// Solves f = 0 for a state coordinate that appears linearly with a constant
/// coefficient and substitutes it into the other two components. The
/// surface's constraints are imposed; a bound parameter contradicting one is
/// a PreconditionError. No such coordinate (e.g. c = 0 in row (b)) is an
/// UnsupportedError.
RestrictedSystem restrict(const InvariantSurface& surface, const SymbolicParameters& params = {});
RestrictedSystem restrict(const InvariantSurface& surface, const ExactParameters& params);

/// Tabulated family by label "a".."d".
const InvariantSurface& table1_family(const std::string& label);

}  // namespace emdyn
