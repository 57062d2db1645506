#pragma once

// Desingularization of linearly zero planar equilibria at the origin by
// vertical blow-ups (u, v) = (u1, u1 v1), twists (x, y) = (v + alpha u, v)
// and division by common monomial factors.

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "emdyn/equilibria.hpp"

namespace emdyn {

enum class StepKind { twist, vertical_blowup, rescale, translate };
std::string to_string(StepKind k);

struct BlowupStep {
  StepKind kind = StepKind::rescale;
  Rational alpha;           // twist shear, or translation offset in the second coordinate
  MultiPoly factor;         // rescale: before = factor * after (over before's variables)
  PolyVectorField before, after;
  std::string note;
};

/// R_n = P_n y - Q_n x for the lowest degree n with (P_n, Q_n) != 0.
/// Throws PreconditionError if the origin is not an equilibrium.
MultiPoly characteristic_poly(const PolyVectorField& field);
/// Lowest degree n used by characteristic_poly.
int lowest_degree(const PolyVectorField& field);
/// The first coordinate axis (x = 0) is a characteristic direction.
bool first_axis_characteristic(const PolyVectorField& field);

/// "u" -> "u1", "u1" -> "u2".
std::string next_coordinate_name(const std::string& name);

/// (u, v) = (u1, u1 v1). Throws PreconditionError, suggesting a twist, when
/// u = 0 is a characteristic direction.
BlowupStep vertical_blowup(const PolyVectorField& field, std::vector<std::string> new_coords = {});
/// Old coordinates (x, y) = (v + alpha u, v) in terms of the new (u, v).
BlowupStep twist(const PolyVectorField& field, const Rational& alpha,
                 std::vector<std::string> new_coords = {});
/// Undoes twist(., alpha): old (x, y) = ((u - v)/alpha, v).
BlowupStep inverse_twist(const PolyVectorField& field, const Rational& alpha,
                         std::vector<std::string> new_coords = {});
/// Divides both components by their common monomial factor in the coordinates.
BlowupStep rescale_common_factor(const PolyVectorField& field);
/// Moves (0, offset) to the origin.
BlowupStep translate_second(const PolyVectorField& field, const Rational& offset);

struct BlowupNode {
  std::vector<Rational> location;  // in the coordinates of the field it was found in
  PolyVectorField field;           // with the point at the origin
  std::vector<BlowupStep> steps;
  std::vector<BlowupNode> children;  // equilibria on the exceptional divisor
  std::optional<EquilibriumReport> leaf;
  std::optional<std::array<Rational, 2>> exact_eigenvalues;
  bool unresolved = false;
  std::string note;
};

/// Blows up the origin until every equilibrium on the exceptional divisors
/// is hyperbolic or semi-hyperbolic, twisting first (shear alpha = -1, then
/// other small shears) when u = 0 is characteristic. Past max_depth the node
/// is marked unresolved.
BlowupNode analyze_linearly_zero(const PolyVectorField& field, int max_depth = 5);

/// All leaves in depth-first order.
std::vector<const BlowupNode*> leaves(const BlowupNode& root);

/// Eigenvalues of a 2x2 rational matrix when they are rational.
std::optional<std::array<Rational, 2>> rational_eigenvalues(const Rational& a, const Rational& b,
                                                            const Rational& c, const Rational& d);

}  // namespace emdyn
