#pragma once

// Finite and infinite equilibria, their linearizations, and the cubic
// x^3 + (1 - r) x - c = 0 whose roots are the finite equilibria.

#include <array>
#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "emdyn/compactify.hpp"
#include "emdyn/system.hpp"

namespace emdyn {

enum class EquilibriumType {
  attracting_focus,
  attracting_node,
  repelling_focus,
  repelling_node,
  saddle,
  semi_hyperbolic_saddle_node,
  linear_center,
  nilpotent,
  degenerate_linearly_zero,
  non_isolated,
};

std::string to_string(EquilibriumType t);

struct EquilibriumReport {
  std::vector<double> location;                // empty for a non-isolated set
  std::optional<std::vector<Rational>> exact;  // when the location is rational
  std::string chart = "finite";                // or "U1", "V2", ...
  std::vector<std::complex<double>> eigenvalues;
  EquilibriumType type = EquilibriumType::degenerate_linearly_zero;
  int multiplicity = 1;
  std::string locus;  // description of a non-isolated set, e.g. "z1 = 0"
};

enum class Region { R_plus, curve, R_minus };
std::string to_string(Region r);

struct DiscriminantRegion {
  double value = 0;
  std::optional<Rational> exact;
  Region region = Region::curve;
};

/// Delta(c, r) = -27 c^2 + 4 (r - 1)^3. Exact sign for rationals; for floats
/// |Delta| <= 1e-12 counts as the curve.
DiscriminantRegion discriminant(const Rational& c, const Rational& r);
DiscriminantRegion discriminant(double c, double r);

struct CubicRoot {
  double x = 0;
  std::optional<Rational> exact;
  int multiplicity = 1;
};

/// Real roots of x^3 + (1 - r) x - c in increasing order. The rational
/// overload decides the region exactly and returns exact roots whenever they
/// are rational (always on the curve).
std::vector<CubicRoot> solve_equilibrium_cubic(double c, double r);
std::vector<CubicRoot> solve_equilibrium_cubic(const Rational& c, const Rational& r);

/// Closed-form real root for 729 c^2 + 4 (3 - 3r)^3 >= 0 (equivalently
/// Delta <= 0). Of the two conjugate cube-root branches the one with the
/// larger radicand is used, which agrees with the printed formula wherever
/// that is defined and stays finite at r = 1.
double cardano_root(double c, double r);
/// The formula exactly as printed; NaN where its denominator vanishes.
double cardano_root_printed(double c, double r);

/// Eigenvalues of [[a, b], [c, d]] without cancellation in the smaller one.
std::array<std::complex<double>, 2> eigenvalues_2x2(double a, double b, double c, double d);

/// Generic planar type from a Jacobian, with `tol` the zero threshold for
/// eigenvalue parts.
EquilibriumType classify_planar(double a, double b, double c, double d, double tol = 1e-12);

/// Equilibrium (x, x) of the restricted field on x^2 - z = 0. Type follows
/// D = 1 + 8r - 24x^2 (D < 0 focus, 0 <= D < 9 node, D > 9 saddle, D = 9
/// saddle-node); float D within 1e-9 of 0 or 9 is snapped to the boundary.
/// Throws PreconditionError if x is not a root.
EquilibriumReport classify_restricted_a(double x, double c, double r);
EquilibriumReport classify_restricted_a(const CubicRoot& x, const Rational& c, const Rational& r);

/// Equilibrium of the restricted field on y^2 + z^2 = c x, y != 0.
EquilibriumReport classify_restricted_b(double y, double z, double c);
/// The unique finite equilibrium of that field: (x, x^2) with x^3 + x = c.
std::array<double, 2> restricted_b_equilibrium(double c);

std::vector<EquilibriumReport> find_finite_equilibria_3d(const FloatParameters& params);

/// Equilibria on the boundary circle of a planar polynomial field with
/// rational coefficients: zeros of u' on v = 0 in U1 and the origin of U2,
/// plus the antipodal copies in V1/V2.
std::vector<EquilibriumReport> infinite_equilibria_2d(const PolyVectorField& field);

/// Equilibria on the sphere at infinity of the full system. Each point is
/// reported once, in the first chart that contains it.
std::vector<EquilibriumReport> infinite_equilibria_3d(const ExactParameters& params);

/// For the restricted field on y^2 + z^2 = c x: an empty list, certified by
/// u' having constant sign on v = 0 in U1 and U2. Throws UnsupportedError for
/// c = 0.
std::vector<EquilibriumReport> infinite_equilibria_restricted_b(const Rational& c);

}  // namespace emdyn
