#pragma once

// Poincare compactification: the induced field in the local charts U_k / V_k
// of the sphere at infinity, with denominators cleared (no Delta(z) factor).

#include <string>
#include <vector>

#include "emdyn/polyalg.hpp"

namespace emdyn {

struct ChartId {
  int dimension = 3;  // 2 or 3
  int index = 1;      // 1..dimension+1
  bool negative = false;  // V chart

  std::string name() const;  // "U1", "V3", ...
  /// Parses "U1".."V4" for the given dimension.
  static ChartId parse(const std::string& name, int dimension);
  bool operator==(const ChartId&) const = default;
};

/// All charts of a dimension, ordered U1, V1, U2, V2, ...
std::vector<ChartId> all_charts(int dimension);

struct ChartSystem {
  ChartId chart;
  PolyVectorField field;  // over the chart coordinates plus any parameters
  int source_degree = 0;
};

/// Default chart coordinate names: (u, v) in the plane, (z1, z2, z3) in space.
std::vector<std::string> default_chart_coords(int dimension);

ChartSystem compactify(const PolyVectorField& field, ChartId chart,
                       std::vector<std::string> chart_coords = {});
ChartSystem compactify_2d(const PolyVectorField& field, ChartId chart,
                          std::vector<std::string> chart_coords = {});
ChartSystem compactify_3d(const PolyVectorField& field, ChartId chart,
                          std::vector<std::string> chart_coords = {});

/// Sets the last chart coordinate to 0 and drops the last component, which
/// must vanish there.
PolyVectorField restrict_to_infinity(const ChartSystem& cs);

/// y4^m f(x1/y4, x2/y4, x3/y4) with m the degree of f in the state
/// coordinates; other variables of f ride along.
MultiPoly boundary_extension(const MultiPoly& f, const std::vector<std::string>& coords = {"x", "y", "z"});

/// The extension restricted to y4 = 0, as a polynomial in x1, x2, x3.
MultiPoly infinity_trace(const MultiPoly& f, const std::vector<std::string>& coords = {"x", "y", "z"});

}  // namespace emdyn
