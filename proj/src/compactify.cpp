#include "emdyn/compactify.hpp"

namespace emdyn {

std::string ChartId::name() const { return (negative ? "V" : "U") + std::to_string(index); }

ChartId ChartId::parse(const std::string& name, int dimension) {
  if (name.size() != 2 || (name[0] != 'U' && name[0] != 'V') || name[1] < '1' ||
      name[1] > char('1' + dimension))
    throw ParseError("not a chart name in dimension " + std::to_string(dimension) + ": " + name);
  return {dimension, name[1] - '0', name[0] == 'V'};
}

std::vector<ChartId> all_charts(int dimension) {
  std::vector<ChartId> out;
  for (int i = 1; i <= dimension + 1; ++i) {
    out.push_back({dimension, i, false});
    out.push_back({dimension, i, true});
  }
  return out;
}

std::vector<std::string> default_chart_coords(int dimension) {
  if (dimension == 2) return {"u", "v"};
  if (dimension == 3) return {"z1", "z2", "z3"};
  throw StructuralError("compactification is defined in dimension 2 or 3");
}

ChartSystem compactify(const PolyVectorField& field, ChartId chart, std::vector<std::string> chart_coords) {
  const int d = static_cast<int>(field.dimension());
  if (chart.dimension != d) throw StructuralError("chart " + chart.name() + " does not match field dimension");
  if (chart.index < 1 || chart.index > d + 1) throw StructuralError("chart index out of range");
  if (chart_coords.empty()) chart_coords = default_chart_coords(d);
  if (static_cast<int>(chart_coords.size()) != d) throw StructuralError("wrong number of chart coordinates");

  // Chart coordinates first, then whatever non-coordinate variables the field carries.
  std::vector<Variable> vars;
  for (const auto& c : chart_coords) vars.push_back({c, VarRole::chart});
  for (const auto& v : field.vars()) {
    bool is_coord = false;
    for (const auto& c : field.coords()) is_coord |= v.name == c;
    if (!is_coord) vars.push_back(v);
  }
  VarList target(std::move(vars));
  const int n = field.degree();

  std::vector<MultiPoly> comps;
  if (chart.index == d + 1) {
    std::map<std::string, MultiPoly> b;
    for (int i = 0; i < d; ++i) b.emplace(field.coords()[i], MultiPoly::variable(target, chart_coords[i]));
    for (const auto& p : field.components()) comps.push_back(substitute(p, b, target));
  } else {
    const int k = chart.index - 1;
    const std::string& w = chart_coords.back();
    // Coordinate k becomes 1/w; the others, in order, become chart_coords[m]/w.
    std::vector<MultiPoly> num;
    std::vector<int> others;
    for (int i = 0, m = 0; i < d; ++i) {
      if (i == k) {
        num.push_back(MultiPoly::constant(target, 1));
      } else {
        num.push_back(MultiPoly::variable(target, chart_coords[m++]));
        others.push_back(i);
      }
    }
    std::vector<MultiPoly> hat;
    for (const auto& p : field.components())
      hat.push_back(projective_substitute(p, field.coords(), num, w, n, target));
    for (int m = 0; m < d - 1; ++m)
      comps.push_back(-(MultiPoly::variable(target, chart_coords[m]) * hat[k]) + hat[others[m]]);
    comps.push_back(-(MultiPoly::variable(target, w) * hat[k]));
  }
  if (chart.negative && (n - 1) % 2 != 0)
    for (auto& c : comps) c = -c;
  return {chart, PolyVectorField(chart_coords, std::move(comps)), n};
}

ChartSystem compactify_2d(const PolyVectorField& field, ChartId chart, std::vector<std::string> chart_coords) {
  if (field.dimension() != 2) throw StructuralError("compactify_2d needs a planar field");
  return compactify(field, chart, std::move(chart_coords));
}

ChartSystem compactify_3d(const PolyVectorField& field, ChartId chart, std::vector<std::string> chart_coords) {
  if (field.dimension() != 3) throw StructuralError("compactify_3d needs a spatial field");
  return compactify(field, chart, std::move(chart_coords));
}

PolyVectorField restrict_to_infinity(const ChartSystem& cs) {
  const auto& coords = cs.field.coords();
  const std::string& w = coords.back();
  std::vector<MultiPoly> comps;
  for (std::size_t i = 0; i + 1 < coords.size(); ++i) comps.push_back(bind(cs.field[i], {{w, 0}}));
  if (!bind(cs.field.components().back(), {{w, 0}}).is_zero())
    throw StructuralError("infinity is not invariant in chart " + cs.chart.name());
  return PolyVectorField(std::vector<std::string>(coords.begin(), coords.end() - 1), std::move(comps));
}

MultiPoly boundary_extension(const MultiPoly& f, const std::vector<std::string>& coords) {
  std::vector<Variable> vars{{"x1", VarRole::chart}, {"x2", VarRole::chart}, {"x3", VarRole::chart},
                             {"y4", VarRole::chart}};
  for (const auto& v : f.vars()) {
    bool is_coord = false;
    for (const auto& c : coords) is_coord |= v.name == c;
    if (!is_coord) vars.push_back(v);
  }
  VarList target(std::move(vars));
  std::vector<std::size_t> idx;
  for (const auto& c : coords) idx.push_back(f.vars().index_of(c));
  int m = std::max(0, f.degree_in(std::span<const std::size_t>(idx)));
  std::vector<MultiPoly> num{MultiPoly::variable(target, "x1"), MultiPoly::variable(target, "x2"),
                             MultiPoly::variable(target, "x3")};
  return projective_substitute(f, coords, num, "y4", m, target);
}

MultiPoly infinity_trace(const MultiPoly& f, const std::vector<std::string>& coords) {
  return bind(boundary_extension(f, coords), {{"y4", 0}});
}

}  // namespace emdyn
