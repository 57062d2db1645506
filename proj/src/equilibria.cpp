#include "emdyn/equilibria.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <numbers>

#include "emdyn/restrict.hpp"
#include "numeric_util.hpp"

namespace emdyn {

using detail::convergents;
using detail::real_roots;

std::string to_string(EquilibriumType t) {
  switch (t) {
    case EquilibriumType::attracting_focus: return "attracting_focus";
    case EquilibriumType::attracting_node: return "attracting_node";
    case EquilibriumType::repelling_focus: return "repelling_focus";
    case EquilibriumType::repelling_node: return "repelling_node";
    case EquilibriumType::saddle: return "saddle";
    case EquilibriumType::semi_hyperbolic_saddle_node: return "semi_hyperbolic_saddle_node";
    case EquilibriumType::linear_center: return "linear_center";
    case EquilibriumType::nilpotent: return "nilpotent";
    case EquilibriumType::degenerate_linearly_zero: return "degenerate_linearly_zero";
    case EquilibriumType::non_isolated: return "non_isolated";
  }
  return "?";
}

std::string to_string(Region r) {
  switch (r) {
    case Region::R_plus: return "R_plus";
    case Region::curve: return "curve";
    case Region::R_minus: return "R_minus";
  }
  return "?";
}

DiscriminantRegion discriminant(const Rational& c, const Rational& r) {
  Rational rm = r - 1;
  Rational d = -27 * c * c + 4 * rm * rm * rm;
  Region reg = sgn(d) > 0 ? Region::R_plus : sgn(d) < 0 ? Region::R_minus : Region::curve;
  return {d.get_d(), d, reg};
}

DiscriminantRegion discriminant(double c, double r) {
  double d = -27 * c * c + 4 * std::pow(r - 1, 3);
  Region reg = std::abs(d) <= 1e-12 ? Region::curve : d > 0 ? Region::R_plus : Region::R_minus;
  return {d, std::nullopt, reg};
}

namespace {

double cubic(double x, double c, double r) { return x * x * x + (1 - r) * x - c; }

double newton_polish(double x, double c, double r) {
  for (int i = 0; i < 3; ++i) {
    double d = 3 * x * x + 1 - r;
    if (d == 0) break;
    double nx = x - cubic(x, c, r) / d;
    if (!std::isfinite(nx) || std::abs(cubic(nx, c, r)) > std::abs(cubic(x, c, r))) break;
    x = nx;
  }
  return x;
}

// Sole sign change of the cubic on the Cauchy bracket.
double bisect_single_root(double c, double r) {
  double b = 1 + std::abs(1 - r) + std::abs(c);
  double lo = -b, hi = b;
  for (int i = 0; i < 200 && hi - lo > 0; ++i) {
    double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;
    if (cubic(mid, c, r) < 0) lo = mid;
    else hi = mid;
  }
  return 0.5 * (lo + hi);
}

std::vector<CubicRoot> roots_in_region(double c, double r, Region region) {
  double p = 1 - r;
  std::vector<CubicRoot> out;
  switch (region) {
    case Region::curve:
      if (std::abs(p) <= 1e-12) {
        out.push_back({std::cbrt(c), std::nullopt, 3});
      } else {
        out.push_back({newton_polish(3 * c / (2 * p), c, r), std::nullopt, 2});
        out.push_back({newton_polish(-3 * c / p, c, r), std::nullopt, 1});
      }
      break;
    case Region::R_plus: {
      // three real roots, p < 0
      double m = 2 * std::sqrt(-p / 3);
      double arg = std::clamp((-3 * c / (2 * p)) * std::sqrt(-3 / p), -1.0, 1.0);
      double theta = std::acos(arg) / 3;
      for (int k = 0; k < 3; ++k)
        out.push_back({newton_polish(m * std::cos(theta - 2 * std::numbers::pi * k / 3), c, r), std::nullopt, 1});
      break;
    }
    case Region::R_minus: {
      double x = newton_polish(cardano_root(c, r), c, r);
      double xb = bisect_single_root(c, r);
      if (!std::isfinite(x) || std::abs(x - xb) > 1e-8 * std::max(1.0, std::abs(xb))) x = xb;
      out.push_back({x, std::nullopt, 1});
      break;
    }
  }
  std::sort(out.begin(), out.end(), [](const CubicRoot& a, const CubicRoot& b) { return a.x < b.x; });
  return out;
}

}  // namespace

double cardano_root_printed(double c, double r) {
  double S = std::sqrt(729 * c * c + 4 * std::pow(3 - 3 * r, 3));
  double A = S - 27 * c;
  if (A == 0) return std::nan("");
  double k = std::cbrt(A), t = std::cbrt(2.0);
  return -t * (r - 1) / k - k / (3 * t);
}

double cardano_root(double c, double r) {
  double S = std::sqrt(729 * c * c + 4 * std::pow(3 - 3 * r, 3));
  double A1 = S - 27 * c, A2 = -S - 27 * c;
  double A = std::abs(A1) >= std::abs(A2) ? A1 : A2;
  if (A == 0) return 0;
  double k = std::cbrt(A), t = std::cbrt(2.0);
  return -t * (r - 1) / k - k / (3 * t);
}

std::vector<CubicRoot> solve_equilibrium_cubic(double c, double r) {
  return roots_in_region(c, r, discriminant(c, r).region);
}

std::vector<CubicRoot> solve_equilibrium_cubic(const Rational& c, const Rational& r) {
  DiscriminantRegion d = discriminant(c, r);
  Rational p = 1 - r;
  if (d.region == Region::curve) {
    if (p == 0) return {{0.0, Rational(0), 3}};
    Rational dbl = 3 * c / (2 * p), sim = -3 * c / p;
    std::vector<CubicRoot> out{{dbl.get_d(), dbl, 2}, {sim.get_d(), sim, 1}};
    std::sort(out.begin(), out.end(), [](const CubicRoot& a, const CubicRoot& b) { return a.x < b.x; });
    return out;
  }
  auto out = roots_in_region(c.get_d(), r.get_d(), d.region);
  for (auto& root : out)
    for (const auto& q : convergents(root.x, 1000000))
      if (q * q * q + p * q - c == 0) {
        root.exact = q;
        root.x = q.get_d();
        break;
      }
  return out;
}

std::array<std::complex<double>, 2> eigenvalues_2x2(double a, double b, double c, double d) {
  double m = 0.5 * (a + d), h = 0.5 * (a - d);
  double disc = h * h + b * c;
  if (disc < 0) {
    double w = std::sqrt(-disc);
    return {std::complex<double>(m, w), std::complex<double>(m, -w)};
  }
  double s = std::sqrt(disc);
  double l1 = m >= 0 ? m + s : m - s;
  double det = a * d - b * c;
  double l2 = l1 != 0 ? det / l1 : m - s;
  if (l1 < l2) std::swap(l1, l2);
  return {std::complex<double>(l1, 0), std::complex<double>(l2, 0)};
}

namespace {

EquilibriumType classify_spectrum(const std::vector<std::complex<double>>& ev, bool zero_matrix,
                                  double tol) {
  if (zero_matrix) return EquilibriumType::degenerate_linearly_zero;
  int neg = 0, pos = 0, zero = 0, complex_pairs = 0, centers = 0;
  for (const auto& l : ev) {
    bool im = std::abs(l.imag()) > tol;
    if (im && l.imag() > 0) ++complex_pairs;
    if (std::abs(l.real()) <= tol) {
      if (im) ++centers;
      else ++zero;
    } else if (l.real() < 0) {
      ++neg;
    } else {
      ++pos;
    }
  }
  if (zero >= 2) return EquilibriumType::nilpotent;
  if (zero == 1) return EquilibriumType::semi_hyperbolic_saddle_node;
  if (centers) return EquilibriumType::linear_center;
  if (neg && pos) return EquilibriumType::saddle;
  if (neg) return complex_pairs ? EquilibriumType::attracting_focus : EquilibriumType::attracting_node;
  return complex_pairs ? EquilibriumType::repelling_focus : EquilibriumType::repelling_node;
}

}  // namespace

EquilibriumType classify_planar(double a, double b, double c, double d, double tol) {
  auto ev = eigenvalues_2x2(a, b, c, d);
  double scale = std::max({1.0, std::abs(a), std::abs(b), std::abs(c), std::abs(d)});
  bool zero = std::max({std::abs(a), std::abs(b), std::abs(c), std::abs(d)}) <= tol;
  return classify_spectrum({ev[0], ev[1]}, zero, tol * scale);
}

namespace {

struct NumericJacobian {
  std::vector<std::vector<MultiPoly>> entries;
  std::vector<double> at(std::span<const double> point) const {
    std::vector<double> out;
    for (const auto& row : entries)
      for (const auto& e : row) out.push_back(e.evaluate(point));
    return out;
  }
};

const RestrictedSystem& restricted_a_symbolic() {
  static const RestrictedSystem rs = restrict(table1_family("a"));
  return rs;
}

const NumericJacobian& restricted_a_jacobian() {
  static const NumericJacobian j{jacobian(restricted_a_symbolic().field)};
  return j;
}

// D is the discriminant of the linearization; `on_boundary` means it was
// decided to be exactly 0 or 9, and the eigenvalues are then taken on that
// stratum (a double eigenvalue, or a zero one) from the trace alone, since
// the square root would amplify rounding in D to sqrt(eps).
EquilibriumReport restricted_a_report(double x, double c, double r, double D, bool on_boundary) {
  // vars of the restricted field: x, y, r, c
  std::array<double, 4> pt{x, x, r, c};
  auto J = restricted_a_jacobian().at(pt);
  EquilibriumReport rep;
  rep.location = {x, x};
  double T = J[0] + J[3];
  if (on_boundary && D == 0) {
    rep.eigenvalues = {T / 2, T / 2};
  } else if (on_boundary && D == 9) {
    rep.eigenvalues = {0.0, T};
  } else {
    auto ev = eigenvalues_2x2(J[0], J[1], J[2], J[3]);
    rep.eigenvalues = {ev[0], ev[1]};
  }
  if (D < 0) rep.type = EquilibriumType::attracting_focus;
  else if (D < 9) rep.type = EquilibriumType::attracting_node;
  else if (D > 9) rep.type = EquilibriumType::saddle;
  else rep.type = EquilibriumType::semi_hyperbolic_saddle_node;
  return rep;
}

}  // namespace

EquilibriumReport classify_restricted_a(double x, double c, double r) {
  double scale = 1 + std::abs(x * x * x) + std::abs((1 - r) * x) + std::abs(c);
  if (std::abs(cubic(x, c, r)) > 1e-9 * scale)
    throw PreconditionError("x = " + std::to_string(x) + " is not a root of x^3 + (1 - r) x - c");
  double D = 1 + 8 * r - 24 * x * x;
  double band = 1e-9 * std::max({1.0, std::abs(8 * r), 24 * x * x});
  bool snapped = false;
  if (std::abs(D) <= band) D = 0, snapped = true;
  if (std::abs(D - 9) <= band) D = 9, snapped = true;
  return restricted_a_report(x, c, r, D, snapped);
}

EquilibriumReport classify_restricted_a(const CubicRoot& root, const Rational& c, const Rational& r) {
  if (!root.exact) {
    auto rep = classify_restricted_a(root.x, c.get_d(), r.get_d());
    rep.multiplicity = root.multiplicity;
    return rep;
  }
  const Rational& x = *root.exact;
  if (x * x * x + (1 - r) * x - c != 0)
    throw PreconditionError("x = " + x.get_str() + " is not a root of x^3 + (1 - r) x - c");
  Rational D = 1 + 8 * r - 24 * x * x;
  int s0 = sgn(D), s9 = sgn(D - 9);
  double Dd = s0 < 0 ? -1 : s0 == 0 ? 0 : s9 < 0 ? 1 : s9 > 0 ? 10 : 9;
  auto rep = restricted_a_report(x.get_d(), c.get_d(), r.get_d(), Dd, s0 == 0 || s9 == 0);
  rep.exact = std::vector<Rational>{x, x};
  rep.multiplicity = root.multiplicity;
  return rep;
}

EquilibriumReport classify_restricted_b(double y, double z, double c) {
  if (c == 0) throw UnsupportedError("c = 0: the surface y^2 + z^2 = c x degenerates");
  if (y == 0) throw PreconditionError("y = 0 is excluded");
  RestrictedSystem rs = restrict(table1_family("b"), ExactParameters{2, 0, Rational(c)});
  std::array<double, 2> pt{y, z};
  double fy = rs.field[0].evaluate(pt), fz = rs.field[1].evaluate(pt);
  double scale = 1 + std::abs(c) + (y * y + z * z) * (std::abs(y) + std::abs(z)) / std::abs(c);
  if (std::hypot(fy, fz) > 1e-9 * scale)
    throw PreconditionError("(" + std::to_string(y) + ", " + std::to_string(z) + ") is not an equilibrium");
  auto J = NumericJacobian{jacobian(rs.field)}.at(pt);
  auto ev = eigenvalues_2x2(J[0], J[1], J[2], J[3]);
  EquilibriumReport rep;
  rep.location = {y, z};
  rep.eigenvalues = {ev[0], ev[1]};
  rep.type = classify_planar(J[0], J[1], J[2], J[3]);
  return rep;
}

std::array<double, 2> restricted_b_equilibrium(double c) {
  // with s = 2, r = 0 the finite equilibria are (x, x, x^2), x^3 + x = c
  auto roots = solve_equilibrium_cubic(c, 0.0);
  double x = roots.front().x;
  return {x, x * x};
}

std::vector<EquilibriumReport> find_finite_equilibria_3d(const FloatParameters& p) {
  if (p.s == 0) {
    EquilibriumReport rep;
    rep.type = EquilibriumType::non_isolated;
    rep.locus = "y = (r x + c)/(1 + x^2), z = x y";
    return {rep};
  }
  static const NumericJacobian J{jacobian(em_field(SymbolicParameters{}))};
  std::vector<EquilibriumReport> out;
  for (const auto& root : solve_equilibrium_cubic(p.c, p.r)) {
    double x = root.x;
    std::array<double, 6> pt{x, x, x * x, p.s, p.r, p.c};
    auto j = J.at(pt);
    Eigen::Matrix3d M;
    for (int i = 0; i < 3; ++i)
      for (int k = 0; k < 3; ++k) M(i, k) = j[3 * i + k];
    Eigen::EigenSolver<Eigen::Matrix3d> es(M, false);
    EquilibriumReport rep;
    rep.location = {x, x, x * x};
    for (int i = 0; i < 3; ++i) rep.eigenvalues.push_back(es.eigenvalues()[i]);
    std::sort(rep.eigenvalues.begin(), rep.eigenvalues.end(), [](auto a, auto b) {
      return a.real() != b.real() ? a.real() > b.real() : a.imag() > b.imag();
    });
    double scale = std::max(1.0, M.cwiseAbs().maxCoeff());
    rep.type = classify_spectrum(rep.eigenvalues, false, 1e-9 * scale);
    rep.multiplicity = root.multiplicity;
    out.push_back(std::move(rep));
  }
  return out;
}

namespace {

std::vector<double> exact_jacobian_at(const PolyVectorField& f, std::span<const Rational> pt, bool& zero) {
  std::vector<double> out;
  zero = true;
  for (const auto& row : jacobian(f))
    for (const auto& e : row) {
      Rational v = e.evaluate(pt);
      if (v != 0) zero = false;
      out.push_back(v.get_d());
    }
  return out;
}

EquilibriumReport planar_report(const PolyVectorField& f, std::vector<Rational> exact_pt,
                                std::vector<double> pt, const std::string& chart, int sign) {
  EquilibriumReport rep;
  rep.chart = chart;
  rep.location = pt;
  bool zero = false;
  std::vector<double> J;
  if (exact_pt.size() == pt.size()) {
    rep.exact = exact_pt;
    J = exact_jacobian_at(f, exact_pt, zero);
  } else {
    J = NumericJacobian{jacobian(f)}.at(pt);
    zero = std::all_of(J.begin(), J.end(), [](double v) { return std::abs(v) <= 1e-12; });
  }
  for (auto& v : J) v *= sign;
  auto ev = eigenvalues_2x2(J[0], J[1], J[2], J[3]);
  rep.eigenvalues = {ev[0], ev[1]};
  double scale = std::max(1.0, std::abs(*std::max_element(J.begin(), J.end(),
                                                          [](double a, double b) { return std::abs(a) < std::abs(b); })));
  rep.type = classify_spectrum(rep.eigenvalues, zero, 1e-12 * scale);
  return rep;
}

}  // namespace

std::vector<EquilibriumReport> infinite_equilibria_2d(const PolyVectorField& field) {
  if (field.dimension() != 2 || field.vars().size() != 2)
    throw PreconditionError("infinite_equilibria_2d needs a planar field with all parameters bound");
  std::vector<EquilibriumReport> out;
  int vsign = (field.degree() - 1) % 2 ? -1 : 1;

  auto u1 = compactify_2d(field, {2, 1, false});
  MultiPoly g = bind(u1.field[0], {{"v", 0}});  // over u
  if (g.is_zero()) {
    for (const char* ch : {"U1", "V1"}) {
      EquilibriumReport rep;
      rep.chart = ch;
      rep.type = EquilibriumType::non_isolated;
      rep.locus = "v = 0";
      out.push_back(rep);
    }
    return out;
  }
  std::vector<double> coeffs(g.total_degree() + 1, 0.0);
  for (const auto& [e, c] : g.terms()) coeffs[e[0]] = c.get_d();
  for (auto [u, mult] : real_roots(coeffs)) {
    std::vector<Rational> exact;
    for (const auto& q : convergents(u, 1000000)) {
      std::array<Rational, 1> qa{q};
      if (g.evaluate(qa) == 0) {
        exact = {q, 0};
        u = q.get_d();
        break;
      }
    }
    for (auto [ch, sign] : {std::pair<const char*, int>{"U1", 1}, {"V1", vsign}}) {
      auto rep = planar_report(u1.field, exact, {u, 0.0}, ch, sign);
      rep.multiplicity = mult;
      out.push_back(rep);
    }
  }

  auto u2 = compactify_2d(field, {2, 2, false});
  std::array<Rational, 2> origin{0, 0};
  if (u2.field[0].evaluate(origin) == 0 && u2.field[1].evaluate(origin) == 0) {
    out.push_back(planar_report(u2.field, {0, 0}, {0.0, 0.0}, "U2", 1));
    out.push_back(planar_report(u2.field, {0, 0}, {0.0, 0.0}, "V2", vsign));
  }
  return out;
}

std::vector<EquilibriumReport> infinite_equilibria_3d(const ExactParameters& params) {
  PolyVectorField X = em_field(params);
  std::vector<EquilibriumReport> out;
  for (int k = 1; k <= 3; ++k) {
    ChartSystem cs = compactify_3d(X, {3, k, false});
    PolyVectorField g = restrict_to_infinity(cs);
    const std::string U = "U" + std::to_string(k), V = "V" + std::to_string(k);

    bool linear = std::all_of(g.components().begin(), g.components().end(), [](const MultiPoly& p) {
      return p.is_zero() || (p.total_degree() == 1 && p.constant_term() == 0 &&
                             homogeneous_part(p, 1) == p);
    });
    if (linear) {
      std::array<Rational, 2> o{0, 0};
      bool zero = false;
      auto J = exact_jacobian_at(g, o, zero);
      if (J[0] * J[3] - J[1] * J[2] != 0) {
        for (int sign : {1, -1}) {
          auto rep = planar_report(g, {0, 0}, {0.0, 0.0}, sign == 1 ? U : V, sign);
          rep.location = {0.0, 0.0, 0.0};
          rep.exact = std::vector<Rational>{0, 0, 0};
          out.push_back(rep);
        }
        continue;
      }
    }
    // g = monomial * h with h of constant sign in some component: the zero
    // set is the union of the coordinate lines of the monomial.
    Exponents m = monomial_gcd(monomial_content(g[0]), monomial_content(g[1]));
    bool certified = false;
    for (const auto& comp : g.components()) {
      MultiPoly h = divide_by_monomial(comp, m);
      if (certified_positive(h) || certified_positive(-h)) certified = true;
    }
    if (!certified)
      throw UnsupportedError("cannot certify the zero set at infinity in chart " + U + ": " +
                             g[0].to_string() + ", " + g[1].to_string());
    // Chart k's infinity coordinates are the other original axes in order;
    // points with an earlier axis nonzero were reported in an earlier chart.
    std::vector<bool> earlier{1 < k, 2 < k};
    for (std::size_t j = 0; j < 2; ++j) {
      if (!m[j]) continue;
      std::vector<bool> zeroed = earlier;
      zeroed[j] = true;
      int free = !zeroed[0] + !zeroed[1];
      for (const std::string& ch : {U, V}) {
        EquilibriumReport rep;
        rep.chart = ch;
        rep.type = EquilibriumType::non_isolated;
        if (free == 0) {
          rep.location = {0.0, 0.0, 0.0};
          rep.exact = std::vector<Rational>{0, 0, 0};
        } else {
          rep.locus = "z" + std::to_string(j + 1) + " = 0";
        }
        out.push_back(rep);
      }
    }
  }
  return out;
}

std::vector<EquilibriumReport> infinite_equilibria_restricted_b(const Rational& c) {
  if (c == 0) throw UnsupportedError("c = 0: the surface y^2 + z^2 = c x degenerates");
  RestrictedSystem rs = restrict(table1_family("b"), ExactParameters{2, 0, c});
  bool certified = true;
  for (int k = 1; k <= 2; ++k) {
    auto cs = compactify_2d(rs.field, {2, k, false});
    MultiPoly g = bind(cs.field[0], {{"v", 0}});
    certified = certified && (certified_positive(g) || certified_positive(-g));
  }
  if (certified) return {};
  return infinite_equilibria_2d(rs.field);
}

}  // namespace emdyn
