// Reproduction suites: each check prints what was expected next to what the
// library computed.

#include <algorithm>
#include <cmath>
#include <complex>
#include <random>
#include <sstream>

#include "emdyn/errors.hpp"
#include "emdyn/report.hpp"
#include "emdyn/restrict.hpp"

namespace emdyn {

using nlohmann::json;

namespace {

struct Checks {
  SuiteResult res;
  int failed = 0;

  void line(bool ok, const std::string& what, const std::string& expected, const std::string& computed) {
    res.lines.push_back(std::string(ok ? "ok   " : "FAIL ") + what + ": expected " + expected + ", computed " + computed);
    if (!ok) ++failed;
  }
  void note(const std::string& text) { res.lines.push_back("     " + text); }
  SuiteResult done(std::string name) {
    res.name = std::move(name);
    res.passed = failed == 0;
    res.lines.push_back(std::string(res.passed ? "PASS " : "FAIL ") + res.name + " (" + std::to_string(failed) +
                        " failed checks)");
    return std::move(res);
  }
};

std::string fmt(double v) { return format_double(v); }
std::string fmt(std::complex<double> z) { return "(" + fmt(z.real()) + ", " + fmt(z.imag()) + ")"; }
template <class Pair>
std::string fmt_pair(const Pair& ev) {
  std::string s = "{";
  for (std::size_t i = 0; i < ev.size(); ++i) s += (i ? ", " : "") + fmt(ev[i]);
  return s + "}";
}

// Unordered comparison of two eigenvalue pairs relative to the spectral scale.
double pair_error(const std::vector<std::complex<double>>& got, const std::array<std::complex<double>, 2>& want) {
  if (got.size() != 2) return INFINITY;
  double scale = std::max({1.0, std::abs(want[0]), std::abs(want[1])});
  double a = std::max(std::abs(got[0] - want[0]), std::abs(got[1] - want[1]));
  double b = std::max(std::abs(got[0] - want[1]), std::abs(got[1] - want[0]));
  return std::min(a, b) / scale;
}

// (-3 +- sqrt(1 + 8r - 24x^2)) / 4 in extended precision
std::array<std::complex<double>, 2> lambda_pm(long double x2, long double r) {
  long double D = 1 + 8 * r - 24 * x2;
  std::complex<long double> s = std::sqrt(std::complex<long double>(D, 0));
  auto cv = [](std::complex<long double> z) { return std::complex<double>((double)z.real(), (double)z.imag()); };
  return {cv((-3.0L + s) / 4.0L), cv((-3.0L - s) / 4.0L)};
}

std::string constraints_str(const std::vector<ParamConstraint>& cs) {
  std::string s = "{";
  for (std::size_t i = 0; i < cs.size(); ++i) s += (i ? ", " : "") + cs[i].to_string();
  return s + "}";
}

// ------------------------------------------------------------------ table1
SuiteResult suite_table1() {
  Checks ck;
  struct Row {
    const char* label;
    const char* f;
    int k;
    std::vector<ParamConstraint> constraints;
  };
  const std::vector<Row> rows{{"a", "x^2 - z", -1, {{"s", Rational(1, 2)}}},
                              {"b", "y^2 + z^2 - c*x", -2, {{"s", 2}, {"r", 0}}},
                              {"c", "y^2 + z^2", -2, {{"r", 0}, {"c", 0}}},
                              {"d", "y^2 + z^2 - r*x^2", -2, {{"s", 1}, {"c", 0}}}};
  auto t = solve_table1();
  ck.line(t.families.size() == 4, "family count", "4", std::to_string(t.families.size()));
  int verified = 0;
  for (const auto& row : rows) {
    auto it = std::find_if(t.families.begin(), t.families.end(), [&](const auto& f) { return f.label == row.label; });
    if (it == t.families.end()) {
      ck.line(false, std::string("row ") + row.label, "present", "missing");
      continue;
    }
    MultiPoly f = parse_poly(row.f, state_param_vars());
    MultiPoly k = MultiPoly::constant(state_param_vars(), row.k);
    auto by_name = [](std::vector<ParamConstraint> v) {
      std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) { return a.param < b.param; });
      return v;
    };
    bool same = it->f == f && it->cofactor == k && by_name(it->constraints) == by_name(row.constraints);
    bool inv = verify_invariance_symbolic(*it);
    verified += same && inv;
    ck.line(same && inv, std::string("row ") + row.label,
            std::string("f = ") + row.f + ", k = " + std::to_string(row.k) + ", " + constraints_str(row.constraints),
            "f = " + it->f.to_string() + ", k = " + it->cofactor.to_string() + ", " + constraints_str(it->constraints) +
                (inv ? ", X f - k f = 0" : ", X f - k f != 0"));
  }
  ck.note(std::to_string(verified) + "/4 surfaces verified");
  for (const auto& d : t.degenerate)
    ck.note("degenerate branch " + constraints_str(d.constraints) + ": f = " + d.f.to_string() + ", k = " +
            d.cofactor.to_string());
  ck.res.data = {{"verified", verified}};
  return ck.done("table1");
}

// ------------------------------------------------------------------ prop2
SuiteResult suite_prop2(const SuiteOptions& opt) {
  Checks ck;
  std::mt19937_64 rng(opt.rng_seed);
  std::uniform_int_distribution<int> N(-9, 9);
  for (int i = 0; i < 10; ++i) {
    ExactParameters p{Rational(N(rng), 3), Rational(N(rng), 2), Rational(N(rng), 5)};
    for (auto* q : {&p.s, &p.r, &p.c}) q->canonicalize();
    // linearization of the infinity field of U1 at its origin, computed here from the chart system
    auto inf = restrict_to_infinity(compactify_3d(em_field(p), {3, 1, false}));
    auto J = jacobian(inf);
    std::array<Rational, 2> zero{0, 0};
    Rational a = J[0][0].evaluate(zero), b = J[0][1].evaluate(zero), c = J[1][0].evaluate(zero), d = J[1][1].evaluate(zero);
    bool centre = a + d == 0 && a * d - b * c == 1;
    ck.line(centre, describe(p) + " U1 origin eigenvalues", "+-i",
            "trace " + to_string(a + d) + ", det " + to_string(a * d - b * c));

    auto eqs = infinite_equilibria_3d(p);
    std::vector<std::string> got;
    for (const auto& e : eqs) {
      std::string where = !e.locus.empty() ? e.locus : e.location == std::vector<double>{0, 0, 0} ? "origin" : "?";
      got.push_back(e.chart + " " + to_string(e.type) + " " + where);
    }
    std::sort(got.begin(), got.end());
    // U1/V1: the ends of the x-axis; the rest is the great circle x = 0
    const std::vector<std::string> want{"U1 linear_center origin", "U2 non_isolated z1 = 0", "U3 non_isolated origin",
                                        "V1 linear_center origin", "V2 non_isolated z1 = 0", "V3 non_isolated origin"};
    std::string joined;
    for (const auto& g : got) joined += (joined.empty() ? "" : "; ") + g;
    bool ok = got == want;
    ck.line(ok, describe(p) + " infinite equilibria", "U1/V1 origins and the circle x = 0", joined);
  }
  return ck.done("prop2");
}

// ------------------------------------------------------------------ lemma41
SuiteResult suite_lemma41() {
  Checks ck;
  auto F = compactify_2d(restrict(table1_family("a")).field, {2, 2, false}).field;
  auto printed = [](const PolyVectorField& like, std::vector<std::string> comps) {
    return parse_field(like.coords(), comps, like.vars());
  };
  auto show = [](const PolyVectorField& f) {
    std::ostringstream os;
    os << f;
    return os.str();
  };
  const std::string eq19inner =
      "(2 - 6*v3 + 7*v3^2 - u3*v3^2 - 2*r*u3^2*v3^2 - 4*v3^3 + u3*v3^3 + 6*r*u3^2*v3^3 - 2*c*u3^3*v3^3"
      " - 6*r*u3^2*v3^4 + 6*c*u3^3*v3^4 + 2*r*u3^2*v3^5 - 6*c*u3^3*v3^5 + 2*c*u3^3*v3^6)";
  const std::string eq19v =
      "(-1 + 2*v3 - 2*v3^2 + r*u3^2*v3^2 - 2*r*u3^2*v3^3 + c*u3^3*v3^3 + r*u3^2*v3^4"
      " - 2*c*u3^3*v3^4 + c*u3^3*v3^5)";

  std::vector<std::pair<std::string, PolyVectorField>> chain;
  chain.push_back({"U2 chart", F});
  auto b1 = vertical_blowup(F);
  chain.push_back({"blow-up u = u1, v = u1 v1", b1.after});
  auto r1 = rescale_common_factor(b1.after);
  chain.push_back({"divide by " + r1.factor.to_string(), r1.after});
  auto t = twist(r1.after, -1);
  chain.push_back({"twist u1 = v2 - u2", t.after});
  auto b2 = vertical_blowup(t.after);
  chain.push_back({"blow-up u2 = u3, v2 = u3 v3", b2.after});
  auto r2 = rescale_common_factor(b2.after);
  chain.push_back({"divide by " + r2.factor.to_string(), r2.after});

  const std::vector<std::vector<std::string>> want{
      {"(2*u^4 + v^2 + u*v^2 - 2*r*u^2*v^2 - 2*c*u*v^3)/2", "-v*(-u^3 - v^2 + r*u*v^2 + c*v^3)"},
      {"-u1^2*(-2*u1^2 - v1^2 - u1*v1^2 + 2*r*u1^2*v1^2 + 2*c*u1^2*v1^3)/2", "u1*v1^3*(-1 + u1)/2"},
      {"-u1*(-2*u1^2 - v1^2 - u1*v1^2 + 2*r*u1^2*v1^2 + 2*c*u1^2*v1^3)/2", "v1^3*(-1 + u1)/2"},
      {"(2*u2^3 - 6*u2^2*v2 + 7*u2*v2^2 - u2^2*v2^2 - 2*r*u2^3*v2^2 - 4*v2^3 + u2*v2^3 + 6*r*u2^2*v2^3"
       " - 2*c*u2^3*v2^3 - 6*r*u2*v2^4 + 6*c*u2^2*v2^4 + 2*r*v2^5 - 6*c*u2*v2^5 + 2*c*v2^6)/2",
       "v2^3*(-1 - u2 + v2)/2"},
      {"u3^3*" + eq19inner + "/2", "-u3^2*(-1 + v3)*v3*" + eq19v},
      {"u3*" + eq19inner + "/2", "-(-1 + v3)*v3*" + eq19v}};
  for (std::size_t i = 0; i < chain.size(); ++i) {
    const auto& [what, field] = chain[i];
    bool ok = field == printed(field, want[i]);
    ck.line(ok, "system " + std::to_string(i + 1) + " (" + what + ")", "printed system", ok ? "identical" : show(field));
    ck.note(show(field));
  }

  auto tree = analyze_linearly_zero(F);
  auto ls = leaves(tree);
  ck.line(ls.size() == 2, "leaf count", "2", std::to_string(ls.size()));
  const std::vector<std::pair<std::vector<Rational>, std::array<Rational, 2>>> expect{
      {{0, 0}, {-1, 1}}, {{0, 1}, {Rational(-1, 2), 1}}};
  json leaves_json = json::array();
  for (std::size_t i = 0; i < std::min<std::size_t>(ls.size(), 2); ++i) {
    const auto* l = ls[i];
    std::string loc = "(" + to_string(l->location.at(0)) + ", " + to_string(l->location.at(1)) + ")";
    std::string ev = l->exact_eigenvalues
                         ? "{" + to_string((*l->exact_eigenvalues)[0]) + ", " + to_string((*l->exact_eigenvalues)[1]) + "}"
                         : "not rational";
    bool ok = l->location == expect[i].first && l->exact_eigenvalues && *l->exact_eigenvalues == expect[i].second &&
              l->leaf && l->leaf->type == EquilibriumType::saddle;
    ck.line(ok, "leaf " + loc, "{" + to_string(expect[i].second[0]) + ", " + to_string(expect[i].second[1]) + "} saddle",
            ev + (l->leaf ? " " + to_string(l->leaf->type) : ""));
    leaves_json.push_back({{"location", loc}, {"eigenvalues", ev}});
  }
  ck.res.data = {{"leaves", leaves_json}};
  return ck.done("lemma41");
}

// ------------------------------------------------------------------ lemma42
SuiteResult suite_lemma42() {
  Checks ck;
  int cells = 0, in_region = 0, saddles = 0, foci = 0, nodes = 0, bad_count = 0, bad_saddle = 0;
  double worst = 0;
  for (int i = 0; i < 20; ++i)
    for (int j = 0; j < 20; ++j) {
      ++cells;
      double c = -3 + 6.0 * i / 19, r = 1.1 + 3.9 * j / 19;
      if (discriminant(c, r).region != Region::R_plus) continue;
      ++in_region;
      auto roots = solve_equilibrium_cubic(c, r);
      if (roots.size() != 3) {
        ++bad_count;
        continue;
      }
      int s = 0;
      for (const auto& root : roots) {
        auto rep = classify_restricted_a(root.x, c, r);
        worst = std::max(worst, pair_error(rep.eigenvalues, lambda_pm((long double)root.x * root.x, r)));
        s += rep.type == EquilibriumType::saddle;
        foci += rep.type == EquilibriumType::attracting_focus;
        nodes += rep.type == EquilibriumType::attracting_node;
      }
      saddles += s;
      bad_saddle += s != 1;
    }
  ck.note(std::to_string(in_region) + " of " + std::to_string(cells) + " grid points lie in R_plus");
  ck.line(in_region > 0 && bad_count == 0, "three equilibria at every R_plus point", "0 exceptions",
          std::to_string(bad_count) + " exceptions");
  ck.line(in_region > 0 && bad_saddle == 0, "exactly one saddle per point", "0 exceptions",
          std::to_string(bad_saddle) + " exceptions");
  ck.line(worst <= 1e-10, "eigenvalues against (-3 +- sqrt(1 + 8r - 24x^2))/4", "error <= 1e-10", fmt(worst));
  ck.line(foci + nodes == 2 * in_region, "the other two attract", std::to_string(2 * in_region),
          std::to_string(foci) + " foci + " + std::to_string(nodes) + " nodes");
  ck.res.data = {{"points", in_region}, {"saddles", saddles}, {"foci", foci}, {"nodes", nodes}, {"max_error", worst}};
  return ck.done("lemma42");
}

// ------------------------------------------------------------------ lemma43
SuiteResult suite_lemma43() {
  Checks ck;
  // c is given by its sign and c^2, so that the closed forms see the exact parameter
  struct Case {
    std::string name;
    int sign;
    long double c2;
  };
  const long double b2 = 1.0L / 128;  // (1/(8 sqrt 2))^2
  std::vector<Case> cases{{"1/100", 1, 1e-4L},    {"-1/100", -1, 1e-4L}, {"1/(8 sqrt 2)", 1, b2},
                          {"-1/(8 sqrt 2)", -1, b2}, {"2", 1, 4.0L},       {"-2", -1, 4.0L}};
  for (const auto& k : cases) {
    double c = k.sign * (double)std::sqrt(k.c2);
    double r = (double)(1 + 3 * std::cbrt(k.c2 / 4));
    auto roots = solve_equilibrium_cubic(c, r);
    if (roots.size() != 2) {
      ck.line(false, "c = " + k.name + " root count", "2", std::to_string(roots.size()));
      continue;
    }
    const CubicRoot& p1 = roots[0].multiplicity == 2 ? roots[0] : roots[1];
    const CubicRoot& p2 = roots[0].multiplicity == 2 ? roots[1] : roots[0];
    auto r1 = classify_restricted_a(p1, c, r);
    double e1 = pair_error(r1.eigenvalues, {std::complex<double>(-1.5, 0), std::complex<double>(0, 0)});
    ck.line(e1 <= 1e-10 && r1.type == EquilibriumType::semi_hyperbolic_saddle_node, "c = " + k.name + " p1",
            "{-3/2, 0} semi_hyperbolic_saddle_node", fmt_pair(r1.eigenvalues) + " " + to_string(r1.type));

    auto r2 = classify_restricted_a(p2, c, r);
    std::complex<long double> s = std::sqrt(std::complex<long double>(1 - std::cbrt(128 * k.c2), 0));
    auto cv = [](std::complex<long double> z) { return std::complex<double>((double)z.real(), (double)z.imag()); };
    std::array<std::complex<double>, 2> first{cv(0.75L * (-1.0L + s)), cv(0.75L * (-1.0L - s))};
    auto second = lambda_pm(std::cbrt(16 * k.c2), r);  // x^2 = (16 c^2)^(1/3) at p2 = (4c)^(1/3)
    double ea = pair_error(r2.eigenvalues, first), eb = pair_error(r2.eigenvalues, second);
    ck.line(ea <= 1e-10, "c = " + k.name + " p2 against (3/4)(-1 +- sqrt(1 - (2^7 c^2)^(1/3)))", fmt_pair(first),
            fmt_pair(r2.eigenvalues));
    ck.line(eb <= 1e-10, "c = " + k.name + " p2 against (-3 +- sqrt(1 + 8r - 24x^2))/4", fmt_pair(second),
            fmt_pair(r2.eigenvalues));
    bool focus = k.c2 > b2;
    auto want = focus ? EquilibriumType::attracting_focus : EquilibriumType::attracting_node;
    ck.line(r2.type == want, "c = " + k.name + " p2 type", to_string(want), to_string(r2.type));
  }
  return ck.done("lemma43");
}

// ------------------------------------------------------------------ lemma44
// plain bisection on a bracket grown until it changes sign
double bisect_root(double c, double r) {
  auto f = [&](long double x) { return x * x * x + (1 - (long double)r) * x - c; };
  long double lo = -1, hi = 1;
  while (f(lo) > 0) lo *= 2;
  while (f(hi) < 0) hi *= 2;
  for (int i = 0; i < 200; ++i) {
    long double m = (lo + hi) / 2;
    (f(m) < 0 ? lo : hi) = m;
  }
  return (double)((lo + hi) / 2);
}

SuiteResult suite_lemma44(const SuiteOptions& opt) {
  Checks ck;
  std::mt19937_64 rng(opt.rng_seed);
  std::uniform_real_distribution<double> C(-6, 6), R(-4, 6);
  int n = 0, in_hyp = 0, d_ok = 0;
  double worst = 0, worst_printed = 0;
  int printed_undefined = 0;
  while (n < 100) {
    double c = C(rng), r = R(rng);
    if (discriminant(c, r).region != Region::R_minus) continue;
    ++n;
    in_hyp += 729 * c * c + 4 * std::pow(3 - 3 * r, 3) >= 0;
    double want = bisect_root(c, r);
    double x = cardano_root(c, r);
    worst = std::max(worst, std::abs(x - want) / std::max(1.0, std::abs(want)));
    double xp = cardano_root_printed(c, r);
    if (std::isnan(xp)) ++printed_undefined;
    else worst_printed = std::max(worst_printed, std::abs(xp - want) / std::max(1.0, std::abs(want)));
    d_ok += 1 + 8 * r - 24 * x * x < 9;
  }
  ck.line(in_hyp == n, "729c^2 + 4(3 - 3r)^3 >= 0 throughout R_minus", std::to_string(n), std::to_string(in_hyp));
  ck.line(worst <= 1e-10, "Cardano root against bisection", "error <= 1e-10", fmt(worst));
  ck.line(worst_printed <= 1e-10, "printed formula against bisection", "error <= 1e-10",
          fmt(worst_printed) + " (" + std::to_string(printed_undefined) + " samples where it is undefined)");
  ck.line(d_ok == n, "D = 1 + 8r - 24x^2 < 9", std::to_string(n) + "/" + std::to_string(n),
          std::to_string(d_ok) + "/" + std::to_string(n));
  ck.res.data = {{"samples", n}, {"max_error", worst}};
  return ck.done("lemma44");
}

// ------------------------------------------------------------------ lemma45 / lemma53
SuiteResult suite_lemma45() {
  Checks ck;
  auto cert = no_periodic_orbit_certificate(restrict(table1_family("a")));
  bool ok = cert.conclusive && cert.divergence == MultiPoly::constant(cert.divergence.vars(), Rational(-3, 2));
  ck.line(ok, "divergence of the field on x^2 - z = 0", "-3/2 (Bendixson)",
          cert.divergence.to_string() + " (" + cert.criterion + ")");
  return ck.done("lemma45");
}

SuiteResult suite_lemma53() {
  Checks ck;
  for (int c : {1, -1, 5, -5}) {
    auto cert = no_periodic_orbit_certificate(restrict(table1_family("b"), ExactParameters{2, 0, c}));
    bool ok = cert.conclusive && cert.divergence == MultiPoly::constant(cert.divergence.vars(), -2);
    ck.line(ok, "c = " + std::to_string(c) + " divergence on y^2 + z^2 = c x", "-2 (Bendixson)",
            cert.divergence.to_string() + " (" + cert.criterion + ")");
  }
  return ck.done("lemma53");
}

// ------------------------------------------------------------------ lemma51
SuiteResult suite_lemma51() {
  Checks ck;
  for (int c : {1, -1, 5, -5}) {
    auto eq = infinite_equilibria_restricted_b(c);
    ck.line(eq.empty(), "c = " + std::to_string(c) + " infinite equilibria", "none", std::to_string(eq.size()));
  }
  // the chart systems, compared after multiplying by c
  VarList v({{"y", VarRole::state}, {"z", VarRole::state}, {"c", VarRole::parameter}});
  auto scaled = parse_field({"y", "z"}, {"-z*(y^2 + z^2) - c*y + c^2", "y*(y^2 + z^2) - c*z"}, v);
  auto u1 = compactify_2d(scaled, {2, 1, false});
  auto u2 = compactify_2d(scaled, {2, 2, false});
  auto want1 = parse_field(u1.field.coords(), {"(1 + u^2)^2 - c^2*u*v^3", "-v*(-u - u^3 - c*v^2 + c^2*v^3)"}, u1.field.vars());
  auto want2 = parse_field(u2.field.coords(), {"-(1 + u^2)^2 + c^2*v^3", "v*(-u - u^3 + c*v^2)"}, u2.field.vars());
  std::ostringstream s1, s2;
  s1 << u1.field;
  s2 << u2.field;
  ck.line(u1.field == want1, "U1 chart (times c)", "printed system", s1.str());
  ck.line(u2.field == want2, "U2 chart (times c)", "printed system", s2.str());
  return ck.done("lemma51");
}

// ------------------------------------------------------------------ lemma52
SuiteResult suite_lemma52() {
  Checks ck;
  for (int ci : {1, -1, 5, -5}) {
    double c = ci;
    auto q = restricted_b_equilibrium(c);
    auto rep = classify_restricted_b(q[0], q[1], c);
    auto J = jacobian(restrict(table1_family("b"), ExactParameters{2, 0, ci}).field);
    MultiPoly trace = J[0][0] + J[1][1];
    bool trace_ok = trace == MultiPoly::constant(trace.vars(), -2);
    double re_err = 0;
    for (const auto& e : rep.eigenvalues) re_err = std::max(re_err, std::abs(e.real() + 1));
    std::string label = "c = " + std::to_string(ci) + " Q = (" + fmt(q[0]) + ", " + fmt(q[1]) + ")";
    ck.line(rep.type == EquilibriumType::attracting_focus, label + " type", "attracting_focus", to_string(rep.type));
    ck.line(re_err <= 1e-10, label + " real parts", "-1 +- 1e-10", fmt_pair(rep.eigenvalues));
    ck.line(trace_ok, label + " trace", "-2 exactly", trace.to_string());
  }
  return ck.done("lemma52");
}

// ------------------------------------------------------------------ theorems
SuiteResult suite_theorems(const SuiteOptions& opt) {
  Checks ck;
  struct Case {
    std::string name;
    ExactParameters p;
  };
  const std::vector<Case> cases{{"x^2 - z, R_minus (s, r, c) = (1/2, 2, 1)", {Rational(1, 2), 2, 1}},
                                {"x^2 - z, R_plus (s, r, c) = (1/2, 3, 1/2)", {Rational(1, 2), 3, Rational(1, 2)}},
                                {"y^2 + z^2 - c x, (s, r, c) = (2, 0, 1)", {2, 0, 1}}};
  IntegratorConfig cfg;
  cfg.rel_tol = opt.tol;
  cfg.abs_tol = opt.tol * 1e-3;
  json data = json::array();
  for (const auto& k : cases) {
    auto seeds = random_seeds(opt.seeds, opt.rng_seed);
    auto summary = classify_limit_sets(k.p, seeds, cfg, true);
    std::size_t n = summary.outcomes.size();
    int decisive = 0, contradictions = 0, corroborated = 0, off_surface = 0;
    ck.note(k.name);
    for (std::size_t i = 0; i < n; ++i) {
      const auto& o = summary.outcomes[i];
      auto v = judge_against_theorem(summary, o);
      decisive += v.decisive;
      contradictions += v.contradicts;
      corroborated += v.backward_corroborated;
      off_surface += !o.on_surface;
      char head[32];
      std::snprintf(head, sizeof head, "  seed %03zu ", i);
      ck.note(std::string(head) + "f0 = " + fmt(o.f0) + " omega " + o.forward.limit_tag.to_string() + ", alpha by sign " +
              o.backward_predicted.to_string() + ", alpha numeric " + o.backward.limit_tag.to_string() +
              (v.contradicts ? " CONTRADICTS: " + v.reason : v.decisive ? "" : " undecided: " + v.reason));
    }
    // at least 48 of every 50 seeds decisive
    bool enough = 50 * static_cast<std::size_t>(decisive) >= 48 * n;
    ck.line(enough, k.name + " decisive tags", ">= 96% of " + std::to_string(n), std::to_string(decisive));
    ck.line(contradictions == 0, k.name + " contradictions", "0", std::to_string(contradictions));
    ck.note("backward integration reaches the sign-test prediction for " + std::to_string(corroborated) + "/" +
            std::to_string(off_surface) + " seeds (informational)");
    data.push_back({{"case", k.name},
                    {"seeds", n},
                    {"decisive", decisive},
                    {"contradictions", contradictions},
                    {"backward_corroborated", corroborated}});
  }
  ck.res.data = {{"cases", data}};
  return ck.done("theorems");
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"table1",  "prop2",   "lemma41", "lemma42", "lemma43", "lemma44",
                                              "lemma45", "lemma51", "lemma52", "lemma53", "theorems"};
  return names;
}

std::string canonical_suite_name(const std::string& name) {
  std::string s;
  for (char ch : name)
    if (ch != ' ' && ch != '.' && ch != '_' && ch != '-') s += static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
  if (!s.empty() && std::isdigit(static_cast<unsigned char>(s[0]))) s = "lemma" + s;
  if (std::find(suite_names().begin(), suite_names().end(), s) == suite_names().end())
    throw UsageError("suite: unknown suite '" + name + "'");
  return s;
}

SuiteResult run_suite(const std::string& name, const SuiteOptions& opt) {
  std::string s = canonical_suite_name(name);
  if (opt.seeds == 0) throw UsageError("seeds: need at least one seed");
  if (!(opt.tol > 0 && opt.tol < 1e-2)) throw UsageError("tol: must lie in (0, 1e-2)");
  if (s == "table1") return suite_table1();
  if (s == "prop2") return suite_prop2(opt);
  if (s == "lemma41") return suite_lemma41();
  if (s == "lemma42") return suite_lemma42();
  if (s == "lemma43") return suite_lemma43();
  if (s == "lemma44") return suite_lemma44(opt);
  if (s == "lemma45") return suite_lemma45();
  if (s == "lemma51") return suite_lemma51();
  if (s == "lemma52") return suite_lemma52();
  if (s == "lemma53") return suite_lemma53();
  return suite_theorems(opt);
}

}  // namespace emdyn
