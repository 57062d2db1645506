#include <doctest.h>

#include <chrono>
#include <random>

#include "bilinear_oracle.hpp"
#include "emdyn/surfaces.hpp"
#include "support.hpp"

using namespace emdyn;

namespace {

const InvariantSurface& family(const Table1Result& t, const std::string& label) {
  for (const auto& f : t.families)
    if (f.label == label) return f;
  throw std::runtime_error("missing family " + label);
}

MultiPoly SP(const char* s) { return parse_poly(s, state_param_vars()); }
MultiPoly XYZ(const char* s) { return parse_poly(s, state_vars()); }

}  // namespace

TEST_CASE("Lie derivative of the tabulated surfaces") {
  SymbolicParameters a;
  a.s = Rational(1, 2);
  CHECK(lie_derivative(em_field(a), SP("x^2 - z")) == SP("-(x^2 - z)"));
  SymbolicParameters b;
  b.s = 2;
  b.r = 0;
  CHECK(lie_derivative(em_field(b), SP("y^2 + z^2 - c*x")) == SP("-2*(y^2 + z^2 - c*x)"));
  SymbolicParameters d;
  d.s = 1;
  d.c = 0;
  CHECK(lie_derivative(em_field(d), SP("y^2 + z^2 - r*x^2")) == SP("-2*(y^2 + z^2 - r*x^2)"));
}

TEST_CASE("matching system has the twenty printed equations") {
  auto eqs = build_matching_system();
  REQUIRE(eqs.size() == 20);
  auto A = [](const char* s) { return parse_poly(s, ansatz_vars()); };
  auto get = [&](const std::string& l) {
    for (const auto& e : eqs)
      if (e.label == l) return e.equation;
    throw std::runtime_error(l);
  };
  CHECK(get("i") == A("a2*c - a0*k4"));
  CHECK(get("ii") == A("a5*c - a1*k4 - a0*k1 + a2*r - a1*s"));
  CHECK(get("iii") == A("a2 - 2*a7*c + a2*k4 + a0*k2 - a1*s"));
  CHECK(get("iv") == A("a3 - a8*c + a3*k4 + a0*k3"));
  CHECK(get("v") == A("a4*k4 + a1*k1 - a5*r + 2*a4*s"));
  CHECK(get("vi") == A("2*a7 + a7*k4 + a2*k2 - a5*s"));
  CHECK(get("vii") == A("2*a9 + a9*k4 + a3*k3"));
  CHECK(get("viii") == A("2*a8 + a8*k4 + a3*k2 + a2*k3 - a6*s"));
  CHECK(get("ix") == A("a2 + a6 + a6*k4 + a3*k1 + a1*k3 - a8*r + a6*s"));
  CHECK(get("x") == A("a8 - a7*k1 - a5*k2"));
  CHECK(get("xi") == A("a6 - a5*k1 - a4*k2"));
  CHECK(get("xii") == A("a5 + a6*k1 + a4*k3"));
  CHECK(get("xiii") == A("2*a7 - 2*a9 + a8*k1 + a6*k2 + a5*k3"));
  CHECK(get("xiv") == A("a8*k2 + a7*k3"));
  CHECK(get("xv") == A("a8 + a9*k1 + a6*k3"));
  CHECK(get("xvi") == A("a9*k2 + a8*k3"));
  CHECK(get("xvii") == A("a4*k1"));
  CHECK(get("xviii") == A("a7*k2"));
  CHECK(get("xix") == A("a9*k3"));
  CHECK(get("xx") == A("a3 - a5 - a5*k4 - a2*k1 - a1*k2 + 2*a7*r + 2*a4*s - a5*s"));

  for (const auto& e : build_matching_system()) {
    MultiPoly zero = bind(e.equation, {{"a0", 0}, {"a1", 0}, {"a2", 0}, {"a3", 0}, {"a4", 0},
                                       {"a5", 0}, {"a6", 0}, {"a7", 0}, {"a8", 0}, {"a9", 0}});
    CHECK(zero.is_zero());
  }
}

TEST_CASE("case analysis returns the four families") {
  auto t = solve_table1();
  REQUIRE(t.families.size() == 4);
  CHECK(family(t, "a").f == SP("x^2 - z"));
  CHECK(family(t, "a").cofactor == SP("-1"));
  CHECK(family(t, "a").constraints == std::vector<ParamConstraint>{{"s", Rational(1, 2)}});
  CHECK(family(t, "b").f == SP("y^2 + z^2 - c*x"));
  CHECK(family(t, "b").cofactor == SP("-2"));
  CHECK(family(t, "c").f == SP("y^2 + z^2"));
  CHECK(family(t, "d").f == SP("y^2 + z^2 - r*x^2"));
  for (const auto& f : t.families) CHECK(verify_invariance_symbolic(f));
  REQUIRE(t.degenerate.size() == 1);
  CHECK(t.degenerate[0].constraints == std::vector<ParamConstraint>{{"s", 0}});
  CHECK(t.degenerate[0].cofactor.is_zero());
  CHECK(verify_invariance_symbolic(t.degenerate[0]));
  CHECK(!t.log.empty());
}

TEST_CASE("numeric front end") {
  auto a = find_surfaces_numeric({Rational(1, 2), 5, 3});
  REQUIRE(a.size() == 1);
  CHECK(a[0].f == XYZ("x^2 - z"));
  CHECK(a[0].cofactor == XYZ("-1"));
  auto b = find_surfaces_numeric({2, 0, 7});
  REQUIRE(b.size() == 1);
  CHECK(b[0].f == XYZ("y^2 + z^2 - 7*x"));
  CHECK(find_surfaces_numeric({3, 1, 1}).empty());
  // r = c = 0 and s = 1 satisfies both (c) and (d)
  CHECK(find_surfaces_numeric({1, 0, 0}).size() == 2);
}

TEST_CASE("verify_invariance") {
  auto t = solve_table1();
  const auto& a = family(t, "a");
  CHECK(verify_invariance(a, {Rational(1, 2), 2, 1}));
  try {
    verify_invariance(a, {1, 2, 1});
    FAIL("expected a precondition error");
  } catch (const PreconditionError& e) {
    CHECK(std::string(e.what()).find("s = 1/2") != std::string::npos);
  }
  InvariantSurface wrong{"", XYZ("x^2 - z"), XYZ("-2"), {}};
  CHECK_FALSE(verify_invariance(wrong, {Rational(1, 2), 2, 1}));
}

TEST_CASE("Darboux invariants") {
  auto t = solve_table1();
  auto ia = darboux_from_surface(family(t, "a"));
  CHECK(ia.exponent == 1);
  CHECK(ia.f == SP("x^2 - z"));
  CHECK(darboux_from_surface(family(t, "b")).exponent == 2);
  CHECK(darboux_from_surface(family(t, "d")).f == SP("y^2 + z^2 - r*x^2"));
  CHECK(darboux_from_surface(family(t, "d")).exponent == 2);
  for (const auto& fam : t.families) {
    SymbolicParameters sp;
    for (const auto& c : fam.constraints) {
      if (c.param == "s") sp.s = c.value;
      if (c.param == "r") sp.r = c.value;
      if (c.param == "c") sp.c = c.value;
    }
    CHECK(darboux_residual(darboux_from_surface(fam), em_field(sp)).is_zero());
  }
  InvariantSurface lin{"", XYZ("x^2"), XYZ("x + 1"), {}};
  CHECK_THROWS_AS(darboux_from_surface(lin), UnsupportedError);
}

TEST_CASE("independent solver: degree-2 solutions occur only on the tabulated loci") {
  std::mt19937_64 rng(20240601);
  std::uniform_int_distribution<int> pick(0, 9);
  VarList work = ansatz_vars().without({"s", "r", "c"});
  int on_locus = 0;
  for (int n = 0; n < 220; ++n) {
    ExactParameters p{testsupport::random_rational(rng, 6, 4), testsupport::random_rational(rng, 6, 4),
                      testsupport::random_rational(rng, 6, 4)};
    switch (pick(rng)) {
      case 0: p.s = Rational(1, 2); break;
      case 1: p.s = 2; p.r = 0; break;
      case 2: p.r = 0; p.c = 0; break;
      case 3: p.s = 1; p.c = 0; break;
      case 4: p.s = 0; break;
      default: break;
    }
    std::vector<MultiPoly> eqs;
    for (const auto& e : build_matching_system())
      eqs.push_back(bind(e.equation, {{"s", p.s}, {"r", p.r}, {"c", p.c}}));
    oracle::BilinearSolver solver(eqs);
    REQUIRE_FALSE(solver.stuck());

    bool deg2 = false;
    for (const auto& leaf : solver.leaves()) {
      bool quad = false;
      for (const char* a : {"a4", "a5", "a6", "a7", "a8", "a9"}) {
        auto it = leaf.assigned.find(a);
        if (it == leaf.assigned.end() || !it->second.is_zero()) quad = true;
      }
      if (!quad) continue;
      deg2 = true;
      for (const char* k : {"k1", "k2", "k3"}) {
        REQUIRE(leaf.assigned.count(k));
        CHECK(leaf.assigned.at(k).is_zero());
      }
    }
    bool tabulated = p.s == Rational(1, 2) || (p.s == 2 && p.r == 0) || (p.r == 0 && p.c == 0) ||
                     (p.s == 1 && p.c == 0);
    bool expected = tabulated || p.s == 0;
    on_locus += expected;
    CHECK_MESSAGE(deg2 == expected, describe(p));
    CHECK(find_surfaces_numeric(p).empty() == !tabulated);
  }
  CHECK(on_locus >= 50);
}
