#pragma once

// Exact multivariate polynomials over Q and the differential operators built
// on them. Every value here is immutable once constructed.

#include <gmpxx.h>

#include <cstdint>
#include <initializer_list>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "emdyn/errors.hpp"

namespace emdyn {

using Rational = mpq_class;

/// Parses "3", "-1/2", "0.25", "1e-3" into an exact rational.
Rational parse_rational(std::string_view text);
std::string to_string(const Rational& q);
double to_double(const Rational& q);

enum class VarRole { state, chart, parameter, unknown };

struct Variable {
  std::string name;
  VarRole role = VarRole::state;
  bool operator==(const Variable&) const = default;
};

/// Ordered, shared list of indeterminates. Copies are cheap.
class VarList {
 public:
  VarList();
  VarList(std::initializer_list<Variable> vars);
  explicit VarList(std::vector<Variable> vars);

  /// Convenience: every name gets the same role.
  static VarList of(std::initializer_list<std::string_view> names, VarRole role);

  std::size_t size() const { return vars_->size(); }
  const Variable& operator[](std::size_t i) const { return (*vars_)[i]; }
  auto begin() const { return vars_->begin(); }
  auto end() const { return vars_->end(); }

  std::optional<std::size_t> find(std::string_view name) const;
  std::size_t index_of(std::string_view name) const;  // throws StructuralError
  bool contains(std::string_view name) const { return find(name).has_value(); }

  /// Appends variables not already present (by name).
  VarList extended(const std::vector<Variable>& extra) const;
  VarList without(const std::vector<std::string>& names) const;
  std::vector<std::string> names() const;

  bool operator==(const VarList& other) const;

 private:
  std::shared_ptr<const std::vector<Variable>> vars_;
};

using Exponents = std::vector<std::uint16_t>;

int total_degree(const Exponents& e);

/// Graded lexicographic, largest first: the iteration order of a term map is
/// the printing order.
struct GradedLexDescending {
  bool operator()(const Exponents& a, const Exponents& b) const;
};

class MultiPoly {
 public:
  using TermMap = std::map<Exponents, Rational, GradedLexDescending>;

  MultiPoly() = default;
  explicit MultiPoly(VarList vars) : vars_(std::move(vars)) {}
  MultiPoly(VarList vars, TermMap terms);

  static MultiPoly constant(const VarList& vars, const Rational& value);
  static MultiPoly variable(const VarList& vars, std::string_view name);
  static MultiPoly monomial(const VarList& vars, Exponents exps, const Rational& coeff);

  const VarList& vars() const { return vars_; }
  const TermMap& terms() const { return terms_; }
  std::size_t term_count() const { return terms_.size(); }

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  Rational constant_term() const;
  Rational coefficient(const Exponents& e) const;

  /// -1 for the zero polynomial.
  int total_degree() const;
  int degree_in(std::string_view var) const;
  /// Total degree counting only the given variable indices; -1 for zero.
  int degree_in(std::span<const std::size_t> indices) const;
  /// Smallest total degree over the given indices among nonzero terms; -1 for zero.
  int low_degree_in(std::span<const std::size_t> indices) const;
  bool depends_on(std::string_view var) const;

  MultiPoly operator-() const;
  MultiPoly& operator+=(const MultiPoly& q);
  MultiPoly& operator-=(const MultiPoly& q);
  MultiPoly& operator*=(const MultiPoly& q);
  MultiPoly& operator*=(const Rational& q);
  MultiPoly pow(unsigned k) const;

  friend MultiPoly operator+(MultiPoly p, const MultiPoly& q) { return p += q; }
  friend MultiPoly operator-(MultiPoly p, const MultiPoly& q) { return p -= q; }
  friend MultiPoly operator*(const MultiPoly& p, const MultiPoly& q);
  friend MultiPoly operator*(MultiPoly p, const Rational& q) { return p *= q; }
  friend MultiPoly operator*(const Rational& q, MultiPoly p) { return p *= q; }
  friend MultiPoly operator+(MultiPoly p, const Rational& q);
  friend MultiPoly operator-(MultiPoly p, const Rational& q) { return p + Rational(-q); }

  /// Equality requires identical variable lists; see the class invariant.
  friend bool operator==(const MultiPoly& p, const MultiPoly& q);

  double evaluate(std::span<const double> point) const;
  Rational evaluate(std::span<const Rational> point) const;

  /// Re-expresses this polynomial over `target`, matching variables by name.
  MultiPoly rebase(const VarList& target) const;

  std::string to_string() const;

 private:
  void add_term(const Exponents& e, const Rational& c);
  void require_same_vars(const MultiPoly& q, const char* op) const;

  VarList vars_;
  TermMap terms_;
};

std::ostream& operator<<(std::ostream& os, const MultiPoly& p);

MultiPoly partial_derivative(const MultiPoly& p, std::string_view var);

/// Replaces each bound variable by its polynomial; unbound variables are
/// carried over by name. Every binding must live over `target`.
MultiPoly substitute(const MultiPoly& p, const std::map<std::string, MultiPoly>& bindings,
                     const VarList& target);
/// Same, staying on p's own variable list.
MultiPoly substitute(const MultiPoly& p, const std::map<std::string, MultiPoly>& bindings);

/// Binds variables to exact values and drops them from the variable list.
MultiPoly bind(const MultiPoly& p, const std::map<std::string, Rational>& values);

/// w^n * p(num_1/w, ..., num_k/w) where coords[i] is replaced by numerators[i]/w.
/// Requires the degree of p in the coordinates to be at most n.
MultiPoly projective_substitute(const MultiPoly& p, const std::vector<std::string>& coords,
                                const std::vector<MultiPoly>& numerators,
                                std::string_view denominator, int n, const VarList& target);

/// Sum of the terms of total degree d. `over` restricts which variables count
/// towards the degree (empty = all).
MultiPoly homogeneous_part(const MultiPoly& p, int d, const std::vector<std::string>& over = {});

/// Collects p as a polynomial in `over` whose coefficients are polynomials in
/// the remaining variables.
std::map<Exponents, MultiPoly, GradedLexDescending> coefficients_in(
    const MultiPoly& p, const std::vector<std::string>& over);

/// Componentwise minimum exponent over all terms (all zeros for p = 0).
Exponents monomial_content(const MultiPoly& p);
Exponents monomial_gcd(const Exponents& a, const Exponents& b);
MultiPoly divide_by_monomial(const MultiPoly& p, const Exponents& m);

/// Exact quotient by a single variable, throws PreconditionError if some
/// term lacks it.
MultiPoly divide_by_variable(const MultiPoly& p, std::string_view var);

/// Parses expressions with + - * / ^ and parentheses; division only by
/// constants. Unknown identifiers are a ParseError.
MultiPoly parse_poly(std::string_view text, const VarList& vars);

/// True when every term has even exponents, every coefficient is positive and
/// the constant term is positive, so p > 0 on all of R^n.
bool certified_positive(const MultiPoly& p);

/// A polynomial vector field: component i is the time derivative of coords[i].
class PolyVectorField {
 public:
  PolyVectorField() = default;
  PolyVectorField(std::vector<std::string> coords, std::vector<MultiPoly> components);

  std::size_t dimension() const { return components_.size(); }
  const std::vector<std::string>& coords() const { return coords_; }
  const std::vector<MultiPoly>& components() const { return components_; }
  const MultiPoly& operator[](std::size_t i) const { return components_[i]; }
  const VarList& vars() const { return components_.front().vars(); }
  std::vector<std::size_t> coord_indices() const;

  /// Maximum total degree of the components in the coordinates only.
  int degree() const;

  bool operator==(const PolyVectorField&) const = default;

 private:
  std::vector<std::string> coords_;
  std::vector<MultiPoly> components_;
};

/// Sum_i P_i * df/dx_i.
MultiPoly lie_derivative(const PolyVectorField& field, const MultiPoly& f);
MultiPoly divergence(const PolyVectorField& field);
std::vector<std::vector<MultiPoly>> jacobian(const PolyVectorField& field);
PolyVectorField bind(const PolyVectorField& field, const std::map<std::string, Rational>& values);
PolyVectorField scale(const PolyVectorField& field, const Rational& factor);
PolyVectorField parse_field(const std::vector<std::string>& coords,
                            const std::vector<std::string>& components, const VarList& vars);

std::ostream& operator<<(std::ostream& os, const PolyVectorField& f);

}  // namespace emdyn
