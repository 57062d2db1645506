#pragma once

// Numerical side: Bendixson-type certificates, adaptive integration in state
// space with continuation through the Poincare charts, Darboux drift
// monitoring, and alpha/omega-limit tagging for the tabulated surfaces.

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "emdyn/compactify.hpp"
#include "emdyn/equilibria.hpp"
#include "emdyn/restrict.hpp"
#include "emdyn/surfaces.hpp"

namespace emdyn {

struct DivergenceCertificate {
  bool conclusive = false;
  MultiPoly divergence;  // of multiplier * field
  int sign = 0;          // -1 or +1 when conclusive
  std::string criterion;  // "Bendixson", "Bendixson-Dulac(B)" or "inconclusive"
  std::optional<MultiPoly> multiplier;
};

/// Constant nonzero divergence, or a divergence whose sign is certified by
/// certified_positive, rules out closed orbits. An optional Dulac multiplier
/// B is applied first (div(B X)); it must live over the field's variables.
DivergenceCertificate no_periodic_orbit_certificate(const PolyVectorField& field,
                                                    const std::optional<MultiPoly>& multiplier = {});
DivergenceCertificate no_periodic_orbit_certificate(const RestrictedSystem& rs,
                                                    const std::optional<MultiPoly>& multiplier = {});

/// Polynomial field with every parameter bound, flattened to double
/// coefficients for fast evaluation.
class CompiledField {
 public:
  CompiledField() = default;
  /// Every variable of `field` must be one of its coordinates.
  explicit CompiledField(const PolyVectorField& field);

  std::size_t dimension() const { return comps_.size(); }
  int degree() const { return degree_; }
  void operator()(const double* x, double* dx) const;
  std::vector<double> operator()(const std::vector<double>& x) const;

 private:
  struct Term {
    double coeff;
    std::array<std::uint8_t, 3> exps;
  };
  std::vector<std::vector<Term>> comps_;
  int degree_ = 0;
};

/// Scalar polynomial in the coordinates of a field, compiled the same way.
class CompiledPoly {
 public:
  CompiledPoly() = default;
  CompiledPoly(const MultiPoly& p, const std::vector<std::string>& coords);
  double operator()(const double* x) const;

 private:
  struct Term {
    double coeff;
    std::array<std::uint8_t, 3> exps;
  };
  std::vector<Term> terms_;
  std::size_t dim_ = 0;
};

struct IntegratorConfig {
  double rel_tol = 1e-9;
  double abs_tol = 1e-12;
  double max_time = 200;              // in original time
  double event_radius = 1e-3;         // equilibrium capture radius
  double dwell_time = 1;              // time to stay inside before capture
  double chart_switch_threshold = 1e3;  // max |x_i| before moving to a chart
  double infinity_radius = 1e-4;      // |w| below this counts as reaching infinity
  double infinity_cone = 0.1;         // |z_i| below this counts as at the chart origin
  double sample_dt = 0.05;            // dense output spacing in finite coordinates
  bool backward = false;
  bool chart_continuation = true;
  bool record_samples = true;
  long max_steps = 2'000'000;

  /// Throws PreconditionError naming the offending field.
  void validate() const;
};

struct CaptureTarget {
  std::string id;
  std::vector<double> location;
};

enum class LimitKind { finite_equilibrium, infinite_equilibrium, surface_approach, escaped, undetermined };

struct LimitTag {
  LimitKind kind = LimitKind::undetermined;
  std::string id;     // equilibrium id, surface label, or "origin"
  std::string chart;  // for infinite_equilibrium / escaped: chart the orbit ended in

  std::string to_string() const;
  bool operator==(const LimitTag&) const = default;
};

struct OrbitSample {
  double t = 0;
  std::vector<double> state;  // finite coordinates, or chart coordinates
  double invariant = 0;       // f(x) e^{sigma t}; NaN in a chart past double range
  std::string chart = "finite";
};

struct OrbitRecord {
  std::vector<OrbitSample> samples;  // increasing t, also for backward runs
  double invariant_drift = 0;  // max |I - I0| / |I0|; absolute max |I| when I0 = 0
  LimitTag limit_tag;
  double end_time = 0;
  long steps = 0;
  std::string diagnostics;
};

/// Integrates `field` (all parameters bound) from x0. Stops on capture at a
/// target (inside event_radius for dwell_time, ending no farther than it
/// entered or within half the radius), at max_time, or on reaching infinity in a chart. Step failure
/// or the step budget gives an undetermined tag with diagnostics.
OrbitRecord integrate(const PolyVectorField& field, const std::vector<double>& x0, const IntegratorConfig& cfg,
                      const std::optional<DarbouxInvariant>& monitor = {},
                      const std::vector<CaptureTarget>& targets = {});

/// Finite coordinates -> chart coordinates (w = 1 / x_k, others x_i w) and back.
std::vector<double> to_chart(const std::vector<double>& x, const ChartId& chart);
std::vector<double> from_chart(const std::vector<double>& z, const ChartId& chart);
/// The U/V chart around the largest coordinate of x.
ChartId dominant_chart(const std::vector<double>& x);
/// Point of the closed Poincare disc/ball for a chart point (any |w|, including 0).
std::vector<double> chart_to_ball(const std::vector<double>& z, const ChartId& chart);
std::vector<double> finite_to_ball(const std::vector<double>& x);

struct SeedOutcome {
  std::vector<double> seed;
  double f0 = 0;                // surface polynomial at the seed
  bool on_surface = false;
  OrbitRecord forward;
  LimitTag backward_predicted;  // by the sign of f0
  OrbitRecord backward;         // numerical corroboration
};

struct LimitSetSummary {
  InvariantSurface surface;
  std::vector<EquilibriumReport> equilibria;  // finite, ids "E0", "E1", ... by increasing x
  std::vector<SeedOutcome> outcomes;
};

/// Seeds with |f(x0)| <= 1e-14 (1 + |x0|^2) are on the surface.
/// Throws PreconditionError when params match no tabulated row.
LimitSetSummary classify_limit_sets(const ExactParameters& params, const std::vector<std::vector<double>>& seeds,
                                    IntegratorConfig cfg = {}, bool corroborate_backward = true);

struct TheoremVerdict {
  bool decisive = false;
  bool contradicts = false;
  bool backward_corroborated = false;  // numeric backward tag equals the predicted one
  std::string reason;
};

/// Compares one outcome with the stated limit sets: row (a) alpha-limit at
/// the U3/V3 origin by the sign of f0 and omega-limit at a stable finite
/// equilibrium; row (b) alpha-limit P (U1 origin) and omega-limit Q.
/// Undetermined forward tags are indecisive, never contradictions.
TheoremVerdict judge_against_theorem(const LimitSetSummary& summary, const SeedOutcome& outcome);

/// Deterministic seeds uniform in [-half_width, half_width]^3.
std::vector<std::vector<double>> random_seeds(std::size_t count, std::uint64_t rng_seed, double half_width = 5);

}  // namespace emdyn
