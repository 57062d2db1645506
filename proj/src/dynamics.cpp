#include "emdyn/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <limits>
#include <random>
#include <thread>

#include <boost/numeric/odeint.hpp>

namespace emdyn {

// ---------------------------------------------------------------- certificates

DivergenceCertificate no_periodic_orbit_certificate(const PolyVectorField& field,
                                                    const std::optional<MultiPoly>& multiplier) {
  if (field.dimension() != 2) throw StructuralError("divergence criteria need a planar field");
  DivergenceCertificate cert;
  PolyVectorField g = field;
  if (multiplier) {
    MultiPoly B = multiplier->vars() == field.vars() ? *multiplier : multiplier->rebase(field.vars());
    g = PolyVectorField(field.coords(), {B * field[0], B * field[1]});
    cert.multiplier = B;
  }
  cert.divergence = divergence(g);
  const MultiPoly& div = cert.divergence;
  if (div.is_constant() && !div.is_zero()) {
    cert.sign = sgn(div.constant_term());
  } else if (!div.is_zero() && certified_positive(div)) {
    cert.sign = 1;
  } else if (!div.is_zero() && certified_positive(-div)) {
    cert.sign = -1;
  }
  cert.conclusive = cert.sign != 0;
  if (!cert.conclusive)
    cert.criterion = "inconclusive";
  else
    cert.criterion = multiplier ? "Bendixson-Dulac(" + cert.multiplier->to_string() + ")" : "Bendixson";
  return cert;
}

DivergenceCertificate no_periodic_orbit_certificate(const RestrictedSystem& rs,
                                                    const std::optional<MultiPoly>& multiplier) {
  return no_periodic_orbit_certificate(rs.field, multiplier);
}

// ---------------------------------------------------------------- compiled polynomials

namespace {

// Exponents of `coords` in each term; any other variable must be absent.
template <class Term>
std::vector<Term> compile_terms(const MultiPoly& p, const std::vector<std::string>& coords) {
  if (coords.size() > 3) throw StructuralError("compiled polynomials support at most three coordinates");
  std::vector<std::optional<std::size_t>> idx;
  for (const auto& c : coords) idx.push_back(p.vars().find(c));
  std::vector<Term> out;
  for (const auto& [e, q] : p.terms()) {
    Term t{q.get_d(), {0, 0, 0}};
    int used = 0;
    for (std::size_t i = 0; i < coords.size(); ++i)
      if (idx[i]) {
        t.exps[i] = static_cast<std::uint8_t>(e[*idx[i]]);
        used += e[*idx[i]];
      }
    if (used != total_degree(e))
      throw StructuralError("polynomial still depends on a non-coordinate variable: " + p.to_string());
    out.push_back(t);
  }
  return out;
}

template <class Term>
double eval_terms(const std::vector<Term>& terms, const double* x, std::size_t dim) {
  double sum = 0;
  for (const auto& t : terms) {
    double m = t.coeff;
    for (std::size_t i = 0; i < dim; ++i)
      for (int k = 0; k < t.exps[i]; ++k) m *= x[i];
    sum += m;
  }
  return sum;
}

}  // namespace

CompiledField::CompiledField(const PolyVectorField& field) {
  for (const auto& c : field.components()) comps_.push_back(compile_terms<Term>(c, field.coords()));
  degree_ = field.degree();
}

void CompiledField::operator()(const double* x, double* dx) const {
  for (std::size_t i = 0; i < comps_.size(); ++i) dx[i] = eval_terms(comps_[i], x, comps_.size());
}

std::vector<double> CompiledField::operator()(const std::vector<double>& x) const {
  std::vector<double> dx(comps_.size());
  (*this)(x.data(), dx.data());
  return dx;
}

CompiledPoly::CompiledPoly(const MultiPoly& p, const std::vector<std::string>& coords)
    : terms_(compile_terms<Term>(p, coords)), dim_(coords.size()) {}

double CompiledPoly::operator()(const double* x) const { return eval_terms(terms_, x, dim_); }

// ---------------------------------------------------------------- charts

std::vector<double> to_chart(const std::vector<double>& x, const ChartId& chart) {
  const int d = static_cast<int>(x.size());
  if (chart.index == d + 1) return x;
  const int k = chart.index - 1;
  double w = 1 / x[k];
  std::vector<double> z;
  for (int i = 0; i < d; ++i)
    if (i != k) z.push_back(x[i] * w);
  z.push_back(w);
  return z;
}

std::vector<double> from_chart(const std::vector<double>& z, const ChartId& chart) {
  const int d = static_cast<int>(z.size());
  if (chart.index == d + 1) return z;
  const int k = chart.index - 1;
  double w = z.back();
  std::vector<double> x;
  for (int i = 0, m = 0; i < d; ++i) x.push_back(i == k ? 1 / w : z[m++] / w);
  return x;
}

ChartId dominant_chart(const std::vector<double>& x) {
  std::size_t k = 0;
  for (std::size_t i = 1; i < x.size(); ++i)
    if (std::abs(x[i]) > std::abs(x[k])) k = i;
  return {static_cast<int>(x.size()), static_cast<int>(k) + 1, x[k] < 0};
}

namespace {

// Homogeneous coordinates (y_1..y_d, y_{d+1}) of a chart point with x = y/y_{d+1}.
std::vector<double> homogeneous(const std::vector<double>& z, const ChartId& chart) {
  const int d = static_cast<int>(z.size());
  const int k = chart.index - 1;
  std::vector<double> y(d + 1);
  for (int i = 0, m = 0; i < d; ++i) y[i] = i == k ? 1 : z[m++];
  y[d] = z.back();
  return y;
}

}  // namespace

std::vector<double> chart_to_ball(const std::vector<double>& z, const ChartId& chart) {
  const int d = static_cast<int>(z.size());
  if (chart.index == d + 1) return finite_to_ball(z);
  auto y = homogeneous(z, chart);
  // w = 1/x_k is negative throughout a V chart; the ball point is y / |y|
  // oriented so that its last coordinate is >= 0, which also fixes w = 0.
  double sgn = chart.negative ? -1 : 1;
  double n = 0;
  for (double v : y) n += v * v;
  n = std::sqrt(n);
  std::vector<double> out(d);
  for (int i = 0; i < d; ++i) out[i] = sgn * y[i] / n;
  return out;
}

std::vector<double> finite_to_ball(const std::vector<double>& x) {
  double n2 = 1;
  for (double v : x) n2 += v * v;
  std::vector<double> out;
  for (double v : x) out.push_back(v / std::sqrt(n2));
  return out;
}

// ---------------------------------------------------------------- integration

void IntegratorConfig::validate() const {
  auto bad = [](const std::string& f, const std::string& why) { throw PreconditionError(f + ": " + why); };
  if (!(rel_tol > 0)) bad("rel_tol", "must be positive");
  if (!(abs_tol > 0)) bad("abs_tol", "must be positive");
  if (!(max_time > 0)) bad("max_time", "must be positive");
  if (!(event_radius > 0 && event_radius < 1)) bad("event_radius", "must lie in (0, 1)");
  if (!(dwell_time >= 0)) bad("dwell_time", "must be non-negative");
  if (!(chart_switch_threshold > 1)) bad("chart_switch_threshold", "must exceed 1");
  if (!(infinity_radius > 0 && infinity_radius < 1)) bad("infinity_radius", "must lie in (0, 1)");
  if (!(infinity_cone > 0)) bad("infinity_cone", "must be positive");
  if (!(sample_dt > 0)) bad("sample_dt", "must be positive");
  if (max_steps <= 0) bad("max_steps", "must be positive");
}

std::string LimitTag::to_string() const {
  switch (kind) {
    case LimitKind::finite_equilibrium: return "finite_equilibrium(" + id + ")";
    case LimitKind::infinite_equilibrium: return "infinite_equilibrium(" + chart + "," + id + ")";
    case LimitKind::surface_approach: return "surface_approach(" + id + ")";
    case LimitKind::escaped: return chart.empty() ? "escaped" : "escaped(" + chart + ")";
    case LimitKind::undetermined: return "undetermined";
  }
  return "?";
}

namespace {

using State = std::array<double, 4>;  // coordinates, then original time

int chart_slot(const ChartId& c) { return 2 * (c.index - 1) + (c.negative ? 1 : 0); }

struct Flow {
  int dim = 0;
  int degree = 0;
  CompiledField finite;
  std::vector<CompiledField> charts;  // by chart_slot, U1 V1 .. Ud Vd
  std::optional<CompiledPoly> f;
  double sigma = 0;

  Flow(const PolyVectorField& field, const std::optional<DarbouxInvariant>& monitor, bool with_charts)
      : dim(static_cast<int>(field.dimension())), degree(field.degree()), finite(field) {
    if (dim != 2 && dim != 3) throw StructuralError("integration supports planar and spatial fields");
    if (with_charts)
      for (int i = 1; i <= dim; ++i)
        for (bool neg : {false, true}) charts.emplace_back(compactify(field, {dim, i, neg}).field);
    if (monitor) {
      f.emplace(monitor->f, field.coords());
      sigma = monitor->exponent.get_d();
    }
  }

  double invariant(const std::vector<double>& x, double t) const {
    if (!f) return 0;
    return (*f)(x.data()) * std::exp(sigma * t);
  }
};

double max_abs(const std::vector<double>& v, std::size_t n) {
  double m = 0;
  for (std::size_t i = 0; i < n; ++i) m = std::max(m, std::abs(v[i]));
  return m;
}

double distance(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
  return std::sqrt(s);
}

class Integration {
 public:
  Integration(const Flow& flow, const IntegratorConfig& cfg, const std::vector<CaptureTarget>& targets)
      : fl_(flow), cfg_(cfg), targets_(targets), dir_(cfg.backward ? -1 : 1) {}

  OrbitRecord run(const std::vector<double>& x0) {
    namespace ode = boost::numeric::odeint;
    const int d = fl_.dim;
    if (static_cast<int>(x0.size()) != d) throw StructuralError("initial state has the wrong dimension");
    for (double v : x0)
      if (!std::isfinite(v)) throw PreconditionError("initial state is not finite");

    I0_ = fl_.invariant(x0, 0);
    std::vector<double> cur = x0;
    if (cfg_.chart_continuation && !fl_.charts.empty() && max_abs(x0, d) > cfg_.chart_switch_threshold) {
      finite_ = false;
      chart_ = dominant_chart(x0);
      cur = to_chart(x0, chart_);
    }
    observe(cur, 0, true);

    auto stepper = ode::make_dense_output(cfg_.abs_tol, cfg_.rel_tol, ode::runge_kutta_dopri5<State>());
    double tau = 0, t = 0;
    State s = pack(cur, t);
    stepper.initialize(s, tau, 1e-3);
    double tau_mode = 0, t_mode = 0;  // where the current finite segment started
    double next_sample = cfg_.sample_dt;
    auto rhs = [this](const State& u, State& du, double) { eval(u, du); };

    while (true) {
      if (rec_.steps >= cfg_.max_steps) return finish(LimitTag{}, "step budget exhausted");
      std::pair<double, double> span;
      try {
        span = stepper.do_step(rhs);
      } catch (const std::exception& e) {
        return finish(LimitTag{}, std::string("step size underflow: ") + e.what());
      }
      ++rec_.steps;
      const State& end = stepper.current_state();
      if (!std::all_of(end.begin(), end.begin() + d + 1, [](double v) { return std::isfinite(v); }))
        return finish(LimitTag{}, "state left double range");
      double h = span.second - span.first;
      if (h < 1e-14 * std::max(1.0, std::abs(span.second)))
        return finish(LimitTag{}, "step size underflow at tau = " + std::to_string(span.second));

      if (finite_) {
        // Dense samples on the grid |t| = k * sample_dt, which also drive capture.
        double t_end = end[d];
        double limit = std::min(std::abs(t_end), cfg_.max_time);
        while (next_sample <= limit + 1e-12) {
          double tau_s = tau_mode + (next_sample - std::abs(t_mode));
          State u;
          stepper.calc_state(tau_s, u);
          std::vector<double> x(u.begin(), u.begin() + d);
          double ts = dir_ * next_sample;
          if (observe(x, ts, true)) return finish(capture_tag_, "");
          next_sample += cfg_.sample_dt;
        }
        if (std::abs(t_end) >= cfg_.max_time) {
          if (cfg_.sample_dt * std::floor(cfg_.max_time / cfg_.sample_dt) < cfg_.max_time - 1e-12) {
            double tau_s = tau_mode + (cfg_.max_time - std::abs(t_mode));
            State u;
            stepper.calc_state(tau_s, u);
            observe(std::vector<double>(u.begin(), u.begin() + d), dir_ * cfg_.max_time, true);
          }
          return finish(LimitTag{}, "max_time reached");
        }
        std::vector<double> x(end.begin(), end.begin() + d);
        if (observe(x, t_end, false)) return finish(capture_tag_, "");
        if (cfg_.chart_continuation && !fl_.charts.empty() && max_abs(x, d) > cfg_.chart_switch_threshold) {
          record(x, t_end, true);
          finite_ = false;
          chart_ = dominant_chart(x);
          std::vector<double> z = to_chart(x, chart_);
          stepper.initialize(pack(z, t_end), span.second, h);
          cone_enter_ = -1;
          last_chart_sample_ = span.second;
          record(z, t_end, true);
        }
      } else {
        std::vector<double> z(end.begin(), end.begin() + d);
        double t_end = end[d];
        double w = z[d - 1];
        bool sample = span.second - last_chart_sample_ >= cfg_.sample_dt;
        if (sample) last_chart_sample_ = span.second;
        record(z, t_end, sample);

        bool in_cone = max_abs(z, d - 1) < cfg_.infinity_cone;
        if (!in_cone) cone_enter_ = -1;
        else if (cone_enter_ < 0) cone_enter_ = span.second;
        if (std::abs(w) < cfg_.infinity_radius) {
          record(z, t_end, true);
          if (in_cone && span.second - cone_enter_ >= cfg_.dwell_time)
            return finish(LimitTag{LimitKind::infinite_equilibrium, "origin", chart_.name()}, "");
          return finish(LimitTag{LimitKind::escaped, "", chart_.name()}, "");
        }
        if (std::abs(t_end) >= cfg_.max_time || span.second >= chart_tau_budget()) {
          record(z, t_end, true);
          return finish(LimitTag{}, "time budget reached in chart " + chart_.name());
        }
        if (max_abs(z, d - 1) > 2) {
          // Another coordinate dominates: re-project into its chart.
          auto y = homogeneous(z, chart_);
          std::size_t k = 0;
          for (int i = 1; i < d; ++i)
            if (std::abs(y[i]) > std::abs(y[k])) k = i;
          ChartId next{d, static_cast<int>(k) + 1, y[k] * y[d] < 0};
          std::vector<double> nz;
          for (int i = 0; i < d; ++i)
            if (i != static_cast<int>(k)) nz.push_back(y[i] / y[k]);
          nz.push_back(y[d] / y[k]);
          chart_ = next;
          cone_enter_ = -1;
          stepper.initialize(pack(nz, t_end), span.second, h);
          record(nz, t_end, true);
        } else if (std::abs(w) * cfg_.chart_switch_threshold > 2) {
          std::vector<double> x = from_chart(z, chart_);
          finite_ = true;
          tau_mode = span.second;
          t_mode = t_end;
          next_sample = (std::floor(std::abs(t_end) / cfg_.sample_dt) + 1) * cfg_.sample_dt;
          stepper.initialize(pack(x, t_end), span.second, h);
          record(x, t_end, true);
        }
      }
    }
  }

 private:
  double chart_tau_budget() const { return 1e3 * cfg_.max_time; }

  State pack(const std::vector<double>& v, double t) const {
    State s{};
    for (int i = 0; i < fl_.dim; ++i) s[i] = v[i];
    s[fl_.dim] = t;
    return s;
  }

  void eval(const State& u, State& du) const {
    const int d = fl_.dim;
    du.fill(0);
    if (finite_) {
      fl_.finite(u.data(), du.data());
      du[d] = dir_;
    } else {
      fl_.charts[chart_slot(chart_)](u.data(), du.data());
      du[d] = dir_ * std::pow(std::abs(u[d - 1]), fl_.degree - 1);
    }
    for (int i = 0; i < d; ++i) du[i] *= dir_;
  }

  // Records (optionally) and runs the capture test; true when captured.
  bool observe(const std::vector<double>& x, double t, bool sample) {
    record(x, t, sample);
    if (!finite_ || targets_.empty()) return false;
    int best = -1;
    double best_d = cfg_.event_radius;
    for (std::size_t i = 0; i < targets_.size(); ++i) {
      double dd = distance(x, targets_[i].location);
      if (dd < best_d) {
        best = static_cast<int>(i);
        best_d = dd;
      }
    }
    if (best < 0) {
      dwell_target_ = -1;
      return false;
    }
    if (best != dwell_target_) {
      dwell_target_ = best;
      dwell_t_ = t;
      dwell_d_ = best_d;
      return false;
    }
    if (std::abs(t - dwell_t_) >= cfg_.dwell_time && best_d <= std::max(dwell_d_, cfg_.event_radius / 2)) {
      capture_tag_ = LimitTag{LimitKind::finite_equilibrium, targets_[best].id, ""};
      return true;
    }
    return false;
  }

  void record(const std::vector<double>& v, double t, bool sample) {
    double inv = 0;
    if (fl_.f) {
      std::vector<double> x = finite_ ? v : from_chart(v, chart_);
      inv = fl_.invariant(x, t);
      if (std::isfinite(inv)) {
        double drift = I0_ != 0 ? std::abs(inv - I0_) / std::abs(I0_) : std::abs(inv);
        rec_.invariant_drift = std::max(rec_.invariant_drift, drift);
      } else {
        inv = std::numeric_limits<double>::quiet_NaN();
      }
    }
    last_t_ = t;
    if (!sample || !cfg_.record_samples) return;
    if (!rec_.samples.empty() && rec_.samples.back().t == t) return;
    rec_.samples.push_back({t, v, inv, finite_ ? "finite" : chart_.name()});
  }

  OrbitRecord finish(LimitTag tag, std::string diag) {
    rec_.limit_tag = std::move(tag);
    rec_.diagnostics = std::move(diag);
    rec_.end_time = last_t_;
    if (cfg_.backward) std::reverse(rec_.samples.begin(), rec_.samples.end());
    return std::move(rec_);
  }

  const Flow& fl_;
  const IntegratorConfig& cfg_;
  const std::vector<CaptureTarget>& targets_;
  const double dir_;
  OrbitRecord rec_;
  double I0_ = 0;
  bool finite_ = true;
  ChartId chart_{3, 1, false};
  double cone_enter_ = -1;
  double last_chart_sample_ = 0;
  double last_t_ = 0;
  int dwell_target_ = -1;
  double dwell_t_ = 0, dwell_d_ = 0;
  LimitTag capture_tag_;
};

}  // namespace

OrbitRecord integrate(const PolyVectorField& field, const std::vector<double>& x0, const IntegratorConfig& cfg,
                      const std::optional<DarbouxInvariant>& monitor, const std::vector<CaptureTarget>& targets) {
  cfg.validate();
  Flow flow(field, monitor, cfg.chart_continuation);
  return Integration(flow, cfg, targets).run(x0);
}

// ---------------------------------------------------------------- limit sets

namespace {

bool attracting(EquilibriumType t) {
  return t == EquilibriumType::attracting_focus || t == EquilibriumType::attracting_node;
}

template <class F>
void parallel_for(std::size_t n, F&& body) {
  std::size_t workers = std::max(1u, std::min<unsigned>(std::thread::hardware_concurrency(), 16u));
  workers = std::min(workers, n);
  std::vector<std::future<void>> jobs;
  for (std::size_t w = 0; w < workers; ++w)
    jobs.push_back(std::async(std::launch::async, [&, w] {
      for (std::size_t i = w; i < n; i += workers) body(i);
    }));
  for (auto& j : jobs) j.get();
}

}  // namespace

LimitSetSummary classify_limit_sets(const ExactParameters& params, const std::vector<std::vector<double>>& seeds,
                                    IntegratorConfig cfg, bool corroborate_backward) {
  cfg.validate();
  auto surfaces = find_surfaces_numeric(params);
  if (surfaces.empty()) throw PreconditionError("parameters " + describe(params) + " match no tabulated surface");
  LimitSetSummary out;
  out.surface = surfaces.front();
  DarbouxInvariant inv = darboux_from_surface(out.surface);
  PolyVectorField field = em_field(params);

  out.equilibria = find_finite_equilibria_3d(to_float(params));
  std::sort(out.equilibria.begin(), out.equilibria.end(),
            [](const auto& a, const auto& b) { return a.location.at(0) < b.location.at(0); });
  std::vector<CaptureTarget> targets;
  for (std::size_t i = 0; i < out.equilibria.size(); ++i)
    if (!out.equilibria[i].location.empty())
      targets.push_back({"E" + std::to_string(i), out.equilibria[i].location});

  IntegratorConfig fwd = cfg, back = cfg;
  fwd.backward = false;
  fwd.chart_continuation = false;  // forward orbits of these rows stay bounded
  back.backward = true;
  back.chart_continuation = true;
  Flow ffwd(field, inv, false), fback(field, inv, true);
  CompiledPoly f(inv.f, field.coords());
  const std::string& label = out.surface.label;

  out.outcomes.resize(seeds.size());
  parallel_for(seeds.size(), [&](std::size_t i) {
    SeedOutcome& o = out.outcomes[i];
    o.seed = seeds[i];
    o.f0 = f(o.seed.data());
    double n2 = 1;
    for (double v : o.seed) n2 += v * v;
    o.on_surface = std::abs(o.f0) <= 1e-14 * n2;
    o.forward = Integration(ffwd, fwd, targets).run(o.seed);
    if (o.forward.limit_tag.kind == LimitKind::undetermined && !o.forward.samples.empty()) {
      const auto& last = o.forward.samples.back();
      if (std::abs(f(last.state.data())) < 1e-6) o.forward.limit_tag = {LimitKind::surface_approach, label, ""};
    }
    if (o.on_surface)
      o.backward_predicted = {LimitKind::surface_approach, label, ""};
    else if (label == "a")
      o.backward_predicted = {LimitKind::infinite_equilibrium, "origin", o.f0 < 0 ? "U3" : "V3"};
    else if (label == "b")
      o.backward_predicted = {LimitKind::infinite_equilibrium, "origin", "U1"};
    if (corroborate_backward && !o.on_surface) o.backward = Integration(fback, back, {}).run(o.seed);
  });
  return out;
}

TheoremVerdict judge_against_theorem(const LimitSetSummary& summary, const SeedOutcome& o) {
  TheoremVerdict v;
  const std::string& label = summary.surface.label;
  if (label != "a" && label != "b") {
    v.reason = "no stated limit sets for surface " + label;
    return v;
  }
  v.backward_corroborated = o.backward.limit_tag == o.backward_predicted;

  // alpha-limit from the sign of the conserved quantity
  if (!o.on_surface) {
    LimitTag expected = label == "a"
                            ? LimitTag{LimitKind::infinite_equilibrium, "origin", o.f0 < 0 ? "U3" : "V3"}
                            : LimitTag{LimitKind::infinite_equilibrium, "origin", "U1"};
    if (!(o.backward_predicted == expected)) {
      v.contradicts = true;
      v.reason = "alpha-limit " + o.backward_predicted.to_string() + ", stated " + expected.to_string();
      return v;
    }
  }

  const LimitTag& fw = o.forward.limit_tag;
  if (fw.kind == LimitKind::finite_equilibrium) {
    std::size_t idx = std::stoul(fw.id.substr(1));
    const auto& eq = summary.equilibria.at(idx);
    if (!attracting(eq.type)) {
      v.contradicts = true;
      v.reason = "omega-limit " + fw.id + " is " + to_string(eq.type);
      return v;
    }
    if (label == "b" && summary.equilibria.size() != 1) {
      v.contradicts = true;
      v.reason = "surface (b) should carry the single focus Q";
      return v;
    }
    v.decisive = true;
    v.reason = "omega " + fw.id + ", alpha " + o.backward_predicted.to_string();
    return v;
  }
  if (label == "a" && fw.kind == LimitKind::infinite_equilibrium && (fw.chart == "U2" || fw.chart == "V2")) {
    v.decisive = true;
    v.reason = "omega at an endpoint of the y-axis";
    return v;
  }
  if (fw.kind == LimitKind::infinite_equilibrium || fw.kind == LimitKind::escaped) {
    v.contradicts = true;
    v.reason = "omega-limit " + fw.to_string() + " is not a stated limit";
    return v;
  }
  v.reason = "forward tag " + fw.to_string() + ": " + o.forward.diagnostics;
  return v;
}

std::vector<std::vector<double>> random_seeds(std::size_t count, std::uint64_t rng_seed, double half_width) {
  std::mt19937_64 rng(rng_seed);
  std::uniform_real_distribution<double> u(-half_width, half_width);
  std::vector<std::vector<double>> out;
  for (std::size_t i = 0; i < count; ++i) {
    double x = u(rng), y = u(rng), z = u(rng);
    out.push_back({x, y, z});
  }
  return out;
}

}  // namespace emdyn
