#include "emdyn/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include "emdyn/errors.hpp"
#include "emdyn/restrict.hpp"

namespace emdyn {

using nlohmann::json;

const std::vector<std::string>& all_tasks() {
  static const std::vector<std::string> tasks{"surfaces", "charts", "equilibria", "blowup", "orbits", "portrait"};
  return tasks;
}

void AnalysisConfig::validate() const {
  auto bad = [](const std::string& field, const std::string& why) { throw UsageError(field + ": " + why); };
  for (const auto& t : tasks)
    if (std::find(all_tasks().begin(), all_tasks().end(), t) == all_tasks().end())
      bad("tasks", "unknown task '" + t + "'");
  if (!(std::isfinite(seed_box) && seed_box > 0)) bad("seeds", "box half-width must be positive");
  for (const auto& s : seeds) {
    if (s.size() != 3) bad("seeds", "each seed needs three coordinates");
    for (double v : s)
      if (!std::isfinite(v)) bad("seeds", "coordinates must be finite");
  }
  if (!(tol > 0 && tol < 1e-2)) bad("tol", "must lie in (0, 1e-2)");
  if (output_dir.empty()) bad("out", "empty output directory");
}

std::vector<std::vector<double>> AnalysisConfig::resolved_seeds() const {
  return seeds.empty() ? random_seeds(seed_count, rng_seed, seed_box) : seeds;
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace {

void dump_rec(const json& j, std::string& out, int depth) {
  auto newline = [&](int d) {
    out += '\n';
    out.append(2 * d, ' ');
  };
  switch (j.type()) {
    case json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += '{';
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out += ',';
        first = false;
        newline(depth + 1);
        out += json(it.key()).dump();
        out += ": ";
        dump_rec(it.value(), out, depth + 1);
      }
      newline(depth);
      out += '}';
      return;
    }
    case json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      out += '[';
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i) out += ',';
        newline(depth + 1);
        dump_rec(j[i], out, depth + 1);
      }
      newline(depth);
      out += ']';
      return;
    }
    case json::value_t::number_float: {
      double v = j.get<double>();
      out += std::isfinite(v) ? format_double(v) : "null";
      return;
    }
    default:
      out += j.dump();
  }
}

json exact_list(const std::vector<Rational>& v) {
  json out = json::array();
  for (const auto& q : v) out.push_back(to_string(q));
  return out;
}

json certificate_json(const DivergenceCertificate& c) {
  return {{"criterion", c.criterion},
          {"conclusive", c.conclusive},
          {"divergence", c.divergence.to_string()},
          {"sign", c.sign}};
}

json step_json(const BlowupStep& s) {
  json j{{"kind", to_string(s.kind)}, {"after", to_json(s.after)}};
  if (s.kind == StepKind::twist || s.kind == StepKind::translate) j["alpha"] = to_string(s.alpha);
  if (s.kind == StepKind::rescale) j["factor"] = s.factor.to_string();
  if (!s.note.empty()) j["note"] = s.note;
  return j;
}

std::vector<CaptureTarget> sorted_targets(std::vector<EquilibriumReport>& eqs) {
  std::sort(eqs.begin(), eqs.end(), [](const auto& a, const auto& b) {
    if (a.location.empty() || b.location.empty()) return !a.location.empty() && b.location.empty();
    return a.location[0] < b.location[0];
  });
  std::vector<CaptureTarget> targets;
  for (std::size_t i = 0; i < eqs.size(); ++i)
    if (!eqs[i].location.empty()) targets.push_back({"E" + std::to_string(i), eqs[i].location});
  return targets;
}

std::string orbit_file(std::size_t i, const char* dir) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "orbits/seed_%03zu_%s.csv", i, dir);
  return buf;
}

json surfaces_section(const std::vector<InvariantSurface>& surfaces, const ExactParameters& p) {
  json found = json::array();
  for (const auto& sf : surfaces) {
    json constraints = json::array();
    for (const auto& c : sf.constraints) constraints.push_back(c.to_string());
    json entry{{"label", sf.label},
               {"f", sf.f.to_string()},
               {"cofactor", sf.cofactor.to_string()},
               {"constraints", constraints},
               {"verified", verify_invariance(sf, p)}};
    try {
      DarbouxInvariant inv = darboux_from_surface(sf);
      entry["darboux"] = {{"f", inv.f.to_string()},
                          {"exponent", to_string(inv.exponent)},
                          {"invariant", "(" + inv.f.to_string() + ") * exp(" + to_string(inv.exponent) + " t)"}};
    } catch (const UnsupportedError& e) {
      entry["darboux"] = {{"note", e.what()}};
    }
    found.push_back(entry);
  }
  json out{{"found", found}};
  if (surfaces.empty()) out["note"] = "no degree-2 invariant surface";
  return out;
}

json restricted_equilibria(const RestrictedSystem& rs, const ExactParameters& p) {
  json j{{"surface", rs.surface.label}, {"coords", rs.field.coords()}};
  json finite = json::array();
  json infinite = json::array();
  if (rs.surface.label == "a") {
    for (const auto& root : solve_equilibrium_cubic(p.c, p.r)) finite.push_back(to_json(classify_restricted_a(root, p.c, p.r)));
    for (const auto& e : infinite_equilibria_2d(rs.field)) infinite.push_back(to_json(e));
  } else if (rs.surface.label == "b") {
    double c = to_double(p.c);
    auto q = restricted_b_equilibrium(c);
    finite.push_back(to_json(classify_restricted_b(q[0], q[1], c)));
    for (const auto& e : infinite_equilibria_restricted_b(p.c)) infinite.push_back(to_json(e));
    j["infinite_note"] = "u' has constant sign on v = 0 in U1 and U2";
  } else {
    for (const auto& e : infinite_equilibria_2d(rs.field)) infinite.push_back(to_json(e));
  }
  j["finite"] = finite;
  j["infinite"] = infinite;
  j["certificate"] = certificate_json(no_periodic_orbit_certificate(rs));
  return j;
}

json equilibria_section(const ExactParameters& p, const std::vector<RestrictedSystem>& restricted) {
  json j;
  auto disc = discriminant(p.c, p.r);
  j["discriminant"] = {{"value", to_string(*disc.exact)}, {"region", to_string(disc.region)}};
  json roots = json::array();
  for (const auto& r : solve_equilibrium_cubic(p.c, p.r)) {
    json e{{"x", r.x}, {"multiplicity", r.multiplicity}};
    if (r.exact) e["exact"] = to_string(*r.exact);
    roots.push_back(e);
  }
  j["cubic_roots"] = roots;
  auto finite = find_finite_equilibria_3d(to_float(p));
  sorted_targets(finite);
  json f = json::array();
  for (std::size_t i = 0; i < finite.size(); ++i) {
    json e = to_json(finite[i]);
    e["id"] = "E" + std::to_string(i);
    f.push_back(e);
  }
  j["finite"] = f;
  json inf = json::array();
  for (const auto& e : infinite_equilibria_3d(p)) inf.push_back(to_json(e));
  j["infinite"] = inf;
  json rj = json::array();
  for (const auto& rs : restricted) rj.push_back(restricted_equilibria(rs, p));
  j["restricted"] = rj;
  return j;
}

json blowup_section(const std::vector<RestrictedSystem>& restricted) {
  json trees = json::array();
  for (const auto& rs : restricted)
    for (const auto& e : infinite_equilibria_2d(rs.field)) {
      if (e.type != EquilibriumType::degenerate_linearly_zero) continue;
      json entry{{"surface", rs.surface.label}, {"chart", e.chart}};
      bool at_origin = e.exact && std::all_of(e.exact->begin(), e.exact->end(), [](const Rational& q) { return q == 0; });
      if (!at_origin) {
        entry["note"] = "not at the chart origin; not analysed";
        trees.push_back(entry);
        continue;
      }
      BlowupNode tree = analyze_linearly_zero(compactify_2d(rs.field, ChartId::parse(e.chart, 2)).field);
      json lv = json::array();
      for (const auto* l : leaves(tree)) {
        json le{{"location", exact_list(l->location)}, {"unresolved", l->unresolved}};
        if (l->leaf) le["type"] = to_string(l->leaf->type);
        if (l->exact_eigenvalues) le["eigenvalues"] = exact_list({(*l->exact_eigenvalues)[0], (*l->exact_eigenvalues)[1]});
        lv.push_back(le);
      }
      entry["leaves"] = lv;
      entry["tree"] = to_json(tree);
      trees.push_back(entry);
    }
  json out{{"trees", trees}};
  if (trees.empty()) out["note"] = "no linearly zero equilibrium on a restricted system";
  return out;
}

json orbits_section(const ExactParameters& p, const std::vector<InvariantSurface>& surfaces, const AnalysisConfig& cfg,
                    std::map<std::string, std::string>& files) {
  auto seeds = cfg.resolved_seeds();
  IntegratorConfig ic;
  ic.rel_tol = cfg.tol;
  ic.abs_tol = cfg.tol * 1e-3;
  json out;
  json list = json::array();

  if (!surfaces.empty()) {
    auto summary = classify_limit_sets(p, seeds, ic, true);
    out["surface"] = summary.surface.label;
    json eqs = json::array();
    for (std::size_t i = 0; i < summary.equilibria.size(); ++i) {
      json e = to_json(summary.equilibria[i]);
      e["id"] = "E" + std::to_string(i);
      eqs.push_back(e);
    }
    out["equilibria"] = eqs;
    bool judged = summary.surface.label == "a" || summary.surface.label == "b";
    int decisive = 0, contradictions = 0, corroborated = 0;
    for (std::size_t i = 0; i < summary.outcomes.size(); ++i) {
      const auto& o = summary.outcomes[i];
      json e{{"index", i},
             {"seed", o.seed},
             {"f0", o.f0},
             {"on_surface", o.on_surface},
             {"forward", to_json(o.forward)},
             {"forward_file", orbit_file(i, "forward")},
             {"backward_predicted", o.backward_predicted.to_string()}};
      files[orbit_file(i, "forward")] = orbit_csv(o.forward);
      if (!o.backward.samples.empty()) {
        e["backward"] = to_json(o.backward);
        e["backward_file"] = orbit_file(i, "backward");
        files[orbit_file(i, "backward")] = orbit_csv(o.backward);
      }
      if (judged) {
        auto v = judge_against_theorem(summary, o);
        decisive += v.decisive;
        contradictions += v.contradicts;
        corroborated += v.backward_corroborated;
        e["verdict"] = {{"decisive", v.decisive},
                        {"contradicts", v.contradicts},
                        {"backward_corroborated", v.backward_corroborated},
                        {"reason", v.reason}};
      }
      list.push_back(e);
    }
    if (judged)
      out["counts"] = {{"seeds", summary.outcomes.size()},
                       {"decisive", decisive},
                       {"contradictions", contradictions},
                       {"backward_corroborated", corroborated}};
  } else {
    // no Darboux invariant: plain forward integration with chart continuation
    auto eqs = find_finite_equilibria_3d(to_float(p));
    auto targets = sorted_targets(eqs);
    PolyVectorField field = em_field(p);
    for (std::size_t i = 0; i < seeds.size(); ++i) {
      auto rec = integrate(field, seeds[i], ic, {}, targets);
      files[orbit_file(i, "forward")] = orbit_csv(rec);
      list.push_back({{"index", i}, {"seed", seeds[i]}, {"forward", to_json(rec)}, {"forward_file", orbit_file(i, "forward")}});
    }
    out["note"] = "no invariant surface: forward orbits only, invariant column is 0";
  }
  out["outcomes"] = list;
  files["orbits/summary.json"] = dump_json(out);
  return out;
}

}  // namespace

std::string dump_json(const json& j) {
  std::string out;
  dump_rec(j, out, 0);
  out += '\n';
  return out;
}

json to_json(const EquilibriumReport& rep) {
  json j{{"chart", rep.chart}, {"type", to_string(rep.type)}, {"multiplicity", rep.multiplicity}};
  j["location"] = rep.location.empty() ? json(nullptr) : json(rep.location);
  if (rep.exact) j["exact"] = exact_list(*rep.exact);
  json ev = json::array();
  for (const auto& e : rep.eigenvalues) ev.push_back({e.real(), e.imag()});
  j["eigenvalues"] = ev;
  if (!rep.locus.empty()) j["locus"] = rep.locus;
  return j;
}

json to_json(const BlowupNode& node) {
  json j{{"location", exact_list(node.location)}, {"field", to_json(node.field)}, {"unresolved", node.unresolved}};
  json steps = json::array();
  for (const auto& s : node.steps) steps.push_back(step_json(s));
  j["steps"] = steps;
  if (node.leaf) j["leaf"] = to_json(*node.leaf);
  if (node.exact_eigenvalues) j["exact_eigenvalues"] = exact_list({(*node.exact_eigenvalues)[0], (*node.exact_eigenvalues)[1]});
  if (!node.note.empty()) j["note"] = node.note;
  json children = json::array();
  for (const auto& c : node.children) children.push_back(to_json(c));
  j["children"] = children;
  return j;
}

json to_json(const OrbitRecord& rec, bool with_samples) {
  json j{{"limit_tag", rec.limit_tag.to_string()},
         {"end_time", rec.end_time},
         {"steps", rec.steps},
         {"invariant_drift", rec.invariant_drift},
         {"sample_count", rec.samples.size()}};
  if (!rec.diagnostics.empty()) j["diagnostics"] = rec.diagnostics;
  if (with_samples) {
    json s = json::array();
    for (const auto& smp : rec.samples)
      s.push_back({{"t", smp.t}, {"state", smp.state}, {"invariant", smp.invariant}, {"chart", smp.chart}});
    j["samples"] = s;
  }
  return j;
}

json to_json(const PolyVectorField& field) {
  json comps = json::array();
  for (const auto& c : field.components()) comps.push_back(c.to_string());
  return {{"coords", field.coords()}, {"components", comps}};
}

std::string orbit_csv(const OrbitRecord& rec) {
  std::string out = "t,x,y,z,invariant,chart\n";
  for (const auto& s : rec.samples) {
    out += format_double(s.t);
    for (std::size_t i = 0; i < 3; ++i) {
      out += ',';
      if (i < s.state.size()) out += format_double(s.state[i]);
    }
    out += ',' + format_double(s.invariant) + ',' + s.chart + '\n';
  }
  return out;
}

ReportBundle run_report(const AnalysisConfig& cfg) {
  cfg.validate();
  ReportBundle b;
  json& rep = b.report;
  const ExactParameters& p = cfg.params;
  rep["parameters"] = {{"s", to_string(p.s)}, {"r", to_string(p.r)}, {"c", to_string(p.c)}};
  json tasks = json::array();
  for (const auto& t : all_tasks())
    if (cfg.wants(t)) tasks.push_back(t);
  rep["tasks"] = tasks;

  auto surfaces = find_surfaces_numeric(p);
  std::vector<RestrictedSystem> restricted;
  json skipped = json::array();
  for (const auto& sf : surfaces) {
    try {
      restricted.push_back(restrict(sf, p));
    } catch (const UnsupportedError& e) {
      skipped.push_back({{"surface", sf.label}, {"reason", e.what()}});
    }
  }

  if (cfg.wants("surfaces")) rep["surfaces"] = surfaces_section(surfaces, p);
  if (cfg.wants("charts")) {
    json full = json::array();
    PolyVectorField X = em_field(p);
    for (const auto& ch : all_charts(3)) full.push_back({{"chart", ch.name()}, {"field", to_json(compactify_3d(X, ch).field)}});
    json planar = json::array();
    for (const auto& rs : restricted) {
      json charts = json::array();
      for (const auto& ch : all_charts(2))
        charts.push_back({{"chart", ch.name()}, {"field", to_json(compactify_2d(rs.field, ch).field)}});
      planar.push_back({{"surface", rs.surface.label}, {"eliminated", rs.eliminated},
                        {"elimination", rs.elimination.to_string()}, {"charts", charts}});
    }
    rep["charts"] = {{"full", full}, {"restricted", planar}, {"not_restricted", skipped}};
  }
  if (cfg.wants("equilibria")) rep["equilibria"] = equilibria_section(p, restricted);
  if (cfg.wants("blowup")) rep["blowup"] = blowup_section(restricted);
  if (cfg.wants("orbits")) rep["orbits"] = orbits_section(p, surfaces, cfg, b.files);
  if (cfg.wants("portrait")) {
    try {
      Portrait pt = restricted_portrait(p);
      b.files["portrait.svg"] = pt.svg;
      rep["portrait"] = pt.data;
    } catch (const UsageError& e) {
      rep["portrait"] = {{"note", e.what()}};
    }
  }
  b.files["report.json"] = dump_json(rep);
  return b;
}

void write_bundle(const ReportBundle& bundle, const std::string& dir) {
  namespace fs = std::filesystem;
  for (const auto& [rel, contents] : bundle.files) {
    fs::path path = fs::path(dir) / rel;
    std::error_code ec;
    fs::create_directories(path.parent_path(), ec);
    std::ofstream out(path, std::ios::binary);
    if (!out) throw UsageError("out: cannot write " + path.string());
    out << contents;
  }
}

}  // namespace emdyn
