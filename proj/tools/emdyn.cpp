// emdyn: reports, reproduction suites and portraits for the
// x' = s(y - x), y' = r x - x z - y + c, z' = x y - z family.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "emdyn/errors.hpp"
#include "emdyn/report.hpp"

using namespace emdyn;

namespace {

struct Globals {
  std::optional<std::string> s, r, c;
  std::string tasks = "all";
  std::optional<std::string> seeds;
  std::optional<std::uint64_t> rng_seed;
  std::optional<std::string> out;
  double tol = 1e-9;
};

Rational param(const std::optional<std::string>& v, const char* name) {
  if (!v) throw UsageError(std::string(name) + ": required");
  try {
    return parse_rational(*v);
  } catch (const ParseError& e) {
    throw UsageError(std::string(name) + ": " + e.what());
  }
}

ExactParameters params(const Globals& g) { return {param(g.s, "s"), param(g.r, "r"), param(g.c, "c")}; }

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep))
    if (!item.empty()) out.push_back(item);
  return out;
}

// "--seeds 30" is a count, "--seeds 1,2,3;0,0,1" an explicit list
void apply_seeds(const std::string& text, AnalysisConfig& cfg) {
  if (text.find(',') == std::string::npos) {
    try {
      std::size_t used = 0;
      long n = std::stol(text, &used);
      if (used != text.size() || n < 0) throw std::invalid_argument(text);
      cfg.seed_count = static_cast<std::size_t>(n);
      return;
    } catch (const std::exception&) {
      throw UsageError("seeds: expected a count or x,y,z;x,y,z, got '" + text + "'");
    }
  }
  for (const auto& triple : split(text, ';')) {
    std::vector<double> seed;
    for (const auto& v : split(triple, ',')) {
      try {
        seed.push_back(std::stod(v));
      } catch (const std::exception&) {
        throw UsageError("seeds: not a number '" + v + "'");
      }
    }
    cfg.seeds.push_back(seed);
  }
}

int analyze(const Globals& g) {
  AnalysisConfig cfg;
  cfg.params = params(g);
  if (g.tasks != "all")
    for (const auto& t : split(g.tasks, ',')) cfg.tasks.insert(t);
  if (g.seeds) apply_seeds(*g.seeds, cfg);
  if (g.rng_seed) cfg.rng_seed = *g.rng_seed;
  cfg.output_dir = g.out.value_or("report");
  cfg.tol = g.tol;
  auto bundle = run_report(cfg);
  write_bundle(bundle, cfg.output_dir);
  std::cout << "wrote " << bundle.files.size() << " files to " << cfg.output_dir << "\n";
  if (bundle.report.contains("surfaces") && bundle.report["surfaces"].contains("note"))
    std::cout << bundle.report["surfaces"]["note"].get<std::string>() << "\n";
  return 0;
}

int reproduce(const Globals& g, std::vector<std::string> suites, const std::optional<std::string>& lemma) {
  if (lemma) suites.push_back(*lemma);
  if (suites.empty()) throw UsageError("suite: name a suite, --lemma X, or all");
  if (suites.size() == 1 && suites[0] == "all") suites = suite_names();
  SuiteOptions opt;
  if (g.seeds) {
    try {
      opt.seeds = std::stoul(*g.seeds);
    } catch (const std::exception&) {
      throw UsageError("seeds: reproduce takes a seed count");
    }
  }
  if (g.rng_seed) opt.rng_seed = *g.rng_seed;
  opt.tol = g.tol;
  std::vector<std::string> names;
  for (const auto& s : suites) names.push_back(canonical_suite_name(s));
  bool all = true;
  nlohmann::json data;
  for (const auto& name : names) {
    auto res = run_suite(name, opt);
    std::cout << "== " << name << "\n";
    for (const auto& l : res.lines) std::cout << l << "\n";
    all = all && res.passed;
    data[name] = {{"passed", res.passed}, {"lines", res.lines}, {"data", res.data}};
  }
  if (g.out) {
    std::filesystem::create_directories(*g.out);
    std::ofstream(std::filesystem::path(*g.out) / "reproduce.json") << dump_json(data);
  }
  return all ? 0 : 1;
}

int portrait(const Globals& g, const PortraitOptions& opt) {
  auto p = restricted_portrait(params(g), opt);
  std::string dir = g.out.value_or(".");
  ReportBundle b;
  b.files["portrait.svg"] = p.svg;
  b.files["portrait.json"] = dump_json(p.data);
  write_bundle(b, dir);
  std::cout << "wrote portrait.svg and portrait.json to " << dir << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Invariant surfaces, infinity and limit sets of x' = s(y - x), y' = r x - x z - y + c, z' = x y - z"};
  app.require_subcommand(1);
  app.set_config("--config", "", "key=value file; command-line flags take precedence");
  app.config_formatter(std::make_shared<CLI::ConfigINI>());

  Globals g;
  app.add_option("--s", g.s, "parameter s (decimal or p/q)");
  app.add_option("--r", g.r, "parameter r");
  app.add_option("--c", g.c, "parameter c");
  app.add_option("--tasks", g.tasks, "comma list of surfaces,charts,equilibria,blowup,orbits,portrait, or all");
  app.add_option("--seeds", g.seeds, "seed count, or explicit seeds x,y,z;x,y,z");
  app.add_option("--rng-seed", g.rng_seed, "seed of the random orbit starts");
  app.add_option("--out", g.out, "output directory");
  app.add_option("--tol", g.tol, "integrator relative tolerance");

  auto* an = app.add_subcommand("analyze", "write report.json, orbits/*.csv and portrait.svg")->fallthrough();

  auto* rep = app.add_subcommand("reproduce", "run reproduction suites")->fallthrough();
  std::vector<std::string> suites;
  std::optional<std::string> lemma;
  rep->add_option("suite", suites, "suite names (table1, prop2, lemma41 ... lemma53, theorems) or all");
  rep->add_option("--lemma", lemma, "suite by lemma number, e.g. 4.1");

  auto* po = app.add_subcommand("portrait", "restricted system in the Poincare disc")->fallthrough();
  PortraitOptions popt;
  po->add_option("--grid", popt.grid, "grid x grid orbit starts");
  po->add_option("--max-time", popt.max_time, "integration time per direction");
  po->add_option("--size", popt.size, "image size in pixels");

  CLI11_PARSE(app, argc, argv);

  try {
    if (an->parsed()) return analyze(g);
    if (rep->parsed()) return reproduce(g, suites, lemma);
    return portrait(g, popt);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
