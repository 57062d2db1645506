#pragma once

// Everything the command-line driver writes: the analysis report bundle,
// orbit CSV files, the Poincare-disc portrait and the reproduction suites.

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "emdyn/blowup.hpp"
#include "emdyn/dynamics.hpp"

namespace emdyn {

/// surfaces, charts, equilibria, blowup, orbits, portrait
const std::vector<std::string>& all_tasks();

struct AnalysisConfig {
  ExactParameters params;
  std::set<std::string> tasks;              // empty means all
  std::vector<std::vector<double>> seeds;   // explicit seeds win over the count
  std::size_t seed_count = 20;
  double seed_box = 5;                      // random seeds in [-box, box]^3
  std::uint64_t rng_seed = 1;
  std::string output_dir = ".";
  double tol = 1e-9;                        // integrator rel_tol; abs_tol is tol / 1000

  /// Throws UsageError naming the offending field.
  void validate() const;
  bool wants(const std::string& task) const { return tasks.empty() || tasks.count(task) > 0; }
  std::vector<std::vector<double>> resolved_seeds() const;
};

/// "%.17g".
std::string format_double(double v);
/// Like json::dump(2), but every float is written with 17 significant digits.
std::string dump_json(const nlohmann::json& j);

nlohmann::json to_json(const EquilibriumReport& rep);
nlohmann::json to_json(const BlowupNode& node);
nlohmann::json to_json(const OrbitRecord& rec, bool with_samples = false);
nlohmann::json to_json(const PolyVectorField& field);

/// Header t,x,y,z,invariant,chart; chart segments hold chart coordinates.
std::string orbit_csv(const OrbitRecord& rec);

struct ReportBundle {
  nlohmann::json report;
  std::map<std::string, std::string> files;  // relative path -> contents, report.json included
};

ReportBundle run_report(const AnalysisConfig& cfg);
/// Creates the directory tree and writes every file of the bundle.
void write_bundle(const ReportBundle& bundle, const std::string& dir);

struct PortraitOptions {
  int grid = 6;           // grid x grid seeds over the disc
  double max_time = 40;   // per direction
  int size = 640;         // pixels
};

/// Portrait of the restricted planar system in the Poincare disc, with the
/// data it was drawn from. UsageError when the parameters carry no
/// restrictable surface.
struct Portrait {
  std::string svg;
  nlohmann::json data;
};
Portrait restricted_portrait(const ExactParameters& params, const PortraitOptions& opt = {});

struct SuiteOptions {
  std::size_t seeds = 50;
  std::uint64_t rng_seed = 7;
  double tol = 1e-9;
};

struct SuiteResult {
  std::string name;
  bool passed = false;
  std::vector<std::string> lines;  // expected vs computed
  nlohmann::json data;
};

/// table1, prop2, lemma41, lemma42, lemma43, lemma44, lemma45, lemma51,
/// lemma52, lemma53, theorems
const std::vector<std::string>& suite_names();
/// Accepts "lemma41", "lemma 4.1" and "4.1" spellings. Throws UsageError.
std::string canonical_suite_name(const std::string& name);
SuiteResult run_suite(const std::string& name, const SuiteOptions& opt = {});

}  // namespace emdyn
