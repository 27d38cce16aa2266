/* Copyright 2026 The islandevo Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "islandevo/fitness.hpp"
#include "islandevo/islands.hpp"
#include "islandevo/stats.hpp"
#include "islandevo/topology.hpp"

namespace islandevo::harness {

inline constexpr std::string_view kCsvSchema = "islandevo-csv-1";

enum class Algorithm { SingleEa, IndependentRuns, Island };

std::string_view to_string(Algorithm a);
Algorithm parse_algorithm(std::string_view token);

/// Integer parameter as a function of n:
///   max(min, ceil(c * n^a * log2(n)^b)), or infinity.
/// JSON forms: a number (constant), "infinity", or an object with either
/// "form" in {constant, log2, power, n_log2n} plus "c"/"a"/"min", or the
/// raw fields "c", "a", "b", "min".
struct ParamRule {
  bool infinite = false;
  double c = 1.0;
  double a = 0.0;
  double b = 0.0;
  std::uint64_t min = 1;

  static ParamRule constant(std::uint64_t value) { return {false, static_cast<double>(value), 0, 0, 1}; }
  static ParamRule infinity() { return {true, 0, 0, 0, 1}; }

  // Throws ConfigError for infinite rules.
  std::uint64_t resolve(std::size_t n) const;
  static ParamRule from_json(const nlohmann::json& j);
  nlohmann::json to_json() const;
};

// Round cap: explicit rounds, or c * (w/lambda + w) with w the worst-case
// single-run guess n^(2r) (times n/k for block compositions; n^2 without a
// Fork component).
struct CapRule {
  double c = 50.0;
  std::optional<std::uint64_t> rounds;

  std::uint64_t resolve(const FitnessSpec& spec, std::size_t lambda) const;
  static CapRule from_json(const nlohmann::json& j);
  nlohmann::json to_json() const;
};

// Fitness spec from its JSON form, e.g.
//   {"variant":"lo_block","k":6,"inner":{"variant":"fork","r":2,"masked":true}}
// `n` supplies the length when the document has no "n" (scenario templates).
FitnessSpec spec_from_json(const nlohmann::json& j, std::optional<std::size_t> n = std::nullopt);

struct Scenario {
  std::string name;
  Algorithm algorithm = Algorithm::Island;
  nlohmann::json spec;  // template without n
  TopologyKind topology = TopologyKind::Complete;
  std::vector<std::size_t> n_grid;
  ParamRule lambda_rule = ParamRule::constant(1);
  ParamRule tau_rule = ParamRule::infinity();
  std::size_t replicates = 100;
  Termination termination = Termination::AllOptimal;
  std::uint64_t master_seed = 1;
  CapRule cap_rule;

  void validate() const;
  static Scenario from_json(const nlohmann::json& j);
  nlohmann::json to_json() const;
};

// Top-level document: {"scenarios": [...]} or a bare list.
std::vector<Scenario> load_scenarios(const nlohmann::json& doc);
std::vector<Scenario> load_scenarios_file(const std::string& path);

struct ResultRow {
  std::string scenario;
  std::string algorithm;
  std::string fitness;
  std::size_t n = 0;
  std::size_t r = 0;
  std::size_t k = 0;
  std::size_t lambda = 0;
  std::optional<std::uint64_t> tau;  // empty = infinity
  std::string topology;
  std::string termination;
  std::size_t replicates = 0;
  std::size_t trapped = 0;
  bool all_trapped = false;
  double mean_rounds = 0.0;
  double stderr_rounds = 0.0;
  double median_rounds = 0.0;
  double mean_evals = 0.0;
  double stderr_evals = 0.0;
  double mean_migrations = 0.0;
  double mean_peak_valleys = 0.0;
  std::uint64_t master_seed = 0;
  // In-memory only: per completed replicate samples.
  std::vector<double> eval_samples;
  std::vector<double> peak_valley_samples;

  std::size_t completed() const { return replicates - trapped; }
};

// Seed of one (scenario, n) cell: derive_seed(master, {fnv1a64(name), n}).
std::uint64_t cell_seed(const Scenario& s, std::size_t n);

IslandRunConfig cell_config(const Scenario& s, std::size_t n);

// Deterministic for a given scenario and build, for any thread count.
std::vector<ResultRow> run_scenario(const Scenario& s, std::size_t threads = 1);

std::string csv_header();
std::string csv_line(const ResultRow& row);
std::string render_csv(const std::vector<ResultRow>& rows);
std::vector<ResultRow> parse_csv(std::istream& in);

enum class FitField { Rounds, Evaluations };
FitField parse_fit_field(std::string_view token);

struct ExponentFit {
  double slope = 0.0;
  double intercept = 0.0;
  double slope_stderr = 0.0;
  double r_squared = 0.0;
  std::size_t points = 0;
  std::size_t excluded = 0;  // rows dropped for non-positive means
};

// OLS of ln(mean field) on ln(n). Needs >= 3 usable rows.
ExponentFit fit_exponent(const std::vector<ResultRow>& rows, FitField field);

struct ValleyFirstResult {
  std::size_t replicates = 0;
  std::size_t valley_first = 0;
  double fraction = 0.0;
  stats::Interval wilson99;
  bool pass = false;
};

// Single-island Fork(n, r) runs; pass iff 1/2 lies in the 99% Wilson interval
// of the fraction of runs that met the valley before the optimum.
ValleyFirstResult valley_first_test(std::size_t n, std::size_t r, std::size_t replicates,
                                    std::uint64_t seed, std::size_t threads = 1);

// Exact counterpart through the Markov chain (n <= 12).
double valley_first_exact(std::size_t n, std::size_t r);

// Worker count: ISLAND_EVO_THREADS wins over `requested`; 0 means hardware.
std::size_t resolve_threads(std::size_t requested);

}  // namespace islandevo::harness
