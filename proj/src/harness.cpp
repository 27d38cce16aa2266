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

#include "islandevo/harness.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <thread>

#include "islandevo/analytic.hpp"
#include "islandevo/error.hpp"
#include "islandevo/rng.hpp"

namespace islandevo::harness {

using nlohmann::json;

namespace {

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

template <typename T>
T get_or(const json& j, const char* key, T fallback) {
  return j.contains(key) ? j.at(key).get<T>() : fallback;
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream in(line);
  while (std::getline(in, cell, sep)) out.push_back(cell);
  if (!line.empty() && line.back() == sep) out.emplace_back();
  return out;
}

double ipow(double base, std::size_t e) { return std::pow(base, static_cast<double>(e)); }

}  // namespace

std::string_view to_string(Algorithm a) {
  switch (a) {
    case Algorithm::SingleEa:
      return "single_ea";
    case Algorithm::IndependentRuns:
      return "independent_runs";
    case Algorithm::Island:
      return "island";
  }
  return "unknown";
}

Algorithm parse_algorithm(std::string_view token) {
  if (token == "single_ea") return Algorithm::SingleEa;
  if (token == "independent_runs") return Algorithm::IndependentRuns;
  if (token == "island") return Algorithm::Island;
  throw ConfigError("unknown algorithm '" + std::string(token) +
                    "' (expected single_ea, independent_runs or island)");
}

std::uint64_t ParamRule::resolve(std::size_t n) const {
  if (infinite) throw ConfigError("cannot resolve an infinite parameter to an integer");
  const double nd = static_cast<double>(n);
  double value = c * std::pow(nd, a);
  if (b != 0.0) value *= std::pow(std::log2(nd), b);
  // Absorb roundoff so exact integers such as 16*log2(16) do not round up.
  const double rounded = std::ceil(value - 1e-9);
  const auto resolved = rounded < 1.0 ? std::uint64_t{0} : static_cast<std::uint64_t>(rounded);
  return std::max(min, resolved);
}

ParamRule ParamRule::from_json(const json& j) {
  if (j.is_number()) {
    const double v = j.get<double>();
    if (v < 1.0 || v != std::floor(v)) throw ConfigError("constant parameter must be an integer >= 1");
    return constant(static_cast<std::uint64_t>(v));
  }
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "infinity" || s == "inf") return infinity();
    throw ConfigError("parameter rule string must be \"infinity\", got '" + s + "'");
  }
  if (!j.is_object()) throw ConfigError("parameter rule must be a number, \"infinity\" or an object");
  ParamRule rule;
  const std::string form = get_or<std::string>(j, "form", "");
  if (form == "infinity") return infinity();
  if (form == "constant") {
    rule.a = 0.0;
    rule.b = 0.0;
  } else if (form == "log2") {
    rule.a = 0.0;
    rule.b = 1.0;
  } else if (form == "power") {
    rule.a = get_or<double>(j, "a", 1.0);
    rule.b = 0.0;
  } else if (form == "n_log2n") {
    rule.a = 1.0;
    rule.b = 1.0;
  } else if (form.empty()) {
    rule.a = get_or<double>(j, "a", 0.0);
    rule.b = get_or<double>(j, "b", 0.0);
  } else {
    throw ConfigError("unknown parameter rule form '" + form + "'");
  }
  rule.c = get_or<double>(j, "c", 1.0);
  rule.min = get_or<std::uint64_t>(j, "min", 1);
  if (rule.c <= 0.0) throw ConfigError("parameter rule needs c > 0");
  if (rule.min < 1) throw ConfigError("parameter rule needs min >= 1");
  return rule;
}

json ParamRule::to_json() const {
  if (infinite) return "infinity";
  return json{{"c", c}, {"a", a}, {"b", b}, {"min", min}};
}

std::uint64_t CapRule::resolve(const FitnessSpec& spec, std::size_t lambda) const {
  if (rounds) return *rounds;
  const std::size_t n = spec.n();
  double worst = spec.r() > 0 ? ipow(static_cast<double>(n), 2 * spec.r())
                              : ipow(static_cast<double>(n), 2);
  if (spec.k() > 0 && spec.r() > 0) worst *= static_cast<double>(n / spec.k());
  const double cap = c * (worst / static_cast<double>(lambda) + worst);
  if (!(cap < 1.8e19)) return kNever - 1;
  return std::max<std::uint64_t>(1, static_cast<std::uint64_t>(std::ceil(cap)));
}

CapRule CapRule::from_json(const json& j) {
  CapRule rule;
  if (j.is_number()) {
    rule.c = j.get<double>();
  } else if (j.is_object()) {
    rule.c = get_or<double>(j, "c", 50.0);
    if (j.contains("rounds")) rule.rounds = j.at("rounds").get<std::uint64_t>();
  } else {
    throw ConfigError("cap_rule must be a number or an object");
  }
  if (rule.c <= 0.0) throw ConfigError("cap_rule needs c > 0");
  if (rule.rounds && *rule.rounds == 0) throw ConfigError("cap_rule rounds must be positive");
  return rule;
}

json CapRule::to_json() const {
  json j{{"c", c}};
  if (rounds) j["rounds"] = *rounds;
  return j;
}

FitnessSpec spec_from_json(const json& j, std::optional<std::size_t> n_in) {
  if (!j.is_object()) throw ConfigError("fitness spec must be a JSON object");
  const std::string variant = get_or<std::string>(j, "variant", "");
  std::size_t n = 0;
  if (j.contains("n")) {
    n = j.at("n").get<std::size_t>();
  } else if (n_in) {
    n = *n_in;
  } else if (variant == "masked" && j.contains("mask")) {
    n = j.at("mask").get<std::string>().size();
  } else {
    throw ConfigError("fitness spec '" + variant + "' has no length n");
  }
  if (variant == "onemax") return FitnessSpec::onemax(n);
  if (variant == "leadingones") return FitnessSpec::leading_ones(n);
  if (variant == "fork") {
    const auto r = get_or<std::size_t>(j, "r", 2);
    return get_or<bool>(j, "masked", false) ? FitnessSpec::masked_fork(n, r) : FitnessSpec::fork(n, r);
  }
  if (variant == "masked") {
    if (!j.contains("mask") || !j.contains("inner")) throw ConfigError("masked spec needs mask and inner");
    BitString mask = BitString::from_string(j.at("mask").get<std::string>());
    return FitnessSpec::masked(std::move(mask), spec_from_json(j.at("inner"), n));
  }
  if (variant == "lo_block" || variant == "om_block") {
    if (!j.contains("k") || !j.contains("inner")) throw ConfigError(variant + " spec needs k and inner");
    const auto k = j.at("k").get<std::size_t>();
    const FitnessSpec inner = spec_from_json(j.at("inner"), k);
    return variant == "lo_block" ? FitnessSpec::lo_block(n, k, inner) : FitnessSpec::om_block(n, k, inner);
  }
  throw ConfigError("unknown fitness variant '" + variant + "'");
}

void Scenario::validate() const {
  if (name.empty()) throw ConfigError("scenario needs a name");
  if (name.find_first_of(",\n\"") != std::string::npos) {
    throw ConfigError("scenario name may not contain commas, quotes or newlines: " + name);
  }
  if (n_grid.empty()) throw ConfigError("scenario '" + name + "' has an empty n_grid");
  if (replicates == 0) throw ConfigError("scenario '" + name + "' needs replicates >= 1");
  for (std::size_t n : n_grid) {
    cell_config(*this, n).validate();
  }
}

Scenario Scenario::from_json(const json& j) {
  if (!j.is_object()) throw ConfigError("scenario must be a JSON object");
  Scenario s;
  try {
    s.name = j.at("name").get<std::string>();
    s.algorithm = parse_algorithm(j.at("algorithm").get<std::string>());
    s.spec = j.at("spec");
    s.topology = parse_topology_kind(get_or<std::string>(j, "topology", "isolated"));
    s.n_grid = j.at("n_grid").get<std::vector<std::size_t>>();
    if (j.contains("lambda_rule")) s.lambda_rule = ParamRule::from_json(j.at("lambda_rule"));
    if (j.contains("tau_rule")) s.tau_rule = ParamRule::from_json(j.at("tau_rule"));
    s.replicates = get_or<std::size_t>(j, "replicates", 100);
    s.termination = parse_termination(get_or<std::string>(j, "termination", "all_optimal"));
    s.master_seed = get_or<std::uint64_t>(j, "master_seed", 1);
    if (j.contains("cap_rule")) s.cap_rule = CapRule::from_json(j.at("cap_rule"));
  } catch (const json::exception& e) {
    throw ConfigError(std::string("malformed scenario: ") + e.what());
  }
  s.validate();
  return s;
}

json Scenario::to_json() const {
  return json{{"name", name},
              {"algorithm", std::string(harness::to_string(algorithm))},
              {"spec", spec},
              {"topology", std::string(islandevo::to_string(topology))},
              {"n_grid", n_grid},
              {"lambda_rule", lambda_rule.to_json()},
              {"tau_rule", tau_rule.to_json()},
              {"replicates", replicates},
              {"termination", std::string(islandevo::to_string(termination))},
              {"master_seed", master_seed},
              {"cap_rule", cap_rule.to_json()}};
}

std::vector<Scenario> load_scenarios(const json& doc) {
  const json& list = doc.is_object() && doc.contains("scenarios") ? doc.at("scenarios") : doc;
  if (!list.is_array()) throw ConfigError("config must be a list of scenarios or {\"scenarios\": [...]}");
  std::vector<Scenario> out;
  for (const json& j : list) out.push_back(Scenario::from_json(j));
  return out;
}

std::vector<Scenario> load_scenarios_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config " + path);
  json doc;
  try {
    in >> doc;
  } catch (const json::exception& e) {
    throw ConfigError("config " + path + " is not valid JSON: " + e.what());
  }
  return load_scenarios(doc);
}

std::uint64_t cell_seed(const Scenario& s, std::size_t n) {
  return derive_seed(s.master_seed, {fnv1a64(s.name), n});
}

IslandRunConfig cell_config(const Scenario& s, std::size_t n) {
  const FitnessSpec spec = spec_from_json(s.spec, n);
  std::size_t lambda = 1;
  Topology topology = Topology::isolated(1);
  Tau tau = Tau::infinite();
  Termination termination = s.termination;
  switch (s.algorithm) {
    case Algorithm::SingleEa:
      termination = Termination::AnyOptimal;
      break;
    case Algorithm::IndependentRuns:
      lambda = s.lambda_rule.resolve(n);
      topology = Topology::isolated(lambda);
      break;
    case Algorithm::Island:
      lambda = s.lambda_rule.resolve(n);
      topology = Topology(s.topology, lambda);
      tau = s.tau_rule.infinite ? Tau::infinite() : Tau::every(s.tau_rule.resolve(n));
      break;
  }
  IslandRunConfig cfg(spec, topology);
  cfg.tau = tau;
  cfg.termination = termination;
  cfg.cap = s.cap_rule.resolve(spec, lambda);
  cfg.seed = cell_seed(s, n);
  return cfg;
}

std::vector<ResultRow> run_scenario(const Scenario& s, std::size_t threads) {
  s.validate();
  std::vector<ResultRow> rows;
  for (std::size_t n : s.n_grid) {
    const IslandRunConfig cfg = cell_config(s, n);
    const MonteCarloResult mc = monte_carlo_runtime(cfg, s.replicates, cfg.seed, threads);
    ResultRow row;
    row.scenario = s.name;
    row.algorithm = std::string(to_string(s.algorithm));
    row.fitness = cfg.spec.name();
    row.n = n;
    row.r = cfg.spec.r();
    row.k = cfg.spec.k();
    row.lambda = cfg.lambda();
    if (!cfg.tau.is_infinite()) row.tau = cfg.tau.value();
    row.topology = std::string(islandevo::to_string(cfg.topology.kind()));
    row.termination = std::string(islandevo::to_string(cfg.termination));
    row.replicates = mc.replicates;
    row.trapped = mc.trapped;
    row.master_seed = s.master_seed;
    if (mc.status == MonteCarloResult::Status::AllTrapped) {
      row.all_trapped = true;
      row.mean_rounds = row.stderr_rounds = row.median_rounds = std::nan("");
      row.mean_evals = row.stderr_evals = std::nan("");
      row.mean_migrations = row.mean_peak_valleys = std::nan("");
      std::clog << "warning: scenario " << s.name << " n=" << n << ": all " << mc.replicates
                << " replicates hit the round cap\n";
    } else {
      row.mean_rounds = mc.rounds.mean;
      row.stderr_rounds = mc.rounds.stderr_mean;
      row.median_rounds = mc.rounds.median;
      row.mean_evals = mc.evaluations.mean;
      row.stderr_evals = mc.evaluations.stderr_mean;
      row.mean_migrations = mc.mean_migrations;
      row.mean_peak_valleys = mc.mean_peak_valleys;
      row.eval_samples = mc.evaluation_samples;
      row.peak_valley_samples = mc.peak_valley_samples;
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string csv_header() {
  return "schema_version,scenario,algorithm,fitness,n,r,k,lambda,tau,topology,termination,"
         "replicates,trapped,mean_rounds,stderr_rounds,median_rounds,mean_evals,stderr_evals,"
         "mean_migrations,mean_peak_valleys,master_seed";
}

std::string csv_line(const ResultRow& row) {
  std::ostringstream out;
  out << kCsvSchema << ',' << row.scenario << ',' << row.algorithm << ',' << row.fitness << ','
      << row.n << ',' << row.r << ',' << row.k << ',' << row.lambda << ','
      << (row.tau ? std::to_string(*row.tau) : std::string("inf")) << ',' << row.topology << ','
      << row.termination << ',' << row.replicates << ',' << row.trapped << ','
      << format_double(row.mean_rounds) << ',' << format_double(row.stderr_rounds) << ','
      << format_double(row.median_rounds) << ',' << format_double(row.mean_evals) << ','
      << format_double(row.stderr_evals) << ',' << format_double(row.mean_migrations) << ','
      << format_double(row.mean_peak_valleys) << ',' << row.master_seed;
  return out.str();
}

std::string render_csv(const std::vector<ResultRow>& rows) {
  std::string out = csv_header() + "\n";
  for (const ResultRow& row : rows) out += csv_line(row) + "\n";
  return out;
}

std::vector<ResultRow> parse_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != csv_header()) {
    throw ConfigError("CSV header does not match the " + std::string(kCsvSchema) + " schema");
  }
  std::vector<ResultRow> rows;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto cells = split(line, ',');
    if (cells.size() != 21) {
      throw ConfigError("CSV line " + std::to_string(line_no) + " has " + std::to_string(cells.size()) +
                        " fields, expected 21");
    }
    if (cells[0] != kCsvSchema) {
      throw ConfigError("CSV line " + std::to_string(line_no) + " has schema '" + cells[0] +
                        "', expected '" + std::string(kCsvSchema) + "'");
    }
    try {
      ResultRow row;
      row.scenario = cells[1];
      row.algorithm = cells[2];
      row.fitness = cells[3];
      row.n = std::stoull(cells[4]);
      row.r = std::stoull(cells[5]);
      row.k = std::stoull(cells[6]);
      row.lambda = std::stoull(cells[7]);
      if (cells[8] != "inf") row.tau = std::stoull(cells[8]);
      row.topology = cells[9];
      row.termination = cells[10];
      row.replicates = std::stoull(cells[11]);
      row.trapped = std::stoull(cells[12]);
      row.mean_rounds = std::stod(cells[13]);
      row.stderr_rounds = std::stod(cells[14]);
      row.median_rounds = std::stod(cells[15]);
      row.mean_evals = std::stod(cells[16]);
      row.stderr_evals = std::stod(cells[17]);
      row.mean_migrations = std::stod(cells[18]);
      row.mean_peak_valleys = std::stod(cells[19]);
      row.master_seed = std::stoull(cells[20]);
      row.all_trapped = std::isnan(row.mean_rounds);
      rows.push_back(std::move(row));
    } catch (const std::logic_error& e) {
      throw ConfigError("CSV line " + std::to_string(line_no) + ": bad number (" + e.what() + ")");
    }
  }
  return rows;
}

FitField parse_fit_field(std::string_view token) {
  if (token == "rounds") return FitField::Rounds;
  if (token == "evaluations" || token == "evals") return FitField::Evaluations;
  throw ConfigError("fit field must be rounds or evaluations, got '" + std::string(token) + "'");
}

ExponentFit fit_exponent(const std::vector<ResultRow>& rows, FitField field) {
  std::vector<std::pair<double, double>> points;
  ExponentFit fit;
  for (const ResultRow& row : rows) {
    const double mean = field == FitField::Rounds ? row.mean_rounds : row.mean_evals;
    if (!(mean > 0.0) || row.n == 0) {
      ++fit.excluded;
      std::clog << "warning: fit skips " << row.scenario << " n=" << row.n << " (mean " << mean
                << " not positive)\n";
      continue;
    }
    points.emplace_back(std::log(static_cast<double>(row.n)), std::log(mean));
  }
  if (points.size() < 3) {
    throw ConfigError("exponent fit needs at least 3 rows with positive means, got " +
                      std::to_string(points.size()));
  }
  const stats::LinearFit ols = stats::least_squares(points);
  fit.slope = ols.slope;
  fit.intercept = ols.intercept;
  fit.slope_stderr = ols.slope_stderr;
  fit.r_squared = ols.r_squared;
  fit.points = ols.points;
  return fit;
}

ValleyFirstResult valley_first_test(std::size_t n, std::size_t r, std::size_t replicates,
                                    std::uint64_t seed, std::size_t threads) {
  if (replicates < 1000) {
    throw ConfigError("valley_first_test needs at least 1000 replicates, got " + std::to_string(replicates));
  }
  IslandRunConfig cfg(FitnessSpec::fork(n, r), Topology::isolated(1));
  cfg.termination = Termination::AnyOptimal;
  cfg.cap = kNever - 1;

  std::vector<char> valley_first(replicates, 0);
  parallel_for_index(replicates, threads, [&](std::size_t i) {
    IslandRunConfig local = cfg;
    local.seed = replicate_seed(seed, i);
    valley_first[i] = island_run(local).valley_before_optimum.front() ? 1 : 0;
  });

  ValleyFirstResult out;
  out.replicates = replicates;
  for (char v : valley_first) out.valley_first += static_cast<std::size_t>(v);
  out.fraction = static_cast<double>(out.valley_first) / static_cast<double>(replicates);
  out.wilson99 = stats::wilson_interval(out.valley_first, replicates);
  out.pass = out.wilson99.contains(0.5);
  return out;
}

double valley_first_exact(std::size_t n, std::size_t r) {
  const FitnessSpec spec = FitnessSpec::fork(n, r);
  const analytic::ExactChain chain = analytic::build_chain(spec, n);
  const OptimumWitness& w = spec.optimum();
  return analytic::hitting_probability(chain, chain.encode(*w.valley), chain.encode(w.optimum));
}

std::size_t resolve_threads(std::size_t requested) {
  if (const char* env = std::getenv("ISLAND_EVO_THREADS")) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0') requested = static_cast<std::size_t>(v);
  }
  if (requested == 0) requested = std::max(1U, std::thread::hardware_concurrency());
  return requested;
}

}  // namespace islandevo::harness
