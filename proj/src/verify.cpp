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

#include "islandevo/verify.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>

#include "islandevo/analytic.hpp"
#include "islandevo/detail/parallel.hpp"
#include "islandevo/ea.hpp"
#include "islandevo/error.hpp"
#include "islandevo/harness.hpp"
#include "islandevo/islands.hpp"
#include "islandevo/rng.hpp"
#include "islandevo/stats.hpp"

namespace islandevo::verify {

namespace {

using Clock = std::chrono::steady_clock;

std::map<std::string, double Thresholds::*> field_table() {
  return {
      {"c1_rel_tol", &Thresholds::c1_rel_tol},
      {"c1_max_n", &Thresholds::c1_max_n},
      {"c1_max_seconds", &Thresholds::c1_max_seconds},
      {"c2_rel_tol", &Thresholds::c2_rel_tol},
      {"c2_max_seconds", &Thresholds::c2_max_seconds},
      {"c3_abs_tol", &Thresholds::c3_abs_tol},
      {"c3_target", &Thresholds::c3_target},
      {"c3_replicates", &Thresholds::c3_replicates},
      {"c4_replicates", &Thresholds::c4_replicates},
      {"c4_stderr_multiple", &Thresholds::c4_stderr_multiple},
      {"c5_replicates", &Thresholds::c5_replicates},
      {"c5_target", &Thresholds::c5_target},
      {"c5_half_width", &Thresholds::c5_half_width},
      {"c6_replicates", &Thresholds::c6_replicates},
      {"c6_target", &Thresholds::c6_target},
      {"c6_half_width", &Thresholds::c6_half_width},
      {"c7_replicates", &Thresholds::c7_replicates},
      {"c9_lower", &Thresholds::c9_lower},
      {"c9_upper", &Thresholds::c9_upper},
      {"c9_tail_lower", &Thresholds::c9_tail_lower},
      {"c9_tail_upper", &Thresholds::c9_tail_upper},
      {"c10_threads", &Thresholds::c10_threads},
      {"seed", &Thresholds::seed},
  };
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.10g", v);
  return buf;
}

std::size_t as_count(double v) { return static_cast<std::size_t>(std::llround(v)); }

std::uint64_t sub_seed(const Thresholds& t, std::uint64_t id) {
  return derive_seed(static_cast<std::uint64_t>(std::llround(t.seed)), {id});
}

double rel_err(double a, double b) { return std::fabs(a - b) / std::max(std::fabs(b), 1e-300); }

std::vector<analytic::State> optimum_states(const analytic::ExactChain& chain) {
  return {chain.encode(chain.spec().optimum().optimum)};
}

// --- criteria -------------------------------------------------------------

CriterionResult lo_exactness(const Thresholds& t) {
  CriterionResult r;
  const auto started = Clock::now();
  double worst = 0.0;
  std::ostringstream detail;
  for (std::size_t n = 2; n <= as_count(t.c1_max_n); ++n) {
    const FitnessSpec spec = FitnessSpec::leading_ones(n);
    const auto chain = analytic::build_chain(spec, n);
    const double chain_value = analytic::expected_hitting_time(chain, optimum_states(chain));
    const double closed = analytic::exact_lo_runtime(n);
    worst = std::max(worst, rel_err(chain_value, closed));
    detail << "n=" << n << ":" << fmt(chain_value) << " ";
  }
  r.seconds = std::chrono::duration<double>(Clock::now() - started).count();
  r.measured = worst;
  r.bound = "max rel err <= " + fmt(t.c1_rel_tol) + ", runtime < " + fmt(t.c1_max_seconds) + " s";
  r.pass = worst <= t.c1_rel_tol && r.seconds < t.c1_max_seconds;
  r.detail = detail.str();
  return r;
}

CriterionResult block_exactness(const Thresholds& t) {
  CriterionResult r;
  const auto started = Clock::now();
  constexpr std::size_t n = 12;
  constexpr std::size_t k = 6;
  const FitnessSpec inner = FitnessSpec::masked_fork(k, 2);
  const auto inner_chain = analytic::build_chain(inner, n);
  const double inner_value = analytic::expected_hitting_time(inner_chain, optimum_states(inner_chain));
  const double predicted = analytic::lo_block_runtime(n, k, inner_value);

  const FitnessSpec full = FitnessSpec::lo_block(n, k, inner);
  const auto chain = analytic::build_chain(full, n);
  const double full_value = analytic::expected_hitting_time(chain, optimum_states(chain));
  r.seconds = std::chrono::duration<double>(Clock::now() - started).count();
  r.measured = rel_err(full_value, predicted);
  r.bound = "rel err <= " + fmt(t.c2_rel_tol) + ", runtime < " + fmt(t.c2_max_seconds) + " s";
  r.pass = r.measured <= t.c2_rel_tol && r.seconds < t.c2_max_seconds;
  r.detail = "inner=" + fmt(inner_value) + " chain=" + fmt(full_value) + " formula=" + fmt(predicted);
  return r;
}

CriterionResult valley_probability(const Thresholds& t, std::size_t threads) {
  CriterionResult r;
  double worst = 0.0;
  std::ostringstream detail;
  for (std::size_t n : {4, 6, 8}) {
    const double p = harness::valley_first_exact(n, 2);
    worst = std::max(worst, std::fabs(p - t.c3_target));
    detail << "exact n=" << n << ":" << fmt(p) << " ";
  }
  const auto mc = harness::valley_first_test(8, 2, as_count(t.c3_replicates), sub_seed(t, 3), threads);
  const bool mc_pass = mc.wilson99.contains(t.c3_target);
  detail << "mc fraction=" << fmt(mc.fraction) << " wilson99=[" << fmt(mc.wilson99.lower) << ","
         << fmt(mc.wilson99.upper) << "]";
  r.measured = worst;
  r.bound = "|p - " + fmt(t.c3_target) + "| <= " + fmt(t.c3_abs_tol) + " and target in 99% Wilson interval";
  r.pass = worst <= t.c3_abs_tol && mc_pass;
  r.detail = detail.str();
  return r;
}

CriterionResult oracle_consistency(const Thresholds& t, std::size_t threads) {
  CriterionResult r;
  const std::size_t replicates = as_count(t.c4_replicates);
  const std::vector<FitnessSpec> specs = {FitnessSpec::onemax(10), FitnessSpec::leading_ones(10),
                                          FitnessSpec::fork(8, 2)};
  double worst = 0.0;
  std::ostringstream detail;
  for (std::size_t s = 0; s < specs.size(); ++s) {
    const FitnessSpec& spec = specs[s];
    const auto chain = analytic::build_chain(spec, spec.n());
    const double exact = analytic::expected_hitting_time(chain, optimum_states(chain));

    std::vector<double> rounds(replicates);
    const std::uint64_t master = sub_seed(t, 40 + s);
    parallel_for_index(replicates, threads, [&](std::size_t i) {
      const EaRunResult run = ea_run(spec, MutationParams{spec.n()}, replicate_seed(master, i),
                                     stop_at_optimum(spec), std::uint64_t{1} << 40);
      rounds[i] = static_cast<double>(run.state.evaluations);
    });
    const stats::SampleStats st = stats::summarize(rounds);
    const double z = std::fabs(st.mean - exact) / st.stderr_mean;
    worst = std::max(worst, z);
    detail << spec.name() << ": mc=" << fmt(st.mean) << "+-" << fmt(st.stderr_mean) << " exact=" << fmt(exact)
           << " z=" << fmt(z) << "; ";
  }
  r.measured = worst;
  r.bound = "max |mean - exact| / stderr <= " + fmt(t.c4_stderr_multiple);
  r.pass = worst <= t.c4_stderr_multiple;
  r.detail = detail.str();
  return r;
}

CriterionResult single_ea_exponent(const Thresholds& t, std::size_t threads) {
  CriterionResult r;
  std::vector<harness::ResultRow> rows;
  std::ostringstream detail;
  for (std::size_t n : {8, 12, 16, 20, 24}) {
    IslandRunConfig cfg(FitnessSpec::fork(n, 2), Topology::isolated(1));
    cfg.termination = Termination::AnyOptimal;
    cfg.cap = kNever - 1;
    const auto mc = monte_carlo_runtime(cfg, as_count(t.c5_replicates), sub_seed(t, 500 + n), threads);
    harness::ResultRow row;
    row.n = n;
    row.mean_rounds = mc.rounds.mean;
    rows.push_back(row);
    detail << "n=" << n << ":" << fmt(mc.rounds.mean) << " ";
  }
  const auto fit = harness::fit_exponent(rows, harness::FitField::Rounds);
  r.measured = fit.slope;
  r.bound = fmt(t.c5_target) + " +- " + fmt(t.c5_half_width);
  r.pass = std::fabs(fit.slope - t.c5_target) <= t.c5_half_width;
  detail << "stderr=" << fmt(fit.slope_stderr) << " R2=" << fmt(fit.r_squared);
  r.detail = detail.str();
  return r;
}

CriterionResult black_box_exponent(const Thresholds& t, std::size_t threads) {
  CriterionResult r;
  const std::size_t replicates = as_count(t.c6_replicates);
  std::vector<harness::ResultRow> rows;
  std::ostringstream detail;
  for (std::size_t n : {16, 24, 32, 48}) {
    std::vector<double> evals(replicates);
    const std::uint64_t master = sub_seed(t, 600 + n);
    parallel_for_index(replicates, threads, [&](std::size_t i) {
      evals[i] = static_cast<double>(analytic::black_box_fork(n, 2, replicate_seed(master, i)).total());
    });
    harness::ResultRow row;
    row.n = n;
    row.mean_evals = stats::summarize(evals).mean;
    rows.push_back(row);
    detail << "n=" << n << ":" << fmt(row.mean_evals) << " ";
  }
  const auto fit = harness::fit_exponent(rows, harness::FitField::Evaluations);
  r.measured = fit.slope;
  r.bound = fmt(t.c6_target) + " +- " + fmt(t.c6_half_width);
  r.pass = std::fabs(fit.slope - t.c6_target) <= t.c6_half_width;
  detail << "stderr=" << fmt(fit.slope_stderr) << " R2=" << fmt(fit.r_squared);
  r.detail = detail.str();
  return r;
}

harness::Scenario separation_scenario(const std::string& name, harness::Algorithm algorithm,
                                      TopologyKind topology, std::size_t replicates, std::uint64_t seed) {
  harness::Scenario s;
  s.name = name;
  s.algorithm = algorithm;
  s.spec = nlohmann::json{{"variant", "fork"}, {"r", 2}};
  s.topology = topology;
  s.n_grid = {16, 24, 32};
  s.lambda_rule = {false, 3.0, 0.0, 1.0, 4};
  s.tau_rule = {false, 1.0, 1.0, 1.0, 1};
  s.replicates = replicates;
  s.termination = Termination::AllOptimal;
  s.master_seed = seed;
  return s;
}

CriterionResult topology_separation(const Thresholds& t, std::size_t threads) {
  CriterionResult r;
  const std::size_t replicates = as_count(t.c7_replicates);
  const std::uint64_t seed = sub_seed(t, 7);
  const auto ring = harness::run_scenario(
      separation_scenario("ring", harness::Algorithm::Island, TopologyKind::Ring, replicates, seed), threads);
  const auto complete = harness::run_scenario(
      separation_scenario("complete", harness::Algorithm::Island, TopologyKind::Complete, replicates, seed),
      threads);
  const auto isolated = harness::run_scenario(
      separation_scenario("isolated", harness::Algorithm::IndependentRuns, TopologyKind::Isolated, replicates,
                          seed),
      threads);

  std::size_t satisfied = 0;
  std::size_t checks = 0;
  std::ostringstream detail;
  const auto ci = [](const harness::ResultRow& row) {
    return stats::Interval{row.mean_evals - stats::kZ99 * row.stderr_evals,
                           row.mean_evals + stats::kZ99 * row.stderr_evals};
  };
  for (std::size_t i = 0; i < ring.size(); ++i) {
    const auto& a = ring[i];
    const auto& b = complete[i];
    const auto& c = isolated[i];
    const bool untrapped = a.trapped == 0 && b.trapped == 0 && c.trapped == 0;
    // A gap counts when the 99% CIs are disjoint or a two-sided rank test
    // rejects at 1% with the means in the stated order.
    const auto below = [&](const harness::ResultRow& lo, const harness::ResultRow& hi, double& p) {
      p = stats::mann_whitney_p(lo.eval_samples, hi.eval_samples);
      return ci(lo).upper < ci(hi).lower || (p < 0.01 && lo.mean_evals < hi.mean_evals);
    };
    double p_rc = 0.0;
    double p_ci = 0.0;
    const bool ring_below = below(a, b, p_rc);
    const bool complete_below = below(b, c, p_ci);
    const bool trap = b.mean_peak_valleys > a.mean_peak_valleys;
    checks += 4;
    satisfied += untrapped + ring_below + complete_below + trap;
    detail << "n=" << a.n << " lambda=" << a.lambda << " tau=" << a.tau.value_or(0) << ": ring=" << fmt(a.mean_evals)
           << " complete=" << fmt(b.mean_evals) << " isolated=" << fmt(c.mean_evals)
           << " peak_valleys ring/complete=" << fmt(a.mean_peak_valleys) << "/" << fmt(b.mean_peak_valleys)
           << " p ring-complete=" << fmt(p_rc) << (ring_below ? "" : " (gap not significant)")
           << " p complete-isolated=" << fmt(p_ci) << (complete_below ? "" : " (gap not significant)")
           << (trap ? "" : " (complete peak valleys not above ring)") << " trapped=" << a.trapped + b.trapped + c.trapped << "; ";
  }
  r.measured = static_cast<double>(satisfied);
  r.bound = "all " + std::to_string(checks) + " checks hold (gaps significant at 1%, peak valleys ordered)";
  r.pass = satisfied == checks;
  r.detail = detail.str();
  return r;
}

CriterionResult sandwich(const Thresholds&) {
  CriterionResult r;
  std::size_t violations = 0;
  std::size_t cells = 0;
  for (double e : {2.0, 10.0, 100.0, 1e4}) {
    for (std::size_t m = 1; m <= 64; ++m) {
      const auto b = analytic::geometric_min_bounds(e, m);
      ++cells;
      if (!(b.lower <= b.exact && b.exact <= b.upper)) ++violations;
    }
  }
  r.measured = static_cast<double>(violations);
  r.bound = "0 violations over " + std::to_string(cells) + " cells";
  r.pass = violations == 0;
  return r;
}

CriterionResult choose_sum_bounded(const Thresholds& t) {
  CriterionResult r;
  double lo = INFINITY;
  double hi = -INFINITY;
  double tail_lo = INFINITY;
  double tail_hi = -INFINITY;
  for (std::size_t n = 1; n <= 200; ++n) {
    const double v = analytic::choose_sum_div(n);
    lo = std::min(lo, v);
    hi = std::max(hi, v);
    if (n >= 60) {
      tail_lo = std::min(tail_lo, v);
      tail_hi = std::max(tail_hi, v);
    }
  }
  r.measured = hi;
  r.bound = "[" + fmt(t.c9_lower) + ", " + fmt(t.c9_upper) + "] on 1..200, [" + fmt(t.c9_tail_lower) + ", " +
            fmt(t.c9_tail_upper) + "] on 60..200";
  r.pass = lo >= t.c9_lower && hi <= t.c9_upper && tail_lo >= t.c9_tail_lower && tail_hi <= t.c9_tail_upper;
  r.detail = "range [" + fmt(lo) + ", " + fmt(hi) + "], tail [" + fmt(tail_lo) + ", " + fmt(tail_hi) + "]";
  return r;
}

CriterionResult determinism(const Thresholds& t) {
  CriterionResult r;
  harness::Scenario s = separation_scenario("determinism", harness::Algorithm::Island, TopologyKind::Ring, 64,
                                            sub_seed(t, 10));
  s.n_grid = {8, 12};
  harness::Scenario single = s;
  single.name = "determinism_single";
  single.algorithm = harness::Algorithm::SingleEa;
  single.spec = nlohmann::json{{"variant", "leadingones"}};

  const auto render = [&](std::size_t threads) {
    std::vector<harness::ResultRow> rows = harness::run_scenario(s, threads);
    for (auto& row : harness::run_scenario(single, threads)) rows.push_back(std::move(row));
    return harness::render_csv(rows);
  };
  const std::string a = render(1);
  const std::string b = render(as_count(t.c10_threads));
  r.measured = a == b ? 1.0 : 0.0;
  r.bound = "CSV from 1 and " + fmt(t.c10_threads) + " threads byte-identical";
  r.pass = a == b;
  r.detail = std::to_string(a.size()) + " bytes";
  return r;
}

const char* criterion_name(int id) {
  switch (id) {
    case 1:
      return "leadingones chain equals closed form";
    case 2:
      return "block composition equals full chain";
    case 3:
      return "valley before optimum has probability 1/2";
    case 4:
      return "simulation agrees with chain";
    case 5:
      return "single EA exponent on Fork(n,2)";
    case 6:
      return "black-box Fork exponent";
    case 7:
      return "topology separation ring < complete < isolated";
    case 8:
      return "parallel waiting time sandwich";
    case 9:
      return "choose-sum stays bounded";
    case 10:
      return "CSV independent of thread count";
    default:
      return "unknown";
  }
}

}  // namespace

void Thresholds::set(const std::string& key, double value) {
  const auto table = field_table();
  const auto it = table.find(key);
  if (it == table.end()) throw ConfigError("unknown threshold '" + key + "'");
  this->*(it->second) = value;
}

std::vector<std::string> Thresholds::keys() const {
  std::vector<std::string> out;
  for (const auto& [key, field] : field_table()) out.push_back(key);
  return out;
}

CriterionResult run_criterion(int id, const Thresholds& t, std::size_t threads) {
  const auto started = Clock::now();
  CriterionResult r;
  switch (id) {
    case 1:
      r = lo_exactness(t);
      break;
    case 2:
      r = block_exactness(t);
      break;
    case 3:
      r = valley_probability(t, threads);
      break;
    case 4:
      r = oracle_consistency(t, threads);
      break;
    case 5:
      r = single_ea_exponent(t, threads);
      break;
    case 6:
      r = black_box_exponent(t, threads);
      break;
    case 7:
      r = topology_separation(t, threads);
      break;
    case 8:
      r = sandwich(t);
      break;
    case 9:
      r = choose_sum_bounded(t);
      break;
    case 10:
      r = determinism(t);
      break;
    default:
      throw ConfigError("no criterion " + std::to_string(id));
  }
  r.id = id;
  r.name = criterion_name(id);
  if (r.seconds == 0.0) r.seconds = std::chrono::duration<double>(Clock::now() - started).count();
  return r;
}

std::vector<CriterionResult> verify_all(const Thresholds& t, std::size_t threads, const std::vector<int>& only) {
  std::vector<int> ids = only;
  if (ids.empty()) {
    for (int id = 1; id <= kCriterionCount; ++id) ids.push_back(id);
  }
  std::vector<CriterionResult> out;
  for (int id : ids) {
    try {
      out.push_back(run_criterion(id, t, threads));
    } catch (const std::exception& e) {
      CriterionResult r;
      r.id = id;
      r.name = criterion_name(id);
      r.measured = std::nan("");
      r.pass = false;
      r.detail = std::string("error: ") + e.what();
      out.push_back(r);
    }
  }
  return out;
}

nlohmann::json report_json(const std::vector<CriterionResult>& results) {
  nlohmann::json rows = nlohmann::json::array();
  std::size_t passed = 0;
  for (const auto& r : results) {
    passed += r.pass ? 1 : 0;
    nlohmann::json row{{"id", r.id},         {"name", r.name}, {"bound", r.bound},
                       {"pass", r.pass},     {"seconds", r.seconds}, {"detail", r.detail}};
    row["measured"] = std::isfinite(r.measured) ? nlohmann::json(r.measured) : nlohmann::json(nullptr);
    rows.push_back(std::move(row));
  }
  return {{"criteria", rows}, {"passed", passed}, {"total", results.size()},
          {"all_pass", passed == results.size()}};
}

std::string summary_line(const CriterionResult& r) {
  char head[96];
  std::snprintf(head, sizeof(head), "[%s] criterion %2d ", r.pass ? "PASS" : "FAIL", r.id);
  return std::string(head) + r.name + ": measured " + fmt(r.measured) + ", bound " + r.bound + " (" +
         fmt(std::round(r.seconds * 100.0) / 100.0) + " s)";
}

}  // namespace islandevo::verify
