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

// Command-line front end: simulate, oracle, verify, fit.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "islandevo/analytic.hpp"
#include "islandevo/error.hpp"
#include "islandevo/harness.hpp"
#include "islandevo/verify.hpp"

namespace {

using namespace islandevo;

std::string num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

FitnessSpec parse_spec_arg(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("--spec is not valid JSON: ") + e.what());
  }
  return harness::spec_from_json(j);
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write " + path);
  out << text;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Island-model evolutionary algorithm simulator and exact oracles"};
  app.require_subcommand(1);

  // simulate
  auto* simulate = app.add_subcommand("simulate", "Run the scenarios of a JSON config and emit CSV");
  std::string config_path;
  std::string csv_out;
  std::size_t threads = 0;
  simulate->add_option("--config", config_path, "Scenario config (JSON)")->required()->check(CLI::ExistingFile);
  simulate->add_option("--threads", threads, "Worker threads (0 = hardware)");
  simulate->add_option("--out", csv_out, "Output CSV (default stdout)");

  // oracle
  auto* oracle = app.add_subcommand("oracle", "Exact and closed-form quantities");
  oracle->require_subcommand(1);
  std::size_t o_n = 0;
  std::size_t o_k = 0;
  std::uint64_t o_n_mut = 0;
  double o_inner = 0.0;
  std::string o_spec;
  std::string o_a;
  std::string o_b;

  auto* lo_runtime = oracle->add_subcommand("lo-runtime", "Closed-form LeadingOnes runtime");
  lo_runtime->add_option("--n", o_n, "Length")->required();

  auto* hitting_time = oracle->add_subcommand("hitting-time", "Expected steps to the optimum, uniform start");
  hitting_time->add_option("--spec", o_spec, "Fitness spec JSON including n")->required();
  hitting_time->add_option("--n-mut", o_n_mut, "Mutation denominator (default n)");

  auto* hitting_prob = oracle->add_subcommand("hitting-prob", "Probability of reaching a before b");
  hitting_prob->add_option("--spec", o_spec, "Fitness spec JSON including n")->required();
  hitting_prob->add_option("--a", o_a, "First state as a bit string (default: trap valley)");
  hitting_prob->add_option("--b", o_b, "Second state as a bit string (default: optimum)");
  hitting_prob->add_option("--n-mut", o_n_mut, "Mutation denominator (default n)");

  auto* lo_block = oracle->add_subcommand("lo-block", "Block composition runtime");
  lo_block->add_option("--n", o_n, "Length")->required();
  lo_block->add_option("--k", o_k, "Block length")->required();
  lo_block->add_option("--inner", o_inner, "Inner expected runtime at rate 1/n")->required();

  auto* choose_sum = oracle->add_subcommand("choose-sum", "2^-n sum_k C(n,k) n/k");
  choose_sum->add_option("--n", o_n, "n")->required();

  // verify
  auto* verify_cmd = app.add_subcommand("verify", "Run every acceptance criterion");
  std::string report_out;
  std::vector<int> only;
  std::vector<std::string> overrides;
  std::size_t verify_threads = 0;
  verify_cmd->add_option("--out", report_out, "JSON report path");
  verify_cmd->add_option("--only", only, "Criterion ids to run");
  verify_cmd->add_option("--override", overrides, "Threshold override key=value");
  verify_cmd->add_option("--threads", verify_threads, "Worker threads (0 = hardware)");

  // fit
  auto* fit = app.add_subcommand("fit", "Log-log exponent fit over a CSV");
  std::string fit_csv;
  std::string fit_field = "evaluations";
  std::string fit_scenario;
  fit->add_option("--csv", fit_csv, "Input CSV")->required()->check(CLI::ExistingFile);
  fit->add_option("--field", fit_field, "rounds or evaluations");
  fit->add_option("--scenario", fit_scenario, "Restrict to one scenario");

  CLI11_PARSE(app, argc, argv);

  try {
    if (simulate->parsed()) {
      const auto scenarios = harness::load_scenarios_file(config_path);
      const std::size_t workers = harness::resolve_threads(threads);
      std::vector<harness::ResultRow> rows;
      for (const auto& s : scenarios) {
        for (auto& row : harness::run_scenario(s, workers)) rows.push_back(std::move(row));
      }
      write_output(csv_out, harness::render_csv(rows));
      return 0;
    }

    if (oracle->parsed()) {
      if (lo_runtime->parsed()) {
        std::cout << "lo_runtime n=" << o_n << ": " << num(analytic::exact_lo_runtime(o_n)) << "\n";
      } else if (hitting_time->parsed()) {
        const FitnessSpec spec = parse_spec_arg(o_spec);
        const auto chain = analytic::build_chain(spec, o_n_mut ? o_n_mut : spec.n());
        const analytic::State target = chain.encode(spec.optimum().optimum);
        std::cout << "hitting_time " << spec.name() << " n=" << spec.n() << " n_mut=" << chain.n_mut() << ": "
                  << num(analytic::expected_hitting_time(chain, std::span(&target, 1))) << "\n";
      } else if (hitting_prob->parsed()) {
        const FitnessSpec spec = parse_spec_arg(o_spec);
        const OptimumWitness& w = spec.optimum();
        BitString a;
        if (!o_a.empty()) {
          a = BitString::from_string(o_a);
        } else if (w.valley) {
          a = *w.valley;
        } else {
          throw ConfigError("--a is required for functions without a trap valley");
        }
        const BitString b = o_b.empty() ? w.optimum : BitString::from_string(o_b);
        const auto chain = analytic::build_chain(spec, o_n_mut ? o_n_mut : spec.n());
        std::cout << "hitting_prob " << spec.name() << " a=" << a.to_string() << " b=" << b.to_string() << ": "
                  << num(analytic::hitting_probability(chain, chain.encode(a), chain.encode(b))) << "\n";
      } else if (lo_block->parsed()) {
        std::cout << "lo_block n=" << o_n << " k=" << o_k << " inner=" << num(o_inner) << ": "
                  << num(analytic::lo_block_runtime(o_n, o_k, o_inner)) << "\n";
      } else if (choose_sum->parsed()) {
        std::cout << "choose_sum n=" << o_n << ": " << num(analytic::choose_sum_div(o_n)) << "\n";
      }
      return 0;
    }

    if (verify_cmd->parsed()) {
      verify::Thresholds t;
      for (const std::string& item : overrides) {
        const auto eq = item.find('=');
        if (eq == std::string::npos) throw ConfigError("--override expects key=value, got '" + item + "'");
        t.set(item.substr(0, eq), std::stod(item.substr(eq + 1)));
      }
      const std::size_t workers = harness::resolve_threads(verify_threads);
      std::vector<verify::CriterionResult> results;
      std::vector<int> ids = only;
      if (ids.empty()) {
        for (int id = 1; id <= verify::kCriterionCount; ++id) ids.push_back(id);
      }
      bool all_pass = true;
      for (int id : ids) {
        auto r = verify::verify_all(t, workers, {id}).front();
        std::cout << verify::summary_line(r) << std::endl;
        all_pass = all_pass && r.pass;
        results.push_back(std::move(r));
      }
      if (!report_out.empty()) write_output(report_out, verify::report_json(results).dump(2) + "\n");
      return all_pass ? 0 : 1;
    }

    if (fit->parsed()) {
      std::ifstream in(fit_csv);
      auto rows = harness::parse_csv(in);
      if (!fit_scenario.empty()) {
        std::erase_if(rows, [&](const harness::ResultRow& r) { return r.scenario != fit_scenario; });
      }
      const auto result = harness::fit_exponent(rows, harness::parse_fit_field(fit_field));
      std::cout << "slope: " << num(result.slope) << "\n"
                << "intercept: " << num(result.intercept) << "\n"
                << "slope_stderr: " << num(result.slope_stderr) << "\n"
                << "r_squared: " << num(result.r_squared) << "\n"
                << "points: " << result.points << "\n";
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
