// tradeoff-lab command-line entry point.

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "tradeoff/errors.hpp"
#include "tradeoff/harness/io.hpp"
#include "tradeoff/harness/report.hpp"
#include "tradeoff/harness/scan.hpp"
#include "tradeoff/harness/scenarios.hpp"
#include "tradeoff/harness/suites.hpp"

namespace th = tradeoff::harness;

namespace {

constexpr int kFailure = 1;
constexpr int kUsage = 2;

int emit(const std::string& text, const std::string& out_file) {
  if (out_file.empty()) {
    std::cout << text;
    return 0;
  }
  std::ofstream out(out_file);
  if (!out) {
    std::cerr << "error: cannot write '" << out_file << "'\n";
    return kFailure;
  }
  out << text;
  return 0;
}

std::string fmt(double x) {
  std::ostringstream os;
  os.imbue(std::locale::classic());
  os << std::setprecision(3) << std::scientific << x;
  return os.str();
}

int run_verify(const std::string& suite, const th::SuiteOptions& options) {
  const std::vector<std::string> suites = suite == "all" ? th::suite_names() : std::vector<std::string>{suite};
  int failed_trials = 0;
  std::cout << std::left << std::setw(12) << "suite" << std::right << std::setw(8) << "trials" << std::setw(8)
            << "checks" << std::setw(10) << "failures" << "  worst slack\n";
  for (const auto& name : suites) {
    const auto start = std::chrono::steady_clock::now();
    const th::SuiteResult r = th::run_suite(name, options);
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::string worst;
    for (const auto& w : r.worst()) worst += (worst.empty() ? "" : ", ") + w.name + "=" + fmt(w.slack);
    std::cout << std::left << std::setw(12) << name << std::right << std::setw(8) << r.trials.size() << std::setw(8)
              << r.checks() << std::setw(10) << r.failures() << "  " << worst << '\n';
    std::cerr << name << ": " << std::fixed << std::setprecision(2) << seconds << " s\n";
    for (const auto& t : r.trials) {
      if (t.passed()) continue;
      ++failed_trials;
      std::cout << "FAIL " << name << " trial " << t.trial << " seed " << t.seed << " dim " << t.dim << ':';
      if (!t.error.empty()) std::cout << " error: " << t.error;
      for (const auto& c : t.checks)
        if (!c.pass) std::cout << ' ' << c.name << " slack " << fmt(c.slack) << " (tol " << fmt(c.tolerance) << ')';
      std::cout << "\n  reproduce: " << th::reproduction_command(name, t) << '\n';
    }
  }
  std::cout << (failed_trials == 0 ? "all checks passed" : std::to_string(failed_trials) + " failing trial(s)") << '\n';
  return failed_trials == 0 ? 0 : kFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Information-disturbance tradeoff laboratory"};
  app.require_subcommand(1);

  th::AnalyzeOptions analyze_options;
  std::string instance_file;
  std::string out_file;
  auto* analyze = app.add_subcommand("analyze", "Analyze a JSON instance and print the report");
  analyze->add_option("instance", instance_file, "Instance file (format tradeoff-lab/1)")->required();
  analyze->add_option("--out", out_file, "Write the report here instead of stdout");
  analyze->add_flag("--dump-choi", analyze_options.dump_choi, "Include recovery Choi matrices");
  analyze->add_option("--seed", analyze_options.search.seed, "Seed of the accessible-information search");

  th::SuiteOptions suite_options;
  std::string suite;
  std::vector<std::string> suite_choices = th::suite_names();
  suite_choices.push_back("all");
  auto* verify = app.add_subcommand("verify", "Run randomized verification suites");
  verify->add_option("--suite", suite, "Suite name")->required()->check(CLI::IsMember(suite_choices));
  verify->add_option("--trials", suite_options.trials, "Trials per suite")->check(CLI::NonNegativeNumber);
  verify->add_option("--seed", suite_options.seed, "Base seed; trial t uses seed ^ t");
  verify->add_option("--dims", suite_options.dims, "Comma-separated dimensions")->delimiter(',')->check(CLI::Range(2, 4));
  verify->add_option("--threads", suite_options.threads, "Worker threads (default: TRADEOFF_LAB_THREADS or all cores)");

  std::string family = "two-state-angle";
  int steps = 20;
  auto* scan = app.add_subcommand("scan", "Parameter scan as CSV");
  scan->add_option("--family", family, "Scan family")->check(CLI::IsMember(th::scan_families()));
  scan->add_option("--steps", steps, "Number of rows")->check(CLI::PositiveNumber);
  scan->add_option("--out", out_file, "Write the CSV here instead of stdout");

  bool list = false;
  std::string run_name;
  std::string export_name;
  auto* examples = app.add_subcommand("examples", "Built-in scenarios");
  auto* list_flag = examples->add_flag("--list", list, "List scenario names");
  auto* run_opt = examples->add_option("--run", run_name, "Run a scenario and its checks");
  auto* export_opt = examples->add_option("--export", export_name, "Print a scenario's instance JSON");
  list_flag->excludes(run_opt)->excludes(export_opt);
  run_opt->excludes(export_opt);
  examples->add_option("--out", out_file, "Write output here instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kUsage;
  }

  try {
    if (analyze->parsed()) {
      const th::Instance inst = th::load_instance(instance_file);
      const th::TradeoffReport report = th::analyze(inst, analyze_options);
      return emit(th::report_to_json(report, analyze_options.dump_choi).dump(2) + "\n", out_file);
    }
    if (verify->parsed()) return run_verify(suite, suite_options);
    if (scan->parsed()) {
      const auto rows = th::run_scan(family, steps);
      std::ostringstream os;
      th::write_csv(os, rows);
      if (const int rc = emit(os.str(), out_file); rc != 0) return rc;
      for (std::size_t i = 0; i < rows.size(); ++i)
        if (!rows[i].inequalities_hold) {
          std::cerr << "inequality violated on row " << i << '\n';
          return kFailure;
        }
      return 0;
    }
    if (examples->parsed()) {
      if (!export_name.empty())
        return emit(th::instance_to_json(th::make_scenario(export_name).instance).dump(2) + "\n", out_file);
      if (!run_name.empty()) {
        const th::ScenarioResult r = th::run_scenario(run_name);
        std::ostringstream os;
        os << r.scenario.name << ": " << r.scenario.description << '\n';
        for (const auto& c : r.checks)
          os << (c.pass ? "  pass " : "  FAIL ") << c.name << " slack " << fmt(c.slack) << " (tol " << fmt(c.tolerance)
             << ")\n";
        os << (r.passed() ? "scenario passed\n" : "scenario FAILED\n");
        if (const int rc = emit(os.str(), out_file); rc != 0) return rc;
        return r.passed() ? 0 : kFailure;
      }
      std::ostringstream os;
      for (const auto& name : th::scenario_names()) os << name << '\n';
      return emit(os.str(), out_file);
    }
  } catch (const tradeoff::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    const bool usage = e.code() == tradeoff::ErrorCode::SchemaError || e.code() == tradeoff::ErrorCode::InvalidParams;
    return usage ? kUsage : kFailure;
  }
  return 0;
}
