#include "pstneps/commands.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <numbers>

#include "pstneps/analyzer.hpp"
#include "pstneps/errors.hpp"
#include "pstneps/oracle.hpp"
#include "pstneps/spec_io.hpp"
#include "pstneps/spectral.hpp"

namespace pstneps {

namespace {

using Clock = std::chrono::steady_clock;

nlohmann::ordered_json tool_json() {
  return {{"name", kToolName}, {"version", kToolVersion}};
}

CommandResult error_result(int code, const std::string& message) {
  CommandResult result;
  result.exit_code = code;
  result.body["tool"] = tool_json();
  result.body["error"] = message;
  return result;
}

template <typename Fn>
CommandResult guarded(Fn&& fn) {
  try {
    return fn();
  } catch (const validation_error& e) {
    return error_result(kExitValidation, e.what());
  } catch (const size_cap_error& e) {
    return error_result(kExitResource, e.what());
  } catch (const computation_error& e) {
    return error_result(kExitDiscrepancy, e.what());
  } catch (const std::invalid_argument& e) {
    return error_result(kExitValidation, e.what());
  } catch (const std::exception& e) {
    return error_result(kExitDiscrepancy, e.what());
  }
}

void stamp(CommandResult& result, const Clock::time_point& start,
           const CommandOptions& opts) {
  if (opts.no_timings) return;
  const auto elapsed =
      std::chrono::duration_cast<std::chrono::microseconds>(Clock::now() - start);
  result.body["timings_ms"] = {{"total", elapsed.count() / 1000.0}};
}

std::vector<RationalAngle> times_or_grid(const CommandOptions& opts) {
  return opts.times.empty() ? default_scan_grid() : opts.times;
}

}  // namespace

CommandResult cmd_build(const std::filesystem::path& spec_file,
                        const CommandOptions& opts) {
  return guarded([&] {
    const auto start = Clock::now();
    const SpecDocument doc = load_spec_document(spec_file);
    const NepsSpec spec = to_neps_spec(doc);
    const ComplexMatrix adjacency = neps_adjacency(spec, opts.size_cap);

    CommandResult result;
    result.body["tool"] = tool_json();
    result.body["spec"] = to_json(doc);
    result.body["order"] = spec.vertex_count();
    result.body["degree"] = neps_degree(spec);

    nlohmann::ordered_json eigs = nlohmann::ordered_json::array();
    for (const auto& [value, multiplicity] : spectrum_multiset(spec))
      eigs.push_back({{"value", value}, {"multiplicity", multiplicity}});
    result.body["eigenvalues"] = std::move(eigs);

    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (std::size_t i = 0; i < adjacency.dim(); ++i) {
      std::vector<int> row(adjacency.dim());
      for (std::size_t j = 0; j < adjacency.dim(); ++j)
        row[j] = adjacency(i, j).real() != 0.0 ? 1 : 0;
      rows.push_back(std::move(row));
    }
    result.body["adjacency"] = std::move(rows);
    stamp(result, start, opts);
    return result;
  });
}

CommandResult cmd_transition(const std::filesystem::path& spec_file,
                             const CommandOptions& opts) {
  return guarded([&] {
    const auto start = Clock::now();
    if (opts.time.has_value() == opts.raw_time.has_value())
      throw validation_error("transition needs exactly one of --time and --raw-time");
    const SpecDocument doc = load_spec_document(spec_file);
    const NepsSpec spec = to_neps_spec(doc);
    const TransitionEngine engine(spec, opts.size_cap);

    const double t = opts.time ? opts.time->value() : *opts.raw_time;
    const ComplexMatrix h = engine.transition(t);
    if (opts.verify_paths) {
      const double gap = max_norm_diff(h, engine.transition_full_spectrum(t));
      if (gap > 1e-9)
        throw computation_error("evaluation paths disagree (gap " + std::to_string(gap) +
                                ")");
    }

    CommandResult result;
    result.body["tool"] = tool_json();
    result.body["spec"] = to_json(doc);
    result.body["order"] = spec.vertex_count();
    if (opts.time)
      result.body["time"] = opts.time->str();
    else
      result.body["raw_time"] = *opts.raw_time;
    result.body["unitarity_residual"] = unitarity_residual(h);
    result.body["symmetry_residual"] = symmetry_residual(h);
    result.body["matrix"] = matrix_json(h);
    stamp(result, start, opts);
    return result;
  });
}

CommandResult cmd_analyze(const std::filesystem::path& spec_file,
                          const CommandOptions& opts) {
  return guarded([&] {
    const auto start = Clock::now();
    const SpecDocument doc = load_spec_document(spec_file);
    const NepsSpec spec = to_neps_spec(doc);
    const AnalysisReport report =
        analyze(spec, times_or_grid(opts), opts.tol, opts.verify_paths, opts.size_cap);

    CommandResult result;
    result.body = report_json(report);
    result.body["tool"] = tool_json();
    if (!doc.name.empty()) result.body["spec"]["name"] = doc.name;
    result.exit_code = report.discrepancy ? kExitDiscrepancy : kExitOk;
    stamp(result, start, opts);
    return result;
  });
}

CommandResult cmd_certify(const std::filesystem::path& spec_file,
                          const CommandOptions& opts) {
  return guarded([&] {
    const auto start = Clock::now();
    const SpecDocument doc = load_spec_document(spec_file);
    const NepsSpec spec = to_neps_spec(doc);
    const TransitionEngine engine(spec, opts.size_cap);
    const ComplexMatrix adjacency = neps_adjacency(spec, opts.size_cap);
    const double tol = opts.tol;

    CommandResult result;
    result.body["tool"] = tool_json();
    result.body["spec"] = to_json(doc);
    result.body["order"] = spec.vertex_count();
    result.body["tol"] = tol;

    bool all_pass = true;
    double worst = 0.0;
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (const auto& t : times_or_grid(opts)) {
      ComplexMatrix analytic = engine.transition(t);
      if (opts.corrupt) analytic(0, analytic.dim() - 1) += 1e-3;
      const ComplexMatrix reference = expm_series(adjacency, t.value());
      const double deviation = max_norm_diff(analytic, reference);
      worst = std::max(worst, deviation);
      const bool pass = deviation <= tol;
      all_pass = all_pass && pass;
      rows.push_back({{"time", t.str()}, {"deviation", deviation}, {"pass", pass}});
    }
    result.body["results"] = std::move(rows);
    result.body["max_deviation"] = worst;
    result.body["pass"] = all_pass;
    result.exit_code = all_pass ? kExitOk : kExitDiscrepancy;
    stamp(result, start, opts);
    return result;
  });
}

namespace {

struct ExampleCheck {
  std::string name;
  bool pass;
  std::string detail;
};

struct ExampleRun {
  std::string id;
  std::string summary;
  std::vector<ExampleCheck> checks;
  bool pass() const {
    for (const auto& c : checks)
      if (!c.pass) return false;
    return true;
  }
};

// Cubelike companion built from the binary tails of a one-large-factor spec
// whose patterns all share the same large part.
NepsSpec binary_tail_spec(const NepsSpec& spec) {
  const auto star = project_star(spec);
  if (star.size() != 1)
    throw computation_error("bundled spec does not have a single large part");
  const auto tails = fiber(spec, star.front());
  std::vector<int> factors(spec.binary_indices().size(), 2);
  return NepsSpec(factors, BasisSet(tails));
}

ExampleRun run_complete_graph_example(int n) {
  ExampleRun run;
  run.id = "k" + std::to_string(n);
  run.summary = "complete graph on " + std::to_string(n) +
                " vertices: periodic at 2π/" + std::to_string(n) +
                ", never transfers";
  const NepsSpec spec({n}, BasisSet({BasisVector({1})}));
  const TransitionEngine engine(spec);

  const RationalAngle period(2, n);
  const ComplexMatrix h = engine.transition(period);
  const cplx phase = std::polar(1.0, 2.0 * std::numbers::pi / n);
  const double gap =
      max_norm_diff(h, scale(ComplexMatrix::identity(spec.vertex_count()), phase));
  run.checks.push_back(
      {"scalar at period", gap <= 1e-9, "|H - phase*I| = " + std::to_string(gap)});

  double worst = 0.0;
  for (const auto& t : default_scan_grid()) {
    const ComplexMatrix ht = engine.transition(t);
    for (std::size_t u = 0; u < ht.dim(); ++u)
      for (std::size_t v = 0; v < ht.dim(); ++v)
        if (u != v) worst = std::max(worst, std::abs(ht(u, v)));
  }
  run.checks.push_back({"no transfer on grid", worst <= 1.0 - 1e-6,
                        "max off-diagonal modulus " + std::to_string(worst)});
  return run;
}

ExampleRun run_bundled_example(const BundledSpec& bundled, const RationalAngle& tail_time) {
  ExampleRun run;
  run.id = std::string(bundled.id);
  const SpecDocument doc = load_bundled(bundled);
  const NepsSpec spec = to_neps_spec(doc);
  run.summary = "order-" + std::to_string(spec.vertex_count()) +
                " product graph: transfer at π/4 that no sufficient condition claims";

  run.checks.push_back({"transcription", true,
                        std::to_string(bundled.basis_size) + " rows, XOR-sum zero"});

  const RationalAngle quarter(1, 4);
  const AnalysisReport report = analyze(spec, default_scan_grid(), 1e-9);

  const auto record =
      std::find_if(report.timeline.begin(), report.timeline.end(),
                   [&](const TimePointRecord& r) { return r.time == quarter; });
  const bool events_found = record != report.timeline.end() && !record->events.empty();
  double min_modulus = 0.0;
  if (events_found) {
    min_modulus = 1.0;
    for (const auto& e : record->events) min_modulus = std::min(min_modulus, e.modulus);
  }
  run.checks.push_back({"transfer at π/4", events_found && min_modulus >= 1.0 - 1e-9,
                        events_found ? "minimum modulus " + std::to_string(min_modulus)
                                     : "no events"});

  const bool unclaimed =
      std::find(report.unexplained_pst_times.begin(), report.unexplained_pst_times.end(),
                quarter) != report.unexplained_pst_times.end();
  run.checks.push_back({"beyond the sufficient conditions", unclaimed,
                        unclaimed ? "no rule claims transfer at π/4"
                                  : "some rule claimed this time"});

  const bool no_failed_rule = !report.discrepancy;
  run.checks.push_back({"fired rules confirmed", no_failed_rule, ""});

  const NepsSpec tail_spec = binary_tail_spec(spec);
  const std::size_t large_n =
      static_cast<std::size_t>(spec.factor_sizes()[spec.large_indices().front()]);
  const ComplexMatrix expected =
      kron(ComplexMatrix::identity(large_n), transition(tail_spec, tail_time));
  const double block_gap = max_norm_diff(transition(spec, quarter), expected);
  run.checks.push_back({"block reduction", block_gap <= 1e-9,
                        "|H(π/4) - I ⊗ H_tails(" + tail_time.str() + "π)| = " +
                            std::to_string(block_gap)});
  return run;
}

}  // namespace

CommandResult cmd_examples(const CommandOptions& opts) {
  return guarded([&] {
    const auto start = Clock::now();
    std::vector<ExampleRun> runs;
    for (int n = 3; n <= 7; ++n) runs.push_back(run_complete_graph_example(n));
    runs.push_back(run_bundled_example(bundled_k3_cube5(), RationalAngle(1, 4)));
    runs.push_back(run_bundled_example(bundled_k4_cube5(), RationalAngle(3, 4)));

    CommandResult result;
    result.body["tool"] = tool_json();
    bool all_pass = true;
    nlohmann::ordered_json items = nlohmann::ordered_json::array();
    std::string table;
    for (const auto& run : runs) {
      const bool pass = run.pass();
      all_pass = all_pass && pass;
      nlohmann::ordered_json item;
      item["id"] = run.id;
      item["summary"] = run.summary;
      item["pass"] = pass;
      nlohmann::ordered_json checks = nlohmann::ordered_json::array();
      for (const auto& check : run.checks) {
        checks.push_back(
            {{"name", check.name}, {"pass", check.pass}, {"detail", check.detail}});
        table += std::string(pass && check.pass ? "  " : "! ") + run.id + ": " +
                 check.name + (check.pass ? " ok" : " FAILED") +
                 (check.detail.empty() ? "" : " (" + check.detail + ")") + "\n";
      }
      item["checks"] = std::move(checks);
      items.push_back(std::move(item));
      table += std::string(pass ? "PASS  " : "FAIL  ") + run.id + " — " + run.summary +
               "\n";
    }
    result.body["examples"] = std::move(items);
    result.body["pass"] = all_pass;
    result.text = table;
    result.exit_code = all_pass ? kExitOk : kExitDiscrepancy;
    stamp(result, start, opts);
    return result;
  });
}

}  // namespace pstneps
