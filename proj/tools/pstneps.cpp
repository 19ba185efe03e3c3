#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "pstneps/commands.hpp"
#include "pstneps/errors.hpp"

namespace {

using pstneps::CommandOptions;
using pstneps::CommandResult;

std::vector<pstneps::RationalAngle> parse_times(const std::vector<std::string>& raw) {
  std::vector<pstneps::RationalAngle> out;
  for (const auto& item : raw) {
    auto parsed = pstneps::RationalAngle::parse(item);
    if (!parsed)
      throw pstneps::validation_error("cannot parse time \"" + item +
                                      "\"; expected p/q meaning t = pπ/q");
    out.push_back(*parsed);
  }
  return out;
}

int emit(const CommandResult& result, const std::optional<std::string>& output_path,
         bool body_to_stdout) {
  if (!result.text.empty()) std::cout << result.text;
  if (output_path) {
    std::ofstream out(*output_path);
    if (!out) {
      std::cerr << "cannot write " << *output_path << "\n";
      return pstneps::kExitValidation;
    }
    out << result.body.dump(2) << "\n";
  } else if (body_to_stdout) {
    std::cout << result.body.dump(2) << "\n";
  }
  if (result.exit_code != pstneps::kExitOk && result.body.contains("error"))
    std::cerr << "error: " << result.body["error"].get<std::string>() << "\n";
  return result.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Build NEPS graphs over complete factors, evaluate their quantum-walk "
               "transition matrices, detect perfect state transfer and periodicity, "
               "and certify every analytic result against a series oracle"};
  app.require_subcommand(1);

  std::string spec_file;
  std::vector<std::string> raw_times;
  std::string raw_time_single;
  CommandOptions opts;
  std::optional<std::string> output_path;
  std::string output_str;
  double raw_time = 0.0;

  auto add_common = [&](CLI::App* cmd, bool with_spec) {
    if (with_spec)
      cmd->add_option("spec", spec_file, "graph spec JSON file")->required();
    cmd->add_option("--size-cap", opts.size_cap, "maximum vertex count")
        ->envname("PSTNEPS_SIZE_CAP");
    cmd->add_flag("--no-timings", opts.no_timings, "omit timings from the report");
    cmd->add_option("--output", output_str, "write the JSON body to this file");
  };

  auto* build = app.add_subcommand("build", "adjacency, degree and spectrum dump");
  add_common(build, true);

  auto* transition = app.add_subcommand("transition", "transition matrix at one time");
  add_common(transition, true);
  auto* time_opt =
      transition->add_option("--time", raw_time_single, "time as p/q, meaning t = pπ/q");
  auto* raw_opt =
      transition->add_option("--raw-time", raw_time, "time as a plain float");
  transition->add_flag("--verify-paths", opts.verify_paths,
                       "cross-check the product path against the full spectrum");

  auto* analyze = app.add_subcommand("analyze", "transfer/periodicity analysis report");
  add_common(analyze, true);
  analyze->add_option("--times", raw_times, "times p/q to scan (default: built-in grid)")
      ->delimiter(',');
  analyze->add_option("--tol", opts.tol, "detection tolerance");
  analyze->add_flag("--verify-paths", opts.verify_paths,
                    "cross-check the product path against the full spectrum");

  auto* certify = app.add_subcommand("certify", "analytic vs series-oracle deviations");
  add_common(certify, true);
  certify->add_option("--times", raw_times, "times p/q to certify (default: built-in grid)")
      ->delimiter(',');
  opts.tol = 1e-9;
  double certify_tol = 1e-6;
  certify->add_option("--tol", certify_tol, "maximum allowed deviation");
  certify->add_flag("--corrupt", opts.corrupt, "perturb the analytic matrix")
      ->group("");  // negative-control hook, hidden from help

  auto* examples = app.add_subcommand("examples", "run the bundled demonstration graphs");
  add_common(examples, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return pstneps::kExitValidation;
  }

  if (!output_str.empty()) output_path = output_str;

  try {
    if (!raw_times.empty()) opts.times = parse_times(raw_times);
    if (*time_opt) {
      auto parsed = pstneps::RationalAngle::parse(raw_time_single);
      if (!parsed)
        throw pstneps::validation_error("cannot parse --time \"" + raw_time_single +
                                        "\"");
      opts.time = *parsed;
    }
    if (*raw_opt) opts.raw_time = raw_time;
  } catch (const pstneps::validation_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return pstneps::kExitValidation;
  }

  if (build->parsed()) return emit(pstneps::cmd_build(spec_file, opts), output_path, true);
  if (transition->parsed())
    return emit(pstneps::cmd_transition(spec_file, opts), output_path, true);
  if (analyze->parsed())
    return emit(pstneps::cmd_analyze(spec_file, opts), output_path, true);
  if (certify->parsed()) {
    opts.tol = certify_tol;
    return emit(pstneps::cmd_certify(spec_file, opts), output_path, true);
  }
  if (examples->parsed())
    return emit(pstneps::cmd_examples(opts), output_path, false);
  return pstneps::kExitValidation;
}
