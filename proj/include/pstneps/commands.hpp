#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "pstneps/neps.hpp"
#include "pstneps/rational_angle.hpp"

namespace pstneps {

inline constexpr std::string_view kToolName = "pstneps";
inline constexpr std::string_view kToolVersion = "0.1.0";

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 1;
inline constexpr int kExitDiscrepancy = 2;
inline constexpr int kExitResource = 3;

struct CommandOptions {
  std::size_t size_cap = kDefaultSizeCap;
  double tol = 1e-9;
  std::vector<RationalAngle> times;   // empty means the default scan grid
  std::optional<RationalAngle> time;  // transition only
  std::optional<double> raw_time;     // transition only
  bool verify_paths = false;
  bool no_timings = false;
  bool corrupt = false;  // certify negative-control hook
};

struct CommandResult {
  int exit_code = kExitOk;
  nlohmann::ordered_json body;
  std::string text;  // human summary; empty when the body says it all
};

CommandResult cmd_build(const std::filesystem::path& spec_file, const CommandOptions& opts);
CommandResult cmd_transition(const std::filesystem::path& spec_file,
                             const CommandOptions& opts);
CommandResult cmd_analyze(const std::filesystem::path& spec_file,
                          const CommandOptions& opts);
CommandResult cmd_certify(const std::filesystem::path& spec_file,
                          const CommandOptions& opts);
CommandResult cmd_examples(const CommandOptions& opts);

}  // namespace pstneps
