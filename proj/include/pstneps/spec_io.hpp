#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "pstneps/analyzer.hpp"
#include "pstneps/neps.hpp"

namespace pstneps {

// On-disk graph description: {"name": ..., "factors": [...], "basis": [[...]]}.
struct SpecDocument {
  std::string name;
  std::vector<int> factors;
  std::vector<std::vector<int>> basis;

  bool operator==(const SpecDocument&) const = default;
};

SpecDocument spec_document_from_json(const nlohmann::json& j);
SpecDocument load_spec_document(const std::filesystem::path& path);
nlohmann::ordered_json to_json(const SpecDocument& doc);

NepsSpec to_neps_spec(const SpecDocument& doc);
SpecDocument from_neps_spec(const NepsSpec& spec, std::string name);

nlohmann::ordered_json complex_json(cplx z);
nlohmann::ordered_json matrix_json(const ComplexMatrix& m);
nlohmann::ordered_json report_json(const AnalysisReport& report);

std::uint64_t fnv1a64(std::string_view text);

// Compiled-in spec document plus the facts the transcription is checked
// against before use.
struct BundledSpec {
  std::string_view id;
  std::string_view json_text;
  std::uint64_t checksum;
  std::size_t basis_size;
  bool c_is_zero;
};

const BundledSpec& bundled_k3_cube5();
const BundledSpec& bundled_k4_cube5();

// Parses and verifies checksum, basis size and the XOR-sum statement;
// a mismatch means the shipped table was altered.
SpecDocument load_bundled(const BundledSpec& bundled);

}  // namespace pstneps
