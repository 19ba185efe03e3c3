#include "pstneps/spec_io.hpp"

#include <fstream>

#include "pstneps/errors.hpp"

namespace pstneps {

SpecDocument spec_document_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw validation_error("spec document must be a JSON object");
  SpecDocument doc;
  doc.name = j.value("name", std::string{});
  if (!j.contains("factors") || !j["factors"].is_array())
    throw validation_error("spec document needs a \"factors\" array");
  for (const auto& f : j["factors"]) {
    if (!f.is_number_integer())
      throw validation_error("factor sizes must be integers");
    doc.factors.push_back(f.get<int>());
  }
  if (!j.contains("basis") || !j["basis"].is_array())
    throw validation_error("spec document needs a \"basis\" array");
  std::size_t row_index = 0;
  for (const auto& row : j["basis"]) {
    if (!row.is_array())
      throw validation_error("basis row " + std::to_string(row_index) +
                             " must be an array of bits");
    std::vector<int> bits;
    for (const auto& b : row) {
      if (!b.is_number_integer() || (b.get<int>() != 0 && b.get<int>() != 1))
        throw validation_error("basis row " + std::to_string(row_index) +
                               " has an entry that is not 0 or 1");
      bits.push_back(b.get<int>());
    }
    doc.basis.push_back(std::move(bits));
    ++row_index;
  }
  return doc;
}

SpecDocument load_spec_document(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw validation_error("cannot open spec file: " + path.string());
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::parse_error& e) {
    throw validation_error(path.string() + ": " + e.what());
  }
  try {
    return spec_document_from_json(j);
  } catch (const validation_error& e) {
    throw validation_error(path.string() + ": " + e.what());
  }
}

nlohmann::ordered_json to_json(const SpecDocument& doc) {
  nlohmann::ordered_json j;
  if (!doc.name.empty()) j["name"] = doc.name;
  j["factors"] = doc.factors;
  j["basis"] = doc.basis;
  return j;
}

NepsSpec to_neps_spec(const SpecDocument& doc) {
  std::vector<BasisVector> vectors;
  std::size_t row_index = 0;
  for (const auto& row : doc.basis) {
    std::vector<std::uint8_t> bits(row.begin(), row.end());
    try {
      vectors.push_back(BasisVector(std::move(bits)));
    } catch (const validation_error& e) {
      throw validation_error("basis row " + std::to_string(row_index) + ": " + e.what());
    }
    ++row_index;
  }
  if (vectors.empty()) throw validation_error("basis set must be nonempty");
  return NepsSpec(doc.factors, BasisSet(std::move(vectors)));
}

SpecDocument from_neps_spec(const NepsSpec& spec, std::string name) {
  SpecDocument doc;
  doc.name = std::move(name);
  doc.factors = spec.factor_sizes();
  for (const auto& v : spec.basis())
    doc.basis.emplace_back(v.bits().begin(), v.bits().end());
  return doc;
}

nlohmann::ordered_json complex_json(cplx z) {
  return nlohmann::ordered_json::array({z.real(), z.imag()});
}

nlohmann::ordered_json matrix_json(const ComplexMatrix& m) {
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < m.dim(); ++i) {
    nlohmann::ordered_json row = nlohmann::ordered_json::array();
    for (std::size_t j = 0; j < m.dim(); ++j) row.push_back(complex_json(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

namespace {

nlohmann::ordered_json prediction_json(const PredictionOutcome& outcome) {
  const Prediction& p = outcome.prediction;
  nlohmann::ordered_json j;
  j["rule"] = p.rule;
  switch (p.kind) {
    case PredictionKind::Pst: j["kind"] = "pst"; break;
    case PredictionKind::Periodic: j["kind"] = "periodic"; break;
    case PredictionKind::NoClaim: j["kind"] = "no-claim"; break;
  }
  if (p.kind == PredictionKind::Pst) {
    j["time"] = p.time.str();
    j["shift"] = std::vector<int>(p.shift.bits().begin(), p.shift.bits().end());
  } else if (p.kind == PredictionKind::Periodic) {
    j["period"] = p.time.str();
  }
  if (p.phase) j["phase"] = complex_json(*p.phase);
  if (!p.detail.empty()) j["detail"] = p.detail;
  if (outcome.checked) j["confirmed"] = outcome.confirmed;
  if (!outcome.note.empty()) j["note"] = outcome.note;
  return j;
}

}  // namespace

nlohmann::ordered_json report_json(const AnalysisReport& report) {
  nlohmann::ordered_json j;
  j["spec"] = to_json(from_neps_spec(report.spec, ""));
  j["order"] = report.spec.vertex_count();
  j["tol"] = report.tol;
  j["verify_paths"] = report.verify_paths;

  nlohmann::ordered_json timeline = nlohmann::ordered_json::array();
  for (const auto& record : report.timeline) {
    nlohmann::ordered_json r;
    r["time"] = record.time.str();
    r["unitarity_residual"] = record.unitarity_residual;
    nlohmann::ordered_json events = nlohmann::ordered_json::array();
    for (const auto& e : record.events) {
      nlohmann::ordered_json ev;
      ev["source"] = e.source;
      ev["target"] = e.target;
      ev["source_coords"] = index_vertex(report.spec, e.source).coords;
      ev["target_coords"] = index_vertex(report.spec, e.target).coords;
      ev["modulus"] = e.modulus;
      ev["phase"] = complex_json(e.phase);
      events.push_back(std::move(ev));
    }
    r["pst_events"] = std::move(events);
    if (record.periodicity) {
      nlohmann::ordered_json p;
      p["scalar"] = record.periodicity->scalar;
      if (record.periodicity->scalar)
        p["phase"] = complex_json(record.periodicity->phase);
      else {
        nlohmann::ordered_json phases = nlohmann::ordered_json::array();
        for (cplx z : record.periodicity->vertex_phases)
          phases.push_back(complex_json(z));
        p["vertex_phases"] = std::move(phases);
      }
      r["periodic"] = std::move(p);
    } else {
      r["periodic"] = nullptr;
    }
    timeline.push_back(std::move(r));
  }
  j["timeline"] = std::move(timeline);

  nlohmann::ordered_json predictions = nlohmann::ordered_json::array();
  for (const auto& outcome : report.predictions)
    predictions.push_back(prediction_json(outcome));
  j["predictions"] = std::move(predictions);

  nlohmann::ordered_json beyond = nlohmann::ordered_json::array();
  for (const auto& t : report.unexplained_pst_times) beyond.push_back(t.str());
  j["unexplained_pst_times"] = std::move(beyond);
  j["discrepancy"] = report.discrepancy;
  return j;
}

std::uint64_t fnv1a64(std::string_view text) {
  std::uint64_t hash = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    hash ^= c;
    hash *= 0x100000001b3ULL;
  }
  return hash;
}

SpecDocument load_bundled(const BundledSpec& bundled) {
  if (fnv1a64(bundled.json_text) != bundled.checksum)
    throw computation_error(std::string(bundled.id) +
                            ": bundled table checksum mismatch");
  SpecDocument doc;
  try {
    doc = spec_document_from_json(nlohmann::json::parse(bundled.json_text));
  } catch (const std::exception& e) {
    throw computation_error(std::string(bundled.id) + ": bundled table unreadable: " +
                            e.what());
  }
  if (doc.basis.size() != bundled.basis_size)
    throw computation_error(std::string(bundled.id) + ": expected " +
                            std::to_string(bundled.basis_size) + " basis rows, found " +
                            std::to_string(doc.basis.size()));
  const NepsSpec spec = to_neps_spec(doc);
  if (c_of(spec.basis()).is_zero() != bundled.c_is_zero)
    throw computation_error(std::string(bundled.id) +
                            ": basis XOR-sum does not match the recorded value");
  return doc;
}

}  // namespace pstneps
