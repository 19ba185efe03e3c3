#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pstneps/linalg.hpp"
#include "pstneps/neps.hpp"
#include "pstneps/rational_angle.hpp"

namespace pstneps {

// Unit-modulus off-diagonal entry: state transfer between distinct vertices.
struct PstEvent {
  std::size_t source;
  std::size_t target;
  RationalAngle time;
  double modulus;
  cplx phase;
};

// All ordered pairs (u,v), u != v, with |h(u,v)| >= 1 - tol. The matrix must
// be unitary within tol.
std::vector<PstEvent> detect_pst(const ComplexMatrix& h, const NepsSpec& spec,
                                 const RationalAngle& time, double tol = 1e-9);

// Diagonal of unit moduli: per-vertex phases, plus the common phase when the
// matrix is a scalar multiple of the identity.
struct Periodicity {
  bool scalar;
  cplx phase;  // meaningful only when scalar
  std::vector<cplx> vertex_phases;
};
std::optional<Periodicity> detect_periodic(const ComplexMatrix& h, double tol = 1e-9);

enum class PredictionKind { Pst, Periodic, NoClaim };

// A structural rule's verdict. NoClaim means the rule's hypothesis failed —
// never a claim that transfer is absent.
struct Prediction {
  PredictionKind kind = PredictionKind::NoClaim;
  std::string rule;
  RationalAngle time;   // transfer time, or the period
  BasisVector shift;    // transfer target offset (full length, Pst only)
  std::optional<cplx> phase;
  std::string detail;
};

std::vector<Prediction> predict_large_support(const NepsSpec& spec);
std::vector<Prediction> predict_binary_support(const NepsSpec& spec);
std::vector<Prediction> predict_mixed(const NepsSpec& spec);
std::vector<Prediction> predict_hamming(const NepsSpec& spec);
std::vector<Prediction> predict_cubelike(const NepsSpec& spec);
std::vector<Prediction> run_all_predictors(const NepsSpec& spec);

struct TimePointRecord {
  RationalAngle time;
  double unitarity_residual;
  std::vector<PstEvent> events;
  std::optional<Periodicity> periodicity;
};

struct PredictionOutcome {
  Prediction prediction;
  bool checked = false;  // NoClaim entries are not checked
  bool confirmed = false;
  std::string note;
};

struct AnalysisReport {
  NepsSpec spec;
  double tol;
  bool verify_paths;
  std::vector<TimePointRecord> timeline;
  std::vector<PredictionOutcome> predictions;
  // times with observed transfer but no rule claiming it
  std::vector<RationalAngle> unexplained_pst_times;
  bool discrepancy = false;
};

// All reduced p/q with 1 <= q <= 8 and 0 < p/q <= 2, i.e. times in (0, 2π].
std::vector<RationalAngle> default_scan_grid();

// Runs every predictor, evaluates the transition matrix at the union of scan
// and predicted times, verifies each fired prediction numerically, and flags
// any observed transfer the rules did not claim.
AnalysisReport analyze(const NepsSpec& spec, const std::vector<RationalAngle>& scan_times,
                       double tol = 1e-9, bool verify_paths = false,
                       std::size_t size_cap = kDefaultSizeCap);

}  // namespace pstneps
