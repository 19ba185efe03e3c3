#pragma once

#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pstneps/linalg.hpp"
#include "pstneps/neps.hpp"
#include "pstneps/rational_angle.hpp"

namespace pstneps {

// Complete-graph eigenstructure: eigenvalues (-1, n-1) with projectors
// (I - J/n, J/n).
struct FactorSpectrum {
  int n;
  std::array<long long, 2> eigenvalues;
  ComplexMatrix e1, e2;
};
FactorSpectrum factor_spectrum(int n);

// A = sum over terms of eigenvalue * projector, eigenvalues distinct
// integers, projectors idempotent and mutually annihilating.
struct SpectralDecomposition {
  struct Term {
    long long eigenvalue;
    ComplexMatrix projector;
  };
  std::vector<Term> terms;  // sorted by eigenvalue
  std::size_t dim() const { return terms.front().projector.dim(); }
};

// Decomposition of the single-pattern matrix ⊗_i A_{K_{n_i}}^{a_i}.
SpectralDecomposition single_a_decomposition(const NepsSpec& spec, const BasisVector& a);
// Decomposition of the full adjacency, merged over equal integer eigenvalues.
SpectralDecomposition neps_decomposition(const NepsSpec& spec);
// (eigenvalue, multiplicity) pairs without materializing projectors.
std::vector<std::pair<long long, long long>> spectrum_multiset(const NepsSpec& spec);

ComplexMatrix transition_from_decomposition(const SpectralDecomposition& decomp, double t);

ComplexMatrix transition_single_a(const NepsSpec& spec, const BasisVector& a, double t);
ComplexMatrix transition_single_a(const NepsSpec& spec, const BasisVector& a,
                                  const RationalAngle& t);

// I_left ⊗ h ⊗ I_right
ComplexMatrix lift_transition(const ComplexMatrix& h, std::size_t left_id,
                              std::size_t right_id);

// sum over terms E_r ⊗ h_of(eigenvalue_r · t); the tensor-product reduction
// of a transition matrix.
ComplexMatrix tensor_transition(const SpectralDecomposition& gdecomp,
                                const std::function<ComplexMatrix(const RationalAngle&)>& h_of,
                                const RationalAngle& t);

// Caches per-pattern decompositions once; transition() multiplies the
// commuting per-pattern factors. The full-spectrum path is an independent
// second route used for cross-checking.
class TransitionEngine {
 public:
  explicit TransitionEngine(NepsSpec spec, std::size_t size_cap = kDefaultSizeCap);

  const NepsSpec& spec() const { return spec_; }
  ComplexMatrix transition(double t) const;
  ComplexMatrix transition(const RationalAngle& t) const { return transition(t.value()); }
  ComplexMatrix transition_full_spectrum(double t) const;
  ComplexMatrix transition_full_spectrum(const RationalAngle& t) const {
    return transition_full_spectrum(t.value());
  }
  const SpectralDecomposition& full_decomposition() const;

 private:
  NepsSpec spec_;
  std::vector<SpectralDecomposition> singles_;  // basis order
  mutable std::once_flag full_once_;
  mutable std::unique_ptr<SpectralDecomposition> full_;
};

ComplexMatrix transition(const NepsSpec& spec, double t,
                         std::size_t size_cap = kDefaultSizeCap);
ComplexMatrix transition(const NepsSpec& spec, const RationalAngle& t,
                         std::size_t size_cap = kDefaultSizeCap);

// ⊗_i (A_{K_2} at binary indices where shift is set, identity elsewhere).
// The Cayley permutation of adding `shift`; shift must vanish on large
// indices.
ComplexMatrix shift_pattern_matrix(const NepsSpec& spec, const BasisVector& shift);

// Structural closed forms for the special times. Each evaluator checks its
// hypothesis and reports which formula produced the matrix; callers fall
// back to transition() when the hypothesis fails.
enum class SpecialForm {
  LargeSupportPeriod,   // t = 2π/h, basis supported on large indices
  BinarySupportHalfPi,  // t = π/2, basis supported on binary indices
  TwoPiIdentity,        // t = 2π, any basis
  PiScalar,             // t = π, needs h even unless basis is binary-only
  SingleFiberHalfPi,    // t = π/2, one common nonzero large part
  FiberRefinedHalfPi,   // t = π/2, per-fiber size/sum conditions, h not 0 mod 4
  MixedHalfPi,          // t = π/2, mixed basis with 4 | h
};

struct PhaseRecord {
  std::string formula;
  RationalAngle time;
  cplx phase;
  BasisVector shift;  // full length; zero means a scalar matrix
};

struct ClosedForm {
  ComplexMatrix matrix;
  PhaseRecord record;
};

std::optional<ClosedForm> closed_form(const NepsSpec& spec, SpecialForm which,
                                      std::size_t size_cap = kDefaultSizeCap);

// Scalar in front of the mixed π/2 closed form, from the support-split case
// table. Requires a mixed basis.
cplx mixed_half_pi_scalar(const NepsSpec& spec);

}  // namespace pstneps
