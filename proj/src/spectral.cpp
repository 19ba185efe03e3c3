#include "pstneps/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <map>
#include <stdexcept>

#include "pstneps/errors.hpp"

namespace pstneps {

namespace {

cplx unit_phase(double angle) { return std::polar(1.0, angle); }

// (-i)^k and (-1)^k without accumulating rounding
cplx minus_i_pow(std::size_t k) {
  switch (k % 4) {
    case 0: return {1.0, 0.0};
    case 1: return {0.0, -1.0};
    case 2: return {-1.0, 0.0};
    default: return {0.0, 1.0};
  }
}

cplx i_pow(std::size_t k) { return std::conj(minus_i_pow(k)); }

double sign_pow(long long k) { return (k % 2 == 0) ? 1.0 : -1.0; }

std::vector<FactorSpectrum> all_factor_spectra(const NepsSpec& spec) {
  std::vector<FactorSpectrum> out;
  out.reserve(spec.factor_count());
  for (int n : spec.factor_sizes()) out.push_back(factor_spectrum(n));
  return out;
}

SpectralDecomposition sorted_terms(std::map<long long, ComplexMatrix>&& merged) {
  SpectralDecomposition decomp;
  for (auto& [eig, proj] : merged)
    decomp.terms.push_back({eig, std::move(proj)});
  return decomp;
}

void check_cap(const NepsSpec& spec, std::size_t size_cap) {
  if (spec.vertex_count() > size_cap)
    throw size_cap_error("vertex count " + std::to_string(spec.vertex_count()) +
                         " exceeds cap " + std::to_string(size_cap));
}

}  // namespace

FactorSpectrum factor_spectrum(int n) {
  if (n < 2) throw std::invalid_argument("factor_spectrum: n must be >= 2");
  const auto dim = static_cast<std::size_t>(n);
  ComplexMatrix e2(dim);
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = 0; j < dim; ++j) e2(i, j) = 1.0 / n;
  ComplexMatrix e1 = add(ComplexMatrix::identity(dim), scale(e2, -1.0));
  return FactorSpectrum{n, {-1, n - 1}, std::move(e1), std::move(e2)};
}

SpectralDecomposition single_a_decomposition(const NepsSpec& spec, const BasisVector& a) {
  if (a.size() != spec.factor_count())
    throw std::invalid_argument("pattern length does not match factor count");
  if (a.is_zero()) throw std::invalid_argument("pattern must be nonzero");
  const auto spectra = all_factor_spectra(spec);
  std::vector<std::size_t> active;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a.bit(i)) active.push_back(i);

  std::map<long long, ComplexMatrix> merged;
  for (std::size_t mask = 0; mask < (std::size_t{1} << active.size()); ++mask) {
    long long eig = 1;
    ComplexMatrix proj = ComplexMatrix::identity(1);
    std::size_t pos = 0;
    for (std::size_t i = 0; i < spec.factor_count(); ++i) {
      if (!a.bit(i)) {
        proj = kron(proj, ComplexMatrix::identity(
                              static_cast<std::size_t>(spec.factor_sizes()[i])));
        continue;
      }
      const bool top = (mask >> pos++) & 1;
      eig *= spectra[i].eigenvalues[top ? 1 : 0];
      proj = kron(proj, top ? spectra[i].e2 : spectra[i].e1);
    }
    auto [it, inserted] = merged.try_emplace(eig, std::move(proj));
    if (!inserted) it->second = add(it->second, proj);
  }
  return sorted_terms(std::move(merged));
}

SpectralDecomposition neps_decomposition(const NepsSpec& spec) {
  const auto spectra = all_factor_spectra(spec);
  const std::size_t m = spec.factor_count();
  std::map<long long, ComplexMatrix> merged;
  for (std::size_t mask = 0; mask < (std::size_t{1} << m); ++mask) {
    long long eig = 0;
    for (const auto& a : spec.basis()) {
      long long prod = 1;
      for (std::size_t i = 0; i < m; ++i)
        if (a.bit(i)) prod *= spectra[i].eigenvalues[(mask >> i) & 1];
      eig += prod;
    }
    ComplexMatrix proj = ComplexMatrix::identity(1);
    for (std::size_t i = 0; i < m; ++i)
      proj = kron(proj, ((mask >> i) & 1) ? spectra[i].e2 : spectra[i].e1);
    auto [it, inserted] = merged.try_emplace(eig, std::move(proj));
    if (!inserted) it->second = add(it->second, proj);
  }
  return sorted_terms(std::move(merged));
}

std::vector<std::pair<long long, long long>> spectrum_multiset(const NepsSpec& spec) {
  const auto spectra = all_factor_spectra(spec);
  const std::size_t m = spec.factor_count();
  std::map<long long, long long> counts;
  for (std::size_t mask = 0; mask < (std::size_t{1} << m); ++mask) {
    long long eig = 0;
    for (const auto& a : spec.basis()) {
      long long prod = 1;
      for (std::size_t i = 0; i < m; ++i)
        if (a.bit(i)) prod *= spectra[i].eigenvalues[(mask >> i) & 1];
      eig += prod;
    }
    long long mult = 1;
    for (std::size_t i = 0; i < m; ++i)
      mult *= ((mask >> i) & 1) ? 1 : spec.factor_sizes()[i] - 1;
    counts[eig] += mult;
  }
  return {counts.begin(), counts.end()};
}

ComplexMatrix transition_from_decomposition(const SpectralDecomposition& decomp, double t) {
  ComplexMatrix h(decomp.dim());
  for (const auto& term : decomp.terms) {
    const cplx factor = unit_phase(-t * static_cast<double>(term.eigenvalue));
    const std::size_t n = h.dim();
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) h(i, j) += factor * term.projector(i, j);
  }
  return h;
}

ComplexMatrix transition_single_a(const NepsSpec& spec, const BasisVector& a, double t) {
  return transition_from_decomposition(single_a_decomposition(spec, a), t);
}

ComplexMatrix transition_single_a(const NepsSpec& spec, const BasisVector& a,
                                  const RationalAngle& t) {
  return transition_single_a(spec, a, t.value());
}

ComplexMatrix lift_transition(const ComplexMatrix& h, std::size_t left_id,
                              std::size_t right_id) {
  if (left_id < 1 || right_id < 1)
    throw std::invalid_argument("lift_transition: identity sizes must be >= 1");
  return kron(kron(ComplexMatrix::identity(left_id), h),
              ComplexMatrix::identity(right_id));
}

ComplexMatrix tensor_transition(const SpectralDecomposition& gdecomp,
                                const std::function<ComplexMatrix(const RationalAngle&)>& h_of,
                                const RationalAngle& t) {
  std::optional<ComplexMatrix> acc;
  for (const auto& term : gdecomp.terms) {
    ComplexMatrix part = kron(term.projector, h_of(t.times(term.eigenvalue)));
    acc = acc ? add(*acc, part) : std::move(part);
  }
  return *acc;
}

TransitionEngine::TransitionEngine(NepsSpec spec, std::size_t size_cap)
    : spec_(std::move(spec)) {
  check_cap(spec_, size_cap);
  singles_.reserve(spec_.basis().size());
  for (const auto& a : spec_.basis()) singles_.push_back(single_a_decomposition(spec_, a));
}

ComplexMatrix TransitionEngine::transition(double t) const {
  ComplexMatrix h = transition_from_decomposition(singles_.front(), t);
  for (std::size_t i = 1; i < singles_.size(); ++i)
    h = matmul(h, transition_from_decomposition(singles_[i], t));
  return h;
}

const SpectralDecomposition& TransitionEngine::full_decomposition() const {
  std::call_once(full_once_, [this] {
    full_ = std::make_unique<SpectralDecomposition>(neps_decomposition(spec_));
  });
  return *full_;
}

ComplexMatrix TransitionEngine::transition_full_spectrum(double t) const {
  return transition_from_decomposition(full_decomposition(), t);
}

ComplexMatrix transition(const NepsSpec& spec, double t, std::size_t size_cap) {
  return TransitionEngine(spec, size_cap).transition(t);
}

ComplexMatrix transition(const NepsSpec& spec, const RationalAngle& t,
                         std::size_t size_cap) {
  return transition(spec, t.value(), size_cap);
}

ComplexMatrix shift_pattern_matrix(const NepsSpec& spec, const BasisVector& shift) {
  if (shift.size() != spec.factor_count())
    throw std::invalid_argument("shift length does not match factor count");
  ComplexMatrix out = ComplexMatrix::identity(1);
  for (std::size_t i = 0; i < spec.factor_count(); ++i) {
    const auto ni = static_cast<std::size_t>(spec.factor_sizes()[i]);
    if (!shift.bit(i)) {
      out = kron(out, ComplexMatrix::identity(ni));
      continue;
    }
    if (ni != 2)
      throw std::invalid_argument("shift pattern set on a non-binary factor");
    ComplexMatrix swap(2);
    swap(0, 1) = swap(1, 0) = 1.0;
    out = kron(out, swap);
  }
  return out;
}

namespace {

bool is_mixed(const BasisSplit& split) {
  return (!split.a2.empty() || !split.a3.empty()) &&
         (!split.a1.empty() || !split.a3.empty());
}

// sum over the basis of (-1)^(w(a)-1)
long long alternating_weight_sum(const NepsSpec& spec) {
  long long sum = 0;
  for (const auto& a : spec.basis()) sum += (hamming_weight(a) % 2 == 1) ? 1 : -1;
  return sum;
}

std::optional<ClosedForm> scalar_form(const NepsSpec& spec, std::string formula,
                                      RationalAngle time, cplx phase) {
  ComplexMatrix m = scale(ComplexMatrix::identity(spec.vertex_count()), phase);
  return ClosedForm{std::move(m),
                    PhaseRecord{std::move(formula), time, phase,
                                BasisVector::zeros(spec.factor_count())}};
}

std::optional<ClosedForm> pattern_form(const NepsSpec& spec, std::string formula,
                                       RationalAngle time, cplx phase,
                                       const BasisVector& shift) {
  ComplexMatrix m = scale(shift_pattern_matrix(spec, shift), phase);
  return ClosedForm{std::move(m), PhaseRecord{std::move(formula), time, phase, shift}};
}

// Per-fiber size/sum conditions behind the refined π/2 forms.
bool fibers_satisfy(const NepsSpec& spec, int size_modulus) {
  for (const auto& x : project_star(spec)) {
    if (x.is_zero()) continue;
    const auto tails = fiber(spec, x);
    if (tails.size() % static_cast<std::size_t>(size_modulus) != 0) return false;
    if (!c_of(tails, spec.binary_indices().size()).is_zero()) return false;
  }
  return true;
}

long long fiber_half_size_sum(const NepsSpec& spec) {
  long long sum = 0;
  for (const auto& x : project_star(spec)) {
    if (x.is_zero()) continue;
    sum += static_cast<long long>(fiber(spec, x).size()) / 2;
  }
  return sum;
}

}  // namespace

cplx mixed_half_pi_scalar(const NepsSpec& spec) {
  const BasisSplit split = split_support(spec);
  if (!is_mixed(split))
    throw std::invalid_argument("mixed_half_pi_scalar: basis is not mixed");
  const auto large_weight = [&](const BasisVector& b) {
    return hamming_weight(restrict_to(b, spec.large_indices()));
  };
  long long s1 = 0, s3 = 0;
  for (const auto& b : split.a1) s1 += hamming_weight(b) - 1;
  for (const auto& b : split.a3) s3 += large_weight(b) - 1;
  const auto n2 = static_cast<long long>(split.a2.size());
  const bool has1 = !split.a1.empty(), has2 = !split.a2.empty(), has3 = !split.a3.empty();

  long long exponent;
  if (has1 && has2 && has3)
    exponent = s1 + n2 + s3;
  else if (has1 && has2)
    exponent = s1 + n2;
  else if (has1 && has3)
    exponent = s1 + s3;
  else if (has2 && has3)
    exponent = n2 + s3;
  else
    exponent = s3;  // only the doubly-active part remains
  return sign_pow(exponent) * i_pow(spec.basis().size());
}

std::optional<ClosedForm> closed_form(const NepsSpec& spec, SpecialForm which,
                                      std::size_t size_cap) {
  check_cap(spec, size_cap);
  const BasisSplit split = split_support(spec);
  const auto binary_count = spec.binary_indices().size();

  switch (which) {
    case SpecialForm::LargeSupportPeriod: {
      if (spec.large_indices().empty()) return std::nullopt;
      if (!split.a2.empty() || !split.a3.empty()) return std::nullopt;
      const long long h = *spec.h();
      const RationalAngle t(2, h);
      const cplx phase = unit_phase(t.value() * static_cast<double>(alternating_weight_sum(spec)));
      return scalar_form(spec, "large-support-period", t, phase);
    }

    case SpecialForm::BinarySupportHalfPi: {
      if (!split.a1.empty() || !split.a3.empty()) return std::nullopt;
      const cplx phase = minus_i_pow(spec.basis().size());
      return pattern_form(spec, "binary-support-half-pi", RationalAngle(1, 2), phase,
                          c_of(spec.basis()));
    }

    case SpecialForm::TwoPiIdentity:
      return scalar_form(spec, "two-pi-identity", RationalAngle(2, 1), {1.0, 0.0});

    case SpecialForm::PiScalar: {
      const bool large_active = !split.a1.empty() || !split.a3.empty();
      if (large_active && *spec.h() % 2 != 0) return std::nullopt;
      return scalar_form(spec, "pi-scalar", RationalAngle(1, 1),
                         {sign_pow(static_cast<long long>(spec.basis().size())), 0.0});
    }

    case SpecialForm::SingleFiberHalfPi: {
      const auto star = project_star(spec);
      if (star.size() != 1 || star.front().is_zero()) return std::nullopt;
      const auto tails = fiber(spec, star.front());
      if (tails.size() < 2) return std::nullopt;
      if (!c_of(tails, binary_count).is_zero()) return std::nullopt;
      const long long h = *spec.h();
      double phase;
      if (h % 2 == 1) {
        if (tails.size() % 4 != 0) return std::nullopt;
        phase = 1.0;
      } else if (h % 4 == 2) {
        if (tails.size() % 2 != 0) return std::nullopt;
        phase = sign_pow(static_cast<long long>(tails.size()) / 2);
      } else {
        return std::nullopt;
      }
      return scalar_form(spec, "single-fiber-half-pi", RationalAngle(1, 2),
                         {phase, 0.0});
    }

    case SpecialForm::FiberRefinedHalfPi: {
      if (!is_mixed(split)) return std::nullopt;
      const long long h = *spec.h();
      if (h % 2 == 1) {
        if (!fibers_satisfy(spec, 4)) return std::nullopt;
      } else if (h % 4 == 2) {
        if (!fibers_satisfy(spec, 2)) return std::nullopt;
      } else {
        return std::nullopt;
      }
      const cplx phase =
          sign_pow(fiber_half_size_sum(spec)) * minus_i_pow(split.a2.size());
      const BasisVector tail =
          embed_at(c_of(fiber(spec, BasisVector::zeros(spec.large_indices().size())),
                        binary_count),
                   spec.binary_indices(), spec.factor_count());
      return pattern_form(spec, "fiber-refined-half-pi", RationalAngle(1, 2), phase, tail);
    }

    case SpecialForm::MixedHalfPi: {
      if (!is_mixed(split)) return std::nullopt;
      if (*spec.h() % 4 != 0) return std::nullopt;
      const BasisVector tail =
          embed_at(restrict_to(c_of(spec.basis()), spec.binary_indices()),
                   spec.binary_indices(), spec.factor_count());
      return pattern_form(spec, "mixed-half-pi", RationalAngle(1, 2),
                          mixed_half_pi_scalar(spec), tail);
    }
  }
  return std::nullopt;
}

}  // namespace pstneps
