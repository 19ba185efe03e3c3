#include "pstneps/oracle.hpp"

#include <cmath>
#include <stdexcept>

#include "pstneps/errors.hpp"

namespace pstneps {

ComplexMatrix expm_series(const ComplexMatrix& a, double t, const OracleConfig& cfg) {
  if (!(cfg.series_tol > 0)) throw std::invalid_argument("series_tol must be positive");
  if (cfg.max_terms < 16) throw std::invalid_argument("max_terms must be at least 16");
  if (!std::isfinite(t)) throw std::invalid_argument("time must be finite");

  int squarings = 0;
  double norm = one_norm(a) * std::abs(t);
  while (norm > cfg.scaling_threshold && squarings < 62) {
    norm /= 2;
    ++squarings;
  }
  const cplx step(0.0, -t / static_cast<double>(1LL << squarings));

  const std::size_t n = a.dim();
  ComplexMatrix sum = ComplexMatrix::identity(n);
  ComplexMatrix term = ComplexMatrix::identity(n);
  for (int k = 1;; ++k) {
    if (k > cfg.max_terms)
      throw computation_error("power series did not converge within " +
                              std::to_string(cfg.max_terms) + " terms");
    term = scale(matmul(term, a), step / static_cast<double>(k));
    sum = add(sum, term);
    if (max_abs(term) < cfg.series_tol) break;
  }
  for (int s = 0; s < squarings; ++s) sum = matmul(sum, sum);
  return sum;
}

CertifyResult certify(const NepsSpec& spec, double t, const ComplexMatrix& analytic,
                      double tol, const OracleConfig& cfg, std::size_t size_cap) {
  if (analytic.dim() != spec.vertex_count())
    throw std::invalid_argument("certify: matrix does not match spec order");
  const ComplexMatrix reference = expm_series(neps_adjacency(spec, size_cap), t, cfg);
  const double deviation = max_norm_diff(analytic, reference);
  return {deviation <= tol, deviation};
}

CertifyResult certify(const NepsSpec& spec, const RationalAngle& t,
                      const ComplexMatrix& analytic, double tol, const OracleConfig& cfg,
                      std::size_t size_cap) {
  return certify(spec, t.value(), analytic, tol, cfg, size_cap);
}

}  // namespace pstneps
