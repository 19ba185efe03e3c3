#pragma once

#include "pstneps/linalg.hpp"
#include "pstneps/neps.hpp"
#include "pstneps/rational_angle.hpp"

namespace pstneps {

struct OracleConfig {
  double series_tol = 1e-12;
  int max_terms = 256;
  double scaling_threshold = 1.0;  // target one-norm of the scaled argument
};

// exp(-i·t·a) by scaling and squaring of the defining power series. Shares
// nothing with the spectral path beyond the dense-matrix primitives.
ComplexMatrix expm_series(const ComplexMatrix& a, double t, const OracleConfig& cfg = {});

struct CertifyResult {
  bool pass;
  double deviation;
};

// Compares an analytically computed transition matrix against the series
// oracle applied to the adjacency.
CertifyResult certify(const NepsSpec& spec, double t, const ComplexMatrix& analytic,
                      double tol, const OracleConfig& cfg = {},
                      std::size_t size_cap = kDefaultSizeCap);
CertifyResult certify(const NepsSpec& spec, const RationalAngle& t,
                      const ComplexMatrix& analytic, double tol,
                      const OracleConfig& cfg = {},
                      std::size_t size_cap = kDefaultSizeCap);

}  // namespace pstneps
