#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>

#include "pstneps/errors.hpp"
#include "pstneps/oracle.hpp"
#include "pstneps/spectral.hpp"
#include "support/corpus.hpp"

using namespace pstneps;
using corpus::make_spec;

TEST_CASE("series at time zero is the identity") {
  const auto a = neps_adjacency(corpus::complete_graph(4));
  CHECK(max_norm_diff(expm_series(a, 0.0), ComplexMatrix::identity(4)) < 1e-14);
}

TEST_CASE("series on the edge graph at the transfer time") {
  const auto a = neps_adjacency(corpus::complete_graph(2));
  const auto h = expm_series(a, std::numbers::pi / 2);
  CHECK(std::abs(h(0, 0)) < 1e-10);
  CHECK(std::abs(h(0, 1) - cplx{0.0, -1.0}) < 1e-10);
}

TEST_CASE("series on the triangle at its period") {
  const auto a = neps_adjacency(corpus::complete_graph(3));
  const auto h = expm_series(a, 2.0 * std::numbers::pi / 3.0);
  const auto expected = scale(ComplexMatrix::identity(3),
                              std::polar(1.0, 2.0 * std::numbers::pi / 3.0));
  CHECK(max_norm_diff(h, expected) < 1e-10);
}

TEST_CASE("series output is unitary even for long times") {
  const NepsSpec spec = corpus::hamming({8, 4, 2, 2});
  const auto a = neps_adjacency(spec);
  const auto h = expm_series(a, 2.0 * std::numbers::pi);
  CHECK(unitarity_residual(h) <= 1e-8);
  CHECK(symmetry_residual(h) <= 1e-8);
}

TEST_CASE("series without scaling runs out of terms") {
  OracleConfig cfg;
  cfg.scaling_threshold = 1e12;  // defeats scaling on purpose
  cfg.max_terms = 16;
  const auto a = neps_adjacency(corpus::hamming({4, 2, 2}));
  CHECK_THROWS_AS(expm_series(a, 50.0, cfg), computation_error);
  cfg.max_terms = 4;
  CHECK_THROWS_AS(expm_series(a, 1.0, cfg), std::invalid_argument);
}

TEST_CASE("certify agrees with the analytic path") {
  const NepsSpec q3 = corpus::hamming({2, 2, 2});
  const auto result =
      certify(q3, RationalAngle(1, 2), transition(q3, RationalAngle(1, 2)), 1e-6);
  CHECK(result.pass);
  CHECK(result.deviation <= 1e-10);

  const NepsSpec k5 = corpus::complete_graph(5);
  const auto k5_result =
      certify(k5, RationalAngle(2, 5), transition(k5, RationalAngle(2, 5)), 1e-8);
  CHECK(k5_result.pass);

  const NepsSpec big = corpus::example_k4_cube5();
  const auto big_result =
      certify(big, RationalAngle(1, 4), transition(big, RationalAngle(1, 4)), 1e-6);
  CHECK(big_result.pass);
}

TEST_CASE("certify flags a corrupted matrix") {
  const NepsSpec q3 = corpus::hamming({2, 2, 2});
  auto h = transition(q3, RationalAngle(1, 2));
  h(0, 1) += 1e-3;
  const auto result = certify(q3, RationalAngle(1, 2), h, 1e-6);
  CHECK(!result.pass);
  CHECK(result.deviation >= 1e-4);
}
