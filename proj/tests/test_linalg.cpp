#include <doctest.h>

#include <cmath>
#include <complex>
#include <limits>
#include <random>
#include <stdexcept>
#include <vector>

#include "pstneps/linalg.hpp"

using namespace pstneps;

namespace {

ComplexMatrix swap2() {
  ComplexMatrix x(2);
  x(0, 1) = x(1, 0) = 1.0;
  return x;
}

ComplexMatrix complete_adjacency(std::size_t n) {
  ComplexMatrix a(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a(i, j) = (i == j) ? 0.0 : 1.0;
  return a;
}

ComplexMatrix random_matrix(std::size_t n, std::mt19937& rng) {
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  ComplexMatrix m(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = cplx(dist(rng), dist(rng));
  return m;
}

// independent reference: plain triple loop, ijk order
ComplexMatrix schoolbook_product(const ComplexMatrix& a, const ComplexMatrix& b) {
  const std::size_t n = a.dim();
  ComplexMatrix c(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      cplx acc{};
      for (std::size_t k = 0; k < n; ++k) acc += a(i, k) * b(k, j);
      c(i, j) = acc;
    }
  return c;
}

}  // namespace

TEST_CASE("kron identity blocks") {
  const auto i2 = ComplexMatrix::identity(2);
  CHECK(max_norm_diff(kron(i2, i2), ComplexMatrix::identity(4)) == 0.0);
}

TEST_CASE("kron of two swap matrices is the anti-diagonal") {
  const auto k = kron(swap2(), swap2());
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j)
      CHECK(k(i, j) == ((i + j == 3) ? cplx{1.0, 0.0} : cplx{}));
}

TEST_CASE("kron mixed-product law on random inputs") {
  std::mt19937 rng(7);
  for (int round = 0; round < 10; ++round) {
    const auto a = random_matrix(2, rng), c = random_matrix(2, rng);
    const auto b = random_matrix(3, rng), d = random_matrix(3, rng);
    CHECK(max_norm_diff(matmul(kron(a, b), kron(c, d)),
                        kron(matmul(a, c), matmul(b, d))) < 1e-12);
  }
}

TEST_CASE("kron associativity") {
  // exact on 0/1 inputs, which is how adjacency terms are assembled
  const auto x = swap2();
  const auto a3 = complete_adjacency(3);
  CHECK(max_norm_diff(kron(kron(x, a3), x), kron(x, kron(a3, x))) == 0.0);

  std::mt19937 rng(11);
  const auto a = random_matrix(2, rng), b = random_matrix(3, rng),
             c = random_matrix(2, rng);
  CHECK(max_norm_diff(kron(kron(a, b), c), kron(a, kron(b, c))) < 1e-15);
}

TEST_CASE("matmul identity and involution of the swap matrix") {
  std::mt19937 rng(3);
  const auto m = random_matrix(3, rng);
  CHECK(max_norm_diff(matmul(ComplexMatrix::identity(3), m), m) == 0.0);
  CHECK(max_norm_diff(matmul(swap2(), swap2()), ComplexMatrix::identity(2)) == 0.0);
}

TEST_CASE("matmul agrees with the schoolbook reference") {
  std::mt19937 rng(5);
  for (int round = 0; round < 20; ++round) {
    const auto a = random_matrix(3, rng), b = random_matrix(3, rng);
    CHECK(max_norm_diff(matmul(a, b), schoolbook_product(a, b)) < 1e-12);
  }
}

TEST_CASE("binary operations reject mismatched dimensions") {
  CHECK_THROWS_AS(matmul(ComplexMatrix::identity(2), ComplexMatrix::identity(3)),
                  std::invalid_argument);
  CHECK_THROWS_AS(add(ComplexMatrix::identity(2), ComplexMatrix::identity(3)),
                  std::invalid_argument);
  CHECK_THROWS_AS(max_norm_diff(ComplexMatrix::identity(2), ComplexMatrix::identity(3)),
                  std::invalid_argument);
}

TEST_CASE("entrywise helpers") {
  std::mt19937 rng(13);
  const auto m = random_matrix(4, rng);
  CHECK(max_norm_diff(m, m) == 0.0);
  CHECK(max_norm_diff(conj_transpose(conj_transpose(m)), m) == 0.0);
  CHECK(max_norm_diff(conj_transpose(complete_adjacency(4)), complete_adjacency(4)) ==
        0.0);
  CHECK(max_norm_diff(add(scale(m, -1.0), m), ComplexMatrix(4)) == 0.0);
  CHECK(std::abs(trace(ComplexMatrix::identity(5)) - cplx{5.0, 0.0}) == 0.0);
}

TEST_CASE("constructors reject non-finite entries") {
  std::vector<cplx> bad = {cplx{0.0, 0.0}, cplx{std::nan(""), 0.0}, cplx{0.0, 0.0},
                           cplx{0.0, 0.0}};
  CHECK_THROWS_AS(ComplexMatrix(2, std::move(bad)), std::invalid_argument);
  std::vector<cplx> inf = {cplx{1.0, 0.0}, cplx{0.0, 0.0},
                           cplx{0.0, std::numeric_limits<double>::infinity()},
                           cplx{0.0, 0.0}};
  CHECK_THROWS_AS(ComplexMatrix(2, std::move(inf)), std::invalid_argument);
  CHECK_THROWS_AS(ComplexMatrix(0), std::invalid_argument);
}

TEST_CASE("is_unitary") {
  CHECK(is_unitary(ComplexMatrix::identity(6), 1e-12));

  // (J-I)^2 = J + I, far from the identity
  CHECK(!is_unitary(complete_adjacency(3), 1e-9));

  // walk on the triangle at an arbitrary time, assembled from projectors
  const double t = 0.37;
  ComplexMatrix j3(3);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) j3(i, j) = 1.0 / 3.0;
  const auto e1 = add(ComplexMatrix::identity(3), scale(j3, -1.0));
  const auto h = add(scale(e1, std::polar(1.0, t)), scale(j3, std::polar(1.0, -2.0 * t)));
  CHECK(is_unitary(h, 1e-9));
  CHECK(symmetry_residual(h) < 1e-15);

  CHECK_THROWS_AS(is_unitary(ComplexMatrix::identity(2), 0.0), std::invalid_argument);
}

TEST_CASE("one_norm and max_abs") {
  ComplexMatrix m(2);
  m(0, 0) = cplx{3.0, 4.0};  // modulus 5
  m(1, 0) = cplx{0.0, 1.0};
  CHECK(one_norm(m) == doctest::Approx(6.0));
  CHECK(max_abs(m) == doctest::Approx(5.0));
}
