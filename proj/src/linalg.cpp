#include "pstneps/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace pstneps {

namespace {

void check_dim(std::size_t dim) {
  if (dim == 0) throw std::invalid_argument("ComplexMatrix: dimension must be >= 1");
}

void check_finite(const std::vector<cplx>& entries) {
  for (const cplx& z : entries) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
      throw std::invalid_argument("ComplexMatrix: non-finite entry");
  }
}

void check_same_dim(const ComplexMatrix& a, const ComplexMatrix& b, const char* op) {
  if (a.dim() != b.dim())
    throw std::invalid_argument(std::string(op) + ": dimension mismatch (" +
                                std::to_string(a.dim()) + " vs " + std::to_string(b.dim()) +
                                ")");
}

}  // namespace

ComplexMatrix::ComplexMatrix(std::size_t dim) : dim_(dim), entries_(dim * dim, cplx{}) {
  check_dim(dim);
}

ComplexMatrix::ComplexMatrix(std::size_t dim, std::vector<cplx> entries)
    : dim_(dim), entries_(std::move(entries)) {
  check_dim(dim);
  if (entries_.size() != dim * dim)
    throw std::invalid_argument("ComplexMatrix: entry count does not match dimension");
  check_finite(entries_);
}

ComplexMatrix ComplexMatrix::identity(std::size_t dim) {
  ComplexMatrix m(dim);
  for (std::size_t i = 0; i < dim; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  const std::size_t da = a.dim(), db = b.dim();
  ComplexMatrix c(da * db);
  for (std::size_t i1 = 0; i1 < da; ++i1) {
    for (std::size_t j1 = 0; j1 < da; ++j1) {
      const cplx aij = a(i1, j1);
      if (aij == cplx{}) continue;
      for (std::size_t i2 = 0; i2 < db; ++i2) {
        auto brow = b.row(i2);
        auto crow = c.row(i1 * db + i2);
        for (std::size_t j2 = 0; j2 < db; ++j2) crow[j1 * db + j2] = aij * brow[j2];
      }
    }
  }
  return c;
}

ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b) {
  check_same_dim(a, b, "matmul");
  const std::size_t n = a.dim();
  ComplexMatrix c(n);
  for (std::size_t i = 0; i < n; ++i) {
    auto crow = c.row(i);
    for (std::size_t k = 0; k < n; ++k) {
      const cplx aik = a(i, k);
      if (aik == cplx{}) continue;
      const double ar = aik.real(), ai = aik.imag();
      auto brow = b.row(k);
      for (std::size_t j = 0; j < n; ++j) {
        const double br = brow[j].real(), bi = brow[j].imag();
        crow[j] += cplx(ar * br - ai * bi, ar * bi + ai * br);
      }
    }
  }
  return c;
}

ComplexMatrix add(const ComplexMatrix& a, const ComplexMatrix& b) {
  check_same_dim(a, b, "add");
  const std::size_t n = a.dim();
  ComplexMatrix c(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) c(i, j) = a(i, j) + b(i, j);
  return c;
}

ComplexMatrix scale(const ComplexMatrix& a, cplx factor) {
  const std::size_t n = a.dim();
  ComplexMatrix c(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) c(i, j) = factor * a(i, j);
  return c;
}

ComplexMatrix transpose(const ComplexMatrix& a) {
  const std::size_t n = a.dim();
  ComplexMatrix c(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) c(i, j) = a(j, i);
  return c;
}

ComplexMatrix conj_transpose(const ComplexMatrix& a) {
  const std::size_t n = a.dim();
  ComplexMatrix c(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) c(i, j) = std::conj(a(j, i));
  return c;
}

double max_norm_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  check_same_dim(a, b, "max_norm_diff");
  const std::size_t n = a.dim();
  double worst = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) worst = std::max(worst, std::abs(a(i, j) - b(i, j)));
  return worst;
}

double max_abs(const ComplexMatrix& a) {
  const std::size_t n = a.dim();
  double worst = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) worst = std::max(worst, std::abs(a(i, j)));
  return worst;
}

double one_norm(const ComplexMatrix& a) {
  const std::size_t n = a.dim();
  std::vector<double> col(n, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) col[j] += std::abs(a(i, j));
  return *std::max_element(col.begin(), col.end());
}

cplx trace(const ComplexMatrix& a) {
  cplx t{};
  for (std::size_t i = 0; i < a.dim(); ++i) t += a(i, i);
  return t;
}

double unitarity_residual(const ComplexMatrix& m) {
  return max_norm_diff(matmul(m, conj_transpose(m)), ComplexMatrix::identity(m.dim()));
}

bool is_unitary(const ComplexMatrix& m, double tol) {
  if (!(tol > 0)) throw std::invalid_argument("is_unitary: tol must be positive");
  return unitarity_residual(m) <= tol;
}

double symmetry_residual(const ComplexMatrix& m) {
  const std::size_t n = m.dim();
  double worst = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      worst = std::max(worst, std::abs(m(i, j) - m(j, i)));
  return worst;
}

}  // namespace pstneps
