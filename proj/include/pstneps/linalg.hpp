#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace pstneps {

using cplx = std::complex<double>;

// Dense square complex matrix in row-major order. Constructors reject
// non-finite entries; matrix comparisons are always tolerance-based
// (max_norm_diff), never exact operator==.
class ComplexMatrix {
 public:
  explicit ComplexMatrix(std::size_t dim);
  ComplexMatrix(std::size_t dim, std::vector<cplx> entries);

  static ComplexMatrix identity(std::size_t dim);

  std::size_t dim() const { return dim_; }

  cplx& operator()(std::size_t i, std::size_t j) { return entries_[i * dim_ + j]; }
  const cplx& operator()(std::size_t i, std::size_t j) const {
    return entries_[i * dim_ + j];
  }

  std::span<cplx> row(std::size_t i) { return {entries_.data() + i * dim_, dim_}; }
  std::span<const cplx> row(std::size_t i) const {
    return {entries_.data() + i * dim_, dim_};
  }

 private:
  std::size_t dim_;
  std::vector<cplx> entries_;
};

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix add(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix scale(const ComplexMatrix& a, cplx factor);
ComplexMatrix transpose(const ComplexMatrix& a);
ComplexMatrix conj_transpose(const ComplexMatrix& a);

// max_{i,j} |a(i,j) - b(i,j)|
double max_norm_diff(const ComplexMatrix& a, const ComplexMatrix& b);
double max_abs(const ComplexMatrix& a);
// maximum absolute column sum
double one_norm(const ComplexMatrix& a);
cplx trace(const ComplexMatrix& a);

// true iff max_norm_diff(m·mᴴ, I) ≤ tol
bool is_unitary(const ComplexMatrix& m, double tol);
// residual of m against its plain (unconjugated) transpose
double symmetry_residual(const ComplexMatrix& m);
// residual of m·mᴴ against I
double unitarity_residual(const ComplexMatrix& m);

}  // namespace pstneps
