#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace photondm {

using Complex = std::complex<double>;
using ComplexVector = std::vector<Complex>;

// Dense row-major complex matrix. Every operator in this library is small
// (at most 4K x 4K for K decision arms), so a flat vector is all we need.
struct ComplexMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  ComplexVector entries;  // row-major, size rows * cols

  ComplexMatrix() = default;
  ComplexMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), entries(r * c) {}

  Complex& at(std::size_t r, std::size_t c) { return entries[r * cols + c]; }
  const Complex& at(std::size_t r, std::size_t c) const { return entries[r * cols + c]; }
};

// n x n identity.
ComplexMatrix identity(std::size_t n);

// Kronecker product; both operands must be non-empty.
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

// Kronecker product of column vectors; both operands must be non-empty.
ComplexVector kron(const ComplexVector& a, const ComplexVector& b);

// Matrix product; inner dimensions must agree.
ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b);

// Matrix-vector product; m.cols must equal v.size().
ComplexVector matvec(const ComplexMatrix& m, const ComplexVector& v);

// Conjugate transpose.
ComplexMatrix dagger(const ComplexMatrix& m);

// True when max |(m m^dagger - I)_ij| <= tol. Requires a square matrix.
bool is_unitary(const ComplexMatrix& m, double tol = 1e-12);

// Sum of |v_i|^2.
double squared_norm(const ComplexVector& v);

}  // namespace photondm
