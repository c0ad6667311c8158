#include "photondm/tensor.hpp"

#include <algorithm>
#include <cmath>

#include "photondm/errors.hpp"

namespace photondm {

ComplexMatrix identity(std::size_t n) {
  ComplexMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1.0;
  return m;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows == 0 || a.cols == 0 || b.rows == 0 || b.cols == 0) {
    throw contract_violation("kron: operands must be non-empty");
  }
  ComplexMatrix out(a.rows * b.rows, a.cols * b.cols);
  for (std::size_t i1 = 0; i1 < a.rows; ++i1) {
    for (std::size_t j1 = 0; j1 < a.cols; ++j1) {
      const Complex f = a.at(i1, j1);
      if (f == Complex{}) continue;
      for (std::size_t i2 = 0; i2 < b.rows; ++i2) {
        for (std::size_t j2 = 0; j2 < b.cols; ++j2) {
          out.at(i1 * b.rows + i2, j1 * b.cols + j2) = f * b.at(i2, j2);
        }
      }
    }
  }
  return out;
}

ComplexVector kron(const ComplexVector& a, const ComplexVector& b) {
  if (a.empty() || b.empty()) {
    throw contract_violation("kron: operands must be non-empty");
  }
  ComplexVector out(a.size() * b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) {
      out[i * b.size() + j] = a[i] * b[j];
    }
  }
  return out;
}

ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols != b.rows) {
    throw contract_violation("matmul: inner dimensions disagree");
  }
  ComplexMatrix out(a.rows, b.cols);
  for (std::size_t i = 0; i < a.rows; ++i) {
    for (std::size_t k = 0; k < a.cols; ++k) {
      const Complex f = a.at(i, k);
      if (f == Complex{}) continue;
      for (std::size_t j = 0; j < b.cols; ++j) {
        out.at(i, j) += f * b.at(k, j);
      }
    }
  }
  return out;
}

ComplexVector matvec(const ComplexMatrix& m, const ComplexVector& v) {
  if (m.cols != v.size()) {
    throw contract_violation("matvec: dimension mismatch");
  }
  ComplexVector out(m.rows);
  for (std::size_t i = 0; i < m.rows; ++i) {
    Complex acc = 0.0;
    for (std::size_t j = 0; j < m.cols; ++j) {
      acc += m.at(i, j) * v[j];
    }
    out[i] = acc;
  }
  return out;
}

ComplexMatrix dagger(const ComplexMatrix& m) {
  ComplexMatrix out(m.cols, m.rows);
  for (std::size_t i = 0; i < m.rows; ++i) {
    for (std::size_t j = 0; j < m.cols; ++j) {
      out.at(j, i) = std::conj(m.at(i, j));
    }
  }
  return out;
}

bool is_unitary(const ComplexMatrix& m, double tol) {
  if (m.rows != m.cols) {
    throw contract_violation("is_unitary: matrix must be square");
  }
  const ComplexMatrix product = matmul(m, dagger(m));
  double worst = 0.0;
  for (std::size_t i = 0; i < product.rows; ++i) {
    for (std::size_t j = 0; j < product.cols; ++j) {
      const Complex expected = (i == j) ? Complex{1.0} : Complex{};
      worst = std::max(worst, std::abs(product.at(i, j) - expected));
    }
  }
  return worst <= tol;
}

double squared_norm(const ComplexVector& v) {
  double acc = 0.0;
  for (const Complex& z : v) acc += std::norm(z);
  return acc;
}

}  // namespace photondm
