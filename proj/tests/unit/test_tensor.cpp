#include <cmath>
#include <complex>
#include <vector>

#include "doctest.h"
#include "photondm/errors.hpp"
#include "photondm/rng.hpp"
#include "photondm/tensor.hpp"

using namespace photondm;

namespace {

const Complex kI{0.0, 1.0};

ComplexMatrix random_matrix(Engine& rng, std::size_t rows, std::size_t cols) {
  ComplexMatrix m(rows, cols);
  for (Complex& e : m.entries) {
    e = {2.0 * uniform_unit(rng) - 1.0, 2.0 * uniform_unit(rng) - 1.0};
  }
  return m;
}

ComplexVector random_vector(Engine& rng, std::size_t n) {
  ComplexVector v(n);
  for (Complex& e : v) {
    e = {2.0 * uniform_unit(rng) - 1.0, 2.0 * uniform_unit(rng) - 1.0};
  }
  return v;
}

double max_entry_distance(const ComplexMatrix& a, const ComplexMatrix& b) {
  REQUIRE(a.rows == b.rows);
  REQUIRE(a.cols == b.cols);
  double worst = 0.0;
  for (std::size_t i = 0; i < a.entries.size(); ++i) {
    worst = std::max(worst, std::abs(a.entries[i] - b.entries[i]));
  }
  return worst;
}

}  // namespace

TEST_CASE("kron of basis vectors fills the expected slot") {
  const ComplexVector e0{1.0, 0.0};
  const ComplexVector e1{0.0, 1.0};
  const ComplexVector out = kron(e0, e1);
  REQUIRE(out.size() == 4);
  CHECK(out[0] == Complex{0.0});
  CHECK(out[1] == Complex{1.0});
  CHECK(out[2] == Complex{0.0});
  CHECK(out[3] == Complex{0.0});
}

TEST_CASE("kron of matrices produces scaled blocks") {
  ComplexMatrix swap(2, 2);
  swap.at(0, 1) = 1.0;
  swap.at(1, 0) = 1.0;
  ComplexMatrix b(2, 2);
  b.at(0, 0) = 1.0;
  b.at(0, 1) = 2.0;
  b.at(1, 0) = 3.0;
  b.at(1, 1) = 4.0;
  const ComplexMatrix out = kron(swap, b);
  REQUIRE(out.rows == 4);
  REQUIRE(out.cols == 4);
  // Upper-left block is zero, upper-right is b.
  CHECK(out.at(0, 0) == Complex{0.0});
  CHECK(out.at(0, 2) == Complex{1.0});
  CHECK(out.at(0, 3) == Complex{2.0});
  CHECK(out.at(1, 2) == Complex{3.0});
  CHECK(out.at(1, 3) == Complex{4.0});
  CHECK(out.at(2, 0) == Complex{1.0});
  CHECK(out.at(3, 1) == Complex{4.0});
  CHECK(out.at(2, 2) == Complex{0.0});
}

TEST_CASE("kron with identity embeds along the diagonal") {
  const ComplexMatrix out = kron(identity(2), identity(3));
  CHECK(max_entry_distance(out, identity(6)) == 0.0);
}

TEST_CASE("kron rejects empty operands") {
  CHECK_THROWS_AS(kron(ComplexMatrix{}, identity(2)), contract_violation);
  CHECK_THROWS_AS(kron(ComplexVector{}, ComplexVector{1.0}), contract_violation);
}

TEST_CASE("kron is associative") {
  Engine rng = make_engine(11);
  for (int trial = 0; trial < 20; ++trial) {
    const ComplexMatrix a = random_matrix(rng, 2, 3);
    const ComplexMatrix b = random_matrix(rng, 3, 2);
    const ComplexMatrix c = random_matrix(rng, 2, 2);
    const ComplexMatrix left = kron(kron(a, b), c);
    const ComplexMatrix right = kron(a, kron(b, c));
    CHECK(max_entry_distance(left, right) <= 1e-14);
  }
}

TEST_CASE("matvec applies a matrix to a vector") {
  ComplexMatrix m(2, 2);
  m.at(0, 0) = 1.0 / std::sqrt(2.0);
  m.at(0, 1) = kI / std::sqrt(2.0);
  m.at(1, 0) = kI / std::sqrt(2.0);
  m.at(1, 1) = 1.0 / std::sqrt(2.0);
  const ComplexVector out = matvec(m, {1.0, 0.0});
  CHECK(std::abs(out[0] - 1.0 / std::sqrt(2.0)) <= 1e-15);
  CHECK(std::abs(out[1] - kI / std::sqrt(2.0)) <= 1e-15);
}

TEST_CASE("matvec rejects mismatched dimensions") {
  CHECK_THROWS_AS(matvec(identity(3), ComplexVector{1.0, 0.0}), contract_violation);
}

TEST_CASE("matmul rejects mismatched inner dimensions") {
  CHECK_THROWS_AS(matmul(ComplexMatrix(2, 3), ComplexMatrix(2, 3)), contract_violation);
}

TEST_CASE("matvec is linear") {
  Engine rng = make_engine(12);
  for (int trial = 0; trial < 20; ++trial) {
    const ComplexMatrix m = random_matrix(rng, 4, 4);
    const ComplexVector x = random_vector(rng, 4);
    const ComplexVector y = random_vector(rng, 4);
    const Complex a{2.0 * uniform_unit(rng) - 1.0, 2.0 * uniform_unit(rng) - 1.0};
    const Complex b{2.0 * uniform_unit(rng) - 1.0, 2.0 * uniform_unit(rng) - 1.0};
    ComplexVector combined(4);
    for (std::size_t i = 0; i < 4; ++i) combined[i] = a * x[i] + b * y[i];
    const ComplexVector lhs = matvec(m, combined);
    const ComplexVector mx = matvec(m, x);
    const ComplexVector my = matvec(m, y);
    for (std::size_t i = 0; i < 4; ++i) {
      CHECK(std::abs(lhs[i] - (a * mx[i] + b * my[i])) <= 1e-13);
    }
  }
}

TEST_CASE("is_unitary accepts rotations and rejects scalings") {
  CHECK(is_unitary(identity(4)));
  ComplexMatrix rot(2, 2);
  const double c = std::cos(0.3), s = std::sin(0.3);
  rot.at(0, 0) = c;
  rot.at(0, 1) = -s;
  rot.at(1, 0) = s;
  rot.at(1, 1) = c;
  CHECK(is_unitary(rot));
  ComplexMatrix scaled = identity(2);
  scaled.at(0, 0) = 2.0;
  CHECK_FALSE(is_unitary(scaled));
  CHECK_THROWS_AS(is_unitary(ComplexMatrix(2, 3)), contract_violation);
}

TEST_CASE("unitary matrices preserve vector norms") {
  Engine rng = make_engine(13);
  ComplexMatrix rot(2, 2);
  const double c = std::cos(1.1), s = std::sin(1.1);
  rot.at(0, 0) = c * kI;
  rot.at(0, 1) = s;
  rot.at(1, 0) = s;
  rot.at(1, 1) = c * kI;
  REQUIRE(is_unitary(rot));
  const ComplexMatrix lifted = kron(rot, rot);
  for (int trial = 0; trial < 20; ++trial) {
    ComplexVector v = random_vector(rng, 4);
    const double scale = 1.0 / std::sqrt(squared_norm(v));
    for (Complex& e : v) e *= scale;
    CHECK(std::abs(squared_norm(matvec(lifted, v)) - 1.0) <= 1e-12);
  }
}

TEST_CASE("dagger conjugates and transposes") {
  ComplexMatrix m(2, 3);
  m.at(0, 2) = Complex{1.0, 2.0};
  m.at(1, 0) = kI;
  const ComplexMatrix d = dagger(m);
  REQUIRE(d.rows == 3);
  REQUIRE(d.cols == 2);
  CHECK(d.at(2, 0) == Complex{1.0, -2.0});
  CHECK(d.at(0, 1) == -kI);
}
