#include "doctest.h"
#include "ym/algebra.hpp"

#include <complex>

using namespace ym;
using C = std::complex<double>;

namespace {

Matrix pauli(int a) {
  Matrix s(2, 2);
  if (a == 1) s << 0, 1, 1, 0;
  if (a == 2) s << 0, C(0, -1), C(0, 1), 0;
  if (a == 3) s << 1, 0, 0, -1;
  return s;
}

Matrix su2Half(int a) { return C(0, -0.5) * pauli(a); }

}  // namespace

TEST_CASE("dimensions and orthonormal basis") {
  for (auto [name, dim] : {std::pair{"su2", 3}, {"su3", 8}, {"su4", 15}, {"so2", 1}, {"so3", 3}, {"so4", 6}}) {
    auto alg = makeAlgebra(AlgebraSpec::parse(name));
    CHECK(alg->dim() == dim);
    for (int a = 0; a < dim; ++a) {
      const Matrix& E = alg->basis(a);
      CHECK(std::abs(E.trace()) < 1e-14);
      CHECK((E + E.adjoint()).norm() < 1e-14);
      for (int b = 0; b < dim; ++b) CHECK(innerProduct(E, alg->basis(b)) == doctest::Approx(a == b ? 1.0 : 0.0));
    }
  }
  CHECK_THROWS_AS(AlgebraSpec::parse("sp2"), std::invalid_argument);
  CHECK_THROWS_AS(AlgebraSpec::parse("su9"), std::invalid_argument);
}

TEST_CASE("structure constants: antisymmetry and Jacobi") {
  for (auto name : {"su2", "su3", "so3", "so4"}) {
    auto alg = makeAlgebra(AlgebraSpec::parse(name));
    const int d = alg->dim();
    for (int a = 0; a < d; ++a)
      for (int b = 0; b < d; ++b)
        for (int c = 0; c < d; ++c) {
          CHECK(std::abs(alg->f(a, b, c) + alg->f(b, a, c)) <= 1e-14);
          for (int e = 0; e < d; ++e) {
            double j = 0;
            for (int m = 0; m < d; ++m)
              j += alg->f(a, b, m) * alg->f(m, c, e) + alg->f(b, c, m) * alg->f(m, a, e) +
                   alg->f(c, a, m) * alg->f(m, b, e);
            CHECK(std::abs(j) <= 1e-12);
          }
        }
  }
}

TEST_CASE("bracket examples") {
  auto alg = makeAlgebra(AlgebraSpec::parse("su2"));
  const LieElement X = alg->randomElement(3, 1.0);
  CHECK(alg->bracket(X, X).coeffs.norm() < 1e-15);
  CHECK(alg->bracket(X, alg->zero()).coeffs.norm() == 0.0);
  // with e_a = -(i/2) sigma_a: [e1, e2] = e3
  const LieElement e1 = alg->fromMatrix(su2Half(1)), e2 = alg->fromMatrix(su2Half(2));
  CHECK((alg->toMatrix(alg->bracket(e1, e2)) - su2Half(3)).norm() < 1e-14);
  const LieElement bad{Eigen::VectorXd::Zero(5)};
  CHECK_THROWS_AS(alg->bracket(X, bad), std::invalid_argument);
}

TEST_CASE("bracket agrees with the matrix commutator on random pairs") {
  for (auto name : {"su2", "su3", "so3", "so4"}) {
    auto alg = makeAlgebra(AlgebraSpec::parse(name));
    for (std::uint64_t s = 0; s < 1000; ++s) {
      const LieElement X = alg->randomElement(2 * s, 1.0), Y = alg->randomElement(2 * s + 1, 1.0);
      const Matrix x = alg->toMatrix(X), y = alg->toMatrix(Y), xy = x * y - y * x;
      const Matrix br = alg->toMatrix(alg->bracket(X, Y));
      REQUIRE((br - xy).norm() <= 1e-12);
      REQUIRE(std::abs(xy.trace()) <= 1e-12);
      REQUIRE((xy + xy.adjoint()).norm() <= 1e-12);
    }
  }
}

TEST_CASE("randomElement") {
  auto alg = makeAlgebra(AlgebraSpec::parse("su2"));
  CHECK(alg->randomElement(5, 0.0).coeffs.norm() == 0.0);
  CHECK(alg->randomElement(11, 1.0).coeffs == alg->randomElement(11, 1.0).coeffs);
  const LieElement x = alg->randomElement(7, 1.0);
  CHECK(x.coeffs.size() == 3);
  CHECK(x.coeffs.cwiseAbs().maxCoeff() <= 1.0);
  CHECK_THROWS_AS(alg->randomElement(1, -1.0), std::invalid_argument);
}

TEST_CASE("groupExp") {
  for (auto name : {"su2", "su3", "so3"}) {
    auto alg = makeAlgebra(AlgebraSpec::parse(name));
    const int n = alg->n();
    CHECK((alg->groupExp(alg->zero()) - Matrix::Identity(n, n)).norm() < 1e-15);
    for (std::uint64_t s = 0; s < 20; ++s) {
      const Matrix U = alg->groupExp(alg->randomElement(s, 2.0));
      CHECK((U * U.adjoint() - Matrix::Identity(n, n)).norm() <= 1e-10);
      CHECK(std::abs(U.determinant() - 1.0) <= 1e-10);
    }
  }
  // exp(pi e3) = exp(-i pi sigma3 / 2) = diag(-i, i)
  auto alg = makeAlgebra(AlgebraSpec::parse("su2"));
  Matrix expected = Matrix::Zero(2, 2);
  expected(0, 0) = C(0, -1);
  expected(1, 1) = C(0, 1);
  CHECK((alg->groupExp(alg->fromMatrix(M_PI * su2Half(3))) - expected).norm() < 1e-13);
}
