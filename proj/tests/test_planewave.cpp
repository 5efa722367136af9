#include "doctest.h"
#include "ym/identities.hpp"
#include "ym/planewave.hpp"
#include "ym/ym.hpp"

using namespace ym;

namespace {

using PW = PlaneWaveField;

PW single(const Algebra& alg, double tau, double x1, double x2, const Matrix& c) {
  return PW(alg.n(), {Mode{tau, x1, x2, c}});
}

PW scalar(double tau, double x1, double x2, cplx c) {
  Matrix m(1, 1);
  m(0, 0) = c;
  return PW(1, {Mode{tau, x1, x2, m}});
}

PW boxOf(const PW& u) {
  return -1.0 * pwDerivative(pwDerivative(u, PwIndex::T), PwIndex::T) + pwDerivative(pwDerivative(u, PwIndex::X1), PwIndex::X1) +
         pwDerivative(pwDerivative(u, PwIndex::X2), PwIndex::X2);
}

std::array<PW, 3> ym4Residual(const std::array<PW, 3>& A) {
  std::array<PW, 3> Ad;
  for (int b = 0; b < 3; ++b) Ad[b] = pwDerivative(A[b], PwIndex::T);
  const auto rhs = ym4Rhs(A, Ad);
  return {boxOf(A[0]) - rhs[0], boxOf(A[1]) - rhs[1], boxOf(A[2]) - rhs[2]};
}

}  // namespace

TEST_CASE("pwProduct") {
  auto alg = makeAlgebra(AlgebraSpec::parse("su2"));
  const Matrix c = alg->toMatrix(alg->randomElement(1, 1.0));
  const PW u = single(*alg, 1.0, 0.5, -1.0, c);
  CHECK(pwProduct(u, u, ProductKind::Bracket).empty());

  const PW a = scalar(1, 1, 0, 2.0), b = scalar(2, 0, 1, cplx(0, 3));
  const PW ab = pwProduct(a, b, ProductKind::MatrixProduct);
  REQUIRE(ab.size() == 1);
  CHECK(ab.modes()[0].tau == 3);
  CHECK(ab.modes()[0].xi1 == 1);
  CHECK(ab.modes()[0].xi2 == 1);
  CHECK(std::abs(ab.modes()[0].coeff(0, 0) - cplx(0, 6)) < 1e-15);

  auto so2 = makeAlgebra(AlgebraSpec::parse("so2"));
  const PW s1 = pwRandom(*so2, 3, 4), s2 = pwRandom(*so2, 3, 5);
  // one-dimensional coefficients commute
  CHECK(pwResidualNorm(pwProduct(s1, s2, ProductKind::MatrixProduct) - pwProduct(s2, s1, ProductKind::MatrixProduct)) <
        1e-14);

  // self-bracket sums cancel pairwise
  const PW big = pwRandom(*alg, 40, 9), other = pwRandom(*alg, 40, 10);
  CHECK(pwProduct(big, big, ProductKind::Bracket).empty());
  const PW capped(alg->n(), std::vector<Mode>(big.modes()), 100);
  CHECK_THROWS_AS(pwProduct(capped, other, ProductKind::Bracket), std::length_error);
}

TEST_CASE("pwDerivative") {
  auto alg = makeAlgebra(AlgebraSpec::parse("su2"));
  const Matrix c = alg->toMatrix(alg->randomElement(2, 1.0));
  CHECK(pwDerivative(single(*alg, 0, 0, 0, c), PwIndex::T).empty());
  CHECK(pwDerivative(single(*alg, 0, 0, 0, c), PwIndex::X1).empty());
  const PW d = pwDerivative(single(*alg, 2, 3, 0, c), PwIndex::T);
  CHECK((d.modes()[0].coeff - cplx(0, 2) * c).norm() < 1e-15);
  const PW u = pwRandom(*alg, 4, 3);
  CHECK(pwResidualNorm(pwDerivative(pwDerivative(u, PwIndex::X1), PwIndex::X2) -
                       pwDerivative(pwDerivative(u, PwIndex::X2), PwIndex::X1)) < 1e-14);
}

TEST_CASE("pwMultiplier") {
  auto alg = makeAlgebra(AlgebraSpec::parse("su2"));
  const Matrix c = alg->toMatrix(alg->randomElement(3, 1.0));
  const PW zero = single(*alg, 1, 0, 0, c);
  CHECK(pwResidualNorm(pwMultiplier(zero, Symbol::LambdaPow(0.7)) - zero) == 0.0);
  const PW r = pwMultiplier(single(*alg, 1, 1, 0, c), Symbol::Riesz(1));
  CHECK((r.modes()[0].coeff - cplx(0, 1 / std::sqrt(2.0)) * c).norm() < 1e-15);
  CHECK(pwMultiplier(zero, Symbol::DPow(-1)).empty());
  const PW u = pwRandom(*alg, 5, 4);
  std::vector<Mode> keep;
  for (const auto& m : u.modes())
    if (m.xi1 != 0 || m.xi2 != 0) keep.push_back(m);
  const PW nz(alg->n(), keep);
  CHECK(pwResidualNorm(pwMultiplier(pwMultiplier(nz, Symbol::DPow(-1)), Symbol::DPow(1)) - nz) < 1e-14);
}

TEST_CASE("pwLorenzCompatible") {
  auto alg = makeAlgebra(AlgebraSpec::parse("so3"));
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const auto A = pwLorenzCompatible(*alg, 3, seed);
    for (const auto& m : A[0].modes()) CHECK(m.tau != 0);
    const PW lorenz = pwDerivative(A[0], PwIndex::T) - pwDerivative(A[1], PwIndex::X1) - pwDerivative(A[2], PwIndex::X2);
    CHECK(pwResidualNorm(lorenz) <= 1e-14);
  }
  CHECK_THROWS_AS(pwLorenzCompatible(*alg, 0, 1), std::invalid_argument);
}

TEST_CASE("pwResidualNorm") {
  auto alg = makeAlgebra(AlgebraSpec::parse("su2"));
  CHECK(pwResidualNorm(PW(2)) == 0.0);
  const Matrix e = alg->basis(0);
  CHECK(pwResidualNorm(single(*alg, 1, 1, 1, e)) == doctest::Approx(e.norm()));
  for (std::uint64_t s = 0; s < 10; ++s) {
    const PW a = pwRandom(*alg, 3, 2 * s), b = pwRandom(*alg, 3, 2 * s + 1);
    CHECK(pwResidualNorm(a + b) <= pwResidualNorm(a) + pwResidualNorm(b) + 1e-15);
  }
}

TEST_CASE("identity suite on plane waves") {
  for (auto name : {"su2", "so3"})
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
      auto alg = makeAlgebra(AlgebraSpec::parse(name));
      for (const auto& r : planeWaveIdentities(*alg, seed)) {
        INFO(name << " seed " << seed << " " << r.name);
        CHECK(r.residual <= 1e-10);
      }
    }
}

TEST_CASE("scaling of the expanded residual") {
  auto alg = makeAlgebra(AlgebraSpec::parse("su2"));
  const auto A = pwLorenzCompatible(*alg, 2, 17);
  const auto R = ym4Residual(A);
  for (double lam : {2.0, 0.5}) {
    const auto Rl = ym4Residual({pwRescale(A[0], lam, lam), pwRescale(A[1], lam, lam), pwRescale(A[2], lam, lam)});
    for (int b = 0; b < 3; ++b) CHECK(pwResidualNorm(Rl[b] - pwRescale(R[b], lam, lam * lam * lam)) <= 1e-10);
  }
}
