#include "doctest.h"
#include "ym/nullforms.hpp"
#include "ym/planewave.hpp"

#include <random>

using namespace ym;

namespace {

using PW = PlaneWaveField;
using K = NullFormKind;

SpacetimePair<PW> scalarWave(double tau, double x1, double x2, cplx c) {
  Matrix m(1, 1);
  m(0, 0) = c;
  PW u(1, {Mode{tau, x1, x2, m}});
  return pairOf(u, pwDerivative(u, PwIndex::T));
}

cplx soleCoeff(const PW& u) {
  REQUIRE(u.size() == 1);
  return u.modes()[0].coeff(0, 0);
}

}  // namespace

TEST_CASE("symbols agree with the null forms on scalar plane waves") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> d(-3, 3);
  for (int trial = 0; trial < 200; ++trial) {
    const double tau = d(rng), lam = d(rng);
    const std::array<double, 2> xi{d(rng), d(rng)}, eta{d(rng), d(rng)};
    const auto u = scalarWave(tau, xi[0], xi[1], cplx(1.5, -0.5));
    const auto v = scalarWave(lam, eta[0], eta[1], cplx(-0.25, 2));
    const cplx cc = cplx(1.5, -0.5) * cplx(-0.25, 2);
    for (K k : {K::Q0, K::Q01, K::Q02, K::Q12, K::q0, K::q01, K::q02}) {
      INFO(kindName(k));
      const cplx got = soleCoeff(nullForm(k, u, v, false));
      CHECK(std::abs(got - symbolEval(k, xi, tau, eta, lam) * cc) <= 1e-12 * (1 + std::abs(got)));
    }
    // sine convention for q12
    const cplx q12 = soleCoeff(nullForm(K::q12, u, v, false));
    CHECK(std::abs(q12 + symbolEval(K::q12, xi, tau, eta, lam) * cc) <= 1e-12 * (1 + std::abs(q12)));
    const cplx g1 = soleCoeff(gamma1(u, v, false));
    CHECK(std::abs(g1 - symbolEval(K::Gamma1, xi, tau, eta, lam) * cc) <= 1e-12 * (1 + std::abs(g1)));
  }
}

TEST_CASE("null forms vanish on parallel null waves") {
  const std::array<double, 2> xi{0.6, 0.8}, eta{1.5, 2.0};
  const double tau = 1.0, lam = 2.5;
  for (K k : {K::Q0, K::Q01, K::Q02, K::Q12}) CHECK(std::abs(symbolEval(k, xi, tau, eta, lam)) <= 1e-15);
  CHECK(symbolEval(K::Q0, xi, tau, eta, -lam).real() == doctest::Approx(-2 * tau * lam));
  CHECK(symbolEval(K::Q12, {1, 0}, 0, {0, 1}, 0).real() == -1.0);
  CHECK(symbolEval(K::q12, {2, 0}, 0, {0, 3}, 0).real() == 1.0);
  CHECK_THROWS_AS(symbolEval(K::q0, {0, 0}, 1, {1, 0}, 1), std::invalid_argument);
  CHECK_THROWS_AS(symbolEval(K::CalligraphicQ, xi, tau, eta, lam), std::invalid_argument);
}

TEST_CASE("bracket symbols and angles") {
  using B = BracketSymbolKind;
  const std::array<double, 2> xi{1.2, -0.7}, eta{0.3, 2.2};
  CHECK(bracketSymbol(B::q0, xi, xi) == doctest::Approx(1.0));
  CHECK(bracketSymbol(B::q0, {0, 0}, {0, 0}) == 1.0);
  CHECK(bracketSymbol(B::q01, xi, xi) == doctest::Approx(0.0));
  CHECK(bracketSymbol(B::q12, xi, eta) == doctest::Approx(-bracketSymbol(B::q12, eta, xi)));
  CHECK(bracketSymbol(B::q12, {1, 0}, {0, 1}) == -1.0);
  CHECK(bracketSymbol(B::q0, xi, eta) > 0);
  CHECK(sinAngle({1, 0}, {0, 2}) == 1.0);
  CHECK(sinAngle({1, 1}, {-2, -2}) == 0.0);
  CHECK(sinAngle({0, 0}, {1, 0}) == 0.0);
  CHECK(sinAngle({1, 0}, {1, 1}) == doctest::Approx(std::sqrt(0.5)));
}

TEST_CASE("commutator null forms") {
  auto alg = makeAlgebra(AlgebraSpec::parse("su2"));
  const PW u = pwRandom(*alg, 3, 5), v = pwRandom(*alg, 3, 6);
  const auto U = pairOf(u, pwDerivative(u, PwIndex::T)), V = pairOf(v, pwDerivative(v, PwIndex::T));
  CHECK(pwResidualNorm(nullForm(K::Q0, U, U, true)) <= 1e-13);
  for (K k : {K::Q0, K::Q01, K::Q12}) {
    INFO(kindName(k));
    // commutator Q0 is antisymmetric, Q_ab symmetric
    const double sign = k == K::Q0 ? -1.0 : 1.0;
    CHECK(pwResidualNorm(nullForm(k, U, V, true) - sign * nullForm(k, V, U, true)) <= 1e-13);
  }
  CHECK(pwResidualNorm(Q0i(1, U, V) - nullForm(K::Q01, U, V, true)) == 0.0);
  const SpacetimePair<PW> noDt{u, std::nullopt};
  CHECK_THROWS_AS(nullForm(K::Q01, noDt, V, true), std::invalid_argument);
  CHECK_NOTHROW(nullForm(K::Q12, noDt, noDt, true));
  CHECK_THROWS_AS(nullForm(K::CalligraphicQ, U, V, true), std::invalid_argument);
}

TEST_CASE("kind names") {
  CHECK(kindName(K::Q0) == "Q0");
  CHECK(kindName(K::q12) == "q12");
  CHECK(kindName(K::Gamma1) != kindName(K::CalligraphicQ));
}
