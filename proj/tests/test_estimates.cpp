#include "doctest.h"
#include "ym/estimates.hpp"

#include <cmath>
#include <random>

using namespace ym;

namespace {

double norm(const Vec2& v) { return std::hypot(v[0], v[1]); }

SampleConfig small(long count, double r = 2) {
  SampleConfig c;
  c.count = count;
  c.rExponent = r;
  return c;
}

}  // namespace

TEST_CASE("cone distances") {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> d(-5, 5);
  for (int i = 0; i < 1000; ++i) {
    const Vec2 xi{d(rng), d(rng)}, eta{d(rng), d(rng)}, rest{xi[0] - eta[0], xi[1] - eta[1]};
    const double bp = norm(eta) + norm(rest) - norm(xi), bm = norm(xi) - std::abs(norm(eta) - norm(rest));
    REQUIRE(bPlus(xi, eta) == doctest::Approx(bp).epsilon(1e-9).scale(1e-12));
    REQUIRE(bMinus(xi, eta) == doctest::Approx(bm).epsilon(1e-9).scale(1e-12));
    REQUIRE(bPlus(xi, eta) >= 0);
    REQUIRE(bMinus(xi, eta) >= 0);
  }
  // eta on the segment [0, xi] displaced by h: b_+ ~ h^2/(2|eta|) + h^2/(2|xi-eta|)
  CHECK(bPlus({1, 0}, {0.5, 1e-9}) == doctest::Approx(2e-18).epsilon(1e-6));
  CHECK(bPlus({1, 0}, {0.25, 0}) == 0.0);
  // eta beyond xi on the same ray displaced by h: b_- ~ h^2/4
  CHECK(bMinus({1, 0}, {2, 1e-9}) == doctest::Approx(2.5e-19).epsilon(1e-6));
}

TEST_CASE("delta integrals against independent quadrature") {
  const Vec2 e1{1, 0};
  CHECK(deltaIntegralEllipse(3, e1, 0, 0) == doctest::Approx(4.720563121793265).epsilon(1e-12));
  CHECK(deltaIntegralEllipse(3, e1, 1.3, 0.4) == doctest::Approx(2.5464839938022807).epsilon(1e-12));
  CHECK(deltaIntegralEllipse(1.7, {1.2, 0}, 1.55, 0.55) == doctest::Approx(6.364129079650111).epsilon(1e-12));
  CHECK(deltaIntegralHyperbola(-0.3, {2, 0}, 2, 0.5) == doctest::Approx(2.9561244157336292).epsilon(1e-10));
  CHECK(deltaIntegralHyperbola(0, e1, 1.5, 1.5) == doctest::Approx(2 * M_PI).epsilon(1e-10));

  // a = b = 0: length of the ellipse weighted by the Jacobian, (2 pi A^2 - pi c^2) / (2 B)
  const double tau = 3, A = tau / 2, B = std::sqrt(tau * tau - 1) / 2, c = 0.5;
  CHECK(deltaIntegralEllipse(tau, e1, 0, 0) == doctest::Approx((2 * M_PI * A * A - M_PI * c * c) / (2 * B)));
  // rotation invariance and symmetry in (a, b)
  CHECK(deltaIntegralEllipse(3, {0.6, 0.8}, 1.3, 0.4) == doctest::Approx(deltaIntegralEllipse(3, e1, 1.3, 0.4)));
  CHECK(deltaIntegralEllipse(3, e1, 0.4, 1.3) == doctest::Approx(deltaIntegralEllipse(3, e1, 1.3, 0.4)));

  CHECK_THROWS_AS(deltaIntegralEllipse(0.5, e1, 0, 0), std::invalid_argument);
  CHECK_THROWS_AS(deltaIntegralHyperbola(1.5, e1, 2, 1), std::invalid_argument);
  CHECK_THROWS_AS(deltaIntegralHyperbola(0.5, e1, 1, 0.5), std::invalid_argument);
}

TEST_CASE("lemma quantity") {
  const double r = 1.1;
  const double expected = std::sqrt(1.2) * std::sqrt(0.5) * std::pow(6.364129079650111, 1 / r);
  CHECK(lemmaQuantityI(1.7, {1.2, 0}, r) == doctest::Approx(expected).epsilon(1e-11));
  CHECK_THROWS_AS(lemmaQuantitySweep(r, 1, 3), std::invalid_argument);
  // I depends on |xi|/tau only and increases towards the degenerate limit |xi| -> tau, where
  // I -> (2^(r/2) sqrt(pi) Gamma((r-1)/2) / Gamma(r/2))^(1/r)
  for (double rr : {1.1, 1.5, 2.0}) {
    INFO("r = " << rr);
    const double limit = std::pow(std::pow(2, rr / 2) * std::sqrt(M_PI) * std::tgamma((rr - 1) / 2) / std::tgamma(rr / 2), 1 / rr);
    CHECK(lemmaQuantityI(2.0, {1.2, 0}, rr) == doctest::Approx(lemmaQuantityI(5.0, {3.0, 0}, rr)).epsilon(1e-8));
    const SweepReport s = lemmaQuantitySweep(rr, 8, 6);
    CHECK(s.points == 48);
    CHECK(s.supI > 0);
    CHECK(s.supI <= limit);
    CHECK(lemmaQuantityI(1.0, {0.5, 0}, rr) < lemmaQuantityI(1.0, {0.9, 0}, rr));
  }
  CHECK(lemmaQuantityI(1.0, {1 - 1e-6, 0}, 2.0) == doctest::Approx(std::sqrt(2 * M_PI)).epsilon(1e-2));
}

TEST_CASE("symbol bounds on small samples") {
  const BoundReport g = checkGamma1Symbol(small(20000));
  CHECK(g.samples == 20000);
  CHECK(g.pass);
  CHECK(g.supRatio <= g.threshold);
  for (FKCase c : {FKCase::EllipticQ12, FKCase::HyperbolicQ12, FKCase::EllipticQ0j, FKCase::EllipticQ0,
                   FKCase::HyperbolicQ0}) {
    INFO(fkCaseName(c));
    CHECK(parseFKCase(fkCaseName(c)) == c);
    const BoundReport r = checkFKSymbolBounds(c, small(20000));
    CHECK(r.pass);
    CHECK(r.samples == 20000);
    CHECK(r.skipped < r.samples / 4);
  }
  CHECK_THROWS_AS(parseFKCase("parabolic"), std::invalid_argument);
  CHECK_FALSE(fkRatio(FKCase::EllipticQ12, {2, 0}, {1, 0}).has_value());
  CHECK(checkAngleEstimate(small(20000), 0.5, 0.5, 0.5).pass);
  CHECK_THROWS_AS(checkAngleEstimate(small(10), 0.6, 0, 0), std::invalid_argument);
  CHECK(checkHyperbolicLeibniz(small(20000)).pass);
}

TEST_CASE("pointwise ratios") {
  // on-cone inputs with matching sign give a zero hyperbolic numerator
  const Vec2 xi{3, 4}, eta{1, 1};
  CHECK(hlrRatio(5, std::sqrt(2.0), xi, eta) == 0.0);
  CHECK(hlrRatio(6, 1, xi, eta) > 0);
  CHECK(std::isfinite(gamma1Ratio({1, 0}, 1, {0, 1}, -1)));
  // the angle between a vector and itself is zero
  CHECK(angleRatio(1, 1, {1, 0}, {1, 0}, 1, 1, 0.5, 0.5, 0.5) == 0.0);
}

TEST_CASE("sample configuration") {
  CHECK_NOTHROW(small(1).validate());
  CHECK_THROWS_AS(small(0).validate(), std::invalid_argument);
  CHECK_THROWS_AS(small(10, 1.0).validate(), std::invalid_argument);
  SampleConfig c = small(10);
  c.rMin = c.rMax;
  CHECK_THROWS_AS(c.validate(), std::invalid_argument);
}

TEST_CASE("empirical bilinear constants") {
  const auto ids = supportedEstimates();
  CHECK(ids == std::vector<int>{21, 22, 23, 24, 25, 35, 36, 37});
  BilinearConfig cfg;
  cfg.trials = 2;
  CHECK_THROWS_AS(empiricalBilinearConstant(30, 16, cfg), std::invalid_argument);
  const BoundReport a = empiricalBilinearConstant(21, 16, cfg), b = empiricalBilinearConstant(21, 16, cfg);
  CHECK(a.supRatio > 0);
  CHECK(a.supRatio == b.supRatio);
  const BoundReport g = bilinearGrowth(24, 16, cfg);
  CHECK(g.threshold == 2.0);
  CHECK(g.pass == (g.supRatio <= 2.0));
  CHECK(g.pass);

  BilinearConfig comm = cfg;
  comm.commutator = true;
  CHECK_THROWS_AS(empiricalBilinearConstant(21, 16, comm), std::invalid_argument);
  comm.alg = makeAlgebra(AlgebraSpec::parse("su2"));
  CHECK(empiricalBilinearConstant(21, 16, comm).supRatio > 0);
  comm.aligned = true;
  // brackets of aligned inputs vanish
  CHECK(empiricalBilinearConstant(21, 16, comm).supRatio <= 1e-12);
}
