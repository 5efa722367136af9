#include "doctest.h"
#include "ym/ym.hpp"

using namespace ym;

namespace {

// Lorenz-compatible grid state built from a random smooth potential
FieldState lorenzState(GridPtr g, AlgebraPtr alg, std::uint64_t seed, double scale, int kData = 2) {
  std::array<GridField, 3> a, ad;
  for (int b = 0; b < 3; ++b) {
    a[b] = smoothRandomField(g, alg, seed * 10 + b, scale, kData);
    ad[b] = smoothRandomField(g, alg, seed * 10 + 3 + b, scale, kData);
  }
  ad[0] = deriv(a[1], 1) + deriv(a[2], 2);
  return stateFromPotential(a, ad);
}

double maxDiff(const GridField& a, const GridField& b) { return maxNorm(a - b); }

}  // namespace

TEST_CASE("assembled system equals the expanded equations on the grid") {
  for (auto name : {"su2", "so3"}) {
    auto alg = makeAlgebra(AlgebraSpec::parse(name));
    auto g = makeGrid(32);
    const FieldState s = lorenzState(g, alg, 4, 0.5);
    const auto r = assembleRHS(s);
    const auto m = ym4Rhs(s.A, s.Adot);
    const auto n = ymf2Rhs(s);
    for (int b = 0; b < 3; ++b) {
      INFO(name << " component " << b);
      CHECK(maxDiff(r.M[b], m[b]) <= 1e-11 * (1 + maxNorm(m[b])));
      CHECK(maxDiff(r.N[b], n[b]) <= 1e-11 * (1 + maxNorm(n[b])));
    }
  }
}

TEST_CASE("curvature and the data formula") {
  auto alg = makeAlgebra(AlgebraSpec::parse("su2"));
  auto g = makeGrid(32);
  const FieldState s = lorenzState(g, alg, 5, 0.3);
  const Constraints c = constraintResiduals(s);
  CHECK(c.lorenz <= 1e-13);
  CHECK(c.compat <= 1e-13);
  // F_12 = d1 A2 - d2 A1 + [A1, A2]
  CHECK(maxDiff(s.F[2], deriv(s.A[2], 1) - deriv(s.A[1], 2) + bracket(s.A[1], s.A[2])) <= 1e-14);

  auto so2 = makeAlgebra(AlgebraSpec::parse("so2"));
  const FieldState u = lorenzState(g, so2, 6, 0.3);
  std::array<GridField, 3> a2, ad2;
  for (int b = 0; b < 3; ++b) {
    a2[b] = 2.0 * u.A[b];
    ad2[b] = 2.0 * u.Adot[b];
  }
  // abelian curvature is linear
  CHECK(energy(stateFromPotential(a2, ad2)) == doctest::Approx(4 * energy(u)).epsilon(1e-12));
  CHECK(energy(FieldState{{GridField(g, so2), GridField(g, so2), GridField(g, so2)},
                          {GridField(g, so2), GridField(g, so2), GridField(g, so2)},
                          {GridField(g, so2), GridField(g, so2), GridField(g, so2)},
                          {GridField(g, so2), GridField(g, so2), GridField(g, so2)}}) == 0.0);
}

TEST_CASE("static gauge transformations") {
  auto alg = makeAlgebra(AlgebraSpec::parse("su2"));
  auto g = makeGrid(64);
  const FieldState s = constrainedData(g, alg, 9, 0.1);
  const GaugeField U = gaugeFromGenerator(smoothRandomField(g, alg, 77, 0.5, 2));
  const FieldState t = gaugeTransform(U, s);
  CHECK(energy(t) == doctest::Approx(energy(s)).epsilon(1e-10));
  // the transformed potential reproduces the conjugated curvature
  const auto F = curvature(t);
  for (int k = 0; k < 3; ++k) CHECK(maxDiff(F[k], t.F[k]) <= 1e-9);
  // the Gauss field transforms by conjugation
  const FieldState raw = lorenzState(g, alg, 13, 0.1);
  const double g0 = l2Norm(gaussField(raw));
  REQUIRE(g0 > 1e-3);
  CHECK(std::abs(l2Norm(gaussField(gaugeTransform(U, raw))) - g0) <= 1e-9 * g0);

  const FieldState zero{{GridField(g, alg), GridField(g, alg), GridField(g, alg)},
                        {GridField(g, alg), GridField(g, alg), GridField(g, alg)},
                        {GridField(g, alg), GridField(g, alg), GridField(g, alg)},
                        {GridField(g, alg), GridField(g, alg), GridField(g, alg)}};
  const FieldState pure = gaugeTransform(U, zero);
  CHECK(maxNorm(pure.A[1]) > 0.1);
  for (const auto& f : curvature(pure)) CHECK(maxNorm(f) <= 1e-9);
}

TEST_CASE("Gauss projection") {
  auto alg = makeAlgebra(AlgebraSpec::parse("su2"));
  auto g = makeGrid(32);
  const FieldState raw = lorenzState(g, alg, 12, 0.05, 3);
  const double before = l2Norm(gaussField(raw));
  REQUIRE(before > 1e-3);
  const ProjectionResult p = projectGaussData(raw, 1e-11, 200);
  CHECK(p.residual <= 1e-11);
  CHECK(l2Norm(gaussField(p.state)) <= 1e-10);
  for (int b = 0; b < 3; ++b) CHECK(maxDiff(p.state.A[b], raw.A[b]) == 0.0);

  const FieldState c = constrainedData(g, alg, 3, 1e-2);
  const Constraints r = constraintResiduals(c);
  CHECK(r.gauss <= 1e-9);
  CHECK(r.lorenz <= 1e-12);
  CHECK(r.compat <= 1e-12);
}
