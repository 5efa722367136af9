#include "ym/estimates.hpp"
#include "ym/evolve.hpp"
#include "ym/identities.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>

using namespace ym;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

int failures = 0;

void criterion(int id, const char* name, double budget, const std::function<Outcome()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o{false, ""};
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("error: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const bool pass = o.pass && secs <= budget;
  if (!pass) ++failures;
  std::printf("%s %d %s: %s (%.1f s of %.0f s)\n", pass ? "PASS" : "FAIL", id, name, o.detail.c_str(), secs, budget);
  std::fflush(stdout);
}

std::string fmt(const char* f, double a, double b = 0, double c = 0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

Outcome identities() {
  double worst = 0;
  for (const char* name : {"su2", "so3"}) {
    auto alg = makeAlgebra(AlgebraSpec::parse(name));
    for (std::uint64_t seed = 1; seed <= 20; ++seed)
      for (const auto& r : planeWaveIdentities(*alg, seed)) worst = std::max(worst, r.residual);
  }
  return {worst <= 1e-10, fmt("max residual %.2e over 20 seeds, su2 and so3", worst)};
}

Outcome gauge() {
  auto alg = makeAlgebra(AlgebraSpec::parse("su2"));
  auto g = makeGrid(64);
  const FieldState s = constrainedData(g, alg, 9, 0.1);
  const GaugeField U = gaugeFromGenerator(smoothRandomField(g, alg, 77, 0.5, 2));
  const FieldState t = gaugeTransform(U, s);

  const GridField z(g, alg);
  const FieldState zero{{z, z, z}, {z, z, z}, {z, z, z}, {z, z, z}};
  double pure = 0;
  for (const auto& f : curvature(gaugeTransform(U, zero))) pure = std::max(pure, maxNorm(f));

  const auto F = curvature(t);
  const auto UF = conjugate(U, s.F);
  double equiv = 0, scale = 0;
  for (int k = 0; k < 3; ++k) {
    equiv = std::max(equiv, maxNorm(F[k] - UF[k]));
    scale = std::max(scale, maxNorm(s.F[k]));
  }
  equiv /= scale;
  const double e = std::abs(energy(t) - energy(s)) / energy(s);
  return {pure <= 1e-8 && equiv <= 1e-8 && e <= 1e-8,
          fmt("pure gauge %.2e, equivariance %.2e, energy %.2e", pure, equiv, e)};
}

Outcome constraints() {
  auto alg = makeAlgebra(AlgebraSpec::parse("su2"));
  const FieldState data = constrainedData(makeGrid(64), alg, 1, 1e-2, 3, 1e-10);
  EvolveConfig cfg;
  cfg.dt = 1e-3;
  cfg.tEnd = 0.5;
  cfg.monitorEvery = 10;
  const auto rows = evolveAndMonitor(data, cfg);
  double worst = 0, twin = 0, drift = 0;
  const double e0 = rows.front().directEnergy;
  for (const auto& r : rows) {
    worst = std::max({worst, r.lorenzResidual, r.gaussResidual, r.curvatureResidual});
    twin = std::max(twin, r.twinDiff);
    drift = std::max(drift, std::abs(r.directEnergy - e0) / e0);
  }
  return {worst <= 1e-6 && drift <= 1e-6 && twin <= 1e-5,
          fmt("max residual %.2e, energy drift %.2e, twin difference %.2e", worst, drift, twin)};
}

Outcome convergence() {
  auto alg = makeAlgebra(AlgebraSpec::parse("su2"));
  const auto t = temporalOrderStudy(analyticData(makeGrid(32, 2 * M_PI, false), alg, 1, 0.1), {4e-3, 2e-3, 1e-3}, 0.5);
  const auto s = spatialConvergenceStudy(alg, {32, 64, 128}, 0.1, 2e-3, 0.1, 1);
  bool spatial = true;
  std::ostringstream d;
  d << fmt("temporal order %.2f; spatial errors", t.observedOrder);
  for (double e : s.errors) d << fmt(" %.2e", e);
  for (std::size_t i = 0; i < s.ratios.size(); ++i) spatial = spatial && (s.ratios[i] >= 10 || s.errors[i + 1] <= 1e-11);
  return {t.observedOrder >= 3.5 && spatial, d.str()};
}

Outcome symbols() {
  SampleConfig c;
  c.count = 1000000;
  std::vector<BoundReport> reps{checkGamma1Symbol(c)};
  for (FKCase k : {FKCase::EllipticQ12, FKCase::HyperbolicQ12, FKCase::EllipticQ0j, FKCase::EllipticQ0,
                   FKCase::HyperbolicQ0})
    reps.push_back(checkFKSymbolBounds(k, c));
  reps.push_back(checkAngleEstimate(c, 0.5, 0.5, 0.5));
  reps.push_back(checkHyperbolicLeibniz(c));
  bool pass = true;
  std::ostringstream d;
  for (const auto& r : reps) {
    pass = pass && r.pass;
    d << (d.tellp() > 0 ? ", " : "") << r.name << fmt(" %.3g/%.0f", r.supRatio, r.threshold);
  }
  return {pass, d.str()};
}

Outcome deltaSweeps() {
  const double circle = deltaIntegralEllipse(2.0, {0, 0}, 0, 0);
  const SweepReport s = lemmaQuantitySweep(1.1, 100, 100);
  const bool ok = std::abs(circle - M_PI) <= 1e-8 && s.points >= 10000 && s.supI <= 4;
  return {ok, fmt("circle error %.2e; sup I at r = 1.1 is %.3f (threshold 4) at tau %.3g", std::abs(circle - M_PI), s.supI,
                  s.argTau)};
}

Outcome picard() {
  auto alg = makeAlgebra(AlgebraSpec::parse("su2"));
  PicardConfig cfg;
  cfg.iterations = 5;
  cfg.T = 0.25;
  const auto res = picardIterate(constrainedData(makeGrid(64), alg, 1, 1e-2), cfg);
  bool monotone = true, small = true;
  for (std::size_t k = 1; k < res.differences.size(); ++k)
    monotone = monotone && res.differences[k] < res.differences[k - 1];
  for (double q : res.ratios) small = small && q <= 0.5;
  std::ostringstream d;
  d << "ratios";
  for (double q : res.ratios) d << fmt(" %.3g", q);
  return {monotone && small && res.ratios.size() == 4, d.str()};
}

Outcome halfWave() {
  auto alg = makeAlgebra(AlgebraSpec::parse("su2"));
  FieldState s = constrainedData(makeGrid(64), alg, 1, 1e-2);
  HalfWaveState hw = toHalfWave(s);
  const double dt = 1e-3;
  double worst = stateDistance(fromHalfWave(hw), s);
  for (int n = 1; n <= 500; ++n) {
    s = stepSecondOrder(s, dt);
    hw = stepHalfWave(hw, dt);
    if (n % 10 == 0) worst = std::max(worst, stateDistance(fromHalfWave(hw), s));
  }
  return {worst <= 1e-6, fmt("max difference %.2e over [0, 0.5]", worst)};
}

Outcome bilinear() {
  BilinearConfig hi, lo;
  hi.r = 2;
  hi.s = 0.8;
  hi.l = -0.2;
  lo.r = 1.1;
  lo.s = 3 / (2 * lo.r) + 0.01;
  lo.l = lo.s - 1;
  bool pass = true;
  std::ostringstream d;
  for (const BilinearConfig& cfg : {hi, lo})
    for (int id : {21, 24, 25, 35}) {
      const BoundReport g = bilinearGrowth(id, 32, cfg);
      pass = pass && g.pass;
      d << (d.tellp() > 0 ? ", " : "") << fmt("%.0f@r=%.1f %.3g", id, cfg.r, g.supRatio);
    }
  return {pass, "growth " + d.str()};
}

}  // namespace

int main() {
  criterion(1, "identity suite", 60, identities);
  criterion(2, "curvature and gauge", 60, gauge);
  criterion(3, "constraint propagation", 600, constraints);
  criterion(4, "convergence", 600, convergence);
  criterion(5, "symbol bounds", 300, symbols);
  criterion(6, "delta integrals", 300, deltaSweeps);
  criterion(7, "Picard contraction", 600, picard);
  criterion(8, "half-wave agreement", 600, halfWave);
  criterion(9, "bilinear growth", 900, bilinear);
  std::printf("%d of 9 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
