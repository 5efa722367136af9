#include <CLI11.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "ym/config.hpp"
#include "ym/estimates.hpp"
#include "ym/evolve.hpp"
#include "ym/identities.hpp"

using namespace ym;
using nlohmann::json;

namespace {

constexpr int kPass = 0, kFail = 1, kSchema = 2, kAbort = 3;

// flag overrides applied on top of the config file
struct Overrides {
  std::string config, algebra, stepper, out;
  std::optional<int> N, monitorEvery, snapshotEvery, seeds, count, estN, trials, iterations, steps;
  std::optional<double> dt, tEnd, scale, r, s, l, T;
  std::optional<std::uint64_t> seed;
  std::vector<int> ids;
  bool commutator = false, noTwin = false;
};

void apply(const Overrides& o, RunConfig& c) {
  if (!o.algebra.empty()) c.algebra = AlgebraSpec::parse(o.algebra);
  if (!o.stepper.empty()) c.evolve.stepper = parseStepper(o.stepper);
  if (!o.out.empty()) c.outPath = o.out;
  if (o.N) c.grid.N = *o.N;
  if (o.monitorEvery) c.evolve.monitorEvery = *o.monitorEvery;
  if (o.snapshotEvery) c.snapshotEvery = *o.snapshotEvery;
  if (o.seeds) c.seeds = *o.seeds;
  if (o.count) c.sample.count = *o.count;
  if (o.estN) c.estimates.N = *o.estN;
  if (o.trials) c.estimates.bilinear.trials = *o.trials;
  if (o.iterations) c.picard.iterations = *o.iterations;
  if (o.steps) c.picard.steps = *o.steps;
  if (o.dt) c.evolve.dt = *o.dt;
  if (o.tEnd) c.evolve.tEnd = *o.tEnd;
  if (o.scale) c.scale = *o.scale;
  if (o.T) c.picard.T = *o.T;
  if (o.r) {
    c.sample.rExponent = *o.r;
    c.estimates.bilinear.r = *o.r;
    c.picard.r = *o.r;
  }
  if (o.s) {
    c.estimates.bilinear.s = *o.s;
    c.picard.s = *o.s;
  }
  if (o.l) c.estimates.bilinear.l = *o.l;
  if (o.seed) {
    c.seed = *o.seed;
    c.sample.seed = *o.seed;
    c.estimates.bilinear.seed = *o.seed;
  }
  if (!o.ids.empty()) c.estimates.ids = o.ids;
  if (o.commutator) c.estimates.bilinear.commutator = true;
  if (o.noTwin) c.evolve.twin = false;
}

class Output {
 public:
  explicit Output(const std::string& path) : file_(path) {
    if (!file_) throw std::runtime_error("cannot open output '" + path + "'");
  }
  void line(const json& j) {
    const std::string s = j.dump();
    std::cout << s << "\n";
    file_ << s << "\n";
  }

 private:
  std::ofstream file_;
};

void ensureParent(const std::string& path) {
  const auto dir = std::filesystem::path(path).parent_path();
  if (!dir.empty()) std::filesystem::create_directories(dir);
}

int simulate(const RunConfig& c, json& outcome) {
  auto grid = makeGrid(c.grid.N, c.grid.L, c.grid.dealias);
  auto alg = makeAlgebra(c.algebra);
  const FieldState data = constrainedData(grid, alg, c.seed, c.scale);
  EvolveConfig ec = c.evolve;
  ec.dealias = c.grid.dealias;
  const std::string stem = (std::filesystem::path(c.outPath).parent_path() /
                            std::filesystem::path(c.outPath).stem()).string();
  std::vector<std::string> snaps;
  auto onStep = [&](int n, const FieldState& s) {
    if (c.snapshotEvery <= 0 || n % c.snapshotEvery != 0) return;
    std::ostringstream name;
    name << stem << "_" << std::setw(6) << std::setfill('0') << n << ".ymf2";
    writeSnapshot(name.str(), {s.A[0], s.A[1], s.A[2], s.Adot[0], s.Adot[1], s.Adot[2], s.F[0], s.F[1], s.F[2],
                               s.Fdot[0], s.Fdot[1], s.Fdot[2]});
    snaps.push_back(name.str());
  };
  const auto rows = evolveAndMonitor(data, ec, onStep);
  std::ofstream(c.outPath) << diagnosticsCsv(rows);
  double worst = 0, twin = 0, drift = 0;
  const double e0 = rows.front().directEnergy;
  for (const auto& r : rows) {
    worst = std::max({worst, r.lorenzResidual, r.gaussResidual, r.curvatureResidual});
    twin = std::max(twin, r.twinDiff);
    if (e0 > 0) drift = std::max(drift, std::abs(r.directEnergy - e0) / e0);
  }
  const bool pass = worst <= 1e-6 && twin <= 1e-5 && drift <= 1e-6;
  outcome = {{"pass", pass},       {"maxConstraintResidual", worst}, {"maxTwinDiff", twin},
             {"energyDrift", drift}, {"records", rows.size()},        {"snapshots", snaps}};
  std::cout << (pass ? "PASS" : "FAIL") << " simulate: max residual " << worst << ", twin diff " << twin
            << ", energy drift " << drift << " (" << rows.size() << " records -> " << c.outPath << ")\n";
  return pass ? kPass : kFail;
}

int checkIdentities(const RunConfig& c, json& outcome) {
  Output out(c.outPath);
  auto alg = makeAlgebra(c.algebra);
  double worst = 0;
  for (int k = 0; k < c.seeds; ++k) {
    const std::uint64_t seed = c.seed + k;
    for (const auto& r : planeWaveIdentities(*alg, seed)) {
      worst = std::max(worst, r.residual);
      out.line({{"identity", r.name}, {"algebra", c.algebra.name()}, {"seed", seed}, {"residual", r.residual},
                {"pass", r.residual <= 1e-10}});
    }
  }
  const bool pass = worst <= 1e-10;
  outcome = {{"pass", pass}, {"maxResidual", worst}};
  std::cerr << (pass ? "PASS" : "FAIL") << " check-identities: max residual " << worst << "\n";
  return pass ? kPass : kFail;
}

int checkSymbols(const RunConfig& c, json& outcome) {
  Output out(c.outPath);
  std::vector<BoundReport> reps;
  reps.push_back(checkGamma1Symbol(c.sample));
  for (FKCase k : {FKCase::EllipticQ12, FKCase::HyperbolicQ12, FKCase::EllipticQ0j, FKCase::EllipticQ0,
                   FKCase::HyperbolicQ0})
    reps.push_back(checkFKSymbolBounds(k, c.sample));
  reps.push_back(checkAngleEstimate(c.sample, 0.5, 0.5, 0.5));
  reps.push_back(checkHyperbolicLeibniz(c.sample));
  bool pass = true;
  for (const auto& r : reps) {
    out.line(reportToJson(r));
    pass = pass && r.pass;
  }
  const double circle = deltaIntegralEllipse(2.0, {0, 0}, 0, 0);
  const auto sweep = lemmaQuantitySweep(1.1, 100, 100);
  const bool circleOk = std::abs(circle - M_PI) <= 1e-8;
  out.line({{"name", "ellipse-circle"}, {"value", circle}, {"expected", M_PI}, {"pass", circleOk}});
  out.line({{"name", "lemma-quantity-sweep"},
            {"samples", sweep.points},
            {"supRatio", sweep.supI},
            {"threshold", sweep.threshold},
            {"argmaxPoint", {{"tau", sweep.argTau}, {"absXi", sweep.argXi}}},
            {"pass", sweep.pass}});
  pass = pass && circleOk && sweep.pass;
  outcome = {{"pass", pass}};
  return pass ? kPass : kFail;
}

int checkEstimates(const RunConfig& c, json& outcome) {
  Output out(c.outPath);
  BilinearConfig b = c.estimates.bilinear;
  if (b.commutator) b.alg = makeAlgebra(c.algebra);
  bool pass = true;
  for (int id : c.estimates.ids) {
    const auto r = bilinearGrowth(id, c.estimates.N, b);
    out.line(reportToJson(r));
    pass = pass && r.pass;
  }
  outcome = {{"pass", pass}};
  return pass ? kPass : kFail;
}

int convergence(const RunConfig& c, json& outcome) {
  Output out(c.outPath);
  auto alg = makeAlgebra(c.algebra);
  const FieldState data = analyticData(makeGrid(32, c.grid.L, false), alg, c.seed, 0.1);
  const auto t = temporalOrderStudy(data, {4e-3, 2e-3, 1e-3}, 0.5);
  const bool tOk = t.observedOrder >= 3.5;
  out.line({{"name", "temporal-order"}, {"dt", t.steps}, {"errors", t.errors}, {"ratios", t.ratios},
            {"observedOrder", t.observedOrder}, {"pass", tOk}});
  const auto s = spatialConvergenceStudy(alg, {32, 64, 128}, 0.1, 2e-3, 0.1, c.seed);
  bool sOk = true;
  for (std::size_t i = 0; i < s.ratios.size(); ++i) sOk = sOk && (s.ratios[i] >= 10 || s.errors[i + 1] <= 1e-11);
  out.line({{"name", "spatial-convergence"}, {"N", s.steps}, {"errors", s.errors}, {"ratios", s.ratios},
            {"pass", sOk}});
  outcome = {{"pass", tOk && sOk}, {"observedOrder", t.observedOrder}};
  return tOk && sOk ? kPass : kFail;
}

int picard(const RunConfig& c, json& outcome) {
  Output out(c.outPath);
  auto grid = makeGrid(c.grid.N, c.grid.L, c.grid.dealias);
  auto alg = makeAlgebra(c.algebra);
  const auto res = picardIterate(constrainedData(grid, alg, c.seed, c.scale), c.picard);
  bool monotone = true, small = true;
  for (std::size_t k = 1; k < res.differences.size(); ++k)
    monotone = monotone && res.differences[k] < res.differences[k - 1];
  for (double q : res.ratios) small = small && q <= 0.5;
  const bool pass = monotone && small;
  out.line({{"name", "picard"}, {"differences", res.differences}, {"ratios", res.ratios},
            {"monotone", monotone}, {"pass", pass}});
  outcome = {{"pass", pass}};
  return pass ? kPass : kFail;
}

int run(RunConfig c) {
  if (c.outPath.empty()) c.outPath = defaultOutPath(c.command);
  ensureParent(c.outPath);
  json outcome;
  int code = kFail;
  try {
    switch (c.command) {
      case Command::Simulate: code = simulate(c, outcome); break;
      case Command::CheckIdentities: code = checkIdentities(c, outcome); break;
      case Command::CheckSymbols: code = checkSymbols(c, outcome); break;
      case Command::CheckEstimates: code = checkEstimates(c, outcome); break;
      case Command::Convergence: code = convergence(c, outcome); break;
      case Command::Picard: code = picard(c, outcome); break;
    }
  } catch (const NumericalAbort& e) {
    std::cerr << "numerical abort: " << e.what() << "\n";
    writeManifest(c, {{"pass", false}, {"abort", e.what()}});
    return kAbort;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    writeManifest(c, {{"pass", false}, {"error", e.what()}});
    return kFail;
  }
  writeManifest(c, outcome);
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Yang-Mills (2+1)D Lorenz-gauge lab"};
  app.require_subcommand(1);
  Overrides o;
  struct Sub {
    Command cmd;
    CLI::App* app;
  };
  std::vector<Sub> subs;
  const std::pair<Command, const char*> cmds[] = {
      {Command::Simulate, "evolve constrained random data and write diagnostics CSV"},
      {Command::CheckIdentities, "exact plane-wave identity suite"},
      {Command::CheckSymbols, "sampled symbol bounds and delta-integral sweeps"},
      {Command::CheckEstimates, "empirical multilinear constant growth sweeps"},
      {Command::Convergence, "temporal order and spatial convergence studies"},
      {Command::Picard, "Picard iteration contraction"}};
  for (const auto& [cmd, help] : cmds) {
    auto* sc = app.add_subcommand(commandName(cmd), help);
    sc->add_option("--config", o.config, "JSON config file");
    sc->add_option("--algebra", o.algebra, "su<n> or so<n>");
    sc->add_option("--seed", o.seed, "RNG seed");
    sc->add_option("--out", o.out, "primary output file");
    sc->add_option("--scale", o.scale, "data amplitude");
    sc->add_option("--n,--grid", o.N, "grid points per direction");
    subs.push_back({cmd, sc});
    switch (cmd) {
      case Command::Simulate:
        sc->add_option("--dt", o.dt, "time step");
        sc->add_option("--t-end", o.tEnd, "final time");
        sc->add_option("--stepper", o.stepper, "RK4, ExpEuler, ExpRK2, ExpRK4");
        sc->add_option("--monitor-every", o.monitorEvery, "diagnostics interval in steps");
        sc->add_option("--snapshot-every", o.snapshotEvery, "YMF2 snapshot interval in steps (0 = off)");
        sc->add_flag("--no-twin", o.noTwin, "skip the direct potential-only twin run");
        break;
      case Command::CheckIdentities:
        sc->add_option("--seeds", o.seeds, "number of consecutive seeds");
        break;
      case Command::CheckSymbols:
        sc->add_option("--samples", o.count, "samples per check");
        sc->add_option("--r", o.r, "Lebesgue exponent");
        break;
      case Command::CheckEstimates:
        sc->add_option("--ids", o.ids, "estimate ids");
        sc->add_option("--base-n", o.estN, "base grid N (growth compares N and 2N)");
        sc->add_option("--trials", o.trials, "random trials per grid");
        sc->add_option("--r", o.r, "Lebesgue exponent");
        sc->add_option("--s", o.s, "regularity of A");
        sc->add_option("--l", o.l, "regularity of F");
        sc->add_flag("--commutator", o.commutator, "g-valued inputs with brackets");
        break;
      case Command::Convergence:
        break;
      case Command::Picard:
        sc->add_option("--iterations", o.iterations, "number of successive differences");
        sc->add_option("--T", o.T, "time horizon");
        sc->add_option("--steps", o.steps, "time steps on [0, T]");
        sc->add_option("--s", o.s, "Sobolev index of the contraction norm");
        sc->add_option("--r", o.r, "Lebesgue exponent of the contraction norm");
        break;
    }
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kPass : kSchema;
  }
  Command cmd = Command::Simulate;
  for (const auto& s : subs)
    if (s.app->parsed()) cmd = s.cmd;

  RunConfig cfg;
  try {
    if (!o.config.empty()) {
      cfg = loadConfig(o.config);
      if (cfg.command != cmd)
        throw ConfigError("config command '" + commandName(cfg.command) + "' does not match '" + commandName(cmd) +
                          "'");
    }
    cfg.command = cmd;
    apply(o, cfg);
    cfg.validate();
  } catch (const std::exception& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kSchema;
  }
  try {
    return run(cfg);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kFail;
  }
}
