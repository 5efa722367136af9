#include "ym/evolve.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <random>
#include <sstream>

namespace ym {

std::string stepperName(Stepper s) {
  switch (s) {
    case Stepper::RK4: return "RK4";
    case Stepper::ExpEuler: return "ExpEuler";
    case Stepper::ExpRK2: return "ExpRK2";
    case Stepper::ExpRK4: return "ExpRK4";
  }
  return "?";
}

Stepper parseStepper(const std::string& s) {
  for (Stepper k : {Stepper::RK4, Stepper::ExpEuler, Stepper::ExpRK2, Stepper::ExpRK4})
    if (s == stepperName(k)) return k;
  throw std::invalid_argument("unknown stepper '" + s + "' (RK4, ExpEuler, ExpRK2, ExpRK4)");
}

double defaultTimeStep(const TorusGrid& g) { return 0.5 * g.L() / g.N(); }

namespace {

const Symbol kLap = Symbol::DPow(2) * -1.0;

GridField lap(const GridField& u) { return mult(u, kLap); }

FieldState axpy(const FieldState& y, double h, const FieldState& k) {
  FieldState out;
  for (int b = 0; b < 3; ++b) {
    out.A[b] = y.A[b] + h * k.A[b];
    out.Adot[b] = y.Adot[b] + h * k.Adot[b];
    out.F[b] = y.F[b] + h * k.F[b];
    out.Fdot[b] = y.Fdot[b] + h * k.Fdot[b];
  }
  return out;
}

PotentialState axpy(const PotentialState& y, double h, const PotentialState& k) {
  PotentialState out;
  for (int b = 0; b < 3; ++b) {
    out.A[b] = y.A[b] + h * k.A[b];
    out.Adot[b] = y.Adot[b] + h * k.Adot[b];
  }
  return out;
}

template <class State, class Rate>
State rk4(const State& y, double h, Rate rate) {
  const State k1 = rate(y);
  const State k2 = rate(axpy(y, h / 2, k1));
  const State k3 = rate(axpy(y, h / 2, k2));
  const State k4 = rate(axpy(y, h, k3));
  return axpy(axpy(axpy(axpy(y, h / 6, k1), h / 3, k2), h / 3, k3), h / 6, k4);
}

bool finite(const GridField& u) {
  for (const auto& z : u.spectrum())
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
  return true;
}

void requireFinite(const FieldState& s, const std::string& where) {
  for (int b = 0; b < 3; ++b)
    if (!finite(s.A[b]) || !finite(s.Adot[b]) || !finite(s.F[b]) || !finite(s.Fdot[b]))
      throw NumericalAbort("non-finite state " + where);
}

}  // namespace

FieldState timeDerivative(const FieldState& s) {
  const auto r = assembleRHS(s);
  FieldState d;
  for (int b = 0; b < 3; ++b) {
    d.A[b] = s.Adot[b];
    d.Adot[b] = lap(s.A[b]) - r.M[b];
    d.F[b] = s.Fdot[b];
    d.Fdot[b] = lap(s.F[b]) - r.N[b];
  }
  return d;
}

FieldState stepSecondOrder(const FieldState& s, double dt) {
  FieldState out = rk4(s, dt, timeDerivative);
  requireFinite(out, "after an RK4 step of size " + std::to_string(dt));
  return out;
}

PotentialState potentialOf(const FieldState& s) { return {s.A, s.Adot}; }

PotentialState stepDirect(const PotentialState& s, double dt) {
  return rk4(s, dt, [](const PotentialState& y) {
    const auto R = ym4Rhs(y.A, y.Adot);
    PotentialState d;
    for (int b = 0; b < 3; ++b) {
      d.A[b] = y.Adot[b];
      d.Adot[b] = lap(y.A[b]) - R[b];
    }
    return d;
  });
}

double energy(const PotentialState& s) {
  return energyOfCurvature(curvature<GridField>({pairOf(s.A[0], s.Adot[0]), pairOf(s.A[1], s.Adot[1]),
                                                pairOf(s.A[2], s.Adot[2])}));
}

// ---- half-wave ----

namespace {

using cvec = std::vector<std::complex<double>>;
constexpr std::complex<double> I(0, 1);

struct Lattice {
  int N, Nh, dim;
  std::size_t full, half;
  std::vector<double> bracketXi;  // <xi> on the full lattice
};

Lattice latticeOf(const TorusGrid& g, int dim) {
  Lattice l{g.N(), g.Nh(), dim, g.points(), g.modes(), {}};
  l.bracketXi.resize(g.points());
  for (int j2 = 0; j2 < l.N; ++j2)
    for (int j1 = 0; j1 < l.N; ++j1) {
      const double x1 = g.xi(j1 <= l.N / 2 ? j1 : j1 - l.N), x2 = g.xi(g.k2(j2));
      l.bracketXi[static_cast<std::size_t>(j2) * l.N + j1] = std::sqrt(1 + x1 * x1 + x2 * x2);
    }
  return l;
}

cvec toFull(const Lattice& l, const CplxVec& h) {
  cvec f(l.full * l.dim);
  for (int c = 0; c < l.dim; ++c)
    for (int j2 = 0; j2 < l.N; ++j2)
      for (int j1 = 0; j1 < l.N; ++j1) {
        const std::size_t i = c * l.full + static_cast<std::size_t>(j2) * l.N + j1;
        f[i] = j1 <= l.N / 2 ? h[c * l.half + static_cast<std::size_t>(j2) * l.Nh + j1]
                             : std::conj(h[c * l.half + static_cast<std::size_t>((l.N - j2) % l.N) * l.Nh + (l.N - j1)]);
      }
  return f;
}

CplxVec toHalf(const Lattice& l, const cvec& f) {
  CplxVec h(l.half * l.dim);
  for (int c = 0; c < l.dim; ++c)
    for (int j2 = 0; j2 < l.N; ++j2)
      for (int j1 = 0; j1 < l.Nh; ++j1)
        h[c * l.half + static_cast<std::size_t>(j2) * l.Nh + j1] = f[c * l.full + static_cast<std::size_t>(j2) * l.N + j1];
  return h;
}

std::array<const GridField*, 6> unknowns(const FieldState& s) {
  return {&s.A[0], &s.A[1], &s.A[2], &s.F[0], &s.F[1], &s.F[2]};
}
std::array<const GridField*, 6> rates(const FieldState& s) {
  return {&s.Adot[0], &s.Adot[1], &s.Adot[2], &s.Fdot[0], &s.Fdot[1], &s.Fdot[2]};
}

HalfWaveState hwAxpy(const HalfWaveState& y, double h, const HalfWaveState& k) {
  HalfWaveState out = y;
  for (int u = 0; u < 6; ++u)
    for (std::size_t i = 0; i < y.plus[u].size(); ++i) {
      out.plus[u][i] += h * k.plus[u][i];
      out.minus[u][i] += h * k.minus[u][i];
    }
  return out;
}

// linear flow e^{+-i Lambda h}
HalfWaveState hwPhase(const Lattice& l, const HalfWaveState& y, double h) {
  HalfWaveState out = y;
  std::vector<std::complex<double>> ph(l.full);
  for (std::size_t i = 0; i < l.full; ++i) ph[i] = std::exp(I * (l.bracketXi[i] * h));
  for (int u = 0; u < 6; ++u)
    for (int c = 0; c < l.dim; ++c)
      for (std::size_t i = 0; i < l.full; ++i) {
        out.plus[u][c * l.full + i] *= ph[i];
        out.minus[u][c * l.full + i] *= std::conj(ph[i]);
      }
  return out;
}

// source: d u+ = ... + (2i Lambda)^-1 (u - G), d u- = ... - (2i Lambda)^-1 (u - G)
HalfWaveState hwSource(const Lattice& l, const HalfWaveState& y) {
  const FieldState s = fromHalfWave(y);
  const auto r = assembleRHS(s);
  const std::array<const GridField*, 6> G = {&r.M[0], &r.M[1], &r.M[2], &r.N[0], &r.N[1], &r.N[2]};
  const auto U = unknowns(s);
  HalfWaveState out{y.grid, y.alg, {}, {}};
  for (int u = 0; u < 6; ++u) {
    CplxVec S = U[u]->spectrum();
    const CplxVec& g = G[u]->spectrum();
    for (std::size_t i = 0; i < S.size(); ++i) S[i] -= g[i];
    cvec f = toFull(l, S);
    out.plus[u].resize(f.size());
    out.minus[u].resize(f.size());
    for (int c = 0; c < l.dim; ++c)
      for (std::size_t i = 0; i < l.full; ++i) {
        const std::complex<double> v = f[c * l.full + i] / (2.0 * I * l.bracketXi[i]);
        out.plus[u][c * l.full + i] = v;
        out.minus[u][c * l.full + i] = -v;
      }
  }
  return out;
}

void requireFinite(const HalfWaveState& y) {
  for (int u = 0; u < 6; ++u)
    for (std::size_t i = 0; i < y.plus[u].size(); ++i)
      if (!std::isfinite(std::abs(y.plus[u][i])) || !std::isfinite(std::abs(y.minus[u][i])))
        throw NumericalAbort("non-finite half-wave state");
}

}  // namespace

HalfWaveState toHalfWave(const FieldState& s) {
  const auto& g = *s.A[0].grid();
  const Lattice l = latticeOf(g, s.A[0].dim());
  HalfWaveState hw{s.A[0].grid(), s.A[0].algebra(), {}, {}};
  const auto U = unknowns(s), V = rates(s);
  for (int u = 0; u < 6; ++u) {
    const cvec fu = toFull(l, U[u]->spectrum()), fv = toFull(l, V[u]->spectrum());
    hw.plus[u].resize(fu.size());
    hw.minus[u].resize(fu.size());
    for (int c = 0; c < l.dim; ++c)
      for (std::size_t i = 0; i < l.full; ++i) {
        const std::size_t k = c * l.full + i;
        const std::complex<double> w = I * fv[k] / l.bracketXi[i];
        hw.plus[u][k] = 0.5 * (fu[k] - w);
        hw.minus[u][k] = 0.5 * (fu[k] + w);
      }
  }
  return hw;
}

FieldState fromHalfWave(const HalfWaveState& hw) {
  const Lattice l = latticeOf(*hw.grid, hw.alg->dim());
  std::array<GridField, 6> U, V;
  for (int u = 0; u < 6; ++u) {
    cvec fu(l.full * l.dim), fv(l.full * l.dim);
    for (int c = 0; c < l.dim; ++c)
      for (std::size_t i = 0; i < l.full; ++i) {
        const std::size_t k = c * l.full + i;
        fu[k] = hw.plus[u][k] + hw.minus[u][k];
        fv[k] = I * l.bracketXi[i] * (hw.plus[u][k] - hw.minus[u][k]);
      }
    U[u] = GridField::fromSpectrum(hw.grid, hw.alg, toHalf(l, fu), false);
    V[u] = GridField::fromSpectrum(hw.grid, hw.alg, toHalf(l, fv), false);
  }
  return {{U[0], U[1], U[2]}, {V[0], V[1], V[2]}, {U[3], U[4], U[5]}, {V[3], V[4], V[5]}};
}

HalfWaveState stepHalfWave(const HalfWaveState& y, double h, Stepper stepper) {
  const Lattice l = latticeOf(*y.grid, y.alg->dim());
  auto E = [&](const HalfWaveState& x, double t) { return hwPhase(l, x, t); };
  auto N = [&](const HalfWaveState& x) { return hwSource(l, x); };
  HalfWaveState out;
  switch (stepper) {
    case Stepper::ExpEuler:
      out = E(hwAxpy(y, h, N(y)), h);
      break;
    case Stepper::ExpRK2: {
      const auto k1 = N(y);
      const auto k2 = N(E(hwAxpy(y, h, k1), h));
      out = hwAxpy(E(hwAxpy(y, h / 2, k1), h), h / 2, k2);
      break;
    }
    case Stepper::ExpRK4: {
      const auto k1 = N(y);
      const auto Eh2y = E(y, h / 2);
      const auto k2 = N(hwAxpy(Eh2y, h / 2, E(k1, h / 2)));
      const auto k3 = N(hwAxpy(Eh2y, h / 2, k2));
      const auto k4 = N(hwAxpy(E(y, h), h, E(k3, h / 2)));
      out = hwAxpy(hwAxpy(E(hwAxpy(y, h / 6, k1), h), h / 3, E(hwAxpy(k2, 1.0, k3), h / 2)), h / 6, k4);
      break;
    }
    case Stepper::RK4:
      throw std::invalid_argument("stepHalfWave: RK4 is the second-order stepper; use ExpEuler, ExpRK2 or ExpRK4");
  }
  requireFinite(out);
  return out;
}

// ---- Picard ----

namespace {

struct Propagator {
  std::vector<double> c, s, ws, is0, is1, ic0, ic1;
  double h;
};

Propagator propagatorFor(const TorusGrid& g, double h) {
  Propagator p;
  p.h = h;
  const std::size_t n = g.modes();
  for (auto* v : {&p.c, &p.s, &p.ws, &p.is0, &p.is1, &p.ic0, &p.ic1}) v->resize(n);
  for (int j2 = 0; j2 < g.N(); ++j2)
    for (int j1 = 0; j1 < g.Nh(); ++j1) {
      const std::size_t i = static_cast<std::size_t>(j2) * g.Nh() + j1;
      const double x1 = g.xi(j1), x2 = g.xi(g.k2(j2));
      const double w = std::sqrt(x1 * x1 + x2 * x2), x = w * h, x2p = x * x;
      p.c[i] = std::cos(x);
      if (x < 1e-2) {
        const double h2 = h * h, h3 = h2 * h;
        p.s[i] = h * (1 - x2p / 6 + x2p * x2p / 120);
        p.is0[i] = h2 * (0.5 - x2p / 24 + x2p * x2p / 720);
        p.is1[i] = h3 * (1.0 / 3 - x2p / 30 + x2p * x2p / 840 - x2p * x2p * x2p / 45360);
        p.ic0[i] = p.s[i];
        p.ic1[i] = h2 * (0.5 - x2p / 8 + x2p * x2p / 144 - x2p * x2p * x2p / 5760);
      } else {
        const double sn = std::sin(x), hc = 2 * std::sin(x / 2) * std::sin(x / 2);
        p.s[i] = sn / w;
        p.is0[i] = hc / (w * w);
        p.is1[i] = (sn - x * std::cos(x)) / (w * w * w);
        p.ic0[i] = sn / w;
        p.ic1[i] = h * sn / w - hc / (w * w);
      }
      p.ws[i] = w * std::sin(x);
    }
  return p;
}

// (u,v)(t+h) for u'' = Lap u - G with G linear on [t, t+h]; g0, g1 may be null (free flow)
void propagate(const Propagator& p, int dim, const GridField& u, const GridField& v, const GridField* g0,
               const GridField* g1, GridField& uo, GridField& vo) {
  const std::size_t n = p.c.size();
  CplxVec U = u.spectrum(), V = v.spectrum();
  CplxVec Uo(U.size()), Vo(V.size());
  const CplxVec* G0 = g0 ? &g0->spectrum() : nullptr;
  const CplxVec* G1 = g1 ? &g1->spectrum() : nullptr;
  for (int c = 0; c < dim; ++c)
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t k = c * n + i;
      std::complex<double> a = p.c[i] * U[k] + p.s[i] * V[k];
      std::complex<double> b = -p.ws[i] * U[k] + p.c[i] * V[k];
      if (G1) {
        const std::complex<double> gn1 = (*G1)[k], slope = (gn1 - (*G0)[k]) / p.h;
        a -= p.is0[i] * gn1 - p.is1[i] * slope;
        b -= p.ic0[i] * gn1 - p.ic1[i] * slope;
      }
      Uo[k] = a;
      Vo[k] = b;
    }
  uo = GridField::fromSpectrum(u.grid(), u.algebra(), std::move(Uo), false);
  vo = GridField::fromSpectrum(u.grid(), u.algebra(), std::move(Vo), false);
}

FieldState propagateState(const Propagator& p, const FieldState& s, const Rhs<GridField>* g0,
                           const Rhs<GridField>* g1) {
  FieldState o;
  const int dim = s.A[0].dim();
  for (int b = 0; b < 3; ++b) {
    propagate(p, dim, s.A[b], s.Adot[b], g0 ? &g0->M[b] : nullptr, g1 ? &g1->M[b] : nullptr, o.A[b], o.Adot[b]);
    propagate(p, dim, s.F[b], s.Fdot[b], g0 ? &g0->N[b] : nullptr, g1 ? &g1->N[b] : nullptr, o.F[b], o.Fdot[b]);
  }
  return o;
}

double picardNorm(const FieldState& a, const FieldState& b, double s, double r) {
  double n = 0;
  for (int k = 0; k < 3; ++k) {
    n += discreteNorm(a.A[k] - b.A[k], s, r);
    n += discreteNorm(a.F[k] - b.F[k], s - 1, r);
  }
  return n;
}

}  // namespace

PicardResult picardIterate(const FieldState& data, const PicardConfig& cfg) {
  if (cfg.iterations < 1 || cfg.steps < 1 || !(cfg.T > 0))
    throw std::invalid_argument("picardIterate: need iterations >= 1, steps >= 1, T > 0");
  const int K = cfg.iterations;  // iterates 0..K
  const Propagator p = propagatorFor(*data.A[0].grid(), cfg.T / cfg.steps);
  std::vector<FieldState> u(K + 1, data);
  std::vector<Rhs<GridField>> G(K);
  for (int k = 0; k < K; ++k) G[k] = assembleRHS(data);
  std::vector<double> d(K, 0.0);
  for (int n = 0; n < cfg.steps; ++n) {
    std::vector<Rhs<GridField>> Gn(K);
    for (int k = 0; k <= K; ++k) {
      u[k] = k == 0 ? propagateState(p, u[0], nullptr, nullptr) : propagateState(p, u[k], &G[k - 1], &Gn[k - 1]);
      if (k < K) Gn[k] = assembleRHS(u[k]);
    }
    G = std::move(Gn);
    for (int k = 0; k < K; ++k) d[k] = std::max(d[k], picardNorm(u[k + 1], u[k], cfg.s, cfg.r));
    for (int k = 0; k <= K; ++k) requireFinite(u[k], "in a Picard iterate at t = " + std::to_string((n + 1) * p.h));
  }
  PicardResult res{d, {}, u};
  int above = 0;
  for (int k = 1; k < K; ++k) {
    const double q = d[k - 1] > 0 ? d[k] / d[k - 1] : 0.0;
    res.ratios.push_back(q);
    above = q > 1 ? above + 1 : 0;
    if (above >= 3) {
      std::ostringstream os;
      os << "picardIterate: diverging, ratios";
      for (double x : res.ratios) os << ' ' << x;
      throw NumericalAbort(os.str());
    }
  }
  return res;
}

// ---- monitoring ----

DiagnosticsRecord diagnose(double t, const FieldState& s) {
  DiagnosticsRecord r;
  const auto c = constraintResiduals(s);
  r.time = t;
  r.energy = energy(s);
  r.lorenzResidual = c.lorenz;
  r.gaussResidual = c.gauss;
  r.curvatureResidual = c.compat;
  return r;
}

std::vector<DiagnosticsRecord> evolveAndMonitor(const FieldState& s0, const EvolveConfig& cfg,
                                                const std::function<void(int, const FieldState&)>& onStep) {
  if (!(cfg.dt > 0) || !(cfg.tEnd >= 0) || cfg.monitorEvery < 1)
    throw std::invalid_argument("evolveAndMonitor: need dt > 0, tEnd >= 0, monitorEvery >= 1");
  const int steps = static_cast<int>(std::lround(cfg.tEnd / cfg.dt));
  const bool exp = cfg.stepper != Stepper::RK4;
  FieldState s = s0;
  HalfWaveState hw;
  if (exp) hw = toHalfWave(s0);
  PotentialState p = potentialOf(s0);
  std::vector<DiagnosticsRecord> rows;
  auto record = [&](int n) {
    DiagnosticsRecord r = diagnose(n * cfg.dt, s);
    if (cfg.twin) {
      for (int b = 0; b < 3; ++b) r.twinDiff = std::max(r.twinDiff, maxNorm(s.A[b] - p.A[b]));
      r.directEnergy = energy(p);
    }
    if (!std::isfinite(r.energy) || !std::isfinite(r.twinDiff)) {
      std::ostringstream os;
      os << "non-finite diagnostics at t = " << r.time;
      throw NumericalAbort(os.str());
    }
    rows.push_back(r);
  };
  record(0);
  if (onStep) onStep(0, s);
  for (int n = 1; n <= steps; ++n) {
    try {
      if (exp) {
        hw = stepHalfWave(hw, cfg.dt, cfg.stepper);
        s = fromHalfWave(hw);
      } else {
        s = stepSecondOrder(s, cfg.dt);
      }
      if (cfg.twin) p = stepDirect(p, cfg.dt);
    } catch (const NumericalAbort& e) {
      std::ostringstream os;
      os << e.what() << " (step " << n << "; last record t = " << rows.back().time
         << ", energy = " << rows.back().energy << ", gauss = " << rows.back().gaussResidual << ")";
      throw NumericalAbort(os.str());
    }
    if (onStep) onStep(n, s);
    if (n % cfg.monitorEvery == 0 || n == steps) record(n);
  }
  return rows;
}

std::string diagnosticsCsv(const std::vector<DiagnosticsRecord>& rows) {
  std::ostringstream os;
  os << "t,energy,lorenz,gauss,compat,twinDiff\n" << std::setprecision(17);
  for (const auto& r : rows)
    os << r.time << ',' << r.energy << ',' << r.lorenzResidual << ',' << r.gaussResidual << ','
       << r.curvatureResidual << ',' << r.twinDiff << '\n';
  return os.str();
}

// ---- convergence ----

double stateDistance(const FieldState& a, const FieldState& b) {
  double d = 0;
  for (int k = 0; k < 3; ++k) {
    d = std::max(d, maxNorm(a.A[k] - b.A[k]));
    d = std::max(d, maxNorm(a.F[k] - b.F[k]));
  }
  return d;
}

FieldState resampleState(const FieldState& s, GridPtr target) {
  FieldState o;
  for (int b = 0; b < 3; ++b) {
    o.A[b] = resample(s.A[b], target);
    o.Adot[b] = resample(s.Adot[b], target);
    o.F[b] = resample(s.F[b], target);
    o.Fdot[b] = resample(s.Fdot[b], target);
  }
  return o;
}

namespace {

FieldState evolveTo(FieldState s, double dt, double T) {
  const int steps = static_cast<int>(std::lround(T / dt));
  for (int n = 0; n < steps; ++n) s = stepSecondOrder(s, dt);
  return s;
}

}  // namespace

OrderStudy temporalOrderStudy(const FieldState& data, const std::vector<double>& dts, double T) {
  if (dts.size() < 2) throw std::invalid_argument("temporalOrderStudy: need at least two step sizes");
  const double dtRef = *std::min_element(dts.begin(), dts.end()) / 4;
  const FieldState ref = evolveTo(data, dtRef, T);
  OrderStudy st;
  for (double dt : dts) {
    st.steps.push_back(dt);
    st.errors.push_back(stateDistance(evolveTo(data, dt, T), ref));
  }
  st.observedOrder = INFINITY;
  for (std::size_t i = 0; i + 1 < dts.size(); ++i) {
    const double q = st.errors[i] / st.errors[i + 1];
    st.ratios.push_back(q);
    st.observedOrder = std::min(st.observedOrder, std::log(q) / std::log(dts[i] / dts[i + 1]));
  }
  return st;
}

FieldState analyticData(GridPtr grid, AlgebraPtr alg, std::uint64_t seed, double scale) {
  constexpr double rho = 0.8;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> phase(0, 2 * M_PI), sign(-1, 1);
  const int N = grid->N();
  const std::size_t np = grid->points();
  const double k0 = 2 * M_PI / grid->L();
  auto draw = [&]() {
    RealVec v(np * alg->dim());
    for (int c = 0; c < alg->dim(); ++c) {
      const double w = scale * sign(rng) * (1 - rho) * (1 - rho), p1 = phase(rng), p2 = phase(rng);
      for (int j2 = 0; j2 < N; ++j2)
        for (int j1 = 0; j1 < N; ++j1)
          v[c * np + static_cast<std::size_t>(j2) * N + j1] =
              w / ((1 - rho * std::cos(k0 * grid->x(j1) - p1)) * (1 - rho * std::cos(k0 * grid->x(j2) - p2)));
    }
    return GridField::fromPhysical(grid, alg, std::move(v));
  };
  std::array<GridField, 3> a, ad;
  for (int b = 0; b < 3; ++b) a[b] = draw();
  for (int i = 1; i <= 2; ++i) ad[i] = draw();
  ad[0] = deriv(a[1], 1) + deriv(a[2], 2);
  return stateFromPotential(a, ad);
}

OrderStudy spatialConvergenceStudy(AlgebraPtr alg, const std::vector<int>& Ns, double scale, double dt, double T,
                                   std::uint64_t seed) {
  if (Ns.size() < 2) throw std::invalid_argument("spatialConvergenceStudy: need at least two grids");
  const int Nref = 2 * *std::max_element(Ns.begin(), Ns.end());
  const GridPtr gref = makeGrid(Nref);
  const FieldState ref = evolveTo(analyticData(gref, alg, seed, scale), dt, T);
  OrderStudy st;
  for (int N : Ns) {
    const GridPtr g = makeGrid(N);
    const FieldState s = evolveTo(analyticData(g, alg, seed, scale), dt, T);
    st.steps.push_back(N);
    st.errors.push_back(stateDistance(resampleState(s, gref), ref));
  }
  for (std::size_t i = 0; i + 1 < Ns.size(); ++i) st.ratios.push_back(st.errors[i] / st.errors[i + 1]);
  return st;
}

}  // namespace ym
