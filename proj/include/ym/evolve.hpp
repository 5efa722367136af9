#pragma once

#include <array>
#include <complex>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "ym/ym.hpp"

namespace ym {

enum class Stepper { RK4, ExpEuler, ExpRK2, ExpRK4 };

std::string stepperName(Stepper s);
Stepper parseStepper(const std::string& s);

struct EvolveConfig {
  double dt = 1e-3;
  double tEnd = 0.5;
  Stepper stepper = Stepper::RK4;
  bool dealias = true;
  int monitorEvery = 10;
  bool twin = true;  // run the direct potential-only evolution alongside
};

// default time step 0.5 L/N
double defaultTimeStep(const TorusGrid& g);

struct NumericalAbort : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// ---- second-order form: u'' = Lap u - G with (G_A, G_F) = assembleRHS ----

FieldState timeDerivative(const FieldState& s);
FieldState stepSecondOrder(const FieldState& s, double dt);

// potential-only evolution A'' = Lap A - R(A) with R the direct expansion
struct PotentialState {
  std::array<GridField, 3> A, Adot;
};

PotentialState potentialOf(const FieldState& s);
PotentialState stepDirect(const PotentialState& s, double dt);
double energy(const PotentialState& s);

// ---- half-wave form ----

// u = u+ + u-, du = i Lambda (u+ - u-) for u in {A_0, A_1, A_2, F_01, F_02, F_12}. Each part is a complex
// spectrum on the full N x N lattice (row j2, column j1, signed wavenumbers).
struct HalfWaveState {
  GridPtr grid;
  AlgebraPtr alg;
  std::array<std::vector<std::complex<double>>, 6> plus, minus;
};

HalfWaveState toHalfWave(const FieldState& s);
FieldState fromHalfWave(const HalfWaveState& hw);
HalfWaveState stepHalfWave(const HalfWaveState& hw, double dt, Stepper stepper = Stepper::ExpRK4);

// ---- Picard iteration ----

struct PicardConfig {
  int iterations = 5;  // number of differences computed
  double T = 0.25;
  int steps = 125;
  double s = 0.8;
  double r = 2.0;
};

struct PicardResult {
  std::vector<double> differences;  // d_k = sup_t |u^(k+1) - u^(k)|
  std::vector<double> ratios;       // d_k / d_{k-1}
  std::vector<FieldState> finalIterates;
};

// u^(0) free wave, u^(k+1) = free wave + Duhamel integral of -G(u^(k)) with G linear in time on each step.
// Norm: sum of discrete H^{s,r} of A_b and H^{s-1,r} of F_k, sup over the time grid.
PicardResult picardIterate(const FieldState& data, const PicardConfig& cfg);

// ---- monitoring ----

std::vector<DiagnosticsRecord> evolveAndMonitor(const FieldState& s, const EvolveConfig& cfg,
                                                const std::function<void(int, const FieldState&)>& onStep = {});

DiagnosticsRecord diagnose(double t, const FieldState& s);
std::string diagnosticsCsv(const std::vector<DiagnosticsRecord>& rows);

// ---- convergence studies ----

struct OrderStudy {
  std::vector<double> steps;   // dt or N
  std::vector<double> errors;  // against the reference run
  std::vector<double> ratios;  // successive error ratios
  double observedOrder = 0;    // temporal studies only
};

// RK4 on the full system at N, steps dts, reference dt = min(dts)/4
OrderStudy temporalOrderStudy(const FieldState& data, const std::vector<double>& dts, double T);

// smooth non-band-limited data on each N, reference on 2 max(Ns), errors measured after resampling
OrderStudy spatialConvergenceStudy(AlgebraPtr alg, const std::vector<int>& Ns, double scale, double dt, double T,
                                   std::uint64_t seed);

// analytic data with exponentially decaying spectrum, constrained only by the Lorenz condition
FieldState analyticData(GridPtr grid, AlgebraPtr alg, std::uint64_t seed, double scale);

double stateDistance(const FieldState& a, const FieldState& b);  // max over A and F of maxNorm
FieldState resampleState(const FieldState& s, GridPtr target);

}  // namespace ym
