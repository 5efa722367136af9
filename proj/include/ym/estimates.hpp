#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ym/algebra.hpp"

namespace ym {

using Vec2 = std::array<double, 2>;

struct SampleConfig {
  long count = 1000000;
  double rMin = 1e-3, rMax = 1e3;  // radii are log-uniform in [rMin, rMax]
  std::uint64_t seed = 1;
  double rExponent = 2;  // Lebesgue exponent r

  void validate() const;  // throws std::invalid_argument
};

struct BoundReport {
  std::string name;
  long samples = 0;
  long skipped = 0;  // degenerate samples excluded from the sup
  double supRatio = 0;
  double threshold = 0;
  std::vector<std::string> argmaxLabels;
  std::vector<double> argmaxPoint;
  bool pass = false;
  std::map<std::string, double> details;
  std::string note;
};

// b_+ = |eta| + |xi-eta| - |xi|, b_- = |xi| - ||eta| - |xi-eta||, evaluated without cancellation
double bPlus(const Vec2& xi, const Vec2& eta);
double bMinus(const Vec2& xi, const Vec2& eta);

// |p| / (|sin angle(xi,eta)| + |tau lambda - xi.eta|/(<xi><eta>) + <xi>^-2 + <eta>^-2) for the Gamma1 symbol
double gamma1Ratio(const Vec2& xi, double tau, const Vec2& eta, double lambda);
BoundReport checkGamma1Symbol(const SampleConfig& cfg);

enum class FKCase { EllipticQ12, HyperbolicQ12, EllipticQ0j, EllipticQ0, HyperbolicQ0 };
std::string fkCaseName(FKCase c);
FKCase parseFKCase(const std::string& s);

// free-wave symbol of the null form at output xi and inputs eta, xi - eta, divided by the bound;
// nullopt when the bound is below 1e-12 (collinear, degenerate configurations)
std::optional<double> fkRatio(FKCase c, const Vec2& xi, const Vec2& eta);
BoundReport checkFKSymbolBounds(FKCase c, const SampleConfig& cfg);

// angle(s1 xi, s2 eta) over the three-term bound with exponents (a, b, g)
double angleRatio(double tau, double lambda, const Vec2& xi, const Vec2& eta, int s1, int s2, double a, double b,
                  double g);
BoundReport checkAngleEstimate(const SampleConfig& cfg, double a, double b, double g);

// ||tau|-|xi|| over ||rho|-|eta|| + ||tau-rho|-|xi-eta|| + b_s, with b_+ when rho and tau - rho share a sign
double hlrRatio(double tau, double rho, const Vec2& xi, const Vec2& eta);
BoundReport checkHyperbolicLeibniz(const SampleConfig& cfg);

// integral of delta(tau - |eta| - |xi-eta|) |eta|^-a |xi-eta|^-b d eta, tau > |xi|
double deltaIntegralEllipse(double tau, const Vec2& xi, double a, double b, double relTol = 1e-10);
// integral of delta(tau - |eta| + |xi-eta|) |eta|^-a |xi-eta|^-b d eta, |tau| < |xi|, a + b > 2
double deltaIntegralHyperbola(double tau, const Vec2& xi, double a, double b, double relTol = 1e-10);

// |xi|^1/2 ||tau|-|xi||^1/2 (integral with a = 1 + r/2, b = r/2)^(1/r), elliptic or hyperbolic level set
double lemmaQuantityI(double tau, const Vec2& xi, double r, bool elliptic = true);

struct SweepReport {
  long points = 0;
  double supI = 0;
  double argTau = 0, argXi = 0;
  double threshold = 4;
  bool pass = false;
};

// elliptic sweep: tau log-spaced in [1e-2, 1e2], |xi|/tau in (0,1) clustered at both ends
SweepReport lemmaQuantitySweep(double r, int tauPoints, int ratioPoints);

// ---- empirical multilinear constants ----

struct BilinearConfig {
  double r = 2, s = 0.8, l = -0.2;
  double b = -1;  // modulation index of A and F; negative means 1/r + 0.01
  double eps = 0.01;
  int trials = 8;
  std::uint64_t seed = 1;
  double window = 2.0;         // Gaussian time window width
  bool commutator = false;     // g-valued inputs combined with brackets
  bool aligned = false;        // commutator inputs all along one basis element
  AlgebraPtr alg;              // required when commutator
};

// supported ids: 21, 22, 23, 24, 25, 35, 36, 37
std::vector<int> supportedEstimates();

// sup over trials of |output|_{H^r_{sigma,beta}} for unit-norm free-wave inputs on an N x N torus,
// inputs band-limited to |k|_inf <= N/(2 order)
BoundReport empiricalBilinearConstant(int estimateId, int N, const BilinearConfig& cfg);

// growth factor sup(2N) / sup(N); pass when <= 2
BoundReport bilinearGrowth(int estimateId, int N, const BilinearConfig& cfg);

}  // namespace ym
