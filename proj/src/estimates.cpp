#include "ym/estimates.hpp"

#include <fftw3.h>

#include <algorithm>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <cmath>
#include <complex>
#include <limits>
#include <mutex>
#include <random>
#include <stdexcept>

#include "ym/spectral.hpp"

namespace ym {

void SampleConfig::validate() const {
  if (count < 1) throw std::invalid_argument("sample count must be >= 1");
  if (!(rMin > 0) || !(rMin < rMax)) throw std::invalid_argument("need 0 < rMin < rMax");
  if (!(rExponent > 1) || rExponent > 2) throw std::invalid_argument("need 1 < r <= 2");
}

namespace {

double norm(const Vec2& v) { return std::hypot(v[0], v[1]); }
double dot(const Vec2& a, const Vec2& b) { return a[0] * b[0] + a[1] * b[1]; }
double cross(const Vec2& a, const Vec2& b) { return a[0] * b[1] - a[1] * b[0]; }
Vec2 sub(const Vec2& a, const Vec2& b) { return {a[0] - b[0], a[1] - b[1]}; }
Vec2 add(const Vec2& a, const Vec2& b) { return {a[0] + b[0], a[1] + b[1]}; }
double jb(double x) { return std::sqrt(1 + x * x); }
double jb(const Vec2& v) { return std::sqrt(1 + dot(v, v)); }
double angle(const Vec2& a, const Vec2& b) { return std::atan2(std::abs(cross(a, b)), dot(a, b)); }

// sampling helpers shared by the symbol checks
struct Sampler {
  std::mt19937_64 rng;
  double lo, hi;
  std::uniform_real_distribution<double> unit{0.0, 1.0};

  Sampler(std::uint64_t seed, double rMin, double rMax) : rng(seed), lo(std::log(rMin)), hi(std::log(rMax)) {}
  double u() { return unit(rng); }
  double radius() { return std::exp(lo + (hi - lo) * u()); }
  double sign() { return u() < 0.5 ? -1.0 : 1.0; }
  Vec2 polar(double r, double phi) { return {r * std::cos(phi), r * std::sin(phi)}; }
  Vec2 vec() { return polar(radius(), 2 * M_PI * u()); }
  // relative angle: uniform, near 0 or near pi
  double relAngle() {
    const double m = u();
    const double off = std::exp(std::log(1e-9) * u());
    if (m < 1.0 / 3) return 2 * M_PI * u();
    return m < 2.0 / 3 ? sign() * off : M_PI + sign() * off;
  }
  // pair of vectors with structured relative angle
  std::pair<Vec2, Vec2> pair() {
    const double phi = 2 * M_PI * u();
    return {polar(radius(), phi), polar(radius(), phi + relAngle())};
  }
  // base + perturbation: on the cone, near it, or far from it
  double modulation(double base) {
    const double m = u();
    if (m < 0.2) return sign() * base;
    if (m < 0.7) return sign() * base + sign() * radius();
    return sign() * 3 * (base + 1) * u();
  }
};

void finish(BoundReport& r) { r.pass = std::isfinite(r.supRatio) && r.supRatio <= r.threshold; }

template <class Point>
void consider(BoundReport& rep, double ratio, const Point& pt) {
  if (!(ratio <= rep.supRatio)) {
    rep.supRatio = std::isnan(ratio) ? INFINITY : ratio;
    rep.argmaxPoint.assign(pt.begin(), pt.end());
  }
}

}  // namespace

double bPlus(const Vec2& xi, const Vec2& eta) {
  const Vec2 z = sub(xi, eta);
  const double a = norm(eta), b = norm(z), s = a + b + norm(xi);
  if (s == 0) return 0;
  const double h = std::sin(angle(eta, z) / 2);
  return 4 * a * b * h * h / s;
}

double bMinus(const Vec2& xi, const Vec2& eta) {
  const Vec2 z = sub(xi, eta);
  const double a = norm(eta), b = norm(z), s = norm(xi) + std::abs(a - b);
  if (s == 0) return 0;
  const double h = std::cos(angle(eta, z) / 2);
  return 4 * a * b * h * h / s;
}

double gamma1Ratio(const Vec2& xi, double tau, const Vec2& eta, double lambda) {
  const double jx = jb(xi), je = jb(eta);
  const double p = -1 + dot(xi, eta) * tau * lambda / (jx * jx * je * je);
  const double nx = norm(xi), ne = norm(eta);
  const double sn = nx > 0 && ne > 0 ? std::abs(cross(xi, eta)) / (nx * ne) : 0.0;
  const double bound = sn + std::abs(tau * lambda - dot(xi, eta)) / (jx * je) + 1 / (jx * jx) + 1 / (je * je);
  return std::abs(p) / bound;
}

BoundReport checkGamma1Symbol(const SampleConfig& cfg) {
  cfg.validate();
  BoundReport rep;
  rep.name = "gamma1-symbol";
  rep.threshold = 4;
  rep.argmaxLabels = {"xi1", "xi2", "tau", "eta1", "eta2", "lambda"};
  Sampler S(cfg.seed, cfg.rMin, cfg.rMax);
  for (long i = 0; i < cfg.count; ++i) {
    const auto [xi, eta] = S.pair();
    const double tau = S.modulation(jb(xi)), lambda = S.modulation(jb(eta));
    consider(rep, gamma1Ratio(xi, tau, eta, lambda), std::array<double, 6>{xi[0], xi[1], tau, eta[0], eta[1], lambda});
  }
  rep.samples = cfg.count;
  finish(rep);
  return rep;
}

std::string fkCaseName(FKCase c) {
  switch (c) {
    case FKCase::EllipticQ12: return "ellipticQ12";
    case FKCase::HyperbolicQ12: return "hyperbolicQ12";
    case FKCase::EllipticQ0j: return "ellipticQ0j";
    case FKCase::EllipticQ0: return "ellipticQ0";
    case FKCase::HyperbolicQ0: return "hyperbolicQ0";
  }
  return "?";
}

FKCase parseFKCase(const std::string& s) {
  for (FKCase c : {FKCase::EllipticQ12, FKCase::HyperbolicQ12, FKCase::EllipticQ0j, FKCase::EllipticQ0,
                   FKCase::HyperbolicQ0})
    if (s == fkCaseName(c)) return c;
  throw std::invalid_argument("unknown symbol-bound case '" + s + "'");
}

std::optional<double> fkRatio(FKCase c, const Vec2& xi, const Vec2& eta) {
  const Vec2 z = sub(xi, eta);
  const double a = norm(eta), b = norm(z), x = norm(xi);
  if (a == 0 || b == 0) return std::nullopt;
  const double th = angle(eta, z);
  double lhs = 0, rhs = 0;
  switch (c) {
    case FKCase::EllipticQ12:
      lhs = std::abs(std::sin(th));
      rhs = std::sqrt(x * bPlus(xi, eta) / (a * b));
      break;
    case FKCase::HyperbolicQ12:
      lhs = std::abs(std::sin(th));
      rhs = std::sqrt(x * bMinus(xi, eta) / (a * b));
      break;
    case FKCase::EllipticQ0j:
      lhs = std::max(std::abs(eta[0] / a - z[0] / b), std::abs(eta[1] / a - z[1] / b));
      rhs = std::sqrt(bPlus(xi, eta) / std::min(a, b));
      break;
    case FKCase::EllipticQ0: {
      const double h = std::sin(th / 2);
      lhs = 2 * h * h;
      rhs = bPlus(xi, eta) / std::min(a, b);
      break;
    }
    case FKCase::HyperbolicQ0: {
      const double h = std::cos(th / 2);
      lhs = 2 * h * h;
      rhs = x * bMinus(xi, eta) / (a * b);
      break;
    }
  }
  if (rhs <= 1e-12) return std::nullopt;
  return lhs / rhs;
}

BoundReport checkFKSymbolBounds(FKCase c, const SampleConfig& cfg) {
  cfg.validate();
  BoundReport rep;
  rep.name = "symbol-bound-" + fkCaseName(c);
  rep.threshold = 4;
  rep.argmaxLabels = {"xi1", "xi2", "eta1", "eta2"};
  Sampler S(cfg.seed, cfg.rMin, cfg.rMax);
  for (long i = 0; i < cfg.count; ++i) {
    const auto [eta, zeta] = S.pair();
    const Vec2 xi = add(eta, zeta);
    const auto q = fkRatio(c, xi, eta);
    if (!q) {
      ++rep.skipped;
      continue;
    }
    consider(rep, *q, std::array<double, 4>{xi[0], xi[1], eta[0], eta[1]});
  }
  rep.samples = cfg.count;
  finish(rep);
  return rep;
}

double angleRatio(double tau, double lambda, const Vec2& xi, const Vec2& eta, int s1, int s2, double a, double b,
                  double g) {
  const Vec2 u = {s1 * xi[0], s1 * xi[1]}, v = {s2 * eta[0], s2 * eta[1]};
  const double ang = angle(u, v);
  const double m = std::min(jb(xi), jb(eta));
  const double t1 = std::pow(jb(std::abs(tau + lambda) - norm(add(xi, eta))) / m, a);
  const double t2 = std::pow(jb(-tau + s1 * norm(xi)) / m, b);
  const double t3 = std::pow(jb(-lambda + s2 * norm(eta)) / m, g);
  return ang / (t1 + t2 + t3);
}

BoundReport checkAngleEstimate(const SampleConfig& cfg, double a, double b, double g) {
  cfg.validate();
  for (double e : {a, b, g})
    if (!(e >= 0 && e <= 0.5)) throw std::invalid_argument("angle exponents must lie in [0, 1/2]");
  BoundReport rep;
  rep.name = "angle-estimate";
  rep.threshold = 8;
  rep.argmaxLabels = {"tau", "lambda", "xi1", "xi2", "eta1", "eta2", "s1", "s2"};
  Sampler S(cfg.seed, cfg.rMin, cfg.rMax);
  for (long i = 0; i < cfg.count; ++i) {
    const auto [xi, eta] = S.pair();
    const double tau = S.modulation(norm(xi)), lambda = S.modulation(norm(eta));
    for (int s1 : {1, -1})
      for (int s2 : {1, -1})
        consider(rep, angleRatio(tau, lambda, xi, eta, s1, s2, a, b, g),
                 std::array<double, 8>{tau, lambda, xi[0], xi[1], eta[0], eta[1], double(s1), double(s2)});
  }
  rep.samples = cfg.count;
  rep.details = {{"alpha", a}, {"beta", b}, {"gamma", g}};
  finish(rep);
  return rep;
}

double hlrRatio(double tau, double rho, const Vec2& xi, const Vec2& eta) {
  const Vec2 z = sub(xi, eta);
  const double sigma = tau - rho;
  // |tau| - |xi| cancels catastrophically near the cone; discount its rounding error
  const double round = 8 * std::numeric_limits<double>::epsilon() * (std::abs(tau) + norm(xi) + std::abs(rho) + norm(eta));
  const double left = std::max(0.0, std::abs(std::abs(tau) - norm(xi)) - round);
  const double bs = rho * sigma >= 0 ? bPlus(xi, eta) : bMinus(xi, eta);
  const double right = std::abs(std::abs(rho) - norm(eta)) + std::abs(std::abs(sigma) - norm(z)) + bs;
  if (right == 0) return left == 0 ? 0.0 : INFINITY;
  return left / right;
}

BoundReport checkHyperbolicLeibniz(const SampleConfig& cfg) {
  cfg.validate();
  BoundReport rep;
  rep.name = "hyperbolic-leibniz";
  rep.threshold = 2;
  rep.argmaxLabels = {"tau", "rho", "xi1", "xi2", "eta1", "eta2"};
  Sampler S(cfg.seed, cfg.rMin, cfg.rMax);
  for (long i = 0; i < cfg.count; ++i) {
    const auto [eta, zeta] = S.pair();
    const Vec2 xi = add(eta, zeta);
    const double rho = S.modulation(norm(eta)), sigma = S.modulation(norm(zeta));
    const double tau = rho + sigma;
    consider(rep, hlrRatio(tau, rho, xi, eta), std::array<double, 6>{tau, rho, xi[0], xi[1], eta[0], eta[1]});
  }
  rep.samples = cfg.count;
  finish(rep);
  return rep;
}

// ---- delta integrals ----

namespace {

template <class F>
double integrate(F f, double a, double b, double relTol) {
  double err = 0;
  return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, a, b, 30, relTol, &err);
}

}  // namespace

// ellipse |eta| + |xi-eta| = tau: |eta| = A + c cos v, |xi-eta| = A - c cos v, ds/|grad| = |eta||xi-eta|/(2B) dv
double deltaIntegralEllipse(double tau, const Vec2& xi, double a, double b, double relTol) {
  const double x = norm(xi);
  if (!(tau > x)) throw std::invalid_argument("deltaIntegralEllipse: need tau > |xi|");
  const double A = tau / 2, c = x / 2, B = std::sqrt((tau - x) * (tau + x)) / 2;
  auto f = [&](double v) {
    const double r1 = A + c * std::cos(v), r2 = A - c * std::cos(v);
    return std::pow(r1, 1 - a) * std::pow(r2, 1 - b) / (2 * B);
  };
  // endpoint clustering resolves the peaks of width ~ sqrt(tau - |xi|) at v = 0, pi
  thread_local boost::math::quadrature::tanh_sinh<double> ts;
  return 2 * ts.integrate(f, 0.0, M_PI, relTol);
}

// branch |eta| - |xi-eta| = tau: |eta| = c cosh u + A, |xi-eta| = c cosh u - A, weight |eta||xi-eta|/(2B) du
double deltaIntegralHyperbola(double tau, const Vec2& xi, double a, double b, double relTol) {
  const double x = norm(xi);
  if (!(std::abs(tau) < x)) throw std::invalid_argument("deltaIntegralHyperbola: need |tau| < |xi|");
  if (!(a + b > 2)) throw std::invalid_argument("deltaIntegralHyperbola: diverges unless a + b > 2");
  const double A = tau / 2, c = x / 2, B = std::sqrt((x - tau) * (x + tau)) / 2;
  auto f = [&](double u) {
    const double ch = std::cosh(u);
    if (!std::isfinite(ch)) return 0.0;
    const double r1 = c * ch + A, r2 = c * ch - A;
    return std::pow(r1, 1 - a) * std::pow(r2, 1 - b) / (2 * B);
  };
  return 2 * integrate(f, 0.0, std::numeric_limits<double>::infinity(), relTol);
}

double lemmaQuantityI(double tau, const Vec2& xi, double r, bool elliptic) {
  const double x = norm(xi);
  const double J = elliptic ? deltaIntegralEllipse(tau, xi, 1 + r / 2, r / 2)
                            : deltaIntegralHyperbola(tau, xi, 1 + r / 2, r / 2);
  return std::sqrt(x) * std::sqrt(std::abs(std::abs(tau) - x)) * std::pow(J, 1 / r);
}

SweepReport lemmaQuantitySweep(double r, int tauPoints, int ratioPoints) {
  if (tauPoints < 2 || ratioPoints < 1) throw std::invalid_argument("lemmaQuantitySweep: too few points");
  SweepReport rep;
  for (int i = 0; i < tauPoints; ++i) {
    const double tau = std::pow(10.0, -2 + 4.0 * i / (tauPoints - 1));
    for (int j = 0; j < ratioPoints; ++j) {
      const double q = 0.5 * (1 - std::cos(M_PI * (j + 0.5) / ratioPoints));
      const double phi = 2 * M_PI * (i * ratioPoints + j) / (tauPoints * ratioPoints);
      const Vec2 xi = {q * tau * std::cos(phi), q * tau * std::sin(phi)};
      const double I = lemmaQuantityI(tau, xi, r, true);
      ++rep.points;
      if (!(I <= rep.supI)) {
        rep.supI = std::isnan(I) ? INFINITY : I;
        rep.argTau = tau;
        rep.argXi = q * tau;
      }
    }
  }
  rep.pass = std::isfinite(rep.supI) && rep.supI <= rep.threshold;
  return rep;
}

// ---- empirical multilinear constants ----

namespace {

using cplx = std::complex<double>;
using Field = std::vector<cplx>;  // N*N values of one component

struct Weights {
  double s, b;
};

// free wave sum_k (p_k e^{i|k|t} + m_k e^{-i|k|t}) e^{ikx}, per component, on the full lattice
struct FreeWave {
  std::vector<Field> plus, minus;
};

enum class Op { Id, Dt, D1, D2 };

class Lattice2 {
 public:
  explicit Lattice2(int N) : N_(N) {
    std::lock_guard<std::mutex> lock(fftwPlannerMutex());
    Field buf(N * N);
    auto* p = reinterpret_cast<fftw_complex*>(buf.data());
    fwd_ = fftw_plan_dft_2d(N, N, p, p, FFTW_FORWARD, FFTW_ESTIMATE);
    inv_ = fftw_plan_dft_2d(N, N, p, p, FFTW_BACKWARD, FFTW_ESTIMATE);
  }
  ~Lattice2() {
    std::lock_guard<std::mutex> lock(fftwPlannerMutex());
    fftw_destroy_plan(fwd_);
    fftw_destroy_plan(inv_);
  }
  Lattice2(const Lattice2&) = delete;
  Lattice2& operator=(const Lattice2&) = delete;

  int N() const { return N_; }
  int k(int j) const { return j <= N_ / 2 ? j : j - N_; }
  void toPhysical(Field& f) const {
    fftw_execute_dft(inv_, reinterpret_cast<fftw_complex*>(f.data()), reinterpret_cast<fftw_complex*>(f.data()));
  }
  void toSpectral(Field& f) const {
    fftw_execute_dft(fwd_, reinterpret_cast<fftw_complex*>(f.data()), reinterpret_cast<fftw_complex*>(f.data()));
    const double s = 1.0 / (static_cast<double>(N_) * N_);
    for (auto& z : f) z *= s;
  }

 private:
  int N_;
  fftw_plan fwd_{}, inv_{};
};

// one input slot: optional Lambda power and a derivative
struct Slot {
  int input;
  double lambdaPow;
  Op op;
};

// a multilinear term: product (or nested bracket) of slots, with a sign
struct Term {
  double sign;
  std::vector<Slot> slots;
};

struct Expression {
  std::vector<std::vector<Term>> variants;  // sup over variants
  std::vector<Weights> inputs;
  Weights output;
};

Expression expressionFor(int id, const BilinearConfig& c) {
  const double b = c.b < 0 ? 1 / c.r + 0.01 : c.b;
  const Weights A{c.s, b}, F{c.l, b}, outA{c.s - 1, b - 1 + c.eps}, outF{c.l - 1, b - 1 + c.eps};
  auto Q = [](int u, double lu, int v, double lv, Op a, Op bb) {
    return std::vector<Term>{{1, {{u, lu, a}, {v, lv, bb}}}, {-1, {{u, lu, bb}, {v, lv, a}}}};
  };
  auto Qset = [&](int u, double lu, int v, double lv) {
    return std::vector<std::vector<Term>>{Q(u, lu, v, lv, Op::Dt, Op::D1), Q(u, lu, v, lv, Op::Dt, Op::D2),
                                          Q(u, lu, v, lv, Op::D1, Op::D2)};
  };
  Expression e;
  switch (id) {
    case 21:
      e = {Qset(0, -1, 1, 0), {A, A}, outA};
      break;
    case 22:
      // Q12[Lambda^-1 u, Lambda^-1 d v]; the derivative of v is applied to the input by the caller
      e = {{Q(0, -1, 1, -1, Op::D1, Op::D2)}, {A, A}, outA};
      break;
    case 23:
      e = {Qset(0, -1, 1, 0), {A, F}, outF};
      break;
    case 24:
      e = {Qset(0, 0, 1, 0), {A, A}, outF};
      break;
    case 25:
      e = {{{{-1, {{0, 0, Op::Dt}, {1, 0, Op::Dt}}}, {1, {{0, 0, Op::D1}, {1, 0, Op::D1}}},
             {1, {{0, 0, Op::D2}, {1, 0, Op::D2}}}}},
           {A, A},
           outF};
      break;
    case 35:
      e = {{{{1, {{0, 0, Op::Id}, {1, 0, Op::Id}, {2, 0, Op::Id}}}}}, {A, A, A}, outA};
      break;
    case 36:
      e = {{{{1, {{0, 0, Op::Id}, {1, 0, Op::Id}, {2, 0, Op::Id}}}}}, {A, A, F}, outF};
      break;
    case 37:
      e = {{{{1, {{0, 0, Op::Id}, {1, 0, Op::Id}, {2, 0, Op::Id}, {3, 0, Op::Id}}}}}, {A, A, A, A}, outF};
      break;
    default:
      throw std::invalid_argument("estimate " + std::to_string(id) +
                                  " is not available (supported: 21, 22, 23, 24, 25, 35, 36, 37)");
  }
  return e;
}

double dualExponent(double r) { return r / (r - 1); }

double lpNorm(const std::vector<double>& v, double p) {
  double s = 0;
  for (double x : v) s += std::pow(x, p);
  return std::pow(s, 1 / p);
}

// random band-limited free wave with unit X^r_{s,b} proxy norm (sum of the two half-wave parts)
FreeWave randomInput(const Lattice2& lat, int dim, int kin, int profile, std::mt19937_64& rng, const Weights& w,
                     double r, bool aligned, std::array<int, 2>& pairMode, int slot) {
  const int N = lat.N();
  std::normal_distribution<double> g(0, 1);
  std::uniform_int_distribution<int> kd(-kin, kin), coin(0, 1);
  FreeWave u{std::vector<Field>(dim, Field(N * N)), std::vector<Field>(dim, Field(N * N))};
  auto idx = [&](int k1, int k2) { return static_cast<std::size_t>((k2 + N) % N) * N + (k1 + N) % N; };
  auto setMode = [&](int k1, int k2, bool plus) {
    for (int c = 0; c < dim; ++c) {
      if (aligned && c > 0) continue;
      (plus ? u.plus : u.minus)[c][idx(k1, k2)] = cplx(g(rng), g(rng));
    }
  };
  std::vector<std::array<int, 2>> modes;
  for (int k2 = -kin; k2 <= kin; ++k2)
    for (int k1 = -kin; k1 <= kin; ++k1) {
      const int m = std::max(std::abs(k1), std::abs(k2));
      if (profile == 0 || (profile == 1 && 2 * m > kin) || (profile == 3 && m <= 2)) modes.push_back({k1, k2});
    }
  if (profile == 2) {
    for (int i = 0; i < 3; ++i) setMode(kd(rng), kd(rng), coin(rng));
  } else if (profile == 4) {
    // high-high interaction into low output frequencies
    if (slot == 0) {
      do pairMode = {kd(rng), kd(rng)};
      while (2 * std::max(std::abs(pairMode[0]), std::abs(pairMode[1])) <= kin);
      setMode(pairMode[0], pairMode[1], coin(rng));
    } else {
      setMode(std::clamp(-pairMode[0] + 1, -kin, kin), -pairMode[1], coin(rng));
    }
  } else {
    for (const auto& k : modes) {
      setMode(k[0], k[1], true);
      setMode(k[0], k[1], false);
    }
  }
  const double rp = dualExponent(r);
  double total = 0;
  for (auto* part : {&u.plus, &u.minus}) {
    std::vector<double> mag(N * N, 0.0);
    for (int j2 = 0; j2 < N; ++j2)
      for (int j1 = 0; j1 < N; ++j1) {
        double m2 = 0;
        for (int c = 0; c < dim; ++c) m2 += std::norm((*part)[c][j2 * N + j1]);
        const double kk = lat.k(j1) * lat.k(j1) + lat.k(j2) * lat.k(j2);
        mag[j2 * N + j1] = std::pow(1 + kk, w.s / 2) * std::sqrt(m2);
      }
    total += lpNorm(mag, rp);
  }
  if (total > 0)
    for (auto* part : {&u.plus, &u.minus})
      for (auto& f : *part)
        for (auto& z : f) z /= total;
  return u;
}

// physical values of Lambda^p op u at time t
std::vector<Field> evaluate(const Lattice2& lat, const FreeWave& u, double lambdaPow, Op op, double t) {
  const int N = lat.N();
  const int dim = static_cast<int>(u.plus.size());
  std::vector<Field> out(dim, Field(N * N));
  for (int j2 = 0; j2 < N; ++j2)
    for (int j1 = 0; j1 < N; ++j1) {
      const double k1 = lat.k(j1), k2 = lat.k(j2), kk = k1 * k1 + k2 * k2, ka = std::sqrt(kk);
      const double lp = std::pow(1 + kk, lambdaPow / 2);
      const cplx ep = std::exp(cplx(0, ka * t)), em = std::conj(ep);
      cplx fp = lp, fm = lp;
      switch (op) {
        case Op::Id: break;
        case Op::Dt: fp *= cplx(0, ka); fm *= cplx(0, -ka); break;
        case Op::D1: fp *= cplx(0, k1); fm *= cplx(0, k1); break;
        case Op::D2: fp *= cplx(0, k2); fm *= cplx(0, k2); break;
      }
      const std::size_t i = static_cast<std::size_t>(j2) * N + j1;
      for (int c = 0; c < dim; ++c) out[c][i] = fp * ep * u.plus[c][i] + fm * em * u.minus[c][i];
    }
  for (auto& f : out) lat.toPhysical(f);
  return out;
}

std::vector<Field> combine(const std::vector<Field>& x, const std::vector<Field>& y, const Algebra* alg) {
  const std::size_t n = x[0].size();
  if (!alg) {
    std::vector<Field> o(1, Field(n));
    for (std::size_t i = 0; i < n; ++i) o[0][i] = x[0][i] * y[0][i];
    return o;
  }
  std::vector<Field> o(x.size(), Field(n));
  for (const auto& e : alg->entries())
    for (std::size_t i = 0; i < n; ++i) o[e.c][i] += e.f * x[e.a][i] * y[e.b][i];
  return o;
}

double outputNorm(const Lattice2& lat, const std::vector<FreeWave>& in, const std::vector<Term>& terms,
                  const Weights& w, double r, double window, int kin, int order, const Algebra* alg) {
  const int N = lat.N();
  const double span = 10 * window;
  const double tauMax = order * std::sqrt(2.0) * kin + 8 / window;
  int M = 16;
  while (M < 1.2 * span * tauMax / M_PI) M *= 2;
  const double dt = span / M;
  const int dim = alg ? alg->dim() : 1;
  const std::size_t np = static_cast<std::size_t>(N) * N;
  std::vector<cplx> data(static_cast<std::size_t>(M) * np * dim);
  for (int m = 0; m < M; ++m) {
    const double t = (m - M / 2) * dt;
    std::vector<Field> acc(dim, Field(np));
    for (const auto& term : terms) {
      // right-nested: s0 * (s1 * (s2 * ...)), brackets in the commutator case
      std::vector<Field> v = evaluate(lat, in[term.slots.back().input], term.slots.back().lambdaPow,
                                      term.slots.back().op, t);
      for (int k = static_cast<int>(term.slots.size()) - 2; k >= 0; --k) {
        const auto& s = term.slots[k];
        v = combine(evaluate(lat, in[s.input], s.lambdaPow, s.op, t), v, alg);
      }
      for (int c = 0; c < dim; ++c)
        for (std::size_t i = 0; i < np; ++i) acc[c][i] += term.sign * v[c][i];
    }
    const double wt = std::exp(-t * t / (2 * window * window)) * dt;
    for (int c = 0; c < dim; ++c) {
      lat.toSpectral(acc[c]);
      for (std::size_t i = 0; i < np; ++i) data[(static_cast<std::size_t>(c) * M + m) * np + i] = wt * acc[c][i];
    }
  }
  // time transform along m for every (component, mode)
  {
    fftw_plan plan;
    {
      std::lock_guard<std::mutex> lock(fftwPlannerMutex());
      int n[1] = {M};
      auto* p = reinterpret_cast<fftw_complex*>(data.data());
      plan = fftw_plan_many_dft(1, n, static_cast<int>(np), p, nullptr, static_cast<int>(np), 1, p, nullptr,
                                static_cast<int>(np), 1, FFTW_FORWARD, FFTW_ESTIMATE);
    }
    for (int c = 0; c < dim; ++c)
      fftw_execute_dft(plan, reinterpret_cast<fftw_complex*>(data.data() + static_cast<std::size_t>(c) * M * np),
                       reinterpret_cast<fftw_complex*>(data.data() + static_cast<std::size_t>(c) * M * np));
    std::lock_guard<std::mutex> lock(fftwPlannerMutex());
    fftw_destroy_plan(plan);
  }
  const double rp = dualExponent(r), dtau = 2 * M_PI / span;
  double sum = 0;
  for (int m = 0; m < M; ++m) {
    const double tau = 2 * M_PI * (m <= M / 2 ? m : m - M) / span;
    for (int j2 = 0; j2 < N; ++j2)
      for (int j1 = 0; j1 < N; ++j1) {
        const std::size_t i = static_cast<std::size_t>(j2) * N + j1;
        double m2 = 0;
        for (int c = 0; c < dim; ++c) m2 += std::norm(data[(static_cast<std::size_t>(c) * M + m) * np + i]);
        if (m2 == 0) continue;
        const double k1 = lat.k(j1), k2 = lat.k(j2), kk = k1 * k1 + k2 * k2;
        const double weight = std::pow(1 + kk, w.s / 2) * std::pow(jb(std::abs(tau) - std::sqrt(kk)), w.b);
        sum += std::pow(weight * std::sqrt(m2), rp);
      }
  }
  return std::pow(sum * dtau, 1 / rp);
}

}  // namespace

std::vector<int> supportedEstimates() { return {21, 22, 23, 24, 25, 35, 36, 37}; }

BoundReport empiricalBilinearConstant(int id, int N, const BilinearConfig& cfg) {
  if (!(cfg.r > 1) || cfg.r > 2) throw std::invalid_argument("need 1 < r <= 2");
  if (cfg.trials < 1) throw std::invalid_argument("need trials >= 1");
  if (cfg.commutator && !cfg.alg) throw std::invalid_argument("commutator sweep needs an algebra");
  Expression e = expressionFor(id, cfg);
  const int order = static_cast<int>(e.inputs.size());
  const int kin = N / (2 * order);
  if (kin < 2) throw std::invalid_argument("grid too small for estimate " + std::to_string(id));
  const Algebra* alg = cfg.commutator ? cfg.alg.get() : nullptr;
  const int dim = alg ? alg->dim() : 1;
  Lattice2 lat(N);
  std::mt19937_64 rng(cfg.seed);
  BoundReport rep;
  rep.name = "estimate-" + std::to_string(id) + "-N" + std::to_string(N);
  rep.threshold = INFINITY;
  rep.argmaxLabels = {"trial", "variant"};
  for (int t = 0; t < cfg.trials; ++t) {
    std::vector<FreeWave> in;
    std::array<int, 2> pairMode{0, 0};
    for (int j = 0; j < order; ++j) {
      // profiles: 0 uniform, 1 shell, 2 sparse, 3 low, 4 antipodal pair in the first two inputs
      const int profile = t % 5 == 4 ? (j < 2 ? 4 : 0) : (t + j) % 4;
      in.push_back(randomInput(lat, dim, kin, profile, rng, e.inputs[j], cfg.r, cfg.aligned, pairMode, j));
    }
    if (id == 22) {
      // fold the derivative of the second slot into the input: sup over dt, d1, d2
      for (Op d : {Op::Dt, Op::D1, Op::D2}) {
        FreeWave v = in[1];
        for (int j2 = 0; j2 < N; ++j2)
          for (int j1 = 0; j1 < N; ++j1) {
            const double k1 = lat.k(j1), k2 = lat.k(j2), ka = std::hypot(k1, k2);
            const cplx fp = d == Op::Dt ? cplx(0, ka) : cplx(0, d == Op::D1 ? k1 : k2);
            const cplx fm = d == Op::Dt ? cplx(0, -ka) : fp;
            for (int c = 0; c < dim; ++c) {
              v.plus[c][j2 * N + j1] *= fp;
              v.minus[c][j2 * N + j1] *= fm;
            }
          }
        std::vector<FreeWave> in2 = {in[0], v};
        const double q = outputNorm(lat, in2, e.variants[0], e.output, cfg.r, cfg.window, kin, order, alg);
        consider(rep, q, std::array<double, 2>{double(t), double(static_cast<int>(d))});
        ++rep.samples;
      }
      continue;
    }
    for (std::size_t v = 0; v < e.variants.size(); ++v) {
      const double q = outputNorm(lat, in, e.variants[v], e.output, cfg.r, cfg.window, kin, order, alg);
      consider(rep, q, std::array<double, 2>{double(t), double(v)});
      ++rep.samples;
    }
  }
  rep.details = {{"N", double(N)}, {"r", cfg.r}, {"s", cfg.s}, {"l", cfg.l}, {"bandLimit", double(kin)}};
  rep.note = "free-wave proxy: inputs are windowed free waves normalized in the discrete Fourier-Lebesgue norm";
  rep.pass = std::isfinite(rep.supRatio);
  return rep;
}

BoundReport bilinearGrowth(int id, int N, const BilinearConfig& cfg) {
  const BoundReport a = empiricalBilinearConstant(id, N, cfg);
  const BoundReport b = empiricalBilinearConstant(id, 2 * N, cfg);
  BoundReport rep;
  rep.name = "estimate-" + std::to_string(id) + "-growth";
  rep.samples = a.samples + b.samples;
  rep.threshold = 2;
  rep.supRatio = a.supRatio > 0 ? b.supRatio / a.supRatio : 0.0;
  rep.argmaxLabels = b.argmaxLabels;
  rep.argmaxPoint = b.argmaxPoint;
  rep.details = {{"supN", a.supRatio}, {"sup2N", b.supRatio}, {"N", double(N)}, {"r", cfg.r}, {"s", cfg.s},
                 {"l", cfg.l}};
  rep.note = a.note;
  finish(rep);
  return rep;
}

}  // namespace ym
