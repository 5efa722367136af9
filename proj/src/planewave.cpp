#include "ym/planewave.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <string>

namespace ym {

std::complex<double> Symbol::operator()(double xi1, double xi2) const {
  const double mag2 = xi1 * xi1 + xi2 * xi2;
  std::complex<double> v = scale;
  if (lambdaPow != 0) v *= std::pow(1.0 + mag2, 0.5 * lambdaPow);
  if (dPow != 0) {
    if (mag2 == 0) return 0.0;
    v *= std::pow(mag2, 0.5 * dPow);
  }
  for (int k = 0; k < d1; ++k) v *= std::complex<double>(0, xi1);
  for (int k = 0; k < d2; ++k) v *= std::complex<double>(0, xi2);
  return v;
}

namespace {

bool freqLess(const Mode& a, const Mode& b) {
  if (std::abs(a.tau - b.tau) > PlaneWaveField::kFreqTol) return a.tau < b.tau;
  if (std::abs(a.xi1 - b.xi1) > PlaneWaveField::kFreqTol) return a.xi1 < b.xi1;
  if (std::abs(a.xi2 - b.xi2) > PlaneWaveField::kFreqTol) return a.xi2 < b.xi2;
  return false;
}

bool freqEqual(const Mode& a, const Mode& b) { return !freqLess(a, b) && !freqLess(b, a); }

}  // namespace

PlaneWaveField::PlaneWaveField(int n, std::vector<Mode> modes, std::size_t cap)
    : n_(n), cap_(cap), modes_(std::move(modes)) {
  canonicalize();
}

void PlaneWaveField::canonicalize() {
  std::stable_sort(modes_.begin(), modes_.end(), freqLess);
  std::vector<Mode> out;
  out.reserve(modes_.size());
  for (auto& m : modes_) {
    if (!out.empty() && freqEqual(out.back(), m))
      out.back().coeff += m.coeff;
    else
      out.push_back(std::move(m));
  }
  std::erase_if(out, [](const Mode& m) { return m.coeff.norm() <= kCoeffTol; });
  if (out.size() > cap_)
    throw std::length_error("plane-wave mode count " + std::to_string(out.size()) + " exceeds cap " +
                            std::to_string(cap_));
  modes_ = std::move(out);
}

Matrix PlaneWaveField::evaluate(double t, double x1, double x2) const {
  Matrix m = Matrix::Zero(n_, n_);
  for (const auto& md : modes_) m += std::exp(cplx(0, md.tau * t + md.xi1 * x1 + md.xi2 * x2)) * md.coeff;
  return m;
}

PlaneWaveField operator+(const PlaneWaveField& u, const PlaneWaveField& v) {
  std::vector<Mode> m = u.modes();
  m.insert(m.end(), v.modes().begin(), v.modes().end());
  return PlaneWaveField(u.n(), std::move(m), std::max(u.cap(), v.cap()));
}

PlaneWaveField operator-(const PlaneWaveField& u) { return cplx(-1) * u; }
PlaneWaveField operator-(const PlaneWaveField& u, const PlaneWaveField& v) { return u + (-v); }

PlaneWaveField operator*(cplx c, const PlaneWaveField& u) {
  std::vector<Mode> m = u.modes();
  for (auto& md : m) md.coeff *= c;
  return PlaneWaveField(u.n(), std::move(m), u.cap());
}

PlaneWaveField pwProduct(const PlaneWaveField& u, const PlaneWaveField& v, ProductKind kind) {
  if (u.n() != v.n()) throw std::invalid_argument("pwProduct: matrix size mismatch");
  const std::size_t cap = std::max(u.cap(), v.cap());
  if (u.size() * v.size() > cap * cap)
    throw std::length_error("pwProduct: mode-count product exceeds cap^2 with cap " + std::to_string(cap));
  std::vector<Mode> m;
  m.reserve(u.size() * v.size());
  for (const auto& a : u.modes())
    for (const auto& b : v.modes()) {
      Matrix c = a.coeff * b.coeff;
      if (kind == ProductKind::Bracket) c -= b.coeff * a.coeff;
      m.push_back({a.tau + b.tau, a.xi1 + b.xi1, a.xi2 + b.xi2, std::move(c)});
    }
  return PlaneWaveField(u.n(), std::move(m), cap);
}

PlaneWaveField pwDerivative(const PlaneWaveField& u, PwIndex index) {
  std::vector<Mode> m = u.modes();
  for (auto& md : m) {
    double k = index == PwIndex::T ? md.tau : index == PwIndex::X1 ? md.xi1 : md.xi2;
    md.coeff *= cplx(0, k);
  }
  return PlaneWaveField(u.n(), std::move(m), u.cap());
}

PlaneWaveField pwMultiplier(const PlaneWaveField& u, const Symbol& symbol) {
  std::vector<Mode> m = u.modes();
  for (auto& md : m) md.coeff *= symbol(md.xi1, md.xi2);
  return PlaneWaveField(u.n(), std::move(m), u.cap());
}

double pwResidualNorm(const PlaneWaveField& u) {
  double r = 0;
  for (const auto& md : u.modes()) r = std::max(r, md.coeff.norm());
  return r;
}

PlaneWaveField pwRescale(const PlaneWaveField& u, double lam, double mu) {
  std::vector<Mode> m = u.modes();
  for (auto& md : m) {
    md.tau *= lam;
    md.xi1 *= lam;
    md.xi2 *= lam;
    md.coeff *= mu;
  }
  return PlaneWaveField(u.n(), std::move(m), u.cap());
}

namespace {

struct ModeDraw {
  double tau;
  int xi1, xi2;
};

ModeDraw drawFrequency(std::mt19937_64& rng, const PwSampler& s) {
  const int steps = static_cast<int>(std::lround((s.tauMax - s.tauMin) / s.tauQuantum));
  std::uniform_int_distribution<int> q(0, steps), sgn(0, 1), xi(-s.maxXi, s.maxXi);
  double tau = s.tauMin + q(rng) * s.tauQuantum;
  if (sgn(rng)) tau = -tau;
  int a = xi(rng);
  int b = xi(rng);
  return {tau, a, b};
}

Matrix drawCoeff(std::mt19937_64& rng, const Algebra& alg, double scale) {
  std::uniform_real_distribution<double> u(-scale, scale);
  Matrix c = Matrix::Zero(alg.n(), alg.n());
  for (int a = 0; a < alg.dim(); ++a) {
    double re = u(rng);
    double im = u(rng);
    c += cplx(re, im) * alg.basis(a);
  }
  return c;
}

// partner of sum c_a E_a is sum conj(c_a) E_a
Matrix conjugatePartner(const Algebra& alg, const Matrix& c) {
  Matrix out = Matrix::Zero(alg.n(), alg.n());
  for (int a = 0; a < alg.dim(); ++a) out += std::conj((c * alg.basis(a).adjoint()).trace()) * alg.basis(a);
  return out;
}

void pushMode(std::vector<Mode>& m, const Algebra& alg, bool realValued, double tau, double x1, double x2,
              const Matrix& c) {
  m.push_back({tau, x1, x2, c});
  if (realValued) m.push_back({-tau, -x1, -x2, conjugatePartner(alg, c)});
}

}  // namespace

PlaneWaveField pwRandom(const Algebra& alg, int modeCount, std::uint64_t seed, const PwSampler& s) {
  std::mt19937_64 rng(seed);
  std::vector<Mode> m;
  for (int k = 0; k < modeCount; ++k) {
    auto f = drawFrequency(rng, s);
    pushMode(m, alg, s.realValued, f.tau, f.xi1, f.xi2, drawCoeff(rng, alg, s.scale));
  }
  return PlaneWaveField(alg.n(), std::move(m));
}

std::array<PlaneWaveField, 3> pwLorenzCompatible(const Algebra& alg, int modeCount, std::uint64_t seed,
                                                 const PwSampler& s) {
  if (modeCount < 1) throw std::invalid_argument("pwLorenzCompatible: modeCount must be >= 1");
  std::mt19937_64 rng(seed);
  std::vector<Mode> m0, m1, m2;
  for (int k = 0; k < modeCount; ++k) {
    auto f = drawFrequency(rng, s);
    Matrix a1 = drawCoeff(rng, alg, s.scale);
    Matrix a2 = drawCoeff(rng, alg, s.scale);
    Matrix a0 = (f.xi1 * a1 + f.xi2 * a2) / f.tau;
    pushMode(m0, alg, s.realValued, f.tau, f.xi1, f.xi2, a0);
    pushMode(m1, alg, s.realValued, f.tau, f.xi1, f.xi2, a1);
    pushMode(m2, alg, s.realValued, f.tau, f.xi1, f.xi2, a2);
  }
  return {PlaneWaveField(alg.n(), std::move(m0)), PlaneWaveField(alg.n(), std::move(m1)),
          PlaneWaveField(alg.n(), std::move(m2))};
}

}  // namespace ym
