#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <vector>

#include "ym/algebra.hpp"
#include "ym/symbol.hpp"

namespace ym {

using cplx = std::complex<double>;

enum class ProductKind { MatrixProduct, Bracket };
enum class PwIndex { T, X1, X2 };

struct Mode {
  double tau;
  double xi1, xi2;
  Matrix coeff;
};

// Finite sum of c_k exp(i(tau_k t + xi_k . x)) with n x n complex matrix coefficients.
class PlaneWaveField {
 public:
  static constexpr std::size_t kDefaultCap = 4096;
  static constexpr double kCoeffTol = 1e-14;
  static constexpr double kFreqTol = 1e-12;

  PlaneWaveField() = default;
  explicit PlaneWaveField(int n, std::size_t cap = kDefaultCap) : n_(n), cap_(cap) {}
  PlaneWaveField(int n, std::vector<Mode> modes, std::size_t cap = kDefaultCap);

  int n() const { return n_; }
  std::size_t cap() const { return cap_; }
  std::size_t size() const { return modes_.size(); }
  bool empty() const { return modes_.empty(); }
  const std::vector<Mode>& modes() const { return modes_; }

  Matrix evaluate(double t, double x1, double x2) const;

 private:
  void canonicalize();
  int n_ = 0;
  std::size_t cap_ = kDefaultCap;
  std::vector<Mode> modes_;
};

PlaneWaveField operator+(const PlaneWaveField& u, const PlaneWaveField& v);
PlaneWaveField operator-(const PlaneWaveField& u, const PlaneWaveField& v);
PlaneWaveField operator-(const PlaneWaveField& u);
PlaneWaveField operator*(cplx c, const PlaneWaveField& u);
inline PlaneWaveField operator*(double c, const PlaneWaveField& u) { return cplx(c) * u; }

PlaneWaveField pwProduct(const PlaneWaveField& u, const PlaneWaveField& v, ProductKind kind);
PlaneWaveField pwDerivative(const PlaneWaveField& u, PwIndex index);
PlaneWaveField pwMultiplier(const PlaneWaveField& u, const Symbol& symbol);
double pwResidualNorm(const PlaneWaveField& u);

// time-frequency rescaling: (tau, xi, c) -> (lam tau, lam xi, mu c)
PlaneWaveField pwRescale(const PlaneWaveField& u, double lam, double mu);

struct PwSampler {
  int maxXi = 3;                // xi integer in [-maxXi, maxXi]^2
  double tauMin = 0.5, tauMax = 2.5;
  double tauQuantum = 1.0 / 1024;
  bool realValued = true;       // add conjugate partner modes
  double scale = 1.0;
};

PlaneWaveField pwRandom(const Algebra& alg, int modeCount, std::uint64_t seed, const PwSampler& s = {});
std::array<PlaneWaveField, 3> pwLorenzCompatible(const Algebra& alg, int modeCount, std::uint64_t seed,
                                                 const PwSampler& s = {});

// generic field interface used by the null-form and system templates
inline PlaneWaveField deriv(const PlaneWaveField& u, int i) {
  return pwDerivative(u, i == 1 ? PwIndex::X1 : PwIndex::X2);
}
inline PlaneWaveField mult(const PlaneWaveField& u, const Symbol& s) { return pwMultiplier(u, s); }
inline PlaneWaveField bracket(const PlaneWaveField& u, const PlaneWaveField& v) {
  return pwProduct(u, v, ProductKind::Bracket);
}
inline PlaneWaveField product(const PlaneWaveField& u, const PlaneWaveField& v) {
  return pwProduct(u, v, ProductKind::MatrixProduct);
}
inline PlaneWaveField zeroLike(const PlaneWaveField& u) { return PlaneWaveField(u.n(), u.cap()); }

}  // namespace ym
