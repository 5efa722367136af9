#pragma once

#include <cmath>
#include <complex>
#include <cstdlib>
#include <cstddef>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ym/algebra.hpp"
#include "ym/planewave.hpp"
#include "ym/splitting.hpp"
#include "ym/symbol.hpp"

namespace ym {

template <class T>
struct FftwAllocator {
  using value_type = T;
  FftwAllocator() = default;
  template <class U>
  FftwAllocator(const FftwAllocator<U>&) {}
  T* allocate(std::size_t n);
  void deallocate(T* p, std::size_t) noexcept;
  template <class U>
  bool operator==(const FftwAllocator<U>&) const { return true; }
};

using RealVec = std::vector<double, FftwAllocator<double>>;
using CplxVec = std::vector<std::complex<double>, FftwAllocator<std::complex<double>>>;

class FftPlans;

// FFTW planning is not thread-safe; every planner call holds this lock
std::mutex& fftwPlannerMutex();

// N x N periodic torus of side L. Spectra use the half-complex layout (x2 rows, N/2+1 x1 columns).
class TorusGrid {
 public:
  TorusGrid(int N, double L, bool dealias);

  int N() const { return N_; }
  double L() const { return L_; }
  bool dealias() const { return dealias_; }
  int Nh() const { return N_ / 2 + 1; }
  std::size_t points() const { return static_cast<std::size_t>(N_) * N_; }
  std::size_t modes() const { return static_cast<std::size_t>(N_) * Nh(); }
  double dx() const { return L_ / N_; }
  double x(int j) const { return j * dx(); }
  // signed wavenumber of row index j2 (Nyquist row maps to -N/2)
  int k2(int j2) const { return j2 < N_ / 2 ? j2 : j2 - N_; }
  int k1(int j1) const { return j1; }
  double xi(int k) const { return 2 * M_PI / L_ * k; }
  // largest |k| kept by the 2/3 rule
  int kmax() const { return (N_ - 1) / 3; }
  bool inBand(int k1, int k2) const { return std::abs(k1) <= kmax() && std::abs(k2) <= kmax(); }

  void forward(const double* in, std::complex<double>* out) const;
  void inverse(const std::complex<double>* in, double* out) const;  // normalized

  bool operator==(const TorusGrid& o) const { return N_ == o.N_ && L_ == o.L_ && dealias_ == o.dealias_; }

 private:
  int N_;
  double L_;
  bool dealias_;
  std::shared_ptr<FftPlans> plans_;
};

using GridPtr = std::shared_ptr<const TorusGrid>;
GridPtr makeGrid(int N, double L = 2 * M_PI, bool dealias = true);

// Lie-algebra valued field on a torus slice. Immutable; physical values and spectrum are computed on
// demand and cached (guarded, so shared read-only use is safe).
class GridField {
 public:
  GridField() = default;
  GridField(GridPtr grid, AlgebraPtr alg);  // zero field

  static GridField fromPhysical(GridPtr grid, AlgebraPtr alg, RealVec values);
  static GridField fromSpectrum(GridPtr grid, AlgebraPtr alg, CplxVec spec, bool bandLimited);

  const GridPtr& grid() const { return grid_; }
  const AlgebraPtr& algebra() const { return alg_; }
  int dim() const { return alg_->dim(); }
  bool valid() const { return static_cast<bool>(store_); }

  const RealVec& physical() const;
  const CplxVec& spectrum() const;
  bool hasPhysical() const;
  bool hasSpectrum() const;
  bool bandLimited() const;

  double value(int component, int j1, int j2) const {
    return physical()[(static_cast<std::size_t>(component) * grid_->N() + j2) * grid_->N() + j1];
  }
  LieElement at(int j1, int j2) const;

 private:
  struct Store {
    std::mutex mu;
    std::optional<RealVec> phys;
    std::optional<CplxVec> spec;
    bool bandLimited = false;
  };
  GridPtr grid_;
  AlgebraPtr alg_;
  std::shared_ptr<Store> store_;
};

GridField operator+(const GridField& u, const GridField& v);
GridField operator-(const GridField& u, const GridField& v);
GridField operator-(const GridField& u);
GridField operator*(double c, const GridField& u);

GridField applyMultiplier(const GridField& u, const Symbol& m);
// 2/3 truncation (no-op on fields already flagged band-limited)
GridField truncate(const GridField& u);

// spectral interpolation onto another grid of the same side (modes common to both, Nyquist dropped)
GridField resample(const GridField& u, GridPtr target);

// two components in, two out
enum class Projection { DivergenceFree, CurlFree };
std::pair<GridField, GridField> applyProjection(Projection kind, const GridField& a1, const GridField& a2);

// Pointwise bracket or product, truncated by the 2/3 rule on inputs and output when the grid dealiases.
// MatrixProduct is the commutative product of one-dimensional (scalar) algebras only.
GridField dealiasedProduct(const GridField& u, const GridField& v, ProductKind kind);

// (sum_xi |<xi>^s u^(xi)|^{r'} (2pi/L)^2)^{1/r'}, u^ = (L/N)^2/(2pi) * DFT
double discreteNorm(const GridField& u, double s, double r);
double l2Norm(const GridField& u);   // grid quadrature
double maxNorm(const GridField& u);  // max over points of the coefficient norm
double innerL2(const GridField& u, const GridField& v);

GridField sampleOnGrid(const PlaneWaveField& u, double t, GridPtr grid, AlgebraPtr alg);

// direct O(N^4) transform, reference for small grids
CplxVec directForward(const TorusGrid& g, const double* in);

void writeSnapshot(const std::string& path, const std::vector<GridField>& components);
std::vector<GridField> readSnapshot(const std::string& path, AlgebraPtr alg);

// generic field interface
inline GridField deriv(const GridField& u, int i) { return applyMultiplier(u, Symbol::Derivative(i)); }
inline GridField mult(const GridField& u, const Symbol& s) { return applyMultiplier(u, s); }
inline GridField bracket(const GridField& u, const GridField& v) {
  return dealiasedProduct(u, v, ProductKind::Bracket);
}
inline GridField product(const GridField& u, const GridField& v) {
  return dealiasedProduct(u, v, ProductKind::MatrixProduct);
}
inline GridField zeroLike(const GridField& u) { return GridField(u.grid(), u.algebra()); }

}  // namespace ym
