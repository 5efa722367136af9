#include "ym/spectral.hpp"

#include <fftw3.h>

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <map>
#include <new>
#include <stdexcept>

namespace ym {

template <class T>
T* FftwAllocator<T>::allocate(std::size_t n) {
  if (n == 0) return nullptr;
  void* p = fftw_malloc(n * sizeof(T));
  if (!p) throw std::bad_alloc();
  return static_cast<T*>(p);
}

template <class T>
void FftwAllocator<T>::deallocate(T* p, std::size_t) noexcept {
  fftw_free(p);
}

template struct FftwAllocator<double>;
template struct FftwAllocator<std::complex<double>>;

// FFTW plans for one N, created once with FFTW_ESTIMATE so results do not depend on timing
class FftPlans {
 public:
  explicit FftPlans(int N) : N_(N) {
    RealVec r(static_cast<std::size_t>(N) * N);
    CplxVec c(static_cast<std::size_t>(N) * (N / 2 + 1));
    auto* cp = reinterpret_cast<fftw_complex*>(c.data());
    fwd_ = fftw_plan_dft_r2c_2d(N, N, r.data(), cp, FFTW_ESTIMATE);
    inv_ = fftw_plan_dft_c2r_2d(N, N, cp, r.data(), FFTW_ESTIMATE);
  }
  ~FftPlans() {
    fftw_destroy_plan(fwd_);
    fftw_destroy_plan(inv_);
  }
  FftPlans(const FftPlans&) = delete;
  FftPlans& operator=(const FftPlans&) = delete;

  void forward(const double* in, std::complex<double>* out) const {
    const std::size_t np = static_cast<std::size_t>(N_) * N_;
    thread_local RealVec buf;
    thread_local CplxVec obuf;
    buf.resize(np);
    obuf.resize(static_cast<std::size_t>(N_) * (N_ / 2 + 1));
    std::copy(in, in + np, buf.begin());
    fftw_execute_dft_r2c(fwd_, buf.data(), reinterpret_cast<fftw_complex*>(obuf.data()));
    std::copy(obuf.begin(), obuf.end(), out);
  }

  void inverse(const std::complex<double>* in, double* out) const {
    const std::size_t nm = static_cast<std::size_t>(N_) * (N_ / 2 + 1);
    thread_local CplxVec buf;
    thread_local RealVec obuf;
    buf.resize(nm);
    obuf.resize(static_cast<std::size_t>(N_) * N_);
    std::copy(in, in + nm, buf.begin());
    fftw_execute_dft_c2r(inv_, reinterpret_cast<fftw_complex*>(buf.data()), obuf.data());
    const double s = 1.0 / (static_cast<double>(N_) * N_);
    for (std::size_t i = 0; i < obuf.size(); ++i) out[i] = obuf[i] * s;
  }

 private:
  int N_;
  fftw_plan fwd_{};
  fftw_plan inv_{};
};

std::mutex& fftwPlannerMutex() {
  static std::mutex m;
  return m;
}

namespace {

std::shared_ptr<FftPlans> plansFor(int N) {
  static std::map<int, std::shared_ptr<FftPlans>> cache;
  std::lock_guard<std::mutex> lock(fftwPlannerMutex());
  auto& p = cache[N];
  if (!p) p = std::make_shared<FftPlans>(N);
  return p;
}

}  // namespace

TorusGrid::TorusGrid(int N, double L, bool dealias) : N_(N), L_(L), dealias_(dealias) {
  if (N < 8 || N % 2 != 0) throw std::invalid_argument("grid size must be even and >= 8");
  if (!(L > 0)) throw std::invalid_argument("grid period must be positive");
  plans_ = plansFor(N);
}

void TorusGrid::forward(const double* in, std::complex<double>* out) const { plans_->forward(in, out); }
void TorusGrid::inverse(const std::complex<double>* in, double* out) const { plans_->inverse(in, out); }

GridPtr makeGrid(int N, double L, bool dealias) { return std::make_shared<const TorusGrid>(N, L, dealias); }

GridField::GridField(GridPtr grid, AlgebraPtr alg)
    : grid_(std::move(grid)), alg_(std::move(alg)), store_(std::make_shared<Store>()) {
  store_->spec = CplxVec(grid_->modes() * alg_->dim(), 0.0);
  store_->bandLimited = true;
}

GridField GridField::fromPhysical(GridPtr grid, AlgebraPtr alg, RealVec values) {
  GridField f;
  f.grid_ = std::move(grid);
  f.alg_ = std::move(alg);
  if (values.size() != f.grid_->points() * f.alg_->dim())
    throw std::invalid_argument("fromPhysical: value count does not match grid and algebra");
  for (double v : values)
    if (!std::isfinite(v)) throw std::runtime_error("fromPhysical: non-finite value");
  f.store_ = std::make_shared<Store>();
  f.store_->phys = std::move(values);
  return f;
}

GridField GridField::fromSpectrum(GridPtr grid, AlgebraPtr alg, CplxVec spec, bool bandLimited) {
  GridField f;
  f.grid_ = std::move(grid);
  f.alg_ = std::move(alg);
  if (spec.size() != f.grid_->modes() * f.alg_->dim())
    throw std::invalid_argument("fromSpectrum: coefficient count does not match grid and algebra");
  f.store_ = std::make_shared<Store>();
  f.store_->spec = std::move(spec);
  f.store_->bandLimited = bandLimited;
  return f;
}

const RealVec& GridField::physical() const {
  std::lock_guard<std::mutex> lock(store_->mu);
  if (!store_->phys) {
    const auto& g = *grid_;
    RealVec out(g.points() * dim());
    for (int c = 0; c < dim(); ++c) g.inverse(store_->spec->data() + c * g.modes(), out.data() + c * g.points());
    store_->phys = std::move(out);
  }
  return *store_->phys;
}

const CplxVec& GridField::spectrum() const {
  std::lock_guard<std::mutex> lock(store_->mu);
  if (!store_->spec) {
    const auto& g = *grid_;
    CplxVec out(g.modes() * dim());
    for (int c = 0; c < dim(); ++c) g.forward(store_->phys->data() + c * g.points(), out.data() + c * g.modes());
    store_->spec = std::move(out);
  }
  return *store_->spec;
}

bool GridField::hasPhysical() const {
  std::lock_guard<std::mutex> lock(store_->mu);
  return store_->phys.has_value();
}

bool GridField::hasSpectrum() const {
  std::lock_guard<std::mutex> lock(store_->mu);
  return store_->spec.has_value();
}

bool GridField::bandLimited() const {
  std::lock_guard<std::mutex> lock(store_->mu);
  return store_->bandLimited;
}

LieElement GridField::at(int j1, int j2) const {
  LieElement e = alg_->zero();
  for (int c = 0; c < dim(); ++c) e.coeffs[c] = value(c, j1, j2);
  return e;
}

namespace {

void requireCompatible(const GridField& u, const GridField& v, const char* what) {
  if (!(*u.grid() == *v.grid())) throw std::invalid_argument(std::string(what) + ": grid mismatch");
  if (u.algebra() != v.algebra() && u.algebra()->spec().name() != v.algebra()->spec().name())
    throw std::invalid_argument(std::string(what) + ": algebra mismatch");
}

template <class Vec>
Vec axpby(double a, const Vec& x, double b, const Vec& y) {
  Vec out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = a * x[i] + b * y[i];
  return out;
}

GridField combine(double a, const GridField& u, double b, const GridField& v) {
  requireCompatible(u, v, "field sum");
  const bool bl = u.bandLimited() && v.bandLimited();
  const bool spec = u.hasSpectrum() && v.hasSpectrum();
  const bool phys = u.hasPhysical() && v.hasPhysical();
  if (phys && !spec) {
    return GridField::fromPhysical(u.grid(), u.algebra(), axpby(a, u.physical(), b, v.physical()));
  }
  GridField out = GridField::fromSpectrum(u.grid(), u.algebra(), axpby(a, u.spectrum(), b, v.spectrum()), bl);
  return out;
}

double intPow(double x, double p) {
  if (p == 0) return 1;
  double ip;
  if (std::modf(p, &ip) == 0 && std::abs(p) <= 8) {
    int n = static_cast<int>(std::abs(ip));
    double r = 1;
    for (int i = 0; i < n; ++i) r *= x;
    return p > 0 ? r : 1 / r;
  }
  return std::pow(x, p);
}

}  // namespace

GridField operator+(const GridField& u, const GridField& v) { return combine(1, u, 1, v); }
GridField operator-(const GridField& u, const GridField& v) { return combine(1, u, -1, v); }
GridField operator-(const GridField& u) { return -1.0 * u; }

GridField operator*(double c, const GridField& u) {
  if (u.hasSpectrum() || !u.hasPhysical()) {
    CplxVec s = u.spectrum();
    for (auto& z : s) z *= c;
    return GridField::fromSpectrum(u.grid(), u.algebra(), std::move(s), u.bandLimited());
  }
  RealVec p = u.physical();
  for (auto& x : p) x *= c;
  return GridField::fromPhysical(u.grid(), u.algebra(), std::move(p));
}

GridField applyMultiplier(const GridField& u, const Symbol& m) {
  const auto& g = *u.grid();
  const int N = g.N(), Nh = g.Nh();
  std::vector<std::complex<double>> table(g.modes());
  const std::complex<double> ipow[4] = {1.0, {0, 1}, -1.0, {0, -1}};
  const std::complex<double> iphase = ipow[(m.d1 + m.d2) % 4];
  for (int j2 = 0; j2 < N; ++j2) {
    const double x2 = g.xi(g.k2(j2));
    for (int j1 = 0; j1 < Nh; ++j1) {
      const double x1 = g.xi(g.k1(j1));
      std::complex<double> v = 0;
      const bool nyq = ((m.d1 % 2) && j1 == N / 2) || ((m.d2 % 2) && j2 == N / 2);
      const double mag2 = x1 * x1 + x2 * x2;
      if (!nyq && !(m.dPow != 0 && mag2 == 0)) {
        double r = m.scale * intPow(std::sqrt(1 + mag2), m.lambdaPow) * intPow(x1, m.d1) * intPow(x2, m.d2);
        if (m.dPow != 0) r *= intPow(std::sqrt(mag2), m.dPow);
        v = r * iphase;
      }
      table[static_cast<std::size_t>(j2) * Nh + j1] = v;
    }
  }
  CplxVec s = u.spectrum();
  for (int c = 0; c < u.dim(); ++c) {
    auto* p = s.data() + c * g.modes();
    for (std::size_t i = 0; i < g.modes(); ++i) p[i] *= table[i];
  }
  return GridField::fromSpectrum(u.grid(), u.algebra(), std::move(s), u.bandLimited());
}

namespace {

void truncateInPlace(const TorusGrid& g, CplxVec& s, int dim) {
  const int N = g.N(), Nh = g.Nh();
  for (int c = 0; c < dim; ++c)
    for (int j2 = 0; j2 < N; ++j2)
      for (int j1 = 0; j1 < Nh; ++j1)
        if (!g.inBand(g.k1(j1), g.k2(j2))) s[c * g.modes() + static_cast<std::size_t>(j2) * Nh + j1] = 0;
}

}  // namespace

GridField truncate(const GridField& u) {
  if (u.bandLimited()) return u;
  CplxVec s = u.spectrum();
  truncateInPlace(*u.grid(), s, u.dim());
  return GridField::fromSpectrum(u.grid(), u.algebra(), std::move(s), true);
}

GridField resample(const GridField& u, GridPtr target) {
  const auto& a = *u.grid();
  const auto& b = *target;
  if (a.L() != b.L()) throw std::invalid_argument("resample: torus sides differ");
  const int kc = std::min(a.N(), b.N()) / 2;
  const CplxVec& in = u.spectrum();
  CplxVec out(b.modes() * u.dim(), 0.0);
  const double w = static_cast<double>(b.points()) / a.points();
  for (int c = 0; c < u.dim(); ++c)
    for (int k2 = -kc + 1; k2 < kc; ++k2)
      for (int k1 = 0; k1 < kc; ++k1) {
        const std::size_t ia = c * a.modes() + static_cast<std::size_t>((k2 + a.N()) % a.N()) * a.Nh() + k1;
        const std::size_t ib = c * b.modes() + static_cast<std::size_t>((k2 + b.N()) % b.N()) * b.Nh() + k1;
        out[ib] = w * in[ia];
      }
  return GridField::fromSpectrum(target, u.algebra(), std::move(out), false);
}

std::pair<GridField, GridField> applyProjection(Projection kind, const GridField& a1, const GridField& a2) {
  return kind == Projection::DivergenceFree ? divergenceFreePart(a1, a2) : curlFreePart(a1, a2);
}

GridField dealiasedProduct(const GridField& u, const GridField& v, ProductKind kind) {
  requireCompatible(u, v, "dealiasedProduct");
  const auto& g = *u.grid();
  const int dim = u.dim();
  if (kind == ProductKind::MatrixProduct && dim != 1)
    throw std::invalid_argument("dealiasedProduct: matrix product needs a one-dimensional algebra");
  const GridField U = g.dealias() ? truncate(u) : u;
  const GridField V = g.dealias() ? truncate(v) : v;
  const RealVec& pu = U.physical();
  const RealVec& pv = V.physical();
  const std::size_t np = g.points();
  RealVec out(np * dim, 0.0);
  if (kind == ProductKind::MatrixProduct) {
    for (std::size_t i = 0; i < np; ++i) out[i] = pu[i] * pv[i];
  } else {
    for (const auto& e : u.algebra()->entries()) {
      const double* a = pu.data() + e.a * np;
      const double* b = pv.data() + e.b * np;
      double* o = out.data() + e.c * np;
      for (std::size_t i = 0; i < np; ++i) o[i] += e.f * a[i] * b[i];
    }
  }
  if (!g.dealias()) return GridField::fromPhysical(u.grid(), u.algebra(), std::move(out));
  CplxVec s(g.modes() * dim);
  for (int c = 0; c < dim; ++c) g.forward(out.data() + c * np, s.data() + c * g.modes());
  truncateInPlace(g, s, dim);
  return GridField::fromSpectrum(u.grid(), u.algebra(), std::move(s), true);
}

double discreteNorm(const GridField& u, double s, double r) {
  if (!(r > 1) || r > 2) throw std::invalid_argument("discreteNorm: need 1 < r <= 2");
  const double rp = r / (r - 1);
  const auto& g = *u.grid();
  const int N = g.N(), Nh = g.Nh();
  const double c = (g.dx() * g.dx()) / (2 * M_PI);
  const double cell = std::pow(2 * M_PI / g.L(), 2);
  const CplxVec& sp = u.spectrum();
  double sum = 0;
  for (int j2 = 0; j2 < N; ++j2) {
    const double x2 = g.xi(g.k2(j2));
    for (int j1 = 0; j1 < Nh; ++j1) {
      const double x1 = g.xi(j1);
      double m2 = 0;
      for (int k = 0; k < u.dim(); ++k) m2 += std::norm(sp[k * g.modes() + static_cast<std::size_t>(j2) * Nh + j1]);
      if (m2 == 0) continue;
      const double w = (j1 == 0 || j1 == N / 2) ? 1.0 : 2.0;
      const double a = std::pow(1 + x1 * x1 + x2 * x2, 0.5 * s) * c * std::sqrt(m2);
      sum += w * std::pow(a, rp);
    }
  }
  return std::pow(sum * cell, 1 / rp);
}

double l2Norm(const GridField& u) { return std::sqrt(std::max(0.0, innerL2(u, u))); }

double innerL2(const GridField& u, const GridField& v) {
  requireCompatible(u, v, "innerL2");
  const auto& a = u.physical();
  const auto& b = v.physical();
  double s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s * u.grid()->dx() * u.grid()->dx();
}

double maxNorm(const GridField& u) {
  const auto& p = u.physical();
  const std::size_t np = u.grid()->points();
  double m = 0;
  for (std::size_t i = 0; i < np; ++i) {
    double s = 0;
    for (int c = 0; c < u.dim(); ++c) s += p[c * np + i] * p[c * np + i];
    m = std::max(m, s);
  }
  return std::sqrt(m);
}

GridField sampleOnGrid(const PlaneWaveField& u, double t, GridPtr grid, AlgebraPtr alg) {
  const int N = grid->N();
  const std::size_t np = grid->points();
  RealVec v(np * alg->dim());
  for (int j2 = 0; j2 < N; ++j2)
    for (int j1 = 0; j1 < N; ++j1) {
      Matrix m = u.evaluate(t, grid->x(j1), grid->x(j2));
      LieElement e = alg->fromMatrix(m);
      for (int c = 0; c < alg->dim(); ++c) v[c * np + static_cast<std::size_t>(j2) * N + j1] = e.coeffs[c];
    }
  return GridField::fromPhysical(std::move(grid), std::move(alg), std::move(v));
}

CplxVec directForward(const TorusGrid& g, const double* in) {
  const int N = g.N(), Nh = g.Nh();
  CplxVec out(g.modes(), 0.0);
  for (int j2 = 0; j2 < N; ++j2)
    for (int j1 = 0; j1 < Nh; ++j1) {
      std::complex<double> s = 0;
      for (int y = 0; y < N; ++y)
        for (int x = 0; x < N; ++x) {
          // reduce the phase index mod N before scaling to keep it exact
          long long ph = (static_cast<long long>(j1) * x + static_cast<long long>(j2) * y) % N;
          s += in[static_cast<std::size_t>(y) * N + x] * std::polar(1.0, -2 * M_PI * ph / N);
        }
      out[static_cast<std::size_t>(j2) * Nh + j1] = s;
    }
  return out;
}

namespace {

template <class T>
void putLE(std::ostream& os, T v) {
  unsigned char b[sizeof(T)];
  std::memcpy(b, &v, sizeof(T));
  if constexpr (std::endian::native == std::endian::big) std::reverse(b, b + sizeof(T));
  os.write(reinterpret_cast<const char*>(b), sizeof(T));
}

template <class T>
T getLE(std::istream& is) {
  unsigned char b[sizeof(T)];
  if (!is.read(reinterpret_cast<char*>(b), sizeof(T))) throw std::runtime_error("snapshot: truncated file");
  if constexpr (std::endian::native == std::endian::big) std::reverse(b, b + sizeof(T));
  T v;
  std::memcpy(&v, b, sizeof(T));
  return v;
}

}  // namespace

void writeSnapshot(const std::string& path, const std::vector<GridField>& components) {
  if (components.empty()) throw std::invalid_argument("writeSnapshot: no components");
  const auto& g = *components.front().grid();
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("writeSnapshot: cannot open " + path);
  os.write("YMF2", 4);
  putLE<std::uint32_t>(os, 1);
  putLE<std::uint32_t>(os, static_cast<std::uint32_t>(g.N()));
  putLE<std::uint32_t>(os, static_cast<std::uint32_t>(components.front().dim()));
  putLE<std::uint32_t>(os, static_cast<std::uint32_t>(components.size()));
  putLE<double>(os, g.L());
  for (const auto& c : components)
    for (double v : c.physical()) putLE<double>(os, v);
  if (!os) throw std::runtime_error("writeSnapshot: write failed for " + path);
}

std::vector<GridField> readSnapshot(const std::string& path, AlgebraPtr alg) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("readSnapshot: cannot open " + path);
  char magic[4];
  if (!is.read(magic, 4) || std::memcmp(magic, "YMF2", 4) != 0) throw std::runtime_error("readSnapshot: bad magic");
  if (getLE<std::uint32_t>(is) != 1) throw std::runtime_error("readSnapshot: unsupported version");
  const auto N = getLE<std::uint32_t>(is);
  const auto dim = getLE<std::uint32_t>(is);
  const auto count = getLE<std::uint32_t>(is);
  const double L = getLE<double>(is);
  if (static_cast<int>(dim) != alg->dim()) throw std::runtime_error("readSnapshot: algebra dimension mismatch");
  auto grid = makeGrid(static_cast<int>(N), L);
  std::vector<GridField> out;
  for (std::uint32_t k = 0; k < count; ++k) {
    RealVec v(grid->points() * dim);
    for (auto& x : v) x = getLE<double>(is);
    out.push_back(GridField::fromPhysical(grid, alg, std::move(v)));
  }
  return out;
}

}  // namespace ym
