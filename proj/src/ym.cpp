#include "ym/ym.hpp"

#include <cmath>
#include <random>
#include <sstream>
#include <stdexcept>

namespace ym {

namespace {

// fdot from (a, adot, f): fdot_12 from the potential, fdot_0i = d^j f_ji + [a^a, f_ai]
std::array<GridField, 3> fdotFromData(const std::array<GridField, 3>& a, const std::array<GridField, 3>& ad,
                                      const std::array<GridField, 3>& f) {
  const GridField fd12 = deriv(ad[2], 1) - deriv(ad[1], 2) + bracket(ad[1], a[2]) + bracket(a[1], ad[2]);
  const GridField fd01 = -deriv(f[2], 2) - bracket(a[0], f[0]) - bracket(a[2], f[2]);
  const GridField fd02 = deriv(f[2], 1) - bracket(a[0], f[1]) + bracket(a[1], f[2]);
  return {fd01, fd02, fd12};
}

GridField covDeriv(const GridField& A, const GridField& X, int i) { return deriv(X, i) + bracket(A, X); }

// (-Lap)^-1 off the zero mode, identity on it
GridField precondition(const GridField& r) {
  const auto& g = *r.grid();
  const int N = g.N(), Nh = g.Nh();
  CplxVec s = r.spectrum();
  for (int c = 0; c < r.dim(); ++c)
    for (int j2 = 0; j2 < N; ++j2) {
      const double x2 = g.xi(g.k2(j2));
      for (int j1 = 0; j1 < Nh; ++j1) {
        const double x1 = g.xi(j1);
        const double m2 = x1 * x1 + x2 * x2;
        if (m2 > 0) s[c * g.modes() + static_cast<std::size_t>(j2) * Nh + j1] /= m2;
      }
    }
  return GridField::fromSpectrum(r.grid(), r.algebra(), std::move(s), r.bandLimited());
}

}  // namespace

DataFields dataFromPotential(const std::array<GridField, 3>& a, const std::array<GridField, 3>& adot) {
  const std::array<GridField, 3> f = curvature<GridField>({pairOf(a[0], adot[0]), pairOf(a[1], adot[1]),
                                                          pairOf(a[2], adot[2])});
  return {f, fdotFromData(a, adot, f)};
}

FieldState stateFromPotential(const std::array<GridField, 3>& a, const std::array<GridField, 3>& adot) {
  auto d = dataFromPotential(a, adot);
  return {a, adot, d.f, d.fdot};
}

GridField gaussField(const FieldState& s) {
  return -(deriv(s.F[0], 1) + deriv(s.F[1], 2) + bracket(s.A[1], s.F[0]) + bracket(s.A[2], s.F[1]));
}

Constraints constraintResiduals(const FieldState& s) {
  Constraints c;
  c.lorenz = l2Norm(s.Adot[0] - deriv(s.A[1], 1) - deriv(s.A[2], 2));
  c.gauss = l2Norm(gaussField(s));
  const auto F = curvature(s);
  for (int k = 0; k < 3; ++k) c.compat = std::max(c.compat, l2Norm(s.F[k] - F[k]));
  return c;
}

double energyOfCurvature(const std::array<GridField, 3>& F) {
  double e = 0;
  for (const auto& f : F) e += innerL2(f, f);
  return 2 * e;
}

double energy(const FieldState& s) { return energyOfCurvature(s.F); }

GaugeField gaugeFromGenerator(const GridField& X) {
  const auto& alg = *X.algebra();
  const int N = X.grid()->N();
  GaugeField U{X.grid(), X.algebra(), {}};
  U.U.reserve(X.grid()->points());
  for (int j2 = 0; j2 < N; ++j2)
    for (int j1 = 0; j1 < N; ++j1) U.U.push_back(alg.groupExp(X.at(j1, j2)));
  return U;
}

namespace {

void requireUnitary(const GaugeField& U) {
  const int n = U.alg->n();
  const Matrix I = Matrix::Identity(n, n);
  for (const auto& u : U.U) {
    const double e = (u * u.adjoint() - I).norm();
    if (!(e <= 1e-8)) {
      std::ostringstream os;
      os << "gaugeTransform: U is not unitary (|UU* - I| = " << e << ")";
      throw std::invalid_argument(os.str());
    }
  }
}

// spectral d_i of each matrix entry of U
std::vector<Matrix> derivU(const GaugeField& U, int i) {
  const auto& g = *U.grid;
  const int N = g.N(), Nh = g.Nh(), n = U.alg->n();
  const std::size_t np = g.points();
  std::vector<Matrix> out(np, Matrix::Zero(n, n));
  RealVec buf(np), res(np);
  CplxVec sp(g.modes());
  for (int p = 0; p < n; ++p)
    for (int q = 0; q < n; ++q)
      for (int part = 0; part < 2; ++part) {
        for (std::size_t k = 0; k < np; ++k) buf[k] = part ? U.U[k](p, q).imag() : U.U[k](p, q).real();
        g.forward(buf.data(), sp.data());
        for (int j2 = 0; j2 < N; ++j2)
          for (int j1 = 0; j1 < Nh; ++j1) {
            auto& z = sp[static_cast<std::size_t>(j2) * Nh + j1];
            const bool nyq = (i == 1 && j1 == N / 2) || (i == 2 && j2 == N / 2);
            const double k = i == 1 ? g.xi(j1) : g.xi(g.k2(j2));
            z = nyq ? 0.0 : z * std::complex<double>(0, k);
          }
        g.inverse(sp.data(), res.data());
        for (std::size_t k = 0; k < np; ++k) out[k](p, q) += part ? cplx(0, res[k]) : cplx(res[k], 0);
      }
  return out;
}

template <class Fn>
GridField pointwise(const GaugeField& U, Fn fn) {
  const auto& alg = *U.alg;
  const int N = U.grid->N();
  const std::size_t np = U.grid->points();
  RealVec v(np * alg.dim());
  for (int j2 = 0; j2 < N; ++j2)
    for (int j1 = 0; j1 < N; ++j1) {
      const std::size_t k = static_cast<std::size_t>(j2) * N + j1;
      const LieElement e = alg.fromMatrix(fn(k, j1, j2));
      for (int c = 0; c < alg.dim(); ++c) v[c * np + k] = e.coeffs[c];
    }
  return GridField::fromPhysical(U.grid, U.alg, std::move(v));
}

GridField conj1(const GaugeField& U, const GridField& X) {
  const auto& alg = *U.alg;
  return pointwise(U, [&](std::size_t k, int j1, int j2) {
    return Matrix(U.U[k] * alg.toMatrix(X.at(j1, j2)) * U.U[k].adjoint());
  });
}

}  // namespace

std::array<GridField, 3> conjugate(const GaugeField& U, const std::array<GridField, 3>& F) {
  requireUnitary(U);
  return {conj1(U, F[0]), conj1(U, F[1]), conj1(U, F[2])};
}

FieldState gaugeTransform(const GaugeField& U, const FieldState& s) {
  requireUnitary(U);
  const auto& alg = *U.alg;
  FieldState out;
  out.A[0] = conj1(U, s.A[0]);
  for (int i = 1; i <= 2; ++i) {
    const auto dU = derivU(U, i);
    out.A[i] = pointwise(U, [&](std::size_t k, int j1, int j2) {
      return Matrix(U.U[k] * alg.toMatrix(s.A[i].at(j1, j2)) * U.U[k].adjoint() - dU[k] * U.U[k].adjoint());
    });
  }
  for (int b = 0; b < 3; ++b) {
    out.Adot[b] = conj1(U, s.Adot[b]);
    out.F[b] = conj1(U, s.F[b]);
    out.Fdot[b] = conj1(U, s.Fdot[b]);
  }
  return out;
}

ProjectionResult projectGaussData(const FieldState& s, double tol, int maxIter) {
  const auto& A = s.A;
  auto K = [&](const GridField& x) {
    return -(covDeriv(A[1], covDeriv(A[1], x, 1), 1) + covDeriv(A[2], covDeriv(A[2], x, 2), 2));
  };
  const GridField b = -gaussField(s);
  GridField chi = zeroLike(b);
  GridField r = b;
  double rn = l2Norm(r);
  int it = 0;
  if (rn > tol) {
    GridField z = precondition(r);
    GridField p = z;
    double rz = innerL2(r, z);
    while (rn > 0.5 * tol) {
      if (it >= maxIter) {
        std::ostringstream os;
        os << "projectGaussData: no convergence after " << maxIter << " iterations, residual " << rn;
        throw std::runtime_error(os.str());
      }
      ++it;
      const GridField Kp = K(p);
      const double alpha = rz / innerL2(p, Kp);
      chi = chi + alpha * p;
      r = r - alpha * Kp;
      rn = l2Norm(r);
      z = precondition(r);
      const double rzNew = innerL2(r, z);
      p = z + (rzNew / rz) * p;
      rz = rzNew;
    }
  }
  FieldState out = s;
  if (it > 0) {
    for (int i = 1; i <= 2; ++i) {
      const GridField Dchi = covDeriv(A[i], chi, i);
      out.Adot[i] = s.Adot[i] + Dchi;
      out.F[i - 1] = s.F[i - 1] + Dchi;
    }
    out.Fdot = fdotFromData(out.A, out.Adot, out.F);
  }
  const double g = l2Norm(gaussField(out));
  if (!(g <= tol)) {
    std::ostringstream os;
    os << "projectGaussData: residual " << g << " above tolerance " << tol << " after " << it << " iterations";
    throw std::runtime_error(os.str());
  }
  return {out, it, g};
}

GridField smoothRandomField(GridPtr grid, AlgebraPtr alg, std::uint64_t seed, double scale, int kData) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-scale, scale);
  const int N = grid->N();
  const std::size_t np = grid->points();
  RealVec v(np * alg->dim(), 0.0);
  for (int c = 0; c < alg->dim(); ++c)
    for (int k2 = -kData; k2 <= kData; ++k2)
      for (int k1 = 0; k1 <= kData; ++k1) {
        if (k1 == 0 && k2 < 0) continue;
        const double w = 1.0 / (1 + k1 * k1 + k2 * k2);
        const double ac = u(rng) * w, as = (k1 || k2) ? u(rng) * w : 0.0;
        for (int j2 = 0; j2 < N; ++j2)
          for (int j1 = 0; j1 < N; ++j1) {
            const double ph = grid->xi(k1) * grid->x(j1) + grid->xi(k2) * grid->x(j2);
            v[c * np + static_cast<std::size_t>(j2) * N + j1] += ac * std::cos(ph) + as * std::sin(ph);
          }
      }
  return GridField::fromPhysical(grid, alg, std::move(v));
}

FieldState constrainedData(GridPtr grid, AlgebraPtr alg, std::uint64_t seed, double scale, int kData, double tol) {
  std::seed_seq seq{seed};
  std::vector<std::uint64_t> seeds(5);
  seq.generate(seeds.begin(), seeds.end());
  std::array<GridField, 3> a, ad;
  for (int b = 0; b < 3; ++b) a[b] = smoothRandomField(grid, alg, seeds[b], scale, kData);
  for (int i = 1; i <= 2; ++i) ad[i] = smoothRandomField(grid, alg, seeds[2 + i], scale, kData);
  ad[0] = deriv(a[1], 1) + deriv(a[2], 2);
  return projectGaussData(stateFromPotential(a, ad), tol, 200).state;
}

}  // namespace ym
