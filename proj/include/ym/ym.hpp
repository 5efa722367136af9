#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "ym/nullforms.hpp"
#include "ym/spectral.hpp"
#include "ym/splitting.hpp"

namespace ym {

// (A_a, dA_a) for a = 0,1,2 and (F_k, dF_k) for k = 01, 02, 12
template <class Field>
struct SystemState {
  std::array<Field, 3> A, Adot;
  std::array<Field, 3> F, Fdot;

  SpacetimePair<Field> a(int b) const { return {A[b], Adot[b]}; }
  SpacetimePair<Field> f(int k) const { return {F[k], Fdot[k]}; }
};

using FieldState = SystemState<GridField>;

template <class Field>
struct Rhs {
  std::array<Field, 3> M;  // box A_b = M_b
  std::array<Field, 3> N;  // box F_k = N_k, k = 01, 02, 12
};

// storage slot of F_ab, a != b
inline int fSlot(int a, int b) {
  const int lo = a < b ? a : b, hi = a < b ? b : a;
  return lo == 0 ? hi - 1 : 2;
}

namespace detail {

template <class Field>
std::optional<Field> antisym(const std::array<Field, 3>& c, int a, int b) {
  if (a == b) return std::nullopt;
  return a < b ? c[fSlot(a, b)] : -c[fSlot(a, b)];
}

template <class Field>
void accumulate(std::optional<Field>& acc, const Field& x) {
  acc = acc ? *acc + x : x;
}

template <class Field>
Field orZero(const std::optional<Field>& x, const Field& like) {
  return x ? *x : zeroLike(like);
}

}  // namespace detail

// F_0i = dA_i - d_i A_0 + [A_0,A_i], F_12 = d_1 A_2 - d_2 A_1 + [A_1,A_2]
template <class Field>
std::array<Field, 3> curvature(const std::array<SpacetimePair<Field>, 3>& A) {
  auto need = [](const SpacetimePair<Field>& p) -> const Field& {
    if (!p.dt) throw std::invalid_argument("curvature needs time derivatives of A");
    return *p.dt;
  };
  return {need(A[1]) - deriv(A[0].value, 1) + bracket(A[0].value, A[1].value),
          need(A[2]) - deriv(A[0].value, 2) + bracket(A[0].value, A[2].value),
          deriv(A[2].value, 1) - deriv(A[1].value, 2) + bracket(A[1].value, A[2].value)};
}

template <class Field>
std::array<Field, 3> curvature(const SystemState<Field>& s) {
  return curvature<Field>({s.a(0), s.a(1), s.a(2)});
}

// Right side of box A_b = -2[A^a, d_a A_b] + [A^a, d_b A_a] - [A^a,[A_a,A_b]] (box = d^a d_a)
template <class Field>
std::array<Field, 3> ym4Rhs(const std::array<Field, 3>& A, const std::array<Field, 3>& Adot) {
  std::array<std::array<Field, 3>, 3> d;  // d[a][mu] = d_mu A_a
  for (int a = 0; a < 3; ++a) d[a] = {Adot[a], deriv(A[a], 1), deriv(A[a], 2)};
  const std::array<Field, 3> C = {bracket(A[0], A[1]), bracket(A[0], A[2]), bracket(A[1], A[2])};
  std::array<Field, 3> out;
  for (int b = 0; b < 3; ++b) {
    Field acc = -2.0 * bracket(raise(0, A[0]), d[b][0]);
    for (int a = 1; a < 3; ++a) acc = acc - 2.0 * bracket(A[a], d[b][a]);
    for (int a = 0; a < 3; ++a) {
      acc = acc + bracket(raise(a, A[a]), d[a][b]);
      if (a != b) acc = acc - bracket(raise(a, A[a]), *detail::antisym(C, a, b));
    }
    out[b] = acc;
  }
  return out;
}

// Right side of box F_bg as expanded in Lorenz gauge, for (b,g) = (0,1), (0,2), (1,2)
template <class Field>
std::array<Field, 3> ymf2Rhs(const SystemState<Field>& s) {
  const auto& A = s.A;
  std::array<std::array<Field, 3>, 3> d;
  for (int a = 0; a < 3; ++a) d[a] = {s.Adot[a], deriv(A[a], 1), deriv(A[a], 2)};
  const std::array<Field, 3> C = {bracket(A[0], A[1]), bracket(A[0], A[2]), bracket(A[1], A[2])};
  const int pairs[3][2] = {{0, 1}, {0, 2}, {1, 2}};
  std::array<Field, 3> out;
  for (int k = 0; k < 3; ++k) {
    const int b = pairs[k][0], g = pairs[k][1];
    const Field& F = s.F[k];
    const std::array<Field, 3> dF = {s.Fdot[k], deriv(F, 1), deriv(F, 2)};
    std::optional<Field> acc;
    for (int a = 0; a < 3; ++a) {
      const double sg = a == 0 ? -1.0 : 1.0;
      detail::accumulate(acc, sg * (-2.0 * bracket(A[a], dF[a]) + 2.0 * bracket(d[a][g], d[b][a]) -
                                    2.0 * bracket(d[a][b], d[g][a]) + 2.0 * bracket(d[b][a], d[g][a]) +
                                    2.0 * bracket(d[a][b], d[a][g]) - bracket(A[a], bracket(A[a], F))));
      auto Fab = detail::antisym(s.F, a, b), Fag = detail::antisym(s.F, a, g);
      auto Cag = detail::antisym(C, a, g), Cab = detail::antisym(C, a, b);
      if (Fab && Cag) detail::accumulate(acc, sg * 2.0 * bracket(*Fab, *Cag));
      if (Fag && Cab) detail::accumulate(acc, sg * -2.0 * bracket(*Fag, *Cab));
      if (Cab && Cag) detail::accumulate(acc, sg * -2.0 * bracket(*Cab, *Cag));
    }
    out[k] = *acc;
  }
  return out;
}

// Gamma^1..4_b with sum_i Gamma^i_b = [A^a, d_b A_a] in Lorenz gauge, for b = 0, 1, 2
template <class Field>
std::array<std::array<Field, 4>, 3> gammaDecomposition(const SystemState<Field>& s) {
  using P = SpacetimePair<Field>;
  const Symbol L2 = Symbol::LambdaPow(-2);
  const auto& A = s.A;
  const auto& Ad = s.Adot;
  std::array<std::array<Field, 3>, 3> d;
  for (int a = 0; a < 3; ++a) d[a] = {Ad[a], deriv(A[a], 1), deriv(A[a], 2)};
  const Field divA = d[1][1] + d[2][2];
  const Field divAd = deriv(Ad[1], 1) + deriv(Ad[2], 2);
  const Field p = mult(divA, L2);
  const Field pt = mult(divAd, L2);
  const Field W = mult(d[2][1] - d[1][2], L2);
  const Field Wt = mult(deriv(Ad[2], 1) - deriv(Ad[1], 2), L2);
  const Field p1 = deriv(p, 1), p2 = deriv(p, 2), W1 = deriv(W, 1), W2 = deriv(W, 2);
  const Field G = s.F[2] - bracket(A[1], A[2]);
  const Field Gt = s.Fdot[2] - bracket(Ad[1], A[2]) - bracket(A[1], Ad[2]);
  const std::array<Field, 2> LG = {mult(G, L2 * Symbol::Derivative(1)), mult(G, L2 * Symbol::Derivative(2))};
  const auto df = divergenceFreePart(A[1], A[2]);
  const auto cf = curlFreePart(A[1], A[2]);
  const std::array<Field, 2> split = {df.first + cf.first, df.second + cf.second};
  const P u0 = s.a(0);

  std::array<std::array<Field, 4>, 3> out;
  for (int b = 0; b < 3; ++b) {
    // d_0 A_0 is replaced by div A
    const P v = b == 0 ? P{divA, divAd} : P{d[0][b], deriv(Ad[0], b)};
    out[b][0] = gamma1(u0, v);
    const Field Wb = b == 0 ? Wt : deriv(W, b);
    const Field pb = b == 0 ? pt : deriv(p, b);
    out[b][1] = (bracket(deriv(pb, 1), W2) - bracket(deriv(pb, 2), W1)) -
                (bracket(p1, deriv(Wb, 2)) - bracket(p2, deriv(Wb, 1)));
    const Field Gb = b == 0 ? Gt : deriv(G, b);
    out[b][2] = bracket(LG[0], mult(Gb, L2 * Symbol::Derivative(1))) +
                bracket(LG[1], mult(Gb, L2 * Symbol::Derivative(2)));
    out[b][3] = bracket(split[0], mult(d[1][b], L2)) + bracket(mult(A[1], L2), d[1][b]) +
                bracket(split[1], mult(d[2][b], L2)) + bracket(mult(A[2], L2), d[2][b]);
  }
  return out;
}

// Null-form assembly of (M_b, N_bg) with the Gamma decomposition of [A^a, d_b A_a].
template <class Field>
Rhs<Field> assembleRHS(const SystemState<Field>& s) {
  using P = SpacetimePair<Field>;
  const Symbol Li = Symbol::LambdaPow(-1), L2 = Symbol::LambdaPow(-2);
  const auto& A = s.A;
  const auto& Ad = s.Adot;

  std::array<std::array<Field, 3>, 3> d;  // d[a][mu] = d_mu A_a
  for (int a = 0; a < 3; ++a) d[a] = {Ad[a], deriv(A[a], 1), deriv(A[a], 2)};
  const std::array<Field, 3> C = {bracket(A[0], A[1]), bracket(A[0], A[2]), bracket(A[1], A[2])};
  std::array<P, 3> LA;
  std::array<Field, 3> L2A;
  for (int a = 0; a < 3; ++a) {
    LA[a] = multPair(s.a(a), Li);
    L2A[a] = mult(A[a], L2);
  }

  // [Lambda^-2 A^a, d_a phi]
  auto smooth = [&](const std::array<Field, 3>& dphi) {
    Field out = bracket(raise(0, L2A[0]), dphi[0]);
    for (int a = 1; a < 3; ++a) out = out + bracket(L2A[a], dphi[a]);
    return out;
  };
  // [Lambda^-2 d_k A^a, d_a A_c]
  auto smoothK = [&](int k, int c) {
    const Symbol sk = L2 * Symbol::Derivative(k);
    Field out = bracket(raise(0, mult(A[0], sk)), d[c][0]);
    for (int a = 1; a < 3; ++a) out = out + bracket(mult(A[a], sk), d[c][a]);
    return out;
  };
  // [A^a,[A_a,X]]
  auto nested = [&](const Field& X) {
    Field out = raise(0, bracket(A[0], bracket(A[0], X)));
    for (int a = 1; a < 3; ++a) out = out + bracket(A[a], bracket(A[a], X));
    return out;
  };
  // 2[F_ab,[A^a,A_g]] - 2[F_ag,[A^a,A_b]] - 2[[A^a,A_b],[A_a,A_g]]
  auto quartic = [&](int b, int g) {
    std::optional<Field> acc;
    for (int a = 0; a < 3; ++a) {
      const double sg = a == 0 ? -1.0 : 1.0;
      auto Fab = detail::antisym(s.F, a, b), Fag = detail::antisym(s.F, a, g);
      auto Cag = detail::antisym(C, a, g), Cab = detail::antisym(C, a, b);
      if (Fab && Cag) detail::accumulate(acc, sg * 2.0 * bracket(*Fab, *Cag));
      if (Fag && Cab) detail::accumulate(acc, sg * -2.0 * bracket(*Fag, *Cab));
      if (Cab && Cag) detail::accumulate(acc, sg * -2.0 * bracket(*Cab, *Cag));
    }
    return detail::orZero(acc, A[0]);
  };
  // Q0[A_a, A_c]
  auto Q0A = [&](int a, int c) {
    return bracket(d[a][1], d[c][1]) + bracket(d[a][2], d[c][2]) - bracket(Ad[a], Ad[c]);
  };
  // Q_{mu nu}[A^a, A_a] = sum_a 2 [d_mu A^a, d_nu A_a]
  auto QAA = [&](int mu, int nu) {
    Field out = raise(0, 2.0 * bracket(d[0][mu], d[0][nu]));
    for (int a = 1; a < 3; ++a) out = out + 2.0 * bracket(d[a][mu], d[a][nu]);
    return out;
  };
  auto Qcal = [&](const std::array<P, 3>& u, const P& v) { return calligraphicQ(u, v); };
  auto LdA = [&](int k) {
    std::array<P, 3> out;
    for (int a = 0; a < 3; ++a) out[a] = multPair(s.a(a), Li * Symbol::Derivative(k));
    return out;
  };

  Rhs<Field> r;

  const auto gam = gammaDecomposition(s);

  for (int b = 0; b < 3; ++b) {
    const Field g = gam[b][0] + gam[b][1] + gam[b][2] + gam[b][3];

    Field cubic = zeroLike(A[0]);
    for (int a = 0; a < 3; ++a)
      if (a != b) cubic = cubic + bracket(raise(a, A[a]), *detail::antisym(C, a, b));

    r.M[b] = -2.0 * Qcal(LA, s.a(b)) + g - 2.0 * smooth(d[b]) - cubic;
  }

  {
    const std::array<Field, 3> dF = {s.Fdot[2], deriv(s.F[2], 1), deriv(s.F[2], 2)};
    r.N[2] = -2.0 * Qcal(LA, s.f(2)) + 2.0 * Qcal(LdA(2), s.a(1)) - 2.0 * Qcal(LdA(1), s.a(2)) + 2.0 * Q0A(1, 2) +
             QAA(1, 2) - 2.0 * smooth(dF) + 2.0 * smoothK(2, 1) - 2.0 * smoothK(1, 2) - nested(s.F[2]) +
             quartic(1, 2);
  }
  for (int i = 1; i <= 2; ++i) {
    const int k = i - 1;
    const std::array<Field, 3> dF = {s.Fdot[k], deriv(s.F[k], 1), deriv(s.F[k], 2)};
    Field q0j = zeroLike(A[0]);
    for (int j = 1; j <= 2; ++j) q0j = q0j + bracket(Ad[j], d[i][j]) - bracket(d[j][j], Ad[i]);
    r.N[k] = -2.0 * Qcal(LA, s.f(k)) + 2.0 * Qcal(LdA(i), s.a(0)) - 2.0 * q0j + 2.0 * Q0A(0, i) + QAA(0, i) -
             2.0 * smooth(dF) + 2.0 * smoothK(i, 0) - nested(s.F[k]) + quartic(0, i);
  }
  return r;
}

// ---- grid-only physics ----

struct Constraints {
  double lorenz = 0;
  double gauss = 0;
  double compat = 0;
};

struct DiagnosticsRecord {
  double time = 0;
  double energy = 0;
  double lorenzResidual = 0;
  double gaussResidual = 0;
  double curvatureResidual = 0;
  double twinDiff = 0;
  double directEnergy = 0;
  bool stepRejected = false;
};

struct DataFields {
  std::array<GridField, 3> f, fdot;
};

DataFields dataFromPotential(const std::array<GridField, 3>& a, const std::array<GridField, 3>& adot);
FieldState stateFromPotential(const std::array<GridField, 3>& a, const std::array<GridField, 3>& adot);

GridField gaussField(const FieldState& s);  // d^i F_i0 + [A^i, F_i0]
Constraints constraintResiduals(const FieldState& s);
double energy(const FieldState& s);
double energyOfCurvature(const std::array<GridField, 3>& F);

// pointwise group-valued field
struct GaugeField {
  GridPtr grid;
  AlgebraPtr alg;
  std::vector<Matrix> U;
};

GaugeField gaugeFromGenerator(const GridField& X);  // U = exp(X) pointwise
// time-independent U: A_a -> U A_a U^-1 - (d_a U) U^-1, F -> U F U^-1
FieldState gaugeTransform(const GaugeField& U, const FieldState& s);
std::array<GridField, 3> conjugate(const GaugeField& U, const std::array<GridField, 3>& F);

struct ProjectionResult {
  FieldState state;
  int iterations = 0;
  double residual = 0;
};

// Covariant projection onto the Gauss constraint: solve -D^i D_i chi = -g by preconditioned CG and set
// F_i0 -> F_i0 - D_i chi (i.e. adot_i -> adot_i + D_i chi); fdot is rebuilt from the data formula.
// Converges quickly while max|A| stays well below 1.
ProjectionResult projectGaussData(const FieldState& s, double tol, int maxIter);

// Random smooth potential with harmonics |k|_inf <= kData and amplitude scale, Lorenz-compatible adot_0,
// curvature data from the data formula, Gauss-projected to tol.
FieldState constrainedData(GridPtr grid, AlgebraPtr alg, std::uint64_t seed, double scale, int kData = 3,
                           double tol = 1e-10);

// random smooth g-valued field with |k|_inf <= kData, coefficients uniform in [-scale,scale] / (1+|k|^2)
GridField smoothRandomField(GridPtr grid, AlgebraPtr alg, std::uint64_t seed, double scale, int kData);

}  // namespace ym
