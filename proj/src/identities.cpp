#include "ym/identities.hpp"

#include "ym/planewave.hpp"
#include "ym/ym.hpp"

namespace ym {

namespace {

using PW = PlaneWaveField;
using P = SpacetimePair<PW>;

PW dt(const PW& u) { return pwDerivative(u, PwIndex::T); }
PW d(const PW& u, int mu) { return mu == 0 ? dt(u) : deriv(u, mu); }
P pair(const PW& u) { return pairOf(u, dt(u)); }

}  // namespace

std::vector<IdentityResidual> planeWaveIdentities(const Algebra& alg, std::uint64_t seed, int modeCount,
                                                  double scale) {
  PwSampler sm;
  sm.scale = scale;
  const auto A = pwLorenzCompatible(alg, modeCount, seed, sm);
  const PW phi = pwRandom(alg, modeCount, seed + 7919, sm);
  const P ph = pair(phi);
  const Symbol Li = Symbol::LambdaPow(-1), L2 = Symbol::LambdaPow(-2);
  std::vector<IdentityResidual> out;
  auto add = [&](std::string name, const PW& r) { out.push_back({std::move(name), pwResidualNorm(r)}); };

  const char* names[3] = {"01", "02", "12"};
  const int pairs[3][2] = {{0, 1}, {0, 2}, {1, 2}};
  const NullFormKind qk[3] = {NullFormKind::Q01, NullFormKind::Q02, NullFormKind::Q12};
  for (int k = 0; k < 3; ++k) {
    const int a = pairs[k][0], b = pairs[k][1];
    add(std::string("trick-") + names[k],
        bracket(d(phi, a), d(phi, b)) - 0.5 * nullForm(qk[k], ph, ph, true));
  }

  std::array<P, 3> LA;
  for (int a = 0; a < 3; ++a) LA[a] = multPair(pair(A[a]), Li);
  PW lhs0 = zeroLike(phi), smooth = zeroLike(phi), lhs1 = zeroLike(phi);
  PW prodL = zeroLike(phi), prodR = zeroLike(phi), smoothL = zeroLike(phi), smoothR = zeroLike(phi);
  for (int a = 0; a < 3; ++a) {
    const PW Aa = raise(a, A[a]), LAa = raise(a, mult(A[a], L2)), dphi = d(phi, a);
    lhs0 = lhs0 + bracket(Aa, dphi);
    smooth = smooth + bracket(LAa, dphi);
    lhs1 = lhs1 + bracket(raise(a, dt(A[a])), dphi);
    prodL = prodL + product(Aa, dphi);
    prodR = prodR + product(dphi, Aa);
    smoothL = smoothL + product(LAa, dphi);
    smoothR = smoothR + product(dphi, LAa);
  }
  add("null0", lhs0 - calligraphicQ(LA, ph) - smooth);
  add("null1", lhs1 - nullForm(NullFormKind::Q01, pair(A[1]), ph, true) -
                   nullForm(NullFormKind::Q02, pair(A[2]), ph, true));

  // W = Lambda^-1 (R1 A2 - R2 A1), w_i = Lambda^-1 R_i A0
  const P W = multPair(pair(A[2]), Li * Symbol::Riesz(1)) - multPair(pair(A[1]), Li * Symbol::Riesz(2));
  const std::array<P, 2> w = {multPair(pair(A[0]), Li * Symbol::Riesz(1)),
                              multPair(pair(A[0]), Li * Symbol::Riesz(2))};
  const PW q0w = nullForm(NullFormKind::Q01, w[0], ph, false) + nullForm(NullFormKind::Q02, w[1], ph, false);
  const PW q0wR = nullForm(NullFormKind::Q01, ph, w[0], false) + nullForm(NullFormKind::Q02, ph, w[1], false);
  add("null2", prodL + nullForm(NullFormKind::Q12, W, ph, false) + q0w - smoothL);
  add("null3", prodR - nullForm(NullFormKind::Q12, ph, W, false) - q0wR - smoothR);

  SystemState<PW> s;
  s.A = A;
  for (int a = 0; a < 3; ++a) s.Adot[a] = dt(A[a]);
  s.F = curvature(s);
  for (int k = 0; k < 3; ++k) s.Fdot[k] = dt(s.F[k]);

  const auto gam = gammaDecomposition(s);
  for (int b = 0; b < 3; ++b) {
    PW direct = zeroLike(phi);
    for (int a = 0; a < 3; ++a) direct = direct + bracket(raise(a, A[a]), d(A[a], b));
    add("gamma-" + std::to_string(b), direct - gam[b][0] - gam[b][1] - gam[b][2] - gam[b][3]);
  }

  const auto rhs = assembleRHS(s);
  const auto m4 = ym4Rhs(s.A, s.Adot);
  const auto nf = ymf2Rhs(s);
  for (int b = 0; b < 3; ++b) add("system-A" + std::to_string(b), rhs.M[b] - m4[b]);
  for (int k = 0; k < 3; ++k) add(std::string("system-F") + names[k], rhs.N[k] - nf[k]);
  return out;
}

}  // namespace ym
