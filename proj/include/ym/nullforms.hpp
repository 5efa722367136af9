#pragma once

#include <array>
#include <complex>
#include <optional>
#include <stdexcept>
#include <string>

#include "ym/symbol.hpp"

namespace ym {

// A field together with its time derivative. Time derivatives are never approximated.
template <class Field>
struct SpacetimePair {
  Field value;
  std::optional<Field> dt;
};

template <class Field>
SpacetimePair<Field> pairOf(Field v, Field d) {
  return {std::move(v), std::move(d)};
}

enum class NullFormKind { Q0, Q01, Q02, Q12, q0, q01, q02, q12, CalligraphicQ, Gamma1 };

std::string kindName(NullFormKind k);

// metric diag(-1,1,1): raising index 0 flips sign
template <class Field>
Field raise(int mu, const Field& f) {
  return mu == 0 ? -f : f;
}

template <class Field>
const Field& timeDeriv(const SpacetimePair<Field>& p, NullFormKind k) {
  if (!p.dt) throw std::invalid_argument("null form " + kindName(k) + " needs a time derivative");
  return *p.dt;
}

template <class Field>
Field partial(const SpacetimePair<Field>& p, int mu, NullFormKind k) {
  return mu == 0 ? timeDeriv(p, k) : deriv(p.value, mu);
}

template <class Field>
SpacetimePair<Field> multPair(const SpacetimePair<Field>& p, const Symbol& s) {
  SpacetimePair<Field> out{mult(p.value, s), std::nullopt};
  if (p.dt) out.dt = mult(*p.dt, s);
  return out;
}

template <class Field>
SpacetimePair<Field> derivPair(const SpacetimePair<Field>& p, int i) {
  return multPair(p, Symbol::Derivative(i));
}

template <class Field>
SpacetimePair<Field> operator+(const SpacetimePair<Field>& a, const SpacetimePair<Field>& b) {
  SpacetimePair<Field> out{a.value + b.value, std::nullopt};
  if (a.dt && b.dt) out.dt = *a.dt + *b.dt;
  return out;
}

template <class Field>
SpacetimePair<Field> operator-(const SpacetimePair<Field>& a, const SpacetimePair<Field>& b) {
  SpacetimePair<Field> out{a.value - b.value, std::nullopt};
  if (a.dt && b.dt) out.dt = *a.dt - *b.dt;
  return out;
}

namespace detail {

template <class Field>
Field combineOp(const Field& a, const Field& b, bool commutator) {
  return commutator ? bracket(a, b) : product(a, b);
}

// Q_ab with a < b, a,b in {0,1,2}
template <class Field>
Field qab(const SpacetimePair<Field>& u, const SpacetimePair<Field>& v, int a, int b, bool comm, NullFormKind k) {
  return combineOp(partial(u, a, k), partial(v, b, k), comm) - combineOp(partial(u, b, k), partial(v, a, k), comm);
}

template <class Field>
Field q0(const SpacetimePair<Field>& u, const SpacetimePair<Field>& v, bool comm, NullFormKind k) {
  Field out = -combineOp(timeDeriv(u, k), timeDeriv(v, k), comm);
  for (int i = 1; i <= 2; ++i) out = out + combineOp(deriv(u.value, i), deriv(v.value, i), comm);
  return out;
}

}  // namespace detail

// Ordinary (commutator=false, needs a matrix product) or commutator null forms.
// Commutator versions: Q0[u,v] = [d_a u, d^a v], Q_ab[u,v] = [d_a u, d_b v] - [d_b u, d_a v].
template <class Field>
Field nullForm(NullFormKind kind, const SpacetimePair<Field>& u, const SpacetimePair<Field>& v, bool commutator) {
  using K = NullFormKind;
  switch (kind) {
    case K::Q0:
      return detail::q0(u, v, commutator, kind);
    case K::Q01:
      return detail::qab(u, v, 0, 1, commutator, kind);
    case K::Q02:
      return detail::qab(u, v, 0, 2, commutator, kind);
    case K::Q12:
      return detail::qab(u, v, 1, 2, commutator, kind);
    case K::q0:
    case K::q01:
    case K::q02:
    case K::q12: {
      const Symbol dinv = Symbol::DPow(-1);
      const auto U = multPair(u, dinv), V = multPair(v, dinv);
      K base = kind == K::q0 ? K::Q0 : kind == K::q01 ? K::Q01 : kind == K::q02 ? K::Q02 : K::Q12;
      return nullForm(base, U, V, commutator);
    }
    default:
      throw std::invalid_argument("nullForm: use calligraphicQ or gamma1 for kind " + kindName(kind));
  }
}

// Commutator form Q_{0i}[u,v] for i in {1,2}
template <class Field>
Field Q0i(int i, const SpacetimePair<Field>& u, const SpacetimePair<Field>& v) {
  return nullForm(i == 1 ? NullFormKind::Q01 : NullFormKind::Q02, u, v, true);
}

// Q[u,v] = -Q12[R1 u2 - R2 u1, v] - Q_{0i}[R^i u0, v]
template <class Field>
Field calligraphicQ(const std::array<SpacetimePair<Field>, 3>& u, const SpacetimePair<Field>& v) {
  constexpr auto K = NullFormKind::CalligraphicQ;
  // Q12 only differentiates W in space, so its time derivative is not formed
  const Field w = mult(u[2].value, Symbol::Riesz(1)) - mult(u[1].value, Symbol::Riesz(2));
  const Field w1 = deriv(w, 1), w2 = deriv(w, 2);
  const Field v1 = deriv(v.value, 1), v2 = deriv(v.value, 2);
  Field out = bracket(w2, v1) - bracket(w1, v2);
  const Field& u0t = timeDeriv(u[0], K);
  const Field& vt = timeDeriv(v, K);
  // sum_i [d_i R^i u0, v_t] folded into one bracket
  const Field div = mult(u[0].value, Symbol::Riesz(1) * Symbol::Derivative(1)) +
                    mult(u[0].value, Symbol::Riesz(2) * Symbol::Derivative(2));
  out = out + bracket(div, vt);
  out = out - bracket(mult(u0t, Symbol::Riesz(1)), v1) - bracket(mult(u0t, Symbol::Riesz(2)), v2);
  return out;
}

// Gamma1[u,v] = -[u,v] + [Lambda^-1 R_j u_t, Lambda^-1 R^j v_t]
template <class Field>
Field gamma1(const SpacetimePair<Field>& u, const SpacetimePair<Field>& v, bool commutator = true) {
  constexpr auto K = NullFormKind::Gamma1;
  const Field& ut = timeDeriv(u, K);
  const Field& vt = timeDeriv(v, K);
  Field out = -detail::combineOp(u.value, v.value, commutator);
  for (int j = 1; j <= 2; ++j) {
    const Symbol s = Symbol::LambdaPow(-1) * Symbol::Riesz(j);
    out = out + detail::combineOp(mult(ut, s), mult(vt, s), commutator);
  }
  return out;
}

// Fourier symbols for u = e^{i(tau t + xi x)}, v = e^{i(lambda t + eta x)}.
// Ordinary Q-kinds and Gamma1 return the exact operator factor. q12 uses the sine convention
// (xi1 eta2 - xi2 eta1)/(|xi||eta|), the negative of the operator factor of Q12(D^-1 u, D^-1 v).
std::complex<double> symbolEval(NullFormKind kind, const std::array<double, 2>& xi, double tau,
                                const std::array<double, 2>& eta, double lambda);

// q-symbols in the <xi> form: q0 = <xi><eta> - xi.eta, q0i = -<xi> eta_i + xi_i <eta>, q12 = -xi1 eta2 + xi2 eta1
enum class BracketSymbolKind { q0, q01, q02, q12 };
double bracketSymbol(BracketSymbolKind kind, const std::array<double, 2>& xi, const std::array<double, 2>& eta);

double sinAngle(const std::array<double, 2>& xi, const std::array<double, 2>& eta);

}  // namespace ym
