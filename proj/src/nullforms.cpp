#include "ym/nullforms.hpp"

#include <cmath>

namespace ym {

std::string kindName(NullFormKind k) {
  switch (k) {
    case NullFormKind::Q0: return "Q0";
    case NullFormKind::Q01: return "Q01";
    case NullFormKind::Q02: return "Q02";
    case NullFormKind::Q12: return "Q12";
    case NullFormKind::q0: return "q0";
    case NullFormKind::q01: return "q01";
    case NullFormKind::q02: return "q02";
    case NullFormKind::q12: return "q12";
    case NullFormKind::CalligraphicQ: return "CalligraphicQ";
    case NullFormKind::Gamma1: return "Gamma1";
  }
  return "?";
}

namespace {

double norm2(const std::array<double, 2>& v) { return std::hypot(v[0], v[1]); }
double jb(const std::array<double, 2>& v) { return std::sqrt(1 + v[0] * v[0] + v[1] * v[1]); }
double dot(const std::array<double, 2>& a, const std::array<double, 2>& b) { return a[0] * b[0] + a[1] * b[1]; }

}  // namespace

std::complex<double> symbolEval(NullFormKind kind, const std::array<double, 2>& xi, double tau,
                                const std::array<double, 2>& eta, double lambda) {
  using K = NullFormKind;
  const bool q = kind == K::q0 || kind == K::q01 || kind == K::q02 || kind == K::q12;
  double scale = 1;
  if (q) {
    const double a = norm2(xi), b = norm2(eta);
    if (a == 0 || b == 0) throw std::invalid_argument("symbolEval: q-symbols need nonzero frequencies");
    scale = 1 / (a * b);
  }
  switch (kind) {
    case K::Q0:
    case K::q0:
      return scale * (tau * lambda - dot(xi, eta));
    case K::Q01:
    case K::q01:
      return scale * (-tau * eta[0] + xi[0] * lambda);
    case K::Q02:
    case K::q02:
      return scale * (-tau * eta[1] + xi[1] * lambda);
    case K::Q12:
      return -(xi[0] * eta[1] - xi[1] * eta[0]);
    case K::q12:
      return scale * (xi[0] * eta[1] - xi[1] * eta[0]);
    case K::Gamma1: {
      const double a = jb(xi), b = jb(eta);
      return -1 + dot(xi, eta) * tau * lambda / (a * a * b * b);
    }
    case K::CalligraphicQ:
      break;
  }
  throw std::invalid_argument("symbolEval: no scalar symbol for " + kindName(kind));
}

double bracketSymbol(BracketSymbolKind kind, const std::array<double, 2>& xi, const std::array<double, 2>& eta) {
  switch (kind) {
    case BracketSymbolKind::q0: return jb(xi) * jb(eta) - dot(xi, eta);
    case BracketSymbolKind::q01: return -jb(xi) * eta[0] + xi[0] * jb(eta);
    case BracketSymbolKind::q02: return -jb(xi) * eta[1] + xi[1] * jb(eta);
    case BracketSymbolKind::q12: return -xi[0] * eta[1] + xi[1] * eta[0];
  }
  return 0;
}

double sinAngle(const std::array<double, 2>& xi, const std::array<double, 2>& eta) {
  const double a = norm2(xi), b = norm2(eta);
  if (a == 0 || b == 0) return 0;
  return std::abs(xi[0] * eta[1] - xi[1] * eta[0]) / (a * b);
}

}  // namespace ym
