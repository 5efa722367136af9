#pragma once

#include <complex>

namespace ym {

// Monomial Fourier multiplier c <xi>^s |xi|^a (i xi_1)^m1 (i xi_2)^m2, acting on spatial frequency.
struct Symbol {
  double lambdaPow = 0;
  double dPow = 0;
  int d1 = 0;
  int d2 = 0;
  double scale = 1;

  static Symbol Identity() { return {}; }
  static Symbol LambdaPow(double s) { return {s, 0, 0, 0, 1}; }
  static Symbol DPow(double a) { return {0, a, 0, 0, 1}; }
  static Symbol Derivative(int i) { return {0, 0, i == 1, i == 2, 1}; }
  static Symbol Riesz(int i) { return {-1, 0, i == 1, i == 2, 1}; }
  static Symbol LambdaInvDerivative(int i) { return Riesz(i); }

  Symbol operator*(const Symbol& o) const {
    return {lambdaPow + o.lambdaPow, dPow + o.dPow, d1 + o.d1, d2 + o.d2, scale * o.scale};
  }
  Symbol operator*(double c) const { return {lambdaPow, dPow, d1, d2, scale * c}; }

  // |xi|^a with a != 0 annihilates xi = 0
  std::complex<double> operator()(double xi1, double xi2) const;
};

}  // namespace ym
