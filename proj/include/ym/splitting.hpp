#pragma once

#include <utility>

#include "ym/symbol.hpp"

namespace ym {

// A^df = Lambda^-2 (d2 c, -d1 c) with c = d1 A2 - d2 A1;  A^cf = -Lambda^-2 grad(div A)
template <class Field>
std::pair<Field, Field> divergenceFreePart(const Field& a1, const Field& a2) {
  const Symbol L2 = Symbol::LambdaPow(-2), d1 = Symbol::Derivative(1), d2 = Symbol::Derivative(2);
  return {mult(a2, L2 * d1 * d2) - mult(a1, L2 * d2 * d2), mult(a1, L2 * d1 * d2) - mult(a2, L2 * d1 * d1)};
}

template <class Field>
std::pair<Field, Field> curlFreePart(const Field& a1, const Field& a2) {
  const Symbol L2 = Symbol::LambdaPow(-2), d1 = Symbol::Derivative(1), d2 = Symbol::Derivative(2);
  return {-(mult(a1, L2 * d1 * d1) + mult(a2, L2 * d1 * d2)), -(mult(a1, L2 * d1 * d2) + mult(a2, L2 * d2 * d2))};
}

}  // namespace ym
