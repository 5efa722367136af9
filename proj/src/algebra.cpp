#include "ym/algebra.hpp"

#include <cmath>
#include <random>
#include <stdexcept>
#include <unsupported/Eigen/MatrixFunctions>

namespace ym {

int AlgebraSpec::dim() const {
  return kind == AlgebraKind::SU ? n * n - 1 : n * (n - 1) / 2;
}

std::string AlgebraSpec::name() const {
  return (kind == AlgebraKind::SU ? "su" : "so") + std::to_string(n);
}

AlgebraSpec AlgebraSpec::parse(const std::string& s) {
  if (s.size() < 3) throw std::invalid_argument("bad algebra name: " + s);
  AlgebraSpec spec;
  std::string head = s.substr(0, 2);
  if (head == "su")
    spec.kind = AlgebraKind::SU;
  else if (head == "so")
    spec.kind = AlgebraKind::SO;
  else
    throw std::invalid_argument("bad algebra name: " + s);
  spec.n = std::stoi(s.substr(2));
  if (spec.n < 2 || spec.n > 4) throw std::invalid_argument("algebra size must be 2..4: " + s);
  return spec;
}

double innerProduct(const Matrix& x, const Matrix& y) { return (x * y.adjoint()).trace().real(); }

namespace {

std::vector<Matrix> makeBasis(const AlgebraSpec& spec) {
  const int n = spec.n;
  const std::complex<double> I(0, 1);
  std::vector<Matrix> out;
  const double r2 = std::sqrt(2.0);
  if (spec.kind == AlgebraKind::SU) {
    // -i/sqrt2 times generalized Gell-Mann matrices; su(2) gives -i sigma_a / sqrt2
    for (int j = 0; j < n; ++j)
      for (int k = j + 1; k < n; ++k) {
        Matrix s = Matrix::Zero(n, n), a = Matrix::Zero(n, n);
        s(j, k) = s(k, j) = 1;
        a(j, k) = -I;
        a(k, j) = I;
        out.push_back(-I / r2 * s);
        out.push_back(-I / r2 * a);
      }
    for (int l = 1; l < n; ++l) {
      Matrix d = Matrix::Zero(n, n);
      double c = std::sqrt(2.0 / (l * (l + 1.0)));
      for (int j = 0; j < l; ++j) d(j, j) = c;
      d(l, l) = -l * c;
      out.push_back(-I / r2 * d);
    }
  } else {
    for (int j = 0; j < n; ++j)
      for (int k = j + 1; k < n; ++k) {
        Matrix e = Matrix::Zero(n, n);
        e(j, k) = 1 / r2;
        e(k, j) = -1 / r2;
        out.push_back(e);
      }
  }
  return out;
}

}  // namespace

Algebra::Algebra(AlgebraSpec spec) : spec_(spec), dim_(spec.dim()) {
  if (spec.n < 2 || spec.n > 4) throw std::invalid_argument("algebra size must be 2..4");
  basis_ = makeBasis(spec);
  f_.assign(static_cast<std::size_t>(dim_) * dim_ * dim_, 0.0);
  for (int a = 0; a < dim_; ++a)
    for (int b = 0; b < dim_; ++b) {
      Matrix c = basis_[a] * basis_[b] - basis_[b] * basis_[a];
      for (int k = 0; k < dim_; ++k) {
        double v = innerProduct(c, basis_[k]);
        if (std::abs(v) < 1e-14) v = 0;
        f_[(a * dim_ + b) * dim_ + k] = v;
        if (v != 0) entries_.push_back({a, b, k, v});
      }
    }
}

LieElement Algebra::zero() const { return {Eigen::VectorXd::Zero(dim_)}; }

Matrix Algebra::toMatrix(const LieElement& x) const {
  if (x.coeffs.size() != dim_) throw std::invalid_argument("LieElement dimension mismatch");
  Matrix m = Matrix::Zero(spec_.n, spec_.n);
  for (int a = 0; a < dim_; ++a) m += x.coeffs[a] * basis_[a];
  return m;
}

LieElement Algebra::fromMatrix(const Matrix& m) const {
  LieElement x = zero();
  for (int a = 0; a < dim_; ++a) x.coeffs[a] = innerProduct(m, basis_[a]);
  return x;
}

LieElement Algebra::bracket(const LieElement& x, const LieElement& y) const {
  if (x.coeffs.size() != dim_ || y.coeffs.size() != dim_)
    throw std::invalid_argument("LieElement dimension mismatch in bracket");
  LieElement z = zero();
  for (const auto& e : entries_) z.coeffs[e.c] += e.f * x.coeffs[e.a] * y.coeffs[e.b];
  return z;
}

double Algebra::inner(const LieElement& x, const LieElement& y) const { return x.coeffs.dot(y.coeffs); }

LieElement Algebra::randomElement(std::uint64_t seed, double scale) const {
  if (scale < 0) throw std::invalid_argument("randomElement: negative scale");
  LieElement x = zero();
  if (scale == 0) return x;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-scale, scale);
  for (int a = 0; a < dim_; ++a) x.coeffs[a] = u(rng);
  return x;
}

Matrix Algebra::groupExp(const LieElement& x) const { return toMatrix(x).exp(); }

AlgebraPtr makeAlgebra(const AlgebraSpec& spec) { return std::make_shared<const Algebra>(spec); }

}  // namespace ym
