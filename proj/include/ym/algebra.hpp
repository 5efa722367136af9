#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

namespace ym {

using Matrix = Eigen::MatrixXcd;

enum class AlgebraKind { SU, SO };

struct AlgebraSpec {
  AlgebraKind kind = AlgebraKind::SU;
  int n = 2;
  int dim() const;
  std::string name() const;
  static AlgebraSpec parse(const std::string& s);  // "su2", "so3", ...
};

struct LieElement {
  Eigen::VectorXd coeffs;
};

// nonzero structure constant f[a][b][c]
struct StructureEntry {
  int a, b, c;
  double f;
};

class Algebra {
 public:
  explicit Algebra(AlgebraSpec spec);

  const AlgebraSpec& spec() const { return spec_; }
  int dim() const { return dim_; }
  int n() const { return spec_.n; }
  const Matrix& basis(int a) const { return basis_[a]; }

  // f[a][b][c] = <[E_a,E_b], E_c>
  double f(int a, int b, int c) const { return f_[(a * dim_ + b) * dim_ + c]; }
  const std::vector<StructureEntry>& entries() const { return entries_; }

  LieElement zero() const;
  Matrix toMatrix(const LieElement& x) const;
  // orthogonal projection onto g, coefficients Re tr(M E_a^dagger)
  LieElement fromMatrix(const Matrix& m) const;

  LieElement bracket(const LieElement& x, const LieElement& y) const;
  double inner(const LieElement& x, const LieElement& y) const;
  LieElement randomElement(std::uint64_t seed, double scale) const;
  Matrix groupExp(const LieElement& x) const;

 private:
  AlgebraSpec spec_;
  int dim_;
  std::vector<Matrix> basis_;
  std::vector<double> f_;
  std::vector<StructureEntry> entries_;
};

using AlgebraPtr = std::shared_ptr<const Algebra>;
AlgebraPtr makeAlgebra(const AlgebraSpec& spec);

double innerProduct(const Matrix& x, const Matrix& y);  // Re tr(X Y^dagger)

}  // namespace ym
