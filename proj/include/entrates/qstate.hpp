#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace entrates {

using Complex = std::complex<double>;

namespace tol {
inline constexpr double kStructural = 1e-10;  // validation of constructed inputs
inline constexpr double kEigenClip = 1e-10;   // negative eigenvalues tolerated as drift
}  // namespace tol

/// Dense complex matrix, row-major.
class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  ComplexMatrix(std::size_t rows, std::size_t cols);
  ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries);

  static ComplexMatrix identity(std::size_t n);
  static ComplexMatrix diagonal(std::span<const double> values);
  static ComplexMatrix column(std::vector<Complex> entries);
  /// |v><v| for a column vector v.
  static ComplexMatrix outer(const ComplexMatrix& v);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  Complex& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Complex& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<const Complex> entries() const { return data_; }
  std::span<Complex> entries() { return data_; }

  ComplexMatrix adjoint() const;
  ComplexMatrix conjugate() const;
  Complex trace() const;
  double frobenius_norm() const;

  ComplexMatrix& operator+=(const ComplexMatrix& rhs);
  ComplexMatrix& operator-=(const ComplexMatrix& rhs);
  ComplexMatrix& operator*=(Complex s);

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Complex> data_;
};

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix operator*(Complex s, ComplexMatrix a);

/// Largest entry-wise modulus of a - b. Shapes must agree.
double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);
/// Largest entry of |M - M^dagger|.
double hermiticity_defect(const ComplexMatrix& m);

/// Kronecker product, A-major: (a (x) b)(i*rb + k, j*cb + l) = a(i,j) b(k,l).
ComplexMatrix tensor(const ComplexMatrix& a, const ComplexMatrix& b);

/// Hermitian, unit-trace, positive semidefinite within tol::kStructural.
class DensityMatrix {
 public:
  explicit DensityMatrix(ComplexMatrix m);

  std::size_t dim() const { return matrix_.rows(); }
  const ComplexMatrix& matrix() const { return matrix_; }

 private:
  ComplexMatrix matrix_;
};

/// State on C^dim_a (x) C^dim_b; basis index is i_A * dim_b + i_B.
class BipartiteState {
 public:
  BipartiteState(std::size_t dim_a, std::size_t dim_b, DensityMatrix state);

  std::size_t dim_a() const { return dim_a_; }
  std::size_t dim_b() const { return dim_b_; }
  const DensityMatrix& state() const { return state_; }
  const ComplexMatrix& matrix() const { return state_.matrix(); }

 private:
  std::size_t dim_a_;
  std::size_t dim_b_;
  DensityMatrix state_;
};

DensityMatrix partial_trace_b(const BipartiteState& s);
ComplexMatrix partial_transpose_b(const BipartiteState& s);
/// Raw form, used for operators that are no longer states (e.g. a partial transpose).
ComplexMatrix partial_transpose_b(const ComplexMatrix& m, std::size_t dim_a, std::size_t dim_b);

struct EigenSystem {
  std::vector<double> values;  // descending
  ComplexMatrix vectors;       // column j pairs with values[j]
};

/// Cyclic complex Jacobi. Throws ValidationError when m is not Hermitian
/// within tol::kStructural.
EigenSystem hermitian_eigensystem(const ComplexMatrix& m);
std::vector<double> hermitian_eigenvalues(const ComplexMatrix& m);

/// h(x) in bits. Values within 1e-12 of [0,1] are clamped; others throw DomainError.
double binary_entropy(double x);

/// -sum p log2 p over a probability vector; entries in [-kEigenClip, 0) count as 0.
double entropy_bits(std::span<const double> probabilities);

double von_neumann_entropy(const DensityMatrix& rho);

/// Shannon entropy (bits) of the squared moduli of a unit column vector.
double shannon_diag(const ComplexMatrix& x);

/// Purity tr(rho^2).
double purity(const DensityMatrix& rho);

}  // namespace entrates
