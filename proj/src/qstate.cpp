#include "entrates/qstate.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "entrates/errors.hpp"

namespace entrates {

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols, Complex{0.0, 0.0}) {}

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
  if (data_.size() != rows * cols) {
    throw StructuralError("ComplexMatrix: expected " + std::to_string(rows * cols) +
                          " entries, got " + std::to_string(data_.size()));
  }
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
  ComplexMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const double> values) {
  ComplexMatrix m(values.size(), values.size());
  for (std::size_t i = 0; i < values.size(); ++i) m(i, i) = values[i];
  return m;
}

ComplexMatrix ComplexMatrix::column(std::vector<Complex> entries) {
  const std::size_t n = entries.size();
  return ComplexMatrix(n, 1, std::move(entries));
}

ComplexMatrix ComplexMatrix::outer(const ComplexMatrix& v) {
  if (v.cols() != 1) throw StructuralError("outer: expected a column vector");
  ComplexMatrix m(v.rows(), v.rows());
  for (std::size_t i = 0; i < v.rows(); ++i)
    for (std::size_t j = 0; j < v.rows(); ++j) m(i, j) = v(i, 0) * std::conj(v(j, 0));
  return m;
}

ComplexMatrix ComplexMatrix::adjoint() const {
  ComplexMatrix m(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) m(j, i) = std::conj((*this)(i, j));
  return m;
}

ComplexMatrix ComplexMatrix::conjugate() const {
  ComplexMatrix m = *this;
  for (auto& z : m.data_) z = std::conj(z);
  return m;
}

Complex ComplexMatrix::trace() const {
  if (!is_square()) throw StructuralError("trace: matrix is not square");
  Complex t{0.0, 0.0};
  for (std::size_t i = 0; i < rows_; ++i) t += (*this)(i, i);
  return t;
}

double ComplexMatrix::frobenius_norm() const {
  double s = 0.0;
  for (const auto& z : data_) s += std::norm(z);
  return std::sqrt(s);
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& rhs) {
  if (rows_ != rhs.rows_ || cols_ != rhs.cols_) throw StructuralError("operator+: shape mismatch");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += rhs.data_[i];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& rhs) {
  if (rows_ != rhs.rows_ || cols_ != rhs.cols_) throw StructuralError("operator-: shape mismatch");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= rhs.data_[i];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(Complex s) {
  for (auto& z : data_) z *= s;
  return *this;
}

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
ComplexMatrix operator*(Complex s, ComplexMatrix a) { return a *= s; }

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols() != b.rows()) throw StructuralError("operator*: inner dimensions differ");
  ComplexMatrix m(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const Complex aik = a(i, k);
      if (aik == Complex{}) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) m(i, j) += aik * b(k, j);
    }
  return m;
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw StructuralError("max_abs_diff: shape mismatch");
  double d = 0.0;
  auto ea = a.entries();
  auto eb = b.entries();
  for (std::size_t i = 0; i < ea.size(); ++i) d = std::max(d, std::abs(ea[i] - eb[i]));
  return d;
}

double hermiticity_defect(const ComplexMatrix& m) {
  if (!m.is_square()) throw StructuralError("hermiticity_defect: matrix is not square");
  double d = 0.0;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = i; j < m.cols(); ++j) d = std::max(d, std::abs(m(i, j) - std::conj(m(j, i))));
  return d;
}

ComplexMatrix tensor(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix m(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      for (std::size_t k = 0; k < b.rows(); ++k)
        for (std::size_t l = 0; l < b.cols(); ++l)
          m(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
  return m;
}

DensityMatrix::DensityMatrix(ComplexMatrix m) : matrix_(std::move(m)) {
  if (!matrix_.is_square() || matrix_.rows() == 0)
    throw StructuralError("DensityMatrix: matrix must be square and non-empty");
  if (hermiticity_defect(matrix_) > tol::kStructural)
    throw ValidationError("DensityMatrix: matrix is not Hermitian");
  const Complex t = matrix_.trace();
  if (std::abs(t - Complex{1.0, 0.0}) > tol::kStructural)
    throw ValidationError("DensityMatrix: trace is " + std::to_string(t.real()) + ", expected 1");
  const auto ev = hermitian_eigenvalues(matrix_);
  if (ev.back() < -tol::kEigenClip)
    throw ValidationError("DensityMatrix: negative eigenvalue " + std::to_string(ev.back()));
}

double purity(const DensityMatrix& rho) {
  const auto& m = rho.matrix();
  double p = 0.0;
  for (const auto& z : m.entries()) p += std::norm(z);
  return p;
}

BipartiteState::BipartiteState(std::size_t dim_a, std::size_t dim_b, DensityMatrix state)
    : dim_a_(dim_a), dim_b_(dim_b), state_(std::move(state)) {
  if (dim_a == 0 || dim_b == 0 || dim_a * dim_b != state_.dim())
    throw StructuralError("BipartiteState: " + std::to_string(dim_a) + "x" + std::to_string(dim_b) +
                          " does not match state dimension " + std::to_string(state_.dim()));
}

DensityMatrix partial_trace_b(const BipartiteState& s) {
  const std::size_t da = s.dim_a();
  const std::size_t db = s.dim_b();
  const auto& m = s.matrix();
  ComplexMatrix r(da, da);
  for (std::size_t i = 0; i < da; ++i)
    for (std::size_t j = 0; j < da; ++j) {
      Complex acc{};
      for (std::size_t k = 0; k < db; ++k) acc += m(i * db + k, j * db + k);
      r(i, j) = acc;
    }
  return DensityMatrix(std::move(r));
}

ComplexMatrix partial_transpose_b(const ComplexMatrix& m, std::size_t dim_a, std::size_t dim_b) {
  if (!m.is_square() || m.rows() != dim_a * dim_b)
    throw StructuralError("partial_transpose_b: dimension mismatch");
  ComplexMatrix r(m.rows(), m.cols());
  for (std::size_t i = 0; i < dim_a; ++i)
    for (std::size_t k = 0; k < dim_b; ++k)
      for (std::size_t j = 0; j < dim_a; ++j)
        for (std::size_t l = 0; l < dim_b; ++l) r(i * dim_b + k, j * dim_b + l) = m(i * dim_b + l, j * dim_b + k);
  return r;
}

ComplexMatrix partial_transpose_b(const BipartiteState& s) {
  return partial_transpose_b(s.matrix(), s.dim_a(), s.dim_b());
}

EigenSystem hermitian_eigensystem(const ComplexMatrix& m) {
  if (!m.is_square()) throw StructuralError("hermitian_eigensystem: matrix is not square");
  if (hermiticity_defect(m) > tol::kStructural)
    throw ValidationError("hermitian_eigensystem: matrix is not Hermitian");

  const std::size_t n = m.rows();
  ComplexMatrix a = m;
  ComplexMatrix v = ComplexMatrix::identity(n);
  for (std::size_t i = 0; i < n; ++i) a(i, i) = a(i, i).real();

  constexpr int kMaxSweeps = 100;
  const double scale = std::max(a.frobenius_norm(), 1e-300);
  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    double off = 0.0;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) off += std::norm(a(p, q));
    if (std::sqrt(off) <= 1e-17 * scale) break;

    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double mag = std::abs(a(p, q));
        if (mag == 0.0) continue;
        // Rephase column q so that a(p,q) becomes real, then do a real rotation.
        const Complex phase = a(p, q) / mag;
        const double app = a(p, p).real();
        const double aqq = a(q, q).real();
        const double theta = (aqq - app) / (2.0 * mag);
        double t = 1.0 / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        if (theta < 0.0) t = -t;
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;

        // U restricted to (p,q): [[c, s], [-s conj(phase), c conj(phase)]]
        const Complex upp = c;
        const Complex upq = s;
        const Complex uqp = -s * std::conj(phase);
        const Complex uqq = c * std::conj(phase);

        for (std::size_t k = 0; k < n; ++k) {  // A <- A U
          const Complex akp = a(k, p);
          const Complex akq = a(k, q);
          a(k, p) = akp * upp + akq * uqp;
          a(k, q) = akp * upq + akq * uqq;
        }
        for (std::size_t k = 0; k < n; ++k) {  // A <- U^dagger A
          const Complex apk = a(p, k);
          const Complex aqk = a(q, k);
          a(p, k) = std::conj(upp) * apk + std::conj(uqp) * aqk;
          a(q, k) = std::conj(upq) * apk + std::conj(uqq) * aqk;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        a(p, p) = a(p, p).real();
        a(q, q) = a(q, q).real();
        for (std::size_t k = 0; k < n; ++k) {  // V <- V U
          const Complex vkp = v(k, p);
          const Complex vkq = v(k, q);
          v(k, p) = vkp * upp + vkq * uqp;
          v(k, q) = vkp * upq + vkq * uqq;
        }
      }
    }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return a(x, x).real() > a(y, y).real(); });
  EigenSystem out{std::vector<double>(n), ComplexMatrix(n, n)};
  for (std::size_t j = 0; j < n; ++j) {
    out.values[j] = a(order[j], order[j]).real();
    for (std::size_t k = 0; k < n; ++k) out.vectors(k, j) = v(k, order[j]);
  }
  return out;
}

std::vector<double> hermitian_eigenvalues(const ComplexMatrix& m) { return hermitian_eigensystem(m).values; }

double binary_entropy(double x) {
  if (!(x >= -1e-12 && x <= 1.0 + 1e-12))
    throw DomainError("binary_entropy: argument " + std::to_string(x) + " outside [0,1]");
  x = std::clamp(x, 0.0, 1.0);
  // Evaluate on the smaller side so that h(x) and h(1-x) share one code path.
  const double lo = std::min(x, 1.0 - x);
  if (lo <= 0.0) return 0.0;
  const double hi_term = (1.0 - lo) * std::log1p(-lo);
  return -(lo * std::log(lo) + hi_term) / std::log(2.0);
}

double entropy_bits(std::span<const double> probabilities) {
  double s = 0.0;
  for (double p : probabilities) {
    if (p < -tol::kEigenClip)
      throw ValidationError("entropy: negative eigenvalue " + std::to_string(p));
    if (p <= 0.0) continue;
    p = std::min(p, 1.0);
    s -= p * std::log2(p);
  }
  return std::max(s, 0.0);
}

double von_neumann_entropy(const DensityMatrix& rho) {
  const auto ev = hermitian_eigenvalues(rho.matrix());
  const double s = entropy_bits(ev);
  return std::min(s, std::log2(static_cast<double>(rho.dim())));
}

double shannon_diag(const ComplexMatrix& x) {
  if (x.cols() != 1) throw StructuralError("shannon_diag: expected a column vector");
  std::vector<double> probs(x.rows());
  double norm = 0.0;
  for (std::size_t i = 0; i < x.rows(); ++i) {
    probs[i] = std::norm(x(i, 0));
    norm += probs[i];
  }
  if (std::abs(norm - 1.0) > tol::kStructural)
    throw ValidationError("shannon_diag: vector norm^2 is " + std::to_string(norm));
  return entropy_bits(probs);
}

}  // namespace entrates
