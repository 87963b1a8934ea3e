#include "entrates/measures.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "entrates/errors.hpp"

namespace entrates::measures {

namespace {

constexpr double kClamp = 1e-10;
const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

// |v> on the two-qubit basis {00, 01, 10, 11}.
ComplexMatrix ket(Complex c00, Complex c01, Complex c10, Complex c11) {
  return ComplexMatrix::column({c00, c01, c10, c11});
}

BipartiteState two_qubit(ComplexMatrix m) { return BipartiteState(2, 2, DensityMatrix(std::move(m))); }

double clamp_measure(double v) {
  if (v < 0.0 && v >= -kClamp) return 0.0;
  return v;
}

}  // namespace

BellMixtureParam::BellMixtureParam(double p) : p_(p) {
  if (!(p >= 0.5 && p <= 1.0)) throw DomainError("BellMixtureParam: p=" + std::to_string(p) + " outside [1/2, 1]");
}

MaxCorr2x2Param::MaxCorr2x2Param(double q, Complex amp_a) : q_(q), a_(amp_a) {
  if (!(q >= 0.5 && q <= 1.0)) throw DomainError("MaxCorr2x2Param: q=" + std::to_string(q) + " outside [1/2, 1]");
  const double a2 = std::norm(amp_a);
  if (!(a2 > 0.0 && a2 < 1.0)) throw DomainError("MaxCorr2x2Param: |a|^2=" + std::to_string(a2) + " outside (0, 1)");
  b_ = std::sqrt(1.0 - a2);
}

MaxCorr2x2Param MaxCorr2x2Param::from_weight(double q, double a2) {
  if (!(a2 > 0.0 && a2 < 1.0)) throw DomainError("MaxCorr2x2Param: |a|^2=" + std::to_string(a2) + " outside (0, 1)");
  return MaxCorr2x2Param(q, Complex{std::sqrt(a2), 0.0});
}

std::string to_string(Provenance p) {
  switch (p) {
    case Provenance::ClosedForm: return "closed-form";
    case Provenance::Wootters: return "wootters";
    case Provenance::PptFormula: return "ppt-formula";
    case Provenance::ReducedEof: return "reduced-eof";
  }
  return "unknown";
}

void check_report(const MeasureReport& r) {
  if (r.d && r.d_gamma && *r.d > *r.d_gamma + 1e-9) throw ConsistencyError("MeasureReport: D exceeds D_gamma");
  if (r.d && r.f_cost && *r.d > *r.f_cost + 1e-9) throw ConsistencyError("MeasureReport: D exceeds F");
}

BipartiteState bell_mixture_state(const BellMixtureParam& param) {
  const double p = param.p();
  const auto phi_plus = ket(kInvSqrt2, 0.0, 0.0, kInvSqrt2);
  const auto phi_minus = ket(kInvSqrt2, 0.0, 0.0, -kInvSqrt2);
  return two_qubit((1.0 - p) * ComplexMatrix::outer(phi_plus) + p * ComplexMatrix::outer(phi_minus));
}

double d_bell_mixture(const BellMixtureParam& p) { return clamp_measure(1.0 - binary_entropy(p.p())); }

double f_bell_mixture(const BellMixtureParam& param) {
  const double p = param.p();
  return binary_entropy(0.5 + std::sqrt(p * (1.0 - p)));
}

BipartiteState maxcorr_2x2_state(const MaxCorr2x2Param& m) {
  const Complex a = m.amp_a();
  const Complex b = m.amp_b();
  const auto phi = ket(a, 0.0, 0.0, b);
  const auto psi = ket(std::conj(b), 0.0, 0.0, -std::conj(a));
  return two_qubit((1.0 - m.q()) * ComplexMatrix::outer(phi) + m.q() * ComplexMatrix::outer(psi));
}

double eof_from_concurrence(double c) {
  c = std::clamp(c, 0.0, 1.0);
  // (1 - sqrt(1 - c^2)) / 2 without cancellation for small c.
  const double small = c * c / (2.0 * (1.0 + std::sqrt(1.0 - c * c)));
  return binary_entropy(small);
}

double f_maxcorr_2x2(const MaxCorr2x2Param& m) {
  const double a2 = m.a2();
  const double b2 = 1.0 - a2;
  const double s = 2.0 * m.q() - 1.0;
  // 1 - 4 s^2 |a|^2 |b|^2 is 1 - C^2 with C = 2 |s| |a| |b|.
  return eof_from_concurrence(2.0 * std::abs(s) * std::sqrt(a2 * b2));
}

BipartiteState phi_plus_product_mixture(double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw DomainError("phi_plus_product_mixture: p outside [0, 1]");
  const auto zero_zero = ket(1.0, 0.0, 0.0, 0.0);
  const auto phi_plus = ket(kInvSqrt2, 0.0, 0.0, kInvSqrt2);
  return two_qubit(p * ComplexMatrix::outer(zero_zero) + (1.0 - p) * ComplexMatrix::outer(phi_plus));
}

Concurrence wootters_eof_2x2(const BipartiteState& s) {
  if (s.dim_a() != 2 || s.dim_b() != 2) throw StructuralError("wootters_eof_2x2: requires a 2x2 state");

  // Subnormalized eigenvectors v_i = sqrt(mu_i) e_i spanning the support; the
  // lambda_i are the singular values of tau_ij = v_i^T (sigma_y x sigma_y) v_j.
  // Eigenvalues at rounding level are dropped so they cannot feed sqrt-noise into C.
  const auto es = hermitian_eigensystem(s.matrix());
  const double cutoff = 16.0 * std::numeric_limits<double>::epsilon() * std::max(es.values.front(), 1.0);
  std::vector<std::vector<Complex>> support;
  for (std::size_t j = 0; j < 4; ++j) {
    if (es.values[j] <= cutoff) continue;
    const double w = std::sqrt(es.values[j]);
    support.push_back({w * es.vectors(0, j), w * es.vectors(1, j), w * es.vectors(2, j), w * es.vectors(3, j)});
  }
  const std::size_t r = support.size();
  // sigma_y (x) sigma_y maps (c00, c01, c10, c11) to (-c11, c10, c01, -c00).
  const auto flip = [](const std::vector<Complex>& v) {
    return std::vector<Complex>{-v[3], v[2], v[1], -v[0]};
  };
  ComplexMatrix tau(r, r);
  for (std::size_t i = 0; i < r; ++i) {
    const auto fi = flip(support[i]);
    for (std::size_t j = 0; j < r; ++j) {
      Complex acc{};
      for (std::size_t k = 0; k < 4; ++k) acc += fi[k] * support[j][k];
      tau(i, j) = acc;
    }
  }
  ComplexMatrix gram = tau.adjoint() * tau;
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = i + 1; j < r; ++j) {
      const Complex avg = 0.5 * (gram(i, j) + std::conj(gram(j, i)));
      gram(i, j) = avg;
      gram(j, i) = std::conj(avg);
    }
  std::vector<double> lambda = r ? hermitian_eigenvalues(gram) : std::vector<double>{};
  for (double& v : lambda) v = std::sqrt(std::max(v, 0.0));
  double c = 0.0;
  if (!lambda.empty()) {
    c = lambda[0];
    for (std::size_t i = 1; i < lambda.size(); ++i) c -= lambda[i];
  }
  c = std::clamp(c, 0.0, 1.0);
  return {c, eof_from_concurrence(c)};
}

bool is_maximally_correlated(const BipartiteState& s, double tolerance) {
  if (s.dim_a() != s.dim_b()) return false;
  const std::size_t d = s.dim_a();
  const auto& m = s.matrix();
  double outside = 0.0;
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t k = 0; k < d; ++k)
      if (i != k) outside += m(i * d + k, i * d + k).real();
  return outside <= tolerance;
}

ComplexMatrix maxcorr_coefficients(const BipartiteState& s) {
  if (!is_maximally_correlated(s)) throw ValidationError("maxcorr_coefficients: state is not maximally correlated");
  const std::size_t d = s.dim_a();
  ComplexMatrix a(d, d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) a(i, j) = s.matrix()(i * d + i, j * d + j);
  return a;
}

double d_gamma_maxcorr(const BipartiteState& s) {
  if (!is_maximally_correlated(s)) throw ValidationError("d_gamma_maxcorr: state is not maximally correlated");
  const double v = von_neumann_entropy(partial_trace_b(s)) - von_neumann_entropy(s.state());
  return std::max(clamp_measure(v), 0.0);
}

std::optional<double> pure_state_entanglement(const BipartiteState& s) {
  if (std::abs(purity(s.state()) - 1.0) > tol::kStructural) return std::nullopt;
  return von_neumann_entropy(partial_trace_b(s));
}

}  // namespace entrates::measures
