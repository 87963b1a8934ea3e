#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "entrates/qstate.hpp"

namespace entrates::maxcorr {

/// Coefficient matrix a_ij of sum_ij a_ij |ii><jj|. Hermitian, PSD and unit trace.
class MaxCorrSpec {
 public:
  explicit MaxCorrSpec(ComplexMatrix a_matrix);

  std::size_t dim() const { return a_.rows(); }
  const ComplexMatrix& a_matrix() const { return a_; }

 private:
  ComplexMatrix a_;
};

/// a (x) a, the coefficient matrix of rho (x) rho after regrouping subsystems.
MaxCorrSpec doubled(const MaxCorrSpec& spec);

struct Member {
  double weight;
  ComplexMatrix vector;  // unit column, gauge fixed
};

/// Pure-state ensemble {p_k, x_k} of a single-system state.
struct Decomposition {
  std::vector<Member> members;

  ComplexMatrix reconstruct() const;
  double total_weight() const;
  /// sum_k p_k H(x_k), bits.
  double average_diag_entropy() const;
};

struct OptimizerConfig {
  std::size_t members = 0;  // 0: r^2 with r = rank of rho'
  std::size_t restarts = 32;
  std::uint64_t seed = 0;
  double tol = 1e-10;  // stop when a sweep improves by less than this (bits)
  std::size_t max_sweeps = 500;
  std::size_t threads = 0;  // 0: ENTRATES_THREADS or hardware concurrency
  double additivity_slack = 5e-3;
};

struct EofResult {
  double value;  // bits; equals the entanglement cost for maximally correlated states
  Decomposition best_decomposition;
  std::size_t restarts_used;
  bool converged;
};

struct AdditivityReport {
  double e1;
  double e2;
  double gap;  // e2 - 2 e1
  bool within_bounds;
};

BipartiteState build_maxcorr(const MaxCorrSpec& spec);
DensityMatrix single_system_state(const MaxCorrSpec& spec);

/// Scales the largest-magnitude entry of a column to be real positive.
void fix_gauge(ComplexMatrix& column);

/// Ensemble sqrt(p_k) x_k = sum_i mixer(k,i) sqrt(lambda_i) e_i from the eigenpairs of rho'.
/// The mixer must be K x r with orthonormal columns, r = rank(rho').
Decomposition decomposition_from_isometry(const DensityMatrix& rho_prime, const ComplexMatrix& mixer);

/// Number of eigenvalues above 1e-12.
std::size_t numerical_rank(const DensityMatrix& rho);

/// Upper bound on inf sum_k p_k H(x_k) over ensembles of rho', by multi-start
/// Givens-rotation descent over K x r isometries.
EofResult reduced_eof(const MaxCorrSpec& spec, const OptimizerConfig& config = {});

/// Compares reduced_eof on rho' and on rho' (x) rho'. Requires dim^2 <= 16.
AdditivityReport additivity_check(const MaxCorrSpec& spec, const OptimizerConfig& config = {});

}  // namespace entrates::maxcorr
