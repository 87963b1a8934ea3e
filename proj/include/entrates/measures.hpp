#pragma once

#include <optional>
#include <string>
#include <vector>

#include "entrates/qstate.hpp"

namespace entrates::measures {

/// Weight p of |phi-> in (1-p)|phi+><phi+| + p|phi-><phi-|, p in [1/2, 1].
class BellMixtureParam {
 public:
  explicit BellMixtureParam(double p);
  double p() const { return p_; }

 private:
  double p_;
};

/// (1-q)|phi><phi| + q|psi><psi| with |phi> = a|00> + b|11>, |psi> = conj(b)|00> - conj(a)|11>.
/// b is taken real and non-negative, b = sqrt(1 - |a|^2).
class MaxCorr2x2Param {
 public:
  MaxCorr2x2Param(double q, Complex amp_a);
  /// Real amplitude a = sqrt(a2).
  static MaxCorr2x2Param from_weight(double q, double a2);

  double q() const { return q_; }
  Complex amp_a() const { return a_; }
  Complex amp_b() const { return b_; }
  double a2() const { return std::norm(a_); }

 private:
  double q_;
  Complex a_;
  Complex b_;
};

struct Concurrence {
  double concurrence;
  double eof;  // bits
};

enum class Provenance { ClosedForm, Wootters, PptFormula, ReducedEof };
std::string to_string(Provenance p);

struct MeasureReport {
  std::optional<double> d;  // LOCC distillable entanglement, when known
  std::optional<double> f_cost;
  std::optional<double> d_gamma;
  std::optional<double> cycle_ratio;
  std::vector<std::string> flags;
};

/// Throws ConsistencyError when the report violates D <= D_gamma or D <= F.
void check_report(const MeasureReport& r);

BipartiteState bell_mixture_state(const BellMixtureParam& p);
double d_bell_mixture(const BellMixtureParam& p);
double f_bell_mixture(const BellMixtureParam& p);

BipartiteState maxcorr_2x2_state(const MaxCorr2x2Param& m);
double f_maxcorr_2x2(const MaxCorr2x2Param& m);

/// p|00><00| + (1-p)|phi+><phi+|, p in [0, 1].
BipartiteState phi_plus_product_mixture(double p);

/// Entanglement of formation from a two-qubit concurrence.
double eof_from_concurrence(double c);

/// Concurrence from the spin-flipped spectrum, and the resulting EoF.
Concurrence wootters_eof_2x2(const BipartiteState& s);

/// True when the state is supported on span{|ii>} within `tol` (requires dim_a == dim_b).
bool is_maximally_correlated(const BipartiteState& s, double tol = tol::kStructural);

/// Coefficients a_ij = <ii|rho|jj> of a maximally correlated state.
ComplexMatrix maxcorr_coefficients(const BipartiteState& s);

/// S(rho_A) - S(rho_AB); ValidationError unless the state is maximally correlated.
double d_gamma_maxcorr(const BipartiteState& s);

/// Entropy of entanglement S(rho_A) for a pure state; nullopt when the state is mixed.
std::optional<double> pure_state_entanglement(const BipartiteState& s);

}  // namespace entrates::measures
