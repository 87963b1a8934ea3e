#pragma once

#include <optional>
#include <string>
#include <vector>

namespace entrates::rates {

enum class BoundSource { SingletRelative, MeasurePair, DfPair };
std::string to_string(BoundSource s);

/// Bounds on the round-trip rate rho <-> sigma. The upper bound may exceed 1.
struct CycleBounds {
  std::optional<double> lower;
  std::optional<double> upper;
  BoundSource source;
  std::string reason;  // set when a bound is undefined
};

enum class Sign { Positive, Negative, Unknown };
std::string to_string(Sign s);

/// Bounds on R_Diff = (rho <-> singlet) - (rho <-> sigma).
struct RDiffBounds {
  std::optional<double> rdiff_lower;
  std::optional<double> rdiff_upper;
  Sign sign = Sign::Unknown;
  std::string witness;  // "gerakol", "equal-states" or "none"
  std::optional<double> f_value;
  bool holds = false;
  CycleBounds bounds;
  std::vector<std::string> flags;
};

/// D/F, i.e. the round trip through the singlet. nullopt at 0/0.
/// Throws ConsistencyError if d exceeds f by more than 1e-9.
std::optional<double> cycle_ratio_singlet(double d, double f);

/// [r_rho r_sigma, min(r_sigma/r_rho, r_rho/r_sigma)]; undefined when either ratio is.
CycleBounds singlet_relative_bounds(std::optional<double> rho_ratio, std::optional<double> sigma_ratio);

/// E1(rho) E2(sigma) / (E2(rho) E1(sigma)); all inputs must exceed 1e-12.
double upper_bound_from_measures(double e1_rho, double e1_sigma, double e2_rho, double e2_sigma);

/// Same bound with E1 = F and E2 = D: F(rho) D(sigma) / (D(rho) F(sigma)).
CycleBounds upper_bound_df(double d_rho, double f_rho, double d_sigma, double f_sigma);

struct GerakolWitness {
  double f_value;  // D(rho)^2 F(sigma) - F(rho)^2 D(sigma)
  bool holds;      // f_value > 0 certifies rho <-> sigma < rho <-> singlet
};

GerakolWitness gerakol_witness(double d_rho, double f_rho, double d_sigma, double f_sigma);

/// A state from one of the closed-form families with its known measures.
struct StateDescriptor {
  std::string family;
  std::vector<double> params;
  std::optional<double> d_locc;  // LOCC distillable entanglement when known
  std::optional<double> d_gamma;
  std::optional<double> f;
};

bool same_state(const StateDescriptor& a, const StateDescriptor& b);

RDiffBounds rdiff_sign_witness(const StateDescriptor& rho, const StateDescriptor& sigma);

}  // namespace entrates::rates
