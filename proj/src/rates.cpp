#include "entrates/rates.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "entrates/errors.hpp"

namespace entrates::rates {

namespace {
constexpr double kZero = 1e-12;
constexpr double kSameState = 1e-12;
}  // namespace

std::string to_string(BoundSource s) {
  switch (s) {
    case BoundSource::SingletRelative: return "singlet-relative";
    case BoundSource::MeasurePair: return "measure-pair";
    case BoundSource::DfPair: return "df-pair";
  }
  return "unknown";
}

std::string to_string(Sign s) {
  switch (s) {
    case Sign::Positive: return "positive";
    case Sign::Negative: return "negative";
    case Sign::Unknown: return "unknown";
  }
  return "unknown";
}

std::optional<double> cycle_ratio_singlet(double d, double f) {
  if (d < 0.0 || f < 0.0) throw DomainError("cycle_ratio_singlet: negative measure");
  if (d > f + 1e-9)
    throw ConsistencyError("cycle_ratio_singlet: D=" + std::to_string(d) + " exceeds F=" + std::to_string(f));
  if (f <= kZero) {
    if (d <= kZero) return std::nullopt;
    throw ConsistencyError("cycle_ratio_singlet: F vanishes while D does not");
  }
  return std::clamp(d / f, 0.0, 1.0);
}

CycleBounds singlet_relative_bounds(std::optional<double> rho_ratio, std::optional<double> sigma_ratio) {
  CycleBounds b{std::nullopt, std::nullopt, BoundSource::SingletRelative, {}};
  if (!rho_ratio || !sigma_ratio) {
    b.reason = "undefined singlet ratio";
    return b;
  }
  const double r = *rho_ratio;
  const double s = *sigma_ratio;
  if (!(r > 0.0 && r <= 1.0) || !(s > 0.0 && s <= 1.0)) {
    b.reason = "singlet ratio outside (0, 1]";
    return b;
  }
  b.lower = r * s;
  b.upper = std::min(s / r, r / s);
  return b;
}

double upper_bound_from_measures(double e1_rho, double e1_sigma, double e2_rho, double e2_sigma) {
  if (!(e1_rho > kZero && e1_sigma > kZero && e2_rho > kZero && e2_sigma > kZero))
    throw DomainError("upper_bound_from_measures: all measures must be positive");
  return (e1_rho * e2_sigma) / (e2_rho * e1_sigma);
}

CycleBounds upper_bound_df(double d_rho, double f_rho, double d_sigma, double f_sigma) {
  CycleBounds b{std::nullopt, std::nullopt, BoundSource::DfPair, {}};
  if (!(d_rho > kZero && f_rho > kZero && d_sigma > kZero && f_sigma > kZero)) {
    b.reason = "vanishing measure";
    return b;
  }
  b.upper = upper_bound_from_measures(f_rho, f_sigma, d_rho, d_sigma);
  return b;
}

GerakolWitness gerakol_witness(double d_rho, double f_rho, double d_sigma, double f_sigma) {
  const double f = d_rho * d_rho * f_sigma - f_rho * f_rho * d_sigma;
  return {f, f > 0.0};
}

bool same_state(const StateDescriptor& a, const StateDescriptor& b) {
  if (a.family != b.family || a.params.size() != b.params.size()) return false;
  for (std::size_t i = 0; i < a.params.size(); ++i)
    if (std::abs(a.params[i] - b.params[i]) > kSameState) return false;
  return true;
}

RDiffBounds rdiff_sign_witness(const StateDescriptor& rho, const StateDescriptor& sigma) {
  RDiffBounds out;
  out.witness = "none";

  std::optional<double> rho_ratio;
  if (rho.d_locc && rho.f) rho_ratio = cycle_ratio_singlet(*rho.d_locc, *rho.f);
  std::optional<double> sigma_ratio;
  if (sigma.d_locc && sigma.f) sigma_ratio = cycle_ratio_singlet(*sigma.d_locc, *sigma.f);

  // D(sigma) <= D_gamma(sigma), so substituting keeps upper bounds on rho <-> sigma sound.
  std::optional<double> d_sigma = sigma.d_locc;
  if (!d_sigma && sigma.d_gamma) {
    d_sigma = sigma.d_gamma;
    out.flags.push_back("sigma:D_gamma-substituted");
  }
  if (!rho.d_locc) out.flags.push_back("rho:D-unknown");
  if (!rho.f) out.flags.push_back("rho:F-unknown");
  if (!d_sigma) out.flags.push_back("sigma:D-unknown");
  if (!sigma.f) out.flags.push_back("sigma:F-unknown");

  if (rho_ratio && sigma_ratio) {
    out.bounds = singlet_relative_bounds(rho_ratio, sigma_ratio);
  } else if (rho.d_locc && rho.f && d_sigma && sigma.f) {
    out.bounds = upper_bound_df(*rho.d_locc, *rho.f, *d_sigma, *sigma.f);
  } else {
    out.bounds = CycleBounds{std::nullopt, std::nullopt, BoundSource::DfPair, "measures unavailable"};
  }

  if (same_state(rho, sigma)) {
    // rho <-> rho = 1, so R_Diff = D/F - 1, negative whenever D < F.
    const std::optional<double> d_upper = rho.d_locc ? rho.d_locc : rho.d_gamma;
    if (d_upper && rho.f && *rho.f > kZero && *d_upper < *rho.f - kZero) {
      out.rdiff_upper = std::min(*d_upper / *rho.f, 1.0) - 1.0;
      if (rho_ratio) out.rdiff_lower = *rho_ratio - 1.0;
      out.sign = Sign::Negative;
      out.witness = "equal-states";
      if (rho.d_locc && rho.f) {
        const auto g = gerakol_witness(*rho.d_locc, *rho.f, *rho.d_locc, *rho.f);
        out.f_value = g.f_value;
        out.holds = g.holds;
      }
    }
    return out;
  }

  if (!rho_ratio || !d_sigma || !sigma.f) return out;

  const auto g = gerakol_witness(*rho.d_locc, *rho.f, *d_sigma, *sigma.f);
  out.f_value = g.f_value;
  out.holds = g.holds;

  // Best available bracket on rho <-> sigma, which always lies in [0, 1].
  double cycle_upper = 1.0;
  double cycle_lower = 0.0;
  const auto df = upper_bound_df(*rho.d_locc, *rho.f, *d_sigma, *sigma.f);
  if (df.upper) cycle_upper = std::min(cycle_upper, *df.upper);
  if (sigma_ratio) {
    const auto sr = singlet_relative_bounds(rho_ratio, sigma_ratio);
    if (sr.upper) cycle_upper = std::min(cycle_upper, *sr.upper);
    if (sr.lower) cycle_lower = std::max(cycle_lower, *sr.lower);
  }
  out.rdiff_lower = *rho_ratio - cycle_upper;
  out.rdiff_upper = *rho_ratio - cycle_lower;

  if (g.holds && *out.rdiff_lower > 0.0) {
    out.sign = Sign::Positive;
    out.witness = "gerakol";
  }
  return out;
}

}  // namespace entrates::rates
