#pragma once

#include <iosfwd>
#include <string>

#include "entrates/maxcorr.hpp"
#include "entrates/measures.hpp"
#include "entrates/rates.hpp"

namespace entrates::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitIo = 3;

enum class Family { BellMix, MaxCorr2x2, MaxCorrGeneral, ProductMix, Raw };

struct StateFamilySpec {
  Family family = Family::BellMix;
  double p = 0.0;
  double q = 0.0;
  double a2 = 0.0;
  std::string file;
};

std::string family_name(Family f);
Family parse_family(const std::string& name);

/// "bell-mix:p=0.9", "maxcorr-2x2:q=0.7,a2=0.3", "product-mix:p=0.9",
/// "maxcorr-general:file=a.json", "raw:file=rho.json".
StateFamilySpec parse_family_spec(const std::string& text);

struct EvaluatedState {
  rates::StateDescriptor descriptor;
  measures::MeasureReport report;
};

/// Every measure the family supports; the rest stay null with a reason flag.
EvaluatedState evaluate(const StateFamilySpec& spec, const maxcorr::OptimizerConfig& config);

/// Entry point shared by the binary and the tests. Payload goes to `out`,
/// diagnostics to `err`; returns the process exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace entrates::cli
