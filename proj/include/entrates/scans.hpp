#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace entrates::scans {

inline constexpr double kDefaultStep = 0.005;

struct Range {
  double min;
  double max;
};

struct Axis {
  std::string name;
  double min;
  double max;
  double step;  // 0 for an explicit point list
};

/// min, min + step, ..., up to max (inclusive within 1e-9 of a step). Throws
/// DomainError for a non-positive step or an empty range.
std::vector<double> axis_points(double min, double max, double step);

using Cell = std::optional<double>;

struct ScanGrid {
  std::vector<Axis> axes;
  std::vector<std::string> schema;
  std::vector<std::vector<Cell>> rows;

  /// Index of a named column; throws StructuralError if absent.
  std::size_t column(const std::string& name) const;
  /// Every row has schema-many cells and axis values lie inside their ranges.
  void validate() const;
};

/// Witness surface over the (p, q) plane for two Bell mixtures.
/// Columns: p, q, D_rho, F_rho, D_sigma, F_sigma, f, lower_bound, upper_bound, gerakol_holds.
ScanGrid fig1_scan(Range p, Range q, double step, std::size_t threads = 0);

/// F - D_gamma over the (q, |a|^2) plane for two-qubit maximally correlated states.
/// Columns: q, a2, F, D_gamma, diff.
ScanGrid fig3_scan(Range q, Range a2, double step, std::size_t threads = 0);

struct Fig2Anchor {
  double p;
  double rdiff;  // exact at both anchors
  std::string note;
};

struct Fig2Report {
  double q;
  std::vector<Fig2Anchor> anchors;
  double crossing_p;        // first zero of f(., q) met when walking down from p = 1
  std::size_t sign_changes;  // of f(., q) on a 1e-3 grid over (q, 1]
};

/// Analytically known points of R_Diff(p) for Bell mixtures at fixed q in (1/2, 1).
Fig2Report fig2_anchors(double q);

std::vector<double> default_limit_p_list();

/// D_gamma / F along p|00><00| + (1-p)|phi+><phi+|. Columns: p, D_gamma, F, ratio.
ScanGrid limit_scan(const std::vector<double>& p_list);

/// Header row then one row per grid point; 17 significant digits; undefined cells empty.
void write_csv(const ScanGrid& grid, std::ostream& out);
/// Reads schema and rows back (axes are not stored in CSV).
ScanGrid read_csv(std::istream& in);

}  // namespace entrates::scans
