#include "entrates/scans.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>

#include "entrates/errors.hpp"
#include "entrates/measures.hpp"
#include "entrates/parallel.hpp"
#include "entrates/qstate.hpp"
#include "entrates/rates.hpp"

namespace entrates::scans {

namespace {

struct BellMeasures {
  double d;
  double f;
};

BellMeasures bell(double p) {
  const measures::BellMixtureParam param(p);
  return {measures::d_bell_mixture(param), measures::f_bell_mixture(param)};
}

double gerakol_f(double p, double q) {
  const auto r = bell(p);
  const auto s = bell(q);
  return rates::gerakol_witness(r.d, r.f, s.d, s.f).f_value;
}

void check_range(const Range& r, double lo, double hi, const char* what) {
  if (!(r.min >= lo - 1e-12 && r.max <= hi + 1e-12 && r.min <= r.max))
    throw DomainError(std::string(what) + " range must lie within [" + std::to_string(lo) + ", " +
                      std::to_string(hi) + "]");
}

std::string format_cell(const Cell& c) {
  if (!c) return {};
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", *c);
  return buf;
}

}  // namespace

std::vector<double> axis_points(double min, double max, double step) {
  if (!(step > 0.0)) throw DomainError("axis_points: step must be positive");
  if (!(max >= min)) throw DomainError("axis_points: empty range");
  const auto n = static_cast<std::size_t>(std::floor((max - min) / step + 1e-9));
  std::vector<double> pts;
  pts.reserve(n + 1);
  for (std::size_t i = 0; i <= n; ++i) pts.push_back(std::min(min + static_cast<double>(i) * step, max));
  return pts;
}

std::size_t ScanGrid::column(const std::string& name) const {
  for (std::size_t i = 0; i < schema.size(); ++i)
    if (schema[i] == name) return i;
  throw StructuralError("ScanGrid: no column named " + name);
}

void ScanGrid::validate() const {
  for (const auto& row : rows)
    if (row.size() != schema.size()) throw StructuralError("ScanGrid: row width differs from schema");
  for (const auto& axis : axes) {
    const std::size_t c = column(axis.name);
    for (const auto& row : rows)
      if (!row[c] || *row[c] < axis.min - 1e-12 || *row[c] > axis.max + 1e-12)
        throw StructuralError("ScanGrid: value of " + axis.name + " outside its axis range");
  }
}

ScanGrid fig1_scan(Range p, Range q, double step, std::size_t threads) {
  check_range(p, 0.5, 1.0, "p");
  check_range(q, 0.5, 1.0, "q");
  const auto ps = axis_points(p.min, p.max, step);
  const auto qs = axis_points(q.min, q.max, step);

  ScanGrid grid;
  grid.axes = {{"p", p.min, p.max, step}, {"q", q.min, q.max, step}};
  grid.schema = {"p", "q", "D_rho", "F_rho", "D_sigma", "F_sigma", "f", "lower_bound", "upper_bound", "gerakol_holds"};
  grid.rows.resize(ps.size() * qs.size());

  parallel_for(grid.rows.size(), threads, [&](std::size_t idx) {
    const double pv = ps[idx / qs.size()];
    const double qv = qs[idx % qs.size()];
    const auto r = bell(pv);
    const auto s = bell(qv);
    const auto w = rates::gerakol_witness(r.d, r.f, s.d, s.f);
    const auto bounds =
        rates::singlet_relative_bounds(rates::cycle_ratio_singlet(r.d, r.f), rates::cycle_ratio_singlet(s.d, s.f));
    grid.rows[idx] = {pv, qv, r.d, r.f, s.d, s.f, w.f_value, bounds.lower, bounds.upper, w.holds ? 1.0 : 0.0};
  });
  return grid;
}

ScanGrid fig3_scan(Range q, Range a2, double step, std::size_t threads) {
  check_range(q, 0.5, 1.0, "q");
  check_range(a2, 0.0, 0.5, "a2");
  const auto qs = axis_points(q.min, q.max, step);
  const auto as = axis_points(a2.min, a2.max, step);
  if (as.front() <= 0.0) throw DomainError("fig3_scan: |a|^2 must be positive");

  ScanGrid grid;
  grid.axes = {{"q", q.min, q.max, step}, {"a2", a2.min, a2.max, step}};
  grid.schema = {"q", "a2", "F", "D_gamma", "diff"};
  grid.rows.resize(qs.size() * as.size());

  parallel_for(grid.rows.size(), threads, [&](std::size_t idx) {
    const double qv = qs[idx / as.size()];
    const double av = as[idx % as.size()];
    const auto param = measures::MaxCorr2x2Param::from_weight(qv, av);
    const double f = measures::f_maxcorr_2x2(param);
    const double dg = measures::d_gamma_maxcorr(measures::maxcorr_2x2_state(param));
    grid.rows[idx] = {qv, av, f, dg, f - dg};
  });
  return grid;
}

Fig2Report fig2_anchors(double q) {
  if (!(q > 0.5 && q < 1.0)) throw DomainError("fig2_anchors: q must lie in (1/2, 1)");
  const auto s = bell(q);
  const double sigma_ratio = *rates::cycle_ratio_singlet(s.d, s.f);

  Fig2Report report{q, {}, 0.0, 0};
  // At p = 1 rho is a Bell state, so rho <-> sigma = sigma <-> singlet exactly.
  report.anchors.push_back({1.0, 1.0 - sigma_ratio, "p=1: rho is maximally entangled, R_Diff = 1 - D(sigma)/F(sigma)"});
  // At p = q the round trip rho <-> rho is lossless.
  report.anchors.push_back({q, sigma_ratio - 1.0, "p=q: equal states, R_Diff = D/F - 1 < 0"});

  // Walk down from p = 1 (where f = F(sigma) - D(sigma) > 0) to the first sign change.
  constexpr double kGrid = 1e-3;
  double hi = 1.0;
  double lo = 1.0;
  bool bracketed = false;
  for (double p = 1.0 - kGrid; p > q; p -= kGrid) {
    if (gerakol_f(p, q) <= 0.0) {
      lo = p;
      bracketed = true;
      break;
    }
    hi = p;
  }
  if (!bracketed) {
    lo = q;  // f(q, q) = DF(D - F) < 0
  }
  while (hi - lo > 1e-10) {
    const double mid = 0.5 * (lo + hi);
    if (gerakol_f(mid, q) > 0.0) hi = mid;
    else lo = mid;
  }
  report.crossing_p = 0.5 * (lo + hi);

  std::optional<bool> prev;
  for (double p : axis_points(q, 1.0, kGrid)) {
    if (p <= q) continue;
    const bool positive = gerakol_f(p, q) > 0.0;
    if (prev && *prev != positive) ++report.sign_changes;
    prev = positive;
  }
  return report;
}

std::vector<double> default_limit_p_list() { return {0.9, 0.99, 0.999, 0.9999, 0.99999, 0.999999}; }

ScanGrid limit_scan(const std::vector<double>& p_list) {
  if (p_list.empty()) throw DomainError("limit_scan: empty p list");
  ScanGrid grid;
  double lo = p_list.front();
  double hi = p_list.front();
  for (double p : p_list) {
    if (!(p >= 0.0 && p <= 1.0)) throw DomainError("limit_scan: p=" + std::to_string(p) + " outside [0, 1]");
    lo = std::min(lo, p);
    hi = std::max(hi, p);
  }
  grid.axes = {{"p", lo, hi, 0.0}};
  grid.schema = {"p", "D_gamma", "F", "ratio"};
  for (double p : p_list) {
    const auto state = measures::phi_plus_product_mixture(p);
    const double dg = measures::d_gamma_maxcorr(state);
    const double f = measures::wootters_eof_2x2(state).eof;
    Cell ratio;
    if (f > 1e-300 && !(dg <= 1e-300 && f <= 1e-300)) ratio = dg / f;
    grid.rows.push_back({p, dg, f, ratio});
  }
  return grid;
}

void write_csv(const ScanGrid& grid, std::ostream& out) {
  for (std::size_t i = 0; i < grid.schema.size(); ++i) out << (i ? "," : "") << grid.schema[i];
  out << '\n';
  for (const auto& row : grid.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << format_cell(row[i]);
    out << '\n';
  }
}

ScanGrid read_csv(std::istream& in) {
  ScanGrid grid;
  std::string line;
  if (!std::getline(in, line)) throw StructuralError("read_csv: missing header");
  {
    std::stringstream ss(line);
    std::string name;
    while (std::getline(ss, name, ',')) grid.schema.push_back(name);
  }
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<Cell> row;
    std::size_t start = 0;
    while (true) {
      const std::size_t end = line.find(',', start);
      const std::string field = line.substr(start, end == std::string::npos ? std::string::npos : end - start);
      if (field.empty()) {
        row.emplace_back();
      } else {
        double v = 0.0;
        const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
        if (ec != std::errc{} || ptr != field.data() + field.size())
          throw StructuralError("read_csv: bad number '" + field + "'");
        row.emplace_back(v);
      }
      if (end == std::string::npos) break;
      start = end + 1;
    }
    if (row.size() != grid.schema.size()) throw StructuralError("read_csv: row width differs from header");
    grid.rows.push_back(std::move(row));
  }
  return grid;
}

}  // namespace entrates::scans
