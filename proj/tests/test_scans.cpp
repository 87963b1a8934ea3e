#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "entrates/errors.hpp"
#include "entrates/measures.hpp"
#include "entrates/scans.hpp"
#include "test_support.hpp"

using namespace entrates;
using namespace entrates::scans;
using entrates::oracle::h_oracle;

namespace {

double d_bell(double p) { return 1.0 - h_oracle(p); }
double f_bell(double p) { return h_oracle(0.5L + std::sqrt(static_cast<long double>(p) * (1.0L - p))); }
double f_oracle(double p, double q) { return d_bell(p) * d_bell(p) * f_bell(q) - f_bell(p) * f_bell(p) * d_bell(q); }

double cell(const ScanGrid& g, std::size_t row, const std::string& name) { return *g.rows[row][g.column(name)]; }

// For each fine point, distance to the coarse value at the enclosing coarse cell
// must not exceed the largest jump between neighbouring coarse cells.
void expect_refinement_smooth(const ScanGrid& coarse, std::size_t nc1, const ScanGrid& fine, std::size_t nf1,
                              const std::vector<std::string>& columns) {
  const std::size_t nc0 = coarse.rows.size() / nc1;
  for (const auto& name : columns) {
    const std::size_t c = coarse.column(name);
    double max_jump = 0.0;
    for (std::size_t i = 0; i < nc0; ++i)
      for (std::size_t j = 0; j < nc1; ++j) {
        const double v = *coarse.rows[i * nc1 + j][c];
        if (i + 1 < nc0) max_jump = std::max(max_jump, std::abs(*coarse.rows[(i + 1) * nc1 + j][c] - v));
        if (j + 1 < nc1) max_jump = std::max(max_jump, std::abs(*coarse.rows[i * nc1 + j + 1][c] - v));
      }
    const std::size_t nf0 = fine.rows.size() / nf1;
    for (std::size_t i = 0; i < nf0; ++i)
      for (std::size_t j = 0; j < nf1; ++j) {
        const double v = *fine.rows[i * nf1 + j][c];
        const double w = *coarse.rows[(i / 2) * nc1 + j / 2][c];
        EXPECT_LE(std::abs(v - w), max_jump + 1e-15) << name << " at fine (" << i << "," << j << ")";
      }
  }
}

}  // namespace

// ---------- axes ----------
TEST(AxisPoints, InclusiveEndpoints) {
  const auto pts = axis_points(0.5, 1.0, 0.005);
  ASSERT_EQ(pts.size(), 101u);
  EXPECT_EQ(pts.front(), 0.5);
  EXPECT_EQ(pts.back(), 1.0);
  EXPECT_EQ(axis_points(0.7, 0.7, 0.01).size(), 1u);
}

TEST(AxisPoints, Errors) {
  EXPECT_THROW(axis_points(0.5, 1.0, 0.0), DomainError);
  EXPECT_THROW(axis_points(0.5, 1.0, -0.1), DomainError);
  EXPECT_THROW(axis_points(0.9, 0.5, 0.1), DomainError);
}

// ---------- fig1 ----------
TEST(Fig1, SchemaAndRowCount) {
  const auto g = fig1_scan({0.5, 1.0}, {0.5, 1.0}, 0.01);
  ASSERT_EQ(g.schema.size(), 10u);
  EXPECT_EQ(g.schema.front(), "p");
  EXPECT_EQ(g.schema.back(), "gerakol_holds");
  EXPECT_EQ(g.rows.size(), 51u * 51u);
  EXPECT_NO_THROW(g.validate());
}

TEST(Fig1, DiagonalPointIsNegative) {
  const auto g = fig1_scan({0.7, 0.7}, {0.7, 0.7}, 0.01);
  ASSERT_EQ(g.rows.size(), 1u);
  EXPECT_LT(cell(g, 0, "f"), 0.0);
  EXPECT_NEAR(cell(g, 0, "f"), f_oracle(0.7, 0.7), 1e-14);
  EXPECT_EQ(cell(g, 0, "gerakol_holds"), 0.0);
}

TEST(Fig1, NearPurePointIsPositive) {
  const auto g = fig1_scan({0.99, 0.99}, {0.7, 0.7}, 0.01);
  EXPECT_GT(cell(g, 0, "f"), 0.0);
  EXPECT_NEAR(cell(g, 0, "f"), f_oracle(0.99, 0.7), 1e-14);
  EXPECT_EQ(cell(g, 0, "gerakol_holds"), 1.0);
}

TEST(Fig1, PureRowEqualsIrreversibilityGap) {
  const auto g = fig1_scan({1.0, 1.0}, {0.5, 1.0}, 0.01);
  for (std::size_t i = 0; i < g.rows.size(); ++i) {
    const double q = cell(g, i, "q");
    EXPECT_NEAR(cell(g, i, "f"), f_bell(q) - d_bell(q), 1e-14);
    if (q > 0.5 && q < 1.0) EXPECT_GT(cell(g, i, "f"), 0.0);
  }
}

TEST(Fig1, ColumnsMatchOracles) {
  const auto g = fig1_scan({0.5, 1.0}, {0.5, 1.0}, 0.05);
  for (std::size_t i = 0; i < g.rows.size(); ++i) {
    const double p = cell(g, i, "p"), q = cell(g, i, "q");
    EXPECT_NEAR(cell(g, i, "D_rho"), d_bell(p), 1e-14);
    EXPECT_NEAR(cell(g, i, "F_rho"), f_bell(p), 1e-14);
    EXPECT_NEAR(cell(g, i, "D_sigma"), d_bell(q), 1e-14);
    EXPECT_NEAR(cell(g, i, "F_sigma"), f_bell(q), 1e-14);
    EXPECT_NEAR(cell(g, i, "f"), f_oracle(p, q), 1e-14);
  }
}

TEST(Fig1, BoundsOrderedAndUndefinedAtSeparableEdge) {
  const auto g = fig1_scan({0.5, 1.0}, {0.5, 1.0}, 0.01);
  const auto lo = g.column("lower_bound"), hi = g.column("upper_bound");
  for (std::size_t i = 0; i < g.rows.size(); ++i) {
    const auto& row = g.rows[i];
    const bool edge = cell(g, i, "p") == 0.5 || cell(g, i, "q") == 0.5;
    EXPECT_EQ(row[lo].has_value(), !edge);
    if (row[lo] && row[hi]) EXPECT_LE(*row[lo], *row[hi] + 1e-12);
  }
}

TEST(Fig1, EveryInteriorColumnHasPositiveBand) {
  const auto g = fig1_scan({0.5, 1.0}, {0.5, 1.0}, 0.005);
  const std::size_t n = 101;
  for (std::size_t j = 1; j + 1 < n; ++j) {
    bool found = false;
    for (std::size_t i = j + 1; i < n; ++i) found = found || cell(g, i * n + j, "f") > 0.0;
    EXPECT_TRUE(found) << "q=" << cell(g, j, "q");
  }
}

TEST(Fig1, DeterministicAcrossThreadCounts) {
  const auto a = fig1_scan({0.5, 1.0}, {0.5, 1.0}, 0.02, 1);
  const auto b = fig1_scan({0.5, 1.0}, {0.5, 1.0}, 0.02, 3);
  EXPECT_EQ(a.rows, b.rows);
}

TEST(Fig1, RejectsOutOfRange) {
  EXPECT_THROW(fig1_scan({0.4, 1.0}, {0.5, 1.0}, 0.01), DomainError);
  EXPECT_THROW(fig1_scan({0.5, 1.0}, {0.5, 1.1}, 0.01), DomainError);
  EXPECT_THROW(fig1_scan({0.5, 1.0}, {0.5, 1.0}, 0.0), DomainError);
}

TEST(Fig1, RefinementIntroducesNoJumps) {
  const auto coarse = fig1_scan({0.55, 0.95}, {0.55, 0.95}, 0.01);
  const auto fine = fig1_scan({0.55, 0.95}, {0.55, 0.95}, 0.005);
  expect_refinement_smooth(coarse, 41, fine, 81,
                           {"D_rho", "F_rho", "D_sigma", "F_sigma", "f", "lower_bound", "upper_bound"});
}

// ---------- fig3 ----------
TEST(Fig3, SchemaAndEdges) {
  const auto g = fig3_scan({0.5, 1.0}, {0.005, 0.5}, 0.005);
  EXPECT_EQ(g.schema, (std::vector<std::string>{"q", "a2", "F", "D_gamma", "diff"}));
  EXPECT_EQ(g.rows.size(), 101u * 100u);
  EXPECT_NO_THROW(g.validate());
  double interior_min = 1e300;
  for (std::size_t i = 0; i < g.rows.size(); ++i) {
    const double q = cell(g, i, "q"), a2 = cell(g, i, "a2");
    if (q == 0.5) EXPECT_NEAR(cell(g, i, "diff"), 0.0, 1e-9);
    if (q == 1.0 && std::abs(a2 - 0.5) < 1e-12) EXPECT_NEAR(cell(g, i, "diff"), 0.0, 1e-9);
    if (q > 0.5 && q < 1.0) interior_min = std::min(interior_min, cell(g, i, "diff"));
  }
  EXPECT_GT(interior_min, 0.0);
}

TEST(Fig3, PointEightHalf) {
  const auto g = fig3_scan({0.8, 0.8}, {0.5, 0.5}, 0.01);
  ASSERT_EQ(g.rows.size(), 1u);
  EXPECT_NEAR(cell(g, 0, "F"), h_oracle(0.9L), 1e-12);
  // a-matrix [[1/2, -0.3], [-0.3, 1/2]]: eigenvalues 0.8 and 0.2.
  EXPECT_NEAR(cell(g, 0, "D_gamma"), 1.0 - h_oracle(0.8L), 1e-12);
  EXPECT_GT(cell(g, 0, "diff"), 0.0);
}

TEST(Fig3, RejectsZeroWeight) {
  EXPECT_THROW(fig3_scan({0.5, 1.0}, {0.0, 0.5}, 0.01), DomainError);
  EXPECT_THROW(fig3_scan({0.5, 1.0}, {0.01, 0.6}, 0.01), DomainError);
}

TEST(Fig3, RefinementIntroducesNoJumps) {
  const auto coarse = fig3_scan({0.55, 0.95}, {0.05, 0.45}, 0.01);
  const auto fine = fig3_scan({0.55, 0.95}, {0.05, 0.45}, 0.005);
  expect_refinement_smooth(coarse, 41, fine, 81, {"F", "D_gamma", "diff"});
}

// ---------- fig2 ----------
TEST(Fig2, AnchorsAndCrossing) {
  const double q = 2.0 / 3.0;
  const auto r = fig2_anchors(q);
  ASSERT_EQ(r.anchors.size(), 2u);
  const double ratio = d_bell(q) / f_bell(q);
  EXPECT_EQ(r.anchors[0].p, 1.0);
  EXPECT_NEAR(r.anchors[0].rdiff, 1.0 - ratio, 1e-14);
  EXPECT_NEAR(r.anchors[1].p, q, 1e-15);
  EXPECT_NEAR(r.anchors[1].rdiff, ratio - 1.0, 1e-14);
  EXPECT_LT(r.anchors[1].rdiff, 0.0);
  EXPECT_GT(r.crossing_p, q);
  EXPECT_LT(r.crossing_p, 1.0);
  EXPECT_NEAR(f_oracle(r.crossing_p, q), 0.0, 1e-9);
  EXPECT_NEAR(r.crossing_p, 0.8508946398, 1e-9);
  EXPECT_EQ(r.sign_changes, 1u);
}

TEST(Fig2, PureEndIsPositiveForAllQ) {
  for (double q = 0.51; q < 0.995; q += 0.01) {
    const auto r = fig2_anchors(q);
    EXPECT_GT(r.anchors[0].rdiff, 0.0);
    EXPECT_GT(f_oracle(std::min(1.0, r.crossing_p + 1e-8), q), 0.0);
    EXPECT_GE(r.sign_changes, 1u);
  }
}

TEST(Fig2, RejectsBoundaryQ) {
  EXPECT_THROW(fig2_anchors(0.5), DomainError);
  EXPECT_THROW(fig2_anchors(1.0), DomainError);
}

// ---------- limit ----------
TEST(Limit, Endpoints) {
  const auto g = limit_scan({0.0, 1.0});
  EXPECT_NEAR(cell(g, 0, "D_gamma"), 1.0, 1e-12);
  EXPECT_NEAR(cell(g, 0, "F"), 1.0, 1e-12);
  EXPECT_NEAR(cell(g, 0, "ratio"), 1.0, 1e-12);
  EXPECT_NEAR(cell(g, 1, "D_gamma"), 0.0, 1e-12);
  EXPECT_NEAR(cell(g, 1, "F"), 0.0, 1e-12);
  EXPECT_FALSE(g.rows[1][g.column("ratio")].has_value());
}

TEST(Limit, MatchesHighPrecisionReference) {
  // Reference ratios from a 50-digit evaluation of the same closed forms.
  const std::vector<std::pair<double, double>> ref{{0.9, 0.470280144406},      {0.99, 0.461262048289},
                                                   {0.999, 0.469593197721},    {0.9999, 0.47601599478},
                                                   {0.99999, 0.480329073641}, {0.999999, 0.483343422508}};
  const auto g = limit_scan(default_limit_p_list());
  ASSERT_EQ(g.rows.size(), ref.size());
  for (std::size_t i = 0; i < ref.size(); ++i) {
    EXPECT_EQ(cell(g, i, "p"), ref[i].first);
    EXPECT_NEAR(cell(g, i, "ratio"), ref[i].second, 1e-5);
  }
  EXPECT_LT(std::abs(cell(g, ref.size() - 1, "ratio") - 0.5), 0.05);
}

TEST(Limit, RejectsBadInput) {
  EXPECT_THROW(limit_scan({}), DomainError);
  EXPECT_THROW(limit_scan({1.5}), DomainError);
}

// ---------- CSV ----------
TEST(Csv, RoundTrip) {
  const auto g = fig1_scan({0.5, 1.0}, {0.5, 1.0}, 0.05);
  std::stringstream ss;
  write_csv(g, ss);
  const auto back = read_csv(ss);
  EXPECT_EQ(back.schema, g.schema);
  ASSERT_EQ(back.rows.size(), g.rows.size());
  for (std::size_t i = 0; i < g.rows.size(); ++i)
    for (std::size_t j = 0; j < g.schema.size(); ++j) {
      ASSERT_EQ(back.rows[i][j].has_value(), g.rows[i][j].has_value());
      if (g.rows[i][j]) EXPECT_NEAR(*back.rows[i][j], *g.rows[i][j], 1e-12 * std::max(1.0, std::abs(*g.rows[i][j])));
    }
}

TEST(Csv, EmptyCellsForUndefined) {
  std::stringstream ss;
  write_csv(limit_scan({1.0}), ss);
  std::string header, row;
  std::getline(ss, header);
  std::getline(ss, row);
  EXPECT_EQ(header, "p,D_gamma,F,ratio");
  EXPECT_EQ(row.back(), ',');
}

TEST(Csv, RejectsMalformed) {
  std::stringstream empty;
  EXPECT_THROW(read_csv(empty), StructuralError);
  std::stringstream bad("a,b\n1,x\n");
  EXPECT_THROW(read_csv(bad), StructuralError);
  std::stringstream ragged("a,b\n1\n");
  EXPECT_THROW(read_csv(ragged), StructuralError);
}

TEST(ScanGridShape, UnknownColumnAndWidth) {
  ScanGrid g;
  g.schema = {"x"};
  g.rows = {{1.0, 2.0}};
  EXPECT_THROW(g.column("y"), StructuralError);
  EXPECT_THROW(g.validate(), StructuralError);
}
