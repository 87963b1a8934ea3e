#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "entrates/errors.hpp"
#include "entrates/measures.hpp"
#include "entrates/rates.hpp"
#include "test_support.hpp"

using namespace entrates;
using namespace entrates::rates;
using entrates::oracle::h_oracle;

namespace {

// Bell-mixture measures straight from the binary entropy oracle.
double d_bell(double p) { return 1.0 - h_oracle(p); }
double f_bell(double p) { return h_oracle(0.5L + std::sqrt(static_cast<long double>(p) * (1.0L - p))); }

StateDescriptor bell(double p) { return {"bell-mix", {p}, d_bell(p), d_bell(p), f_bell(p)}; }

StateDescriptor maxcorr2(double q, double a2) {
  const auto m = measures::MaxCorr2x2Param::from_weight(q, a2);
  return {"maxcorr-2x2", {q, a2}, std::nullopt, measures::d_gamma_maxcorr(measures::maxcorr_2x2_state(m)),
          measures::f_maxcorr_2x2(m)};
}

}  // namespace

// ---------- cycle ratio ----------
TEST(CycleRatio, PureBell) { EXPECT_EQ(cycle_ratio_singlet(1.0, 1.0), 1.0); }

TEST(CycleRatio, BellMixturePointNine) {
  const auto r = cycle_ratio_singlet(d_bell(0.9), f_bell(0.9));
  ASSERT_TRUE(r.has_value());
  EXPECT_NEAR(*r, 0.735536, 1e-5);
  EXPECT_NEAR(*r, (1.0 - h_oracle(0.9L)) / h_oracle(0.8L), 1e-14);
}

TEST(CycleRatio, SeparableIsUndefined) {
  EXPECT_FALSE(cycle_ratio_singlet(0.0, 0.0).has_value());
  EXPECT_FALSE(cycle_ratio_singlet(1e-13, 5e-13).has_value());
}

TEST(CycleRatio, ErrorsAndClamping) {
  EXPECT_THROW(cycle_ratio_singlet(0.8, 0.7), ConsistencyError);
  EXPECT_THROW(cycle_ratio_singlet(-0.1, 0.7), DomainError);
  EXPECT_THROW(cycle_ratio_singlet(1e-6, 0.0), ConsistencyError);
  EXPECT_EQ(cycle_ratio_singlet(0.7 + 1e-10, 0.7), 1.0);
}

// ---------- singlet-relative bounds ----------
TEST(SingletRelativeBounds, EqualRatios) {
  const auto b = singlet_relative_bounds(0.6, 0.6);
  EXPECT_NEAR(*b.lower, 0.36, 1e-15);
  EXPECT_EQ(*b.upper, 1.0);
  EXPECT_EQ(b.source, BoundSource::SingletRelative);
}

TEST(SingletRelativeBounds, SingletPinsTheRate) {
  const auto b = singlet_relative_bounds(1.0, 0.4);
  EXPECT_NEAR(*b.lower, 0.4, 1e-15);
  EXPECT_NEAR(*b.upper, 0.4, 1e-15);
}

TEST(SingletRelativeBounds, Arithmetic) {
  const auto b = singlet_relative_bounds(0.735536, 0.5);
  EXPECT_NEAR(*b.lower, 0.367768, 1e-6);
  EXPECT_NEAR(*b.upper, 0.5 / 0.735536, 1e-12);
  EXPECT_NEAR(*b.upper, 0.679777, 1e-6);
}

TEST(SingletRelativeBounds, UndefinedInputs) {
  const auto b = singlet_relative_bounds(std::nullopt, 0.5);
  EXPECT_FALSE(b.lower.has_value());
  EXPECT_FALSE(b.upper.has_value());
  EXPECT_FALSE(b.reason.empty());
  EXPECT_FALSE(singlet_relative_bounds(0.0, 0.5).upper.has_value());
}

TEST(SingletRelativeBounds, SymmetricAndOrdered) {
  std::mt19937_64 rng(51);
  std::uniform_real_distribution<double> uni(1e-6, 1.0);
  for (int it = 0; it < 10000; ++it) {
    const double a = uni(rng), b = uni(rng);
    const auto ab = singlet_relative_bounds(a, b);
    const auto ba = singlet_relative_bounds(b, a);
    EXPECT_EQ(*ab.upper, *ba.upper);
    EXPECT_LE(*ab.lower, *ab.upper + 1e-12);
  }
}

TEST(SingletRelativeBounds, LowerIsChainedProduct) {
  for (double p = 0.51; p < 1.0; p += 0.02)
    for (double q = 0.51; q < 1.0; q += 0.02) {
      const double rp = d_bell(p) / f_bell(p), rq = d_bell(q) / f_bell(q);
      const auto b = singlet_relative_bounds(cycle_ratio_singlet(d_bell(p), f_bell(p)), cycle_ratio_singlet(d_bell(q), f_bell(q)));
      EXPECT_NEAR(*b.lower, rp * rq, 1e-12);
    }
}

// ---------- measure-pair bounds ----------
TEST(MeasurePair, Arithmetic) {
  EXPECT_EQ(upper_bound_from_measures(0.3, 0.3, 0.3, 0.3), 1.0);
  EXPECT_EQ(upper_bound_from_measures(2.0, 4.0, 1.0, 1.0), 0.5);
}

TEST(MeasurePair, DfPairForBellMixtures) {
  const double expected = f_bell(0.99) * d_bell(0.7) / (f_bell(0.7) * d_bell(0.99));
  EXPECT_NEAR(upper_bound_from_measures(f_bell(0.99), f_bell(0.7), d_bell(0.99), d_bell(0.7)), expected, 1e-14);
  const auto b = upper_bound_df(d_bell(0.99), f_bell(0.99), d_bell(0.7), f_bell(0.7));
  EXPECT_EQ(b.source, BoundSource::DfPair);
  EXPECT_NEAR(*b.upper, expected, 1e-14);
}

TEST(MeasurePair, RejectsVanishingInputs) {
  EXPECT_THROW(upper_bound_from_measures(0.0, 1.0, 1.0, 1.0), DomainError);
  EXPECT_THROW(upper_bound_from_measures(1.0, 1.0, -1.0, 1.0), DomainError);
  EXPECT_FALSE(upper_bound_df(0.0, 0.0, 0.5, 0.6).upper.has_value());
}

// ---------- gerakol witness ----------
TEST(Gerakol, EqualStatesNeverHold) {
  for (double p = 0.51; p < 1.0; p += 0.01) {
    const auto w = gerakol_witness(d_bell(p), f_bell(p), d_bell(p), f_bell(p));
    EXPECT_FALSE(w.holds);
    EXPECT_NEAR(w.f_value, d_bell(p) * f_bell(p) * (d_bell(p) - f_bell(p)), 1e-14);
  }
}

TEST(Gerakol, PureBellAgainstMixture) {
  for (double q = 0.51; q < 1.0; q += 0.01) {
    const auto w = gerakol_witness(1.0, 1.0, d_bell(q), f_bell(q));
    EXPECT_TRUE(w.holds);
    EXPECT_NEAR(w.f_value, f_bell(q) - d_bell(q), 1e-14);
  }
}

TEST(Gerakol, NearPureRegionHolds) {
  const auto w = gerakol_witness(d_bell(0.99), f_bell(0.99), d_bell(0.7), f_bell(0.7));
  EXPECT_TRUE(w.holds);
  EXPECT_GT(w.f_value, 0.0);
}

TEST(Gerakol, EquivalentToDfBound) {
  std::mt19937_64 rng(52);
  std::uniform_real_distribution<double> uni(1e-3, 1.0);
  int positives = 0;
  for (int it = 0; it < 10000; ++it) {
    const double dr = uni(rng), fr = uni(rng), ds = uni(rng), fs = uni(rng);
    const auto w = gerakol_witness(dr, fr, ds, fs);
    const double bound = upper_bound_from_measures(fr, fs, dr, ds);
    // f > 0  <=>  D(s) F(r)^2 < D(r)^2 F(s)  <=>  df bound < D(r)/F(r)
    EXPECT_EQ(w.holds, ds * fr * fr < dr * dr * fs);
    if (std::abs(w.f_value) > 1e-12) EXPECT_EQ(w.holds, bound < dr / fr);
    positives += w.holds;
  }
  EXPECT_GT(positives, 0);
  EXPECT_LT(positives, 10000);
}

// ---------- R_Diff sign ----------
TEST(RDiffSign, EqualStatesNegative) {
  const auto r = rdiff_sign_witness(bell(0.7), bell(0.7));
  EXPECT_EQ(r.sign, Sign::Negative);
  EXPECT_EQ(r.witness, "equal-states");
  ASSERT_TRUE(r.rdiff_upper.has_value());
  EXPECT_LT(*r.rdiff_upper, 0.0);
  EXPECT_NEAR(*r.rdiff_upper, d_bell(0.7) / f_bell(0.7) - 1.0, 1e-14);
}

TEST(RDiffSign, NearPureAgainstMixturePositive) {
  const auto r = rdiff_sign_witness(bell(0.99), bell(0.7));
  EXPECT_EQ(r.sign, Sign::Positive);
  EXPECT_EQ(r.witness, "gerakol");
  EXPECT_TRUE(r.holds);
  EXPECT_GT(*r.rdiff_lower, 0.0);
  EXPECT_LE(*r.rdiff_lower, *r.rdiff_upper);
}

TEST(RDiffSign, UnknownWhenNoWitnessApplies) {
  const auto r = rdiff_sign_witness(bell(0.6), bell(0.9));
  EXPECT_EQ(r.sign, Sign::Unknown);
  EXPECT_EQ(r.witness, "none");
  ASSERT_TRUE(r.f_value.has_value());
  EXPECT_LE(*r.f_value, 0.0);
}

TEST(RDiffSign, DGammaSubstitutionIsFlagged) {
  const auto r = rdiff_sign_witness(bell(0.99), maxcorr2(0.7, 0.3));
  EXPECT_NE(std::find(r.flags.begin(), r.flags.end(), "sigma:D_gamma-substituted"), r.flags.end());
  const auto m = maxcorr2(0.7, 0.3);
  const auto w = gerakol_witness(d_bell(0.99), f_bell(0.99), *m.d_gamma, *m.f);
  EXPECT_EQ(*r.f_value, w.f_value);
  EXPECT_EQ(r.sign, w.holds ? Sign::Positive : Sign::Unknown);
  EXPECT_EQ(r.bounds.source, BoundSource::DfPair);
}

TEST(RDiffSign, MissingMeasuresGiveUnknown) {
  StateDescriptor raw{"raw", {}, std::nullopt, std::nullopt, std::nullopt};
  const auto r = rdiff_sign_witness(bell(0.9), raw);
  EXPECT_EQ(r.sign, Sign::Unknown);
  EXPECT_FALSE(r.f_value.has_value());
  EXPECT_FALSE(r.bounds.upper.has_value());
}

TEST(RDiffSign, ParameterTolerance) {
  EXPECT_TRUE(same_state(bell(0.7), bell(0.7 + 5e-13)));
  EXPECT_FALSE(same_state(bell(0.7), bell(0.7 + 1e-9)));
  EXPECT_FALSE(same_state(bell(0.7), maxcorr2(0.7, 0.5)));
}

TEST(RDiffSign, SignsConsistentWithBracket) {
  for (double p = 0.52; p <= 1.0; p += 0.02)
    for (double q = 0.52; q < 1.0; q += 0.02) {
      const auto r = rdiff_sign_witness(bell(p), bell(q));
      if (r.sign == Sign::Positive) EXPECT_GT(*r.rdiff_lower, 0.0);
      if (r.sign == Sign::Negative) EXPECT_LT(*r.rdiff_upper, 0.0);
      if (r.rdiff_lower && r.rdiff_upper) EXPECT_LE(*r.rdiff_lower, *r.rdiff_upper + 1e-12);
    }
}

TEST(RDiffSign, Names) {
  EXPECT_EQ(to_string(Sign::Positive), "positive");
  EXPECT_EQ(to_string(Sign::Negative), "negative");
  EXPECT_EQ(to_string(Sign::Unknown), "unknown");
  EXPECT_EQ(to_string(BoundSource::SingletRelative), "singlet-relative");
  EXPECT_EQ(to_string(BoundSource::MeasurePair), "measure-pair");
  EXPECT_EQ(to_string(BoundSource::DfPair), "df-pair");
}
