#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "resonance/analytic3.hpp"
#include "resonance/error.hpp"
#include "resonance/experiments.hpp"

using namespace resonance;
using namespace resonance::experiments;

TEST(RunTime, Formula) {
  EXPECT_NEAR(run_time(0.1, 0.0), 5 * std::numbers::pi, 1e-12);
  EXPECT_NEAR(run_time(0.01, 1.0), 0.5 * std::numbers::pi * 1e4, 1e-8);
}

TEST(AlphaSearch, LargestOverlapNeedsNoExtraCoupling) {
  const auto r = alpha_search(0.4, 20.0, 0.99);
  EXPECT_NEAR(r.alpha, 0.0, 1e-12);
  EXPECT_NEAR(r.t_run, 3.93, 0.01);
  EXPECT_GE(r.achieved_p, 0.99);
}

TEST(AlphaSearch, ResultIsMinimalOnGrid) {
  for (double d : {0.02, 0.1, 0.2}) {
    const auto r = alpha_search(d, 20.0, 0.99);
    EXPECT_GE(r.achieved_p, 0.99 - 5e-3);
    EXPECT_GE(r.alpha, 0.0);
    EXPECT_NEAR(r.achieved_p, success_probability(d, 20.0, r.alpha), 1e-15);
    EXPECT_NEAR(r.t_run, run_time(d, r.alpha), 1e-12);
    if (r.alpha > 0.0) EXPECT_LT(success_probability(d, 20.0, r.alpha - kAlphaStep), 0.99);
  }
}

TEST(AlphaSearch, RuntimeBeatsInverseSquareOverlap) {
  for (const auto& r : table1()) {
    EXPECT_LE(r.t_run, 1.0 / (r.d * r.d)) << "d=" << r.d;
  }
}

TEST(AlphaSearch, SearchesUpwardWhenNeeded) {
  // E' = 2: at d = 0.3 alpha = 1 falls short of P = 0.9
  ASSERT_LT(success_probability(0.3, 2.0, 1.0), 0.9);
  const auto r = alpha_search(0.3, 2.0, 0.9);
  EXPECT_GT(r.alpha, 1.0);
  EXPECT_GE(r.achieved_p, 0.9);
}

TEST(AlphaSearch, UnreachableTargetReportsBest) {
  try {
    alpha_search(0.9, 2.0, 0.9);
    FAIL() << "expected UnreachableTargetError";
  } catch (const UnreachableTargetError& e) {
    EXPECT_LT(e.best_p(), 0.9);
    EXPECT_GE(e.best_p(), 0.0);
  }
}

TEST(AlphaSearch, RejectsBadInput) {
  EXPECT_THROW(alpha_search(0.0, 20.0, 0.99), ValidationError);
  EXPECT_THROW(alpha_search(1.0, 20.0, 0.99), ValidationError);
  EXPECT_THROW(alpha_search(0.1, 20.0, 1.0), ValidationError);
}

TEST(SuccessProbability, MaxOverTimeDominatesFixedTime) {
  for (double alpha : {0.0, 0.4, 1.0}) {
    const double fixed = success_probability(0.05, 20.0, alpha, PMode::fixed_time);
    const double best = success_probability(0.05, 20.0, alpha, PMode::max_over_t);
    EXPECT_GE(best, fixed - 1e-12);
    EXPECT_LE(best, 1.0 + 1e-12);
  }
}

TEST(RuntimeTable, CsvShape) {
  const auto rows = table1();
  ASSERT_EQ(rows.size(), 6u);
  const auto t = table1_csv(rows);
  EXPECT_EQ(t.to_string().substr(0, t.to_string().find('\n')), "d,alpha,t,inv_d2,achieved_p");
  EXPECT_EQ(t.rows.size(), 6u);
  EXPECT_DOUBLE_EQ(t.rows[0][3], 1e4);
}

TEST(Figures, ParseIds) {
  EXPECT_EQ(parse_figure_id("2a"), FigureId::fig2a);
  EXPECT_EQ(parse_figure_id("4c"), FigureId::fig4_companion);
  EXPECT_EQ(parse_figure_id("5"), FigureId::fig5);
  EXPECT_THROW(parse_figure_id("6"), ValidationError);
  EXPECT_EQ(all_figures().size(), 6u);
  EXPECT_EQ(file_name(FigureId::fig4_companion), "fig4_d0.01.csv");
}

TEST(Figures, Fig2RowsAreProbabilitiesAndRecompute) {
  const auto t = figure_dataset(FigureId::fig2a);
  EXPECT_EQ(t.rows.size(), 41u * 201u);
  for (const auto& r : t.rows) {
    EXPECT_GE(r[2], 0.0);
    EXPECT_LE(r[2], 1.0);
  }
  const auto& r = t.rows[41 * 7 + 133];
  EXPECT_NEAR(r[2], analytic3::p_numeric3(analytic3::ThreeLevelParams::from_alpha(0.01, r[1], 1.0), r[0]), 1e-12);
}

TEST(Figures, Fig3EvaluatesAtRunTime) {
  const auto t = figure_dataset(FigureId::fig3);
  EXPECT_EQ(t.rows.size(), 3u * 397u);
  for (const auto& r : t.rows) {
    EXPECT_NEAR(r[2], run_time(0.01, r[0]), 1e-9);
    EXPECT_GE(r[3], 0.0);
    EXPECT_LE(r[3], 1.0);
  }
  // weak-coupling curve approaches 1 once E' is large
  EXPECT_GT(t.rows[2 * 397 + 396][3], 0.99);
}

TEST(Figures, Fig4CoversFourRabiPeriods) {
  for (auto id : {FigureId::fig4, FigureId::fig4_companion}) {
    const auto t = figure_dataset(id);
    EXPECT_EQ(t.rows.size(), 3u * 401u);
    EXPECT_EQ(t.rows.front()[3], 0.0);
    const double d = t.rows.front()[1];
    EXPECT_NEAR(t.rows[400][2], 4 * std::numbers::pi / d, 1e-9);  // alpha = 0, c = 1
  }
}

TEST(Figures, Fig5Grid) {
  const auto t = figure_dataset(FigureId::fig5);
  EXPECT_EQ(t.rows.size(), 36u);
  for (const auto& r : t.rows) {
    if (std::isnan(r[2])) continue;
    EXPECT_GE(r[4], 0.9 - 5e-3);
    EXPECT_NEAR(r[3], run_time(r[1], r[2]), 1e-9 * r[3]);
  }
}

TEST(ClosedForm, ClosedFormMatchesPropagation) {
  const auto v = validate_closed_form(51);
  EXPECT_LT(v.max_abs_diff, 1e-6);
  EXPECT_EQ(v.report.rows.size() + v.degenerate_points, 8u * 51u);
}
