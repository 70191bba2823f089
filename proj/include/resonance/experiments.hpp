#pragma once

// Efficiency study on the degenerate three-level model with c = d^alpha:
// alpha search at fixed success probability, the runtime table, and the
// figure datasets. All probabilities come from analytic3::p_numeric3.

#include <string>
#include <string_view>
#include <vector>

#include "resonance/csv.hpp"

namespace resonance::experiments {

enum class PMode {
  fixed_time,  // P at t = (pi/2) d^-(1+alpha)
  max_over_t,  // max of P over [0, (pi/2) d^-(1+alpha)]
};

inline constexpr double kAlphaStep = 0.01;
inline constexpr int kAlphaStepsMax = 200;  // alpha in [0, 2]
inline constexpr int kAlphaStartStep = 100;  // scan starts at alpha = 1

struct AlphaSearchResult {
  double d = 0.0;
  double e_prime = 0.0;
  double target_p = 0.0;
  double alpha = 0.0;
  double t_run = 0.0;
  double achieved_p = 0.0;
};

/// (pi/2) / (c d) with c = d^alpha.
double run_time(double d, double alpha);

/// Success probability of the three-level model with c = d^alpha at t = run_time.
double success_probability(double d, double e_prime, double alpha, PMode mode = PMode::fixed_time);

/// Smallest alpha on the 0.01 grid in [0, 2] with P >= target_p, scanning
/// downward from alpha = 1 while P stays above target (upward if P(1) falls
/// short). Throws UnreachableTargetError if no alpha in [0, 2] works.
AlphaSearchResult alpha_search(double d, double e_prime, double target_p,
                               PMode mode = PMode::fixed_time);

inline constexpr double kTable1EPrime = 20.0;
inline constexpr double kTable1Target = 0.99;
std::vector<double> table1_overlaps();

std::vector<AlphaSearchResult> table1(PMode mode = PMode::fixed_time, unsigned threads = 1);
/// Columns d,alpha,t,inv_d2,achieved_p.
csv::Table table1_csv(const std::vector<AlphaSearchResult>& rows);

enum class FigureId { fig2a, fig2b, fig3, fig4, fig4_companion, fig5 };

FigureId parse_figure_id(std::string_view id);
std::vector<FigureId> all_figures();
std::string file_name(FigureId id);

/// fig2a/2b: t,e_prime,p (d = 0.01, alpha = 1 / 0)
/// fig3:     alpha,e_prime,t,p (d = 0.01, alpha in {0, 0.5, 1})
/// fig4:     alpha,d,t,p (d = 0.1, E' = 5); fig4_companion uses d = 0.01
/// fig5:     e_prime,d,alpha,t,achieved_p (target P = 0.9; alpha = nan if unreachable)
csv::Table figure_dataset(FigureId id, unsigned threads = 1);

}  // namespace resonance::experiments

namespace resonance::experiments {

struct ClosedFormValidation {
  csv::Table report;  // d,e_prime,alpha,t,p_analytic,p_numeric3,abs_diff
  double max_abs_diff = 0.0;
  std::size_t degenerate_points = 0;  // skipped: cubic roots nearly repeated
};

/// Closed form vs 3x3 propagation over d in {0.01, 0.1}, E' in {2, 20},
/// alpha in {0, 1}, t in [0, 2 pi / (c d)] sampled at time_points points.
ClosedFormValidation validate_closed_form(std::size_t time_points = 201, unsigned threads = 1);

}  // namespace resonance::experiments
