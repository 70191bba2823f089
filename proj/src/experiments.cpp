#include "resonance/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include <boost/math/tools/minima.hpp>

#include "resonance/analytic3.hpp"
#include "resonance/error.hpp"
#include "resonance/parallel.hpp"

namespace resonance::experiments {

namespace {

using analytic3::ThreeLevelModel;
using analytic3::ThreeLevelParams;

constexpr double kFigureD = 0.01;
constexpr double kFig4D = 0.1;
constexpr double kFig4EPrime = 5.0;
constexpr double kFig5Target = 0.9;
constexpr std::size_t kMaxOverTMinSamples = 256;
constexpr std::size_t kMaxOverTMaxSamples = 200000;

double alpha_at(int step) { return step * kAlphaStep; }

std::vector<double> linspace(double lo, double hi, std::size_t n) {
  std::vector<double> out(n);
  for (std::size_t k = 0; k < n; ++k) {
    out[k] = n == 1 ? lo : lo + (hi - lo) * static_cast<double>(k) / static_cast<double>(n - 1);
  }
  return out;
}

// Max of P over [0, t_end]: dense scan resolving the fastest Bohr frequency,
// then Brent refinement around the best sample.
double max_over_time(const ThreeLevelModel& model, double t_end) {
  const auto eig = qcore::eig_hermitian(analytic3::h3(model.params()));
  const double spread = eig.eigenvalues.back() - eig.eigenvalues.front();
  const auto wanted = static_cast<std::size_t>(std::ceil(4.0 * t_end * spread / (2.0 * std::numbers::pi)));
  const std::size_t n = std::clamp(wanted, kMaxOverTMinSamples, kMaxOverTMaxSamples);
  const double h = t_end / static_cast<double>(n);
  std::size_t best_k = 0;
  double best = model.p(0.0);
  for (std::size_t k = 1; k <= n; ++k) {
    const double p = model.p(h * static_cast<double>(k));
    if (p > best) {
      best = p;
      best_k = k;
    }
  }
  const double lo = std::max(0.0, h * (static_cast<double>(best_k) - 1.0));
  const double hi = std::min(t_end, h * (static_cast<double>(best_k) + 1.0));
  const auto refined = boost::math::tools::brent_find_minima(
      [&](double t) { return -model.p(t); }, lo, hi, std::numeric_limits<double>::digits / 2);
  return std::max(best, -refined.second);
}

}  // namespace

double run_time(double d, double alpha) {
  return 0.5 * std::numbers::pi * std::pow(d, -(1.0 + alpha));
}

double success_probability(double d, double e_prime, double alpha, PMode mode) {
  const ThreeLevelModel model(ThreeLevelParams::from_alpha(d, e_prime, alpha));
  const double t = run_time(d, alpha);
  return mode == PMode::fixed_time ? model.p(t) : max_over_time(model, t);
}

AlphaSearchResult alpha_search(double d, double e_prime, double target_p, PMode mode) {
  if (!(d > 0.0 && d < 1.0)) throw ValidationError("alpha search needs 0 < d < 1");
  if (!(target_p > 0.0 && target_p < 1.0)) throw ValidationError("target P must lie in (0, 1)");
  if (!std::isfinite(e_prime)) throw ValidationError("E' must be finite");

  auto p_at = [&](int step) { return success_probability(d, e_prime, alpha_at(step), mode); };
  AlphaSearchResult out{d, e_prime, target_p, 0.0, 0.0, 0.0};

  int step = kAlphaStartStep;
  double p = p_at(step);
  if (p >= target_p) {
    while (step > 0) {
      const double below = p_at(step - 1);
      if (below < target_p) break;
      --step;
      p = below;
    }
  } else {
    double best = p;
    while (p < target_p) {
      if (++step > kAlphaStepsMax) {
        throw UnreachableTargetError("target P = " + std::to_string(target_p) +
                                         " unreachable for alpha in [0, 2] (d = " + std::to_string(d) +
                                         ", E' = " + std::to_string(e_prime) +
                                         "); best P = " + std::to_string(best),
                                     best);
      }
      p = p_at(step);
      best = std::max(best, p);
    }
  }
  out.alpha = alpha_at(step);
  out.t_run = run_time(d, out.alpha);
  out.achieved_p = p;
  return out;
}

std::vector<double> table1_overlaps() { return {0.01, 0.02, 0.05, 0.1, 0.2, 0.4}; }

std::vector<AlphaSearchResult> table1(PMode mode, unsigned threads) {
  const auto ds = table1_overlaps();
  return parallel_map(ds.size(), threads, [&](std::size_t i) {
    return alpha_search(ds[i], kTable1EPrime, kTable1Target, mode);
  });
}

csv::Table table1_csv(const std::vector<AlphaSearchResult>& rows) {
  csv::Table t{{"d", "alpha", "t", "inv_d2", "achieved_p"}, {}};
  for (const auto& r : rows) t.rows.push_back({r.d, r.alpha, r.t_run, 1.0 / (r.d * r.d), r.achieved_p});
  return t;
}

FigureId parse_figure_id(std::string_view id) {
  if (id == "2a") return FigureId::fig2a;
  if (id == "2b") return FigureId::fig2b;
  if (id == "3") return FigureId::fig3;
  if (id == "4") return FigureId::fig4;
  if (id == "4c" || id == "4-companion") return FigureId::fig4_companion;
  if (id == "5") return FigureId::fig5;
  throw ValidationError("unknown figure id '" + std::string(id) + "' (expected 2a, 2b, 3, 4, 4c, 5)");
}

std::vector<FigureId> all_figures() {
  return {FigureId::fig2a, FigureId::fig2b, FigureId::fig3, FigureId::fig4, FigureId::fig4_companion,
          FigureId::fig5};
}

std::string file_name(FigureId id) {
  switch (id) {
    case FigureId::fig2a: return "fig2a.csv";
    case FigureId::fig2b: return "fig2b.csv";
    case FigureId::fig3: return "fig3.csv";
    case FigureId::fig4: return "fig4.csv";
    case FigureId::fig4_companion: return "fig4_d0.01.csv";
    case FigureId::fig5: return "fig5.csv";
  }
  return "figure.csv";
}

csv::Table figure_dataset(FigureId id, unsigned threads) {
  using Rows = std::vector<std::vector<double>>;
  auto flatten = [](std::vector<Rows> blocks) {
    Rows out;
    for (auto& b : blocks) {
      for (auto& r : b) out.push_back(std::move(r));
    }
    return out;
  };

  switch (id) {
    case FigureId::fig2a:
    case FigureId::fig2b: {
      const double alpha = id == FigureId::fig2a ? 1.0 : 0.0;
      const double c = std::pow(kFigureD, alpha);
      const auto e_primes = linspace(0.0, 20.0, 41);
      const auto times = linspace(0.0, std::numbers::pi / (c * kFigureD), 201);
      csv::Table t{{"t", "e_prime", "p"}, {}};
      t.rows = flatten(parallel_map(e_primes.size(), threads, [&](std::size_t i) {
        const ThreeLevelModel model(ThreeLevelParams::from_alpha(kFigureD, e_primes[i], alpha));
        Rows rows;
        for (double time : times) rows.push_back({time, e_primes[i], model.p(time)});
        return rows;
      }));
      return t;
    }
    case FigureId::fig3: {
      const std::vector<double> alphas{0.0, 0.5, 1.0};
      const auto e_primes = linspace(1.0, 100.0, 397);
      csv::Table t{{"alpha", "e_prime", "t", "p"}, {}};
      t.rows = flatten(parallel_map(alphas.size(), threads, [&](std::size_t a) {
        const double time = run_time(kFigureD, alphas[a]);
        Rows rows;
        for (double e : e_primes) {
          rows.push_back({alphas[a], e, time,
                          analytic3::p_numeric3(ThreeLevelParams::from_alpha(kFigureD, e, alphas[a]), time)});
        }
        return rows;
      }));
      return t;
    }
    case FigureId::fig4:
    case FigureId::fig4_companion: {
      const double d = id == FigureId::fig4 ? kFig4D : kFigureD;
      const std::vector<double> alphas{0.0, 0.5, 1.0};
      csv::Table t{{"alpha", "d", "t", "p"}, {}};
      t.rows = flatten(parallel_map(alphas.size(), threads, [&](std::size_t a) {
        const auto params = ThreeLevelParams::from_alpha(d, kFig4EPrime, alphas[a]);
        const ThreeLevelModel model(params);
        Rows rows;
        for (double time : linspace(0.0, 4.0 * std::numbers::pi / (params.c * d), 401)) {
          rows.push_back({alphas[a], d, time, model.p(time)});
        }
        return rows;
      }));
      return t;
    }
    case FigureId::fig5: {
      const std::vector<double> e_primes{2.0, 5.0, 10.0, 20.0};
      const std::vector<double> ds{0.01, 0.02, 0.05, 0.1, 0.15, 0.2, 0.3, 0.4, 0.5};
      csv::Table t{{"e_prime", "d", "alpha", "t", "achieved_p"}, {}};
      t.rows = parallel_map(e_primes.size() * ds.size(), threads, [&](std::size_t k) {
        const double e = e_primes[k / ds.size()];
        const double d = ds[k % ds.size()];
        try {
          const auto r = alpha_search(d, e, kFig5Target);
          return std::vector<double>{e, d, r.alpha, r.t_run, r.achieved_p};
        } catch (const UnreachableTargetError& err) {
          const double nan = std::numeric_limits<double>::quiet_NaN();
          return std::vector<double>{e, d, nan, nan, err.best_p()};
        }
      });
      return t;
    }
  }
  throw ValidationError("unknown figure id");
}

}  // namespace resonance::experiments

namespace resonance::experiments {

ClosedFormValidation validate_closed_form(std::size_t time_points, unsigned threads) {
  struct Case {
    double d, e_prime, alpha;
  };
  std::vector<Case> cases;
  for (double d : {0.01, 0.1}) {
    for (double e : {2.0, 20.0}) {
      for (double a : {0.0, 1.0}) cases.push_back({d, e, a});
    }
  }
  struct Block {
    std::vector<std::vector<double>> rows;
    double max_diff = 0.0;
    std::size_t degenerate = 0;
  };
  auto blocks = parallel_map(cases.size(), threads, [&](std::size_t i) {
    const auto& cs = cases[i];
    const auto params = ThreeLevelParams::from_alpha(cs.d, cs.e_prime, cs.alpha);
    const ThreeLevelModel model(params);
    Block b;
    for (double t : linspace(0.0, 2.0 * std::numbers::pi / (params.c * cs.d), time_points)) {
      const double numeric = model.p(t);
      double analytic = std::numeric_limits<double>::quiet_NaN();
      try {
        analytic = analytic3::p_analytic(params, t);
        b.max_diff = std::max(b.max_diff, std::abs(analytic - numeric));
      } catch (const DegenerateRootsError&) {
        ++b.degenerate;
      }
      b.rows.push_back({cs.d, cs.e_prime, cs.alpha, t, analytic, numeric, std::abs(analytic - numeric)});
    }
    return b;
  });

  ClosedFormValidation out;
  out.report.columns = {"d", "e_prime", "alpha", "t", "p_analytic", "p_numeric3", "abs_diff"};
  for (auto& b : blocks) {
    out.max_abs_diff = std::max(out.max_abs_diff, b.max_diff);
    out.degenerate_points += b.degenerate;
    for (auto& r : b.rows) out.report.rows.push_back(std::move(r));
  }
  return out;
}

}  // namespace resonance::experiments
