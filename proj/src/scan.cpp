#include "resonance/scan.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "resonance/csv.hpp"
#include "resonance/error.hpp"
#include "resonance/parallel.hpp"

namespace resonance::scan {

namespace {

std::size_t level_count(const hamiltonian::SystemSpec& spec) {
  return std::visit(
      [](const auto& s) -> std::size_t {
        if constexpr (std::is_same_v<std::decay_t<decltype(s)>, hamiltonian::ExplicitSystem>) {
          return s.system_dim();
        } else {
          return s.levels();
        }
      },
      spec);
}

double half_height_crossing(std::span<const ScanPoint> pts, std::size_t peak, int dir) {
  const double half = 0.5 * pts[peak].decay_prob;
  std::size_t i = peak;
  while (true) {
    if ((dir < 0 && i == 0) || (dir > 0 && i + 1 == pts.size())) return pts[i].omega;
    const std::size_t j = dir < 0 ? i - 1 : i + 1;
    if (pts[j].decay_prob <= half) {
      const double span = pts[i].decay_prob - pts[j].decay_prob;
      const double frac = span > 0.0 ? (pts[i].decay_prob - half) / span : 0.0;
      return pts[i].omega + frac * (pts[j].omega - pts[i].omega);
    }
    i = j;
  }
}

}  // namespace

void ScanConfig::validate() const {
  if (!std::isfinite(omega_ini) || !std::isfinite(omega_fin)) {
    throw ValidationError("scan frequency bounds must be finite");
  }
  if (!(omega_fin > omega_ini)) throw ValidationError("scan needs omega_fin > omega_ini");
  if (!(omega_ini > 0.0)) throw ValidationError("scan frequencies must be positive");
  if (q < 1) throw ValidationError("scan needs q >= 1 intervals");
  if (t_evolve && !(std::isfinite(*t_evolve) && *t_evolve >= 0.0)) {
    throw ValidationError("scan evolution time must be finite and >= 0");
  }
  if (threshold && !std::isfinite(*threshold)) throw ValidationError("threshold must be finite");
}

double default_evolution_time(const hamiltonian::SystemSpec& spec,
                              const hamiltonian::ProbeConfig& probe) {
  if (!(probe.c > 0.0)) throw ValidationError("default scan time needs c > 0; pass t explicitly");
  const double d_typ = 1.0 / std::sqrt(static_cast<double>(level_count(spec)));
  return std::numbers::pi / (2.0 * probe.c * d_typ);
}

std::vector<Peak> detect_peaks(std::span<const ScanPoint> points, double threshold,
                               std::size_t min_separation) {
  std::vector<Peak> peaks;
  const std::size_t sep = std::max<std::size_t>(min_separation, 1);
  for (std::size_t i = 1; i + 1 < points.size(); ++i) {
    const double v = points[i].decay_prob;
    if (!(v > threshold)) continue;
    bool is_peak = true;
    const std::size_t lo = i >= sep ? i - sep : 0;
    const std::size_t hi = std::min(points.size() - 1, i + sep);
    for (std::size_t j = lo; j < i && is_peak; ++j) is_peak = v > points[j].decay_prob;
    for (std::size_t j = i + 1; j <= hi && is_peak; ++j) is_peak = v >= points[j].decay_prob;
    if (!is_peak) continue;
    Peak p;
    p.index = i;
    p.omega_peak = points[i].omega;
    p.height = v;
    p.width_estimate = half_height_crossing(points, i, +1) - half_height_crossing(points, i, -1);
    peaks.push_back(p);
  }
  return peaks;
}

ScanResult run_scan(const hamiltonian::SystemSpec& spec,
                    const hamiltonian::ProbeConfig& probe_template, const ScanConfig& cfg,
                    unsigned threads, const qcore::Limits& limits) {
  cfg.validate();
  if (cfg.representation == evolve::Representation::full &&
      !std::holds_alternative<hamiltonian::ExplicitSystem>(spec)) {
    throw UnsupportedRepresentation("full-space scan requires an explicit system spec");
  }
  ScanResult result;
  result.epsilon0 = probe_template.epsilon0;
  result.t_evolve = cfg.t_evolve ? *cfg.t_evolve : default_evolution_time(spec, probe_template);

  result.points = parallel_map(cfg.q + 1, threads, [&](std::size_t k) {
    hamiltonian::ProbeConfig probe = probe_template;
    probe.omega = cfg.omega_at(k);
    const auto r = evolve::evolve(spec, probe, result.t_evolve, cfg.representation, limits);
    ScanPoint pt;
    pt.omega = probe.omega;
    if (cfg.shots == 0) {
      pt.decay_prob = r.probe_decay_prob;
    } else {
      const auto counts = evolve::sample_probe(r, cfg.shots, evolve::derive_seed(cfg.seed, k));
      pt.count0 = counts.count0;
      pt.shots = cfg.shots;
      pt.decay_prob = static_cast<double>(counts.count0) / static_cast<double>(cfg.shots);
    }
    return pt;
  });

  double max_p = 0.0;
  for (const auto& pt : result.points) max_p = std::max(max_p, pt.decay_prob);
  result.threshold = cfg.threshold ? *cfg.threshold : 0.5 * max_p;
  result.peaks = detect_peaks(result.points, result.threshold, cfg.min_separation);
  for (const auto& p : result.peaks) result.spectrum_estimates.push_back(result.epsilon0 + p.omega_peak);
  std::sort(result.spectrum_estimates.begin(), result.spectrum_estimates.end());
  return result;
}

std::string scan_csv(const ScanResult& result) {
  csv::Table t{{"omega", "decay_prob", "count0", "shots"}, {}};
  for (const auto& p : result.points) {
    t.rows.push_back({p.omega, p.decay_prob, static_cast<double>(p.count0),
                      static_cast<double>(p.shots)});
  }
  return t.to_string();
}

std::string peaks_csv(const ScanResult& result) {
  csv::Table t{{"omega_peak", "height", "energy_estimate"}, {}};
  for (const auto& p : result.peaks) {
    t.rows.push_back({p.omega_peak, p.height, result.epsilon0 + p.omega_peak});
  }
  return t.to_string();
}

}  // namespace resonance::scan
