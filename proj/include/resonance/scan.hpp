#pragma once

// Spectrum scan: sweep the probe frequency over omega_k = omega_ini + k*dw,
// k = 0..q, record the probe decay probability after a fixed evolution time,
// and read eigenvalue estimates E = eps0 + omega_peak off the peaks.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "resonance/evolve.hpp"
#include "resonance/hamiltonian.hpp"

namespace resonance::scan {

struct ScanConfig {
  double omega_ini = 0.5;
  double omega_fin = 1.5;
  std::size_t q = 100;
  std::optional<double> t_evolve;  // default: pi / (2 c d_typ), d_typ = 1/sqrt(N)
  std::uint64_t shots = 0;         // 0 = exact probabilities
  std::uint64_t seed = 0;
  evolve::Representation representation = evolve::Representation::reduced;
  std::optional<double> threshold;  // default: 0.5 * max decay probability
  std::size_t min_separation = 2;   // grid cells

  void validate() const;
  double delta_omega() const { return (omega_fin - omega_ini) / static_cast<double>(q); }
  double omega_at(std::size_t k) const { return omega_ini + static_cast<double>(k) * delta_omega(); }
};

struct ScanPoint {
  double omega = 0.0;
  double decay_prob = 0.0;  // exact, or count0 / shots when sampling
  std::uint64_t count0 = 0;
  std::uint64_t shots = 0;
};

struct Peak {
  std::size_t index = 0;
  double omega_peak = 0.0;
  double height = 0.0;
  double width_estimate = 0.0;  // full width at half height, linear interpolation
};

struct ScanResult {
  std::vector<ScanPoint> points;
  std::vector<Peak> peaks;
  std::vector<double> spectrum_estimates;  // ascending
  double epsilon0 = 0.0;
  double t_evolve = 0.0;
  double threshold = 0.0;
};

double default_evolution_time(const hamiltonian::SystemSpec& spec, const hamiltonian::ProbeConfig& probe);

ScanResult run_scan(const hamiltonian::SystemSpec& spec, const hamiltonian::ProbeConfig& probe_template,
                    const ScanConfig& cfg, unsigned threads = 1, const qcore::Limits& limits = {});

/// A point is a peak if its value exceeds threshold and it is a local maximum
/// over +-min_separation cells: strictly above lower-omega neighbours and not
/// below higher-omega ones (ties resolve toward lower omega). Endpoints are
/// never peaks.
std::vector<Peak> detect_peaks(std::span<const ScanPoint> points, double threshold,
                               std::size_t min_separation);

/// scan.csv: omega,decay_prob,count0,shots
std::string scan_csv(const ScanResult& result);
/// peaks.csv: omega_peak,height,energy_estimate
std::string peaks_csv(const ScanResult& result);

}  // namespace resonance::scan
