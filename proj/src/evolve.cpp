#include "resonance/evolve.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "resonance/error.hpp"

namespace resonance::evolve {

using hamiltonian::ExplicitSystem;
using hamiltonian::SpectralSystem;
using qcore::HermitianOperator;
using qcore::StateVector;

namespace {

constexpr double kGroundDegeneracyRelTol = 1e-9;

double unit_clamp(double p) { return std::clamp(p, 0.0, 1.0); }

const ExplicitSystem& require_explicit(const SystemSpec& spec, std::string_view what) {
  const auto* e = std::get_if<ExplicitSystem>(&spec);
  if (e == nullptr) {
    throw UnsupportedRepresentation(std::string(what) +
                                    " requires an explicit system (H_S and A); got a spectral spec");
  }
  return *e;
}

HermitianOperator build_for(const SystemSpec& spec, const ProbeConfig& probe, Representation rep,
                            const qcore::Limits& limits) {
  if (rep == Representation::full) {
    return hamiltonian::build_full(require_explicit(spec, "full representation"), probe, limits);
  }
  return hamiltonian::build_reduced(spec, probe).densify();
}

}  // namespace

Representation parse_representation(std::string_view name) {
  if (name == "full") return Representation::full;
  if (name == "reduced") return Representation::reduced;
  throw ValidationError("unknown representation '" + std::string(name) +
                        "' (expected full or reduced)");
}

std::string_view to_string(Representation rep) {
  return rep == Representation::full ? "full" : "reduced";
}

Observables::Observables(const SystemSpec& spec, Representation rep) : rep_(rep) {
  if (rep == Representation::full) {
    const auto& e = require_explicit(spec, "full representation");
    n_qubits_ = e.n_qubits();
    dim_ = std::size_t{1} << (n_qubits_ + 2);
    initial_index_ = hamiltonian::reference_index(n_qubits_);
    const auto eig = qcore::eig_hermitian(e.h_s());
    const double e1 = eig.eigenvalues.front();
    Eigen::Index k = 0;
    while (k < static_cast<Eigen::Index>(eig.eigenvalues.size()) &&
           eig.eigenvalues[static_cast<std::size_t>(k)] - e1 <=
               kGroundDegeneracyRelTol * std::max(1.0, std::abs(e1))) {
      ++k;
    }
    target_vectors_ = eig.eigenvectors.leftCols(k);
  } else {
    const SpectralSystem spectral = std::holds_alternative<ExplicitSystem>(spec)
                                        ? hamiltonian::overlaps_from_explicit(std::get<ExplicitSystem>(spec))
                                        : std::get<SpectralSystem>(spec);
    dim_ = spectral.levels() + 1;
    initial_index_ = 0;
    for (std::size_t i : spectral.target_levels()) target_spokes_.push_back(i + 1);
  }
}

EvolutionResult Observables::measure(StateVector state) const {
  if (state.dim() != dim_) throw ValidationError("state dimension does not match the model");
  EvolutionResult r{std::move(state)};
  const auto& amps = r.state.amps();
  if (rep_ == Representation::reduced) {
    double success = 0.0;
    for (std::size_t i : target_spokes_) success += r.state.population(i);
    double decay = 0.0;
    for (std::size_t i = 1; i < dim_; ++i) decay += r.state.population(i);
    r.success_prob = unit_clamp(success);
    r.probe_decay_prob = unit_clamp(decay);
    r.leakage = 0.0;
    return r;
  }

  const std::size_t sys = std::size_t{1} << n_qubits_;
  const auto block = amps.segment(static_cast<Eigen::Index>(hamiltonian::register_index(n_qubits_, 0)),
                                  static_cast<Eigen::Index>(sys));
  r.success_prob = unit_clamp((target_vectors_.adjoint() * block).squaredNorm());
  // Probe is the most significant qubit: indices below dim/2 have it in |0>.
  r.probe_decay_prob = unit_clamp(amps.head(static_cast<Eigen::Index>(dim_ / 2)).squaredNorm());
  const double in_reduced = r.state.population(initial_index_) + block.squaredNorm();
  r.leakage = unit_clamp(1.0 - in_reduced);
  return r;
}

Evolver::Evolver(const SystemSpec& spec, const ProbeConfig& probe, Representation rep,
                 const qcore::Limits& limits)
    : obs_(spec, rep),
      h_(build_for(spec, probe, rep, limits)),
      prop_(h_),
      psi0_(StateVector::basis(obs_.dim(), obs_.initial_index())) {}

EvolutionResult Evolver::at(double t) const { return obs_.measure(prop_.apply(psi0_, t)); }

EvolutionResult evolve(const SystemSpec& spec, const ProbeConfig& probe, double t,
                       Representation rep, const qcore::Limits& limits) {
  return Evolver(spec, probe, rep, limits).at(t);
}

EvolutionResult evolve_trotter(const SystemSpec& spec, const ProbeConfig& probe, double t,
                               int m_steps, const qcore::Limits& limits) {
  if (m_steps < 1) throw ValidationError("Trotter step count must be >= 1");
  const auto& e = require_explicit(spec, "Trotter evolution");
  const auto parts = hamiltonian::build_split(e, probe, limits);
  const double dt = t / m_steps;
  const qcore::Matrix u_free = qcore::Propagator(parts.free).unitary(dt);
  const qcore::Matrix u_coupling = qcore::Propagator(parts.coupling).unitary(dt);
  const qcore::Matrix step = u_free * u_coupling;

  Observables obs(spec, Representation::full);
  qcore::Vector psi = StateVector::basis(obs.dim(), obs.initial_index()).amps();
  for (int k = 0; k < m_steps; ++k) psi = step * psi;
  return obs.measure(qcore::checked_state(std::move(psi)));
}

ProbeCounts sample_probe(double decay_prob, std::uint64_t shots, std::uint64_t seed) {
  if (shots == 0) throw ValidationError("shots must be >= 1");
  const double p = unit_clamp(decay_prob);
  std::mt19937_64 rng(seed);
  std::binomial_distribution<std::uint64_t> dist(shots, p);
  const std::uint64_t c0 = dist(rng);
  return ProbeCounts{c0, shots - c0};
}

ProbeCounts sample_probe(const EvolutionResult& result, std::uint64_t shots, std::uint64_t seed) {
  return sample_probe(result.probe_decay_prob, shots, seed);
}

}  // namespace resonance::evolve

namespace resonance::evolve {

std::vector<TrotterPoint> trotter_convergence(const SystemSpec& spec, const ProbeConfig& probe,
                                              double t, const std::vector<int>& m_steps,
                                              const qcore::Limits& limits) {
  const auto exact = evolve(spec, probe, t, Representation::full, limits);
  std::vector<TrotterPoint> out;
  out.reserve(m_steps.size());
  for (int m : m_steps) {
    const auto approx = evolve_trotter(spec, probe, t, m, limits);
    out.push_back({m, (approx.state.amps() - exact.state.amps()).norm()});
  }
  return out;
}

double loglog_slope(const std::vector<TrotterPoint>& points) {
  if (points.size() < 2) throw ValidationError("slope fit needs at least two points");
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (const auto& p : points) {
    if (p.m_steps < 1 || !(p.error > 0.0)) throw NumericError("slope fit needs positive errors");
    const double x = std::log(static_cast<double>(p.m_steps));
    const double y = std::log(p.error);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double n = static_cast<double>(points.size());
  const double denom = n * sxx - sx * sx;
  if (denom == 0.0) throw ValidationError("slope fit needs distinct step counts");
  return (n * sxy - sx * sy) / denom;
}

}  // namespace resonance::evolve
