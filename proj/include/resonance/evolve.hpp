#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

#include "resonance/hamiltonian.hpp"
#include "resonance/qcore.hpp"

namespace resonance::evolve {

using hamiltonian::ProbeConfig;
using hamiltonian::SystemSpec;

enum class Representation { full, reduced };

Representation parse_representation(std::string_view name);
std::string_view to_string(Representation rep);

struct EvolutionResult {
  qcore::StateVector state;
  double success_prob = 0.0;      // population of |0>|1>|phi_1> (or its degenerate eigenspace)
  double probe_decay_prob = 0.0;  // population with the probe in |0>
  double leakage = 0.0;           // population outside span{|Psi_0>, |Psi_i>}; 0 for reduced runs
};

/// Reads success, decay and leakage populations off a state in either basis.
class Observables {
 public:
  Observables(const SystemSpec& spec, Representation rep);
  EvolutionResult measure(qcore::StateVector state) const;
  std::size_t dim() const { return dim_; }
  std::size_t initial_index() const { return initial_index_; }

 private:
  Representation rep_;
  std::size_t dim_ = 0;
  std::size_t initial_index_ = 0;
  int n_qubits_ = 0;
  std::vector<std::size_t> target_spokes_;  // reduced basis indices
  qcore::Matrix target_vectors_;            // full: ground eigenvectors of H_S as columns
};

/// Exact evolution from |Psi_0> with a cached eigendecomposition; use when
/// sampling one configuration at many times.
class Evolver {
 public:
  Evolver(const SystemSpec& spec, const ProbeConfig& probe, Representation rep,
          const qcore::Limits& limits = {});

  EvolutionResult at(double t) const;
  const qcore::HermitianOperator& hamiltonian() const { return h_; }
  const qcore::StateVector& initial_state() const { return psi0_; }

 private:
  Observables obs_;
  qcore::HermitianOperator h_;
  qcore::Propagator prop_;
  qcore::StateVector psi0_;
};

EvolutionResult evolve(const SystemSpec& spec, const ProbeConfig& probe, double t,
                       Representation rep, const qcore::Limits& limits = {});

/// First-order product formula [e^{-i H_free t/M} e^{-i H_coupling t/M}]^M in
/// the full space. Requires an explicit spec.
EvolutionResult evolve_trotter(const SystemSpec& spec, const ProbeConfig& probe, double t,
                               int m_steps, const qcore::Limits& limits = {});

struct ProbeCounts {
  std::uint64_t count0 = 0;
  std::uint64_t count1 = 0;
};

/// Per-task seed for reproducible parallel sampling.
constexpr std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t task) { return seed + task; }

/// Binomial(shots, probe_decay_prob) draw of probe readouts in |0>.
ProbeCounts sample_probe(const EvolutionResult& result, std::uint64_t shots, std::uint64_t seed);
ProbeCounts sample_probe(double decay_prob, std::uint64_t shots, std::uint64_t seed);

}  // namespace resonance::evolve

namespace resonance::evolve {

struct TrotterPoint {
  int m_steps = 0;
  double error = 0.0;  // ||psi_trotter - psi_exact||_2
};

std::vector<TrotterPoint> trotter_convergence(const SystemSpec& spec, const ProbeConfig& probe,
                                              double t, const std::vector<int>& m_steps,
                                              const qcore::Limits& limits = {});

/// Least-squares slope of log(error) against log(m).
double loglog_slope(const std::vector<TrotterPoint>& points);

}  // namespace resonance::evolve
