#include "resonance/perturb.hpp"

#include <cmath>
#include <string>

#include "resonance/error.hpp"

namespace resonance::perturb {

double OffResonantTransition::probability_at(double tau) const {
  if (omega0j == 0.0) return 0.0;
  const double s = std::sin(0.5 * omega0j * tau);
  return s * s * envelope();
}

double OffResonantTransition::envelope() const {
  if (omega0j == 0.0) return 0.0;
  return (q0j * q0j) / (omega0j * omega0j);
}

OffResonantTransition transition(const hamiltonian::SpectralSystem& spec,
                                 const hamiltonian::ProbeConfig& probe, std::size_t j) {
  probe.validate();
  if (j < 2 || j > spec.levels()) {
    throw ValidationError("level index j = " + std::to_string(j) + " outside [2, " +
                          std::to_string(spec.levels()) + "]");
  }
  OffResonantTransition out;
  out.level_index = j;
  out.q0j = 2.0 * probe.c * std::abs(spec.overlaps()[j - 1]);
  out.detuning = spec.energies()[j - 1] - probe.epsilon0 - probe.omega;
  out.omega0j = std::hypot(out.q0j, out.detuning);
  return out;
}

double first_order_prob(const hamiltonian::SpectralSystem& spec,
                        const hamiltonian::ProbeConfig& probe, std::size_t j, double tau) {
  return transition(spec, probe, j).probability_at(tau);
}

PerturbationCheck check_against_exact(const hamiltonian::SpectralSystem& spec,
                                      const hamiltonian::ProbeConfig& probe, std::size_t j,
                                      double tau) {
  PerturbationCheck out;
  out.first_order = first_order_prob(spec, probe, j, tau);
  const auto h = hamiltonian::build_reduced(spec, probe).densify();
  out.exact = qcore::propagate_exact(h, qcore::StateVector::basis(h.dim(), 0), tau).population(j);
  out.relative_error =
      out.exact == 0.0 ? std::abs(out.first_order) : std::abs(out.first_order - out.exact) / out.exact;
  return out;
}

}  // namespace resonance::perturb
