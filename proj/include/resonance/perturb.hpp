#pragma once

// First-order transition probability from |Psi_0> to an off-resonant level
// |Psi_j>: sin^2(Omega_0j tau / 2) Q_0j^2 / (Q_0j^2 + (E_j - eps0 - omega)^2),
// with Q_0j = 2c|d_j| and Omega_0j = sqrt(Q_0j^2 + detuning^2).
// Valid for c * tau << 1.

#include <cstddef>

#include "resonance/hamiltonian.hpp"

namespace resonance::perturb {

struct OffResonantTransition {
  std::size_t level_index = 2;  // 1-based, j >= 2
  double q0j = 0.0;
  double detuning = 0.0;
  double omega0j = 0.0;

  double probability_at(double tau) const;
  /// Q_0j^2 / Omega_0j^2, the maximum over tau.
  double envelope() const;
};

/// j is 1-based and must lie in [2, N].
OffResonantTransition transition(const hamiltonian::SpectralSystem& spec,
                                 const hamiltonian::ProbeConfig& probe, std::size_t j);

double first_order_prob(const hamiltonian::SpectralSystem& spec,
                        const hamiltonian::ProbeConfig& probe, std::size_t j, double tau);

struct PerturbationCheck {
  double first_order = 0.0;
  double exact = 0.0;  // population of |Psi_j> from the reduced model
  double relative_error = 0.0;
};

/// Compares the first-order formula with exact reduced-model dynamics.
PerturbationCheck check_against_exact(const hamiltonian::SpectralSystem& spec,
                                      const hamiltonian::ProbeConfig& probe, std::size_t j,
                                      double tau);

}  // namespace resonance::perturb
