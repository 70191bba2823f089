#pragma once

// Probe + register Hamiltonians. The full model acts on (n+2) qubits ordered
// probe (most significant), ancilla, system. The reduced model is the
// arrowhead matrix in the basis {|Psi_0> = |1>|0>|0^n>, |Psi_i> = |0>|1>|phi_i>}.

#include <cstddef>
#include <string>
#include <variant>
#include <vector>

#include "resonance/qcore.hpp"

namespace resonance::hamiltonian {

using qcore::Complex;

struct ProbeConfig {
  double omega = 1.0;     // probe frequency (hbar = 1)
  double epsilon0 = 0.0;  // reference-state energy
  double c = 0.01;        // probe-register coupling

  /// Throws ValidationError for omega <= 0, c < 0 or non-finite values.
  void validate() const;
  /// Non-fatal warnings, e.g. when the weak-coupling regime c << omega is violated.
  std::vector<std::string> advisories() const;
};

inline constexpr double kWeakCouplingRatio = 0.1;
inline constexpr double kOverlapNormTol = 1e-10;

/// System given by its Hamiltonian H_S on n qubits and the preparation
/// unitary A (default Hadamard^{(x)n}).
class ExplicitSystem {
 public:
  ExplicitSystem(int n_qubits, qcore::HermitianOperator h_s);
  ExplicitSystem(int n_qubits, qcore::HermitianOperator h_s, qcore::Matrix a_op);

  int n_qubits() const { return n_; }
  std::size_t system_dim() const { return std::size_t{1} << n_; }
  const qcore::HermitianOperator& h_s() const { return h_s_; }
  const qcore::Matrix& a_op() const { return a_op_; }

 private:
  int n_;
  qcore::HermitianOperator h_s_;
  qcore::Matrix a_op_;
};

/// System given by its eigenvalues E_i and overlaps d_i = <phi_i|A|0^n>.
/// The first level is the target level (|Psi_1>); the remaining energies may
/// appear in any order.
class SpectralSystem {
 public:
  SpectralSystem(std::vector<double> energies, std::vector<Complex> overlaps);

  std::size_t levels() const { return energies_.size(); }
  const std::vector<double>& energies() const { return energies_; }
  const std::vector<Complex>& overlaps() const { return overlaps_; }

  /// Indices degenerate with the target level (always contains 0).
  std::vector<std::size_t> target_levels() const;

 private:
  std::vector<double> energies_;
  std::vector<Complex> overlaps_;
};

using SystemSpec = std::variant<ExplicitSystem, SpectralSystem>;

/// Reduced Hamiltonian: a hub |Psi_0> coupled to N mutually uncoupled spokes.
struct ArrowheadHamiltonian {
  double hub_energy = 0.0;             // omega/2 + epsilon0
  std::vector<double> spoke_energies;  // -omega/2 + E_i
  std::vector<Complex> couplings;      // H_{i0} = c d_i

  std::size_t levels() const { return spoke_energies.size(); }
  std::size_t dim() const { return levels() + 1; }
  qcore::HermitianOperator densify() const;
};

/// Free part -omega/2 sigma_z (x) I + I_2 (x) H_R and coupling part
/// c sigma_x (x) B of the full Hamiltonian.
struct SplitHamiltonian {
  qcore::HermitianOperator free;
  qcore::HermitianOperator coupling;
};

SplitHamiltonian build_split(const ExplicitSystem& spec, const ProbeConfig& probe,
                             const qcore::Limits& limits = {});
qcore::HermitianOperator build_full(const ExplicitSystem& spec, const ProbeConfig& probe,
                                    const qcore::Limits& limits = {});
ArrowheadHamiltonian build_reduced(const SystemSpec& spec, const ProbeConfig& probe);
SpectralSystem overlaps_from_explicit(const ExplicitSystem& spec);

/// Ground level E_1 = 1 plus an (N-1)-fold degenerate excited level E' + 1/2.
SpectralSystem build_degenerate(double d, double e_prime, std::size_t n_levels);

/// Replaces spokes 2..N, which must share one energy, by the single state
/// they couple through: coupling sqrt(sum |g_i|^2). Result has two spokes.
ArrowheadHamiltonian collapse_degenerate_spokes(const ArrowheadHamiltonian& h);

/// Basis index of |1>|0>|0^n> in the full space.
std::size_t reference_index(int n_qubits);
/// Basis index of |0>|1>|x> in the full space.
std::size_t register_index(int n_qubits, std::size_t x);

}  // namespace resonance::hamiltonian
