#include "resonance/hamiltonian.hpp"

#include <cmath>
#include <string>

#include <fmt/format.h>

#include "resonance/error.hpp"

namespace resonance::hamiltonian {

using qcore::HermitianOperator;
using qcore::Matrix;

namespace {

constexpr double kDegeneracyRelTol = 1e-9;

bool degenerate(double a, double b) {
  return std::abs(a - b) <= kDegeneracyRelTol * std::max(1.0, std::abs(a));
}

Matrix projector(std::size_t dim, std::size_t index) {
  Matrix p = Matrix::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  p(static_cast<Eigen::Index>(index), static_cast<Eigen::Index>(index)) = 1.0;
  return p;
}

}  // namespace

void ProbeConfig::validate() const {
  if (!std::isfinite(omega) || !std::isfinite(epsilon0) || !std::isfinite(c)) {
    throw ValidationError("probe parameters must be finite");
  }
  if (omega <= 0.0) throw ValidationError("probe frequency omega must be > 0");
  if (c < 0.0) throw ValidationError("coupling c must be >= 0");
}

std::vector<std::string> ProbeConfig::advisories() const {
  std::vector<std::string> out;
  if (c > kWeakCouplingRatio * omega) {
    out.push_back(fmt::format("coupling c = {:g} exceeds {:g} * omega; weak-coupling regime violated", c,
                              kWeakCouplingRatio));
  }
  return out;
}

ExplicitSystem::ExplicitSystem(int n_qubits, HermitianOperator h_s)
    : ExplicitSystem(n_qubits, h_s, qcore::hadamard(n_qubits)) {}

ExplicitSystem::ExplicitSystem(int n_qubits, HermitianOperator h_s, Matrix a_op)
    : n_(n_qubits), h_s_(std::move(h_s)), a_op_(std::move(a_op)) {
  if (n_ < 1 || n_ > 12) throw ValidationError("system qubit count must be in [1, 12]");
  const auto dim = static_cast<Eigen::Index>(system_dim());
  if (h_s_.matrix().rows() != dim) {
    throw ValidationError("H_S dimension " + std::to_string(h_s_.dim()) + " != 2^n = " +
                          std::to_string(dim));
  }
  if (a_op_.rows() != dim || a_op_.cols() != dim) {
    throw ValidationError("operator A must be 2^n x 2^n");
  }
  if (!a_op_.allFinite() || !qcore::is_unitary(a_op_, qcore::kNormTol)) {
    throw ValidationError("operator A must be unitary (A^dagger A = I within 1e-10)");
  }
}

SpectralSystem::SpectralSystem(std::vector<double> energies, std::vector<Complex> overlaps)
    : energies_(std::move(energies)), overlaps_(std::move(overlaps)) {
  if (energies_.empty()) throw ValidationError("spectral spec needs at least one level");
  if (energies_.size() != overlaps_.size()) {
    throw ValidationError("energies and overlaps must have equal length");
  }
  double norm2 = 0.0;
  for (std::size_t i = 0; i < energies_.size(); ++i) {
    if (!std::isfinite(energies_[i]) || !std::isfinite(overlaps_[i].real()) ||
        !std::isfinite(overlaps_[i].imag())) {
      throw ValidationError("spectral spec has non-finite values");
    }
    norm2 += std::norm(overlaps_[i]);
  }
  if (std::abs(norm2 - 1.0) > kOverlapNormTol) {
    throw ValidationError("overlaps must satisfy sum |d_i|^2 = 1 (got " + std::to_string(norm2) +
                          ")");
  }
}

std::vector<std::size_t> SpectralSystem::target_levels() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < energies_.size(); ++i) {
    if (degenerate(energies_[i], energies_[0])) out.push_back(i);
  }
  return out;
}

HermitianOperator ArrowheadHamiltonian::densify() const {
  if (couplings.size() != spoke_energies.size()) {
    throw ValidationError("arrowhead spokes and couplings differ in length");
  }
  const auto n = static_cast<Eigen::Index>(dim());
  Matrix m = Matrix::Zero(n, n);
  m(0, 0) = hub_energy;
  for (Eigen::Index i = 1; i < n; ++i) {
    const auto k = static_cast<std::size_t>(i - 1);
    m(i, i) = spoke_energies[k];
    m(i, 0) = couplings[k];
    m(0, i) = std::conj(couplings[k]);
  }
  return HermitianOperator(std::move(m));
}

std::size_t reference_index(int n_qubits) { return std::size_t{1} << (n_qubits + 1); }

std::size_t register_index(int n_qubits, std::size_t x) {
  return (std::size_t{1} << n_qubits) + x;
}

SplitHamiltonian build_split(const ExplicitSystem& spec, const ProbeConfig& probe,
                             const qcore::Limits& limits) {
  probe.validate();
  const int n = spec.n_qubits();
  const std::size_t total = std::size_t{1} << (n + 2);
  if (total > limits.max_dim) {
    throw SizeError("full Hamiltonian dimension " + std::to_string(total) +
                    " exceeds the configured maximum " + std::to_string(limits.max_dim));
  }
  const std::size_t sys = spec.system_dim();
  const Matrix id_sys = Matrix::Identity(static_cast<Eigen::Index>(sys),
                                         static_cast<Eigen::Index>(sys));
  const Matrix id2 = Matrix::Identity(2, 2);
  const Matrix p0 = projector(2, 0);
  const Matrix p1 = projector(2, 1);
  Matrix raise = Matrix::Zero(2, 2);  // |1><0|
  raise(1, 0) = 1.0;

  // H_R = |0><0| (x) eps0 |0^n><0^n| + |1><1| (x) H_S
  const Matrix h_r = qcore::kron(p0, probe.epsilon0 * projector(sys, 0), limits.max_dim) +
                     qcore::kron(p1, spec.h_s().matrix(), limits.max_dim);
  const Matrix id_reg = qcore::kron(id2, id_sys, limits.max_dim);
  Matrix free = -0.5 * probe.omega * qcore::kron(qcore::sigma_z().matrix(), id_reg, limits.max_dim) +
                qcore::kron(id2, h_r, limits.max_dim);

  // B = |1><0| (x) A + |0><1| (x) A^dagger, equal to sigma_x (x) A for Hermitian A.
  const Matrix b = qcore::kron(raise, spec.a_op(), limits.max_dim) +
                   qcore::kron(raise.adjoint(), spec.a_op().adjoint(), limits.max_dim);
  Matrix coupling = probe.c * qcore::kron(qcore::sigma_x().matrix(), b, limits.max_dim);

  return SplitHamiltonian{HermitianOperator(std::move(free), limits.hermiticity_tol),
                          HermitianOperator(std::move(coupling), limits.hermiticity_tol)};
}

HermitianOperator build_full(const ExplicitSystem& spec, const ProbeConfig& probe,
                             const qcore::Limits& limits) {
  auto parts = build_split(spec, probe, limits);
  return HermitianOperator(parts.free.matrix() + parts.coupling.matrix(), limits.hermiticity_tol);
}

SpectralSystem overlaps_from_explicit(const ExplicitSystem& spec) {
  const auto eig = qcore::eig_hermitian(spec.h_s());
  const qcore::Vector d = eig.eigenvectors.adjoint() * spec.a_op().col(0);
  std::vector<Complex> overlaps(d.data(), d.data() + d.size());
  return SpectralSystem(eig.eigenvalues, std::move(overlaps));
}

ArrowheadHamiltonian build_reduced(const SystemSpec& spec, const ProbeConfig& probe) {
  probe.validate();
  const SpectralSystem spectral = std::visit(
      [](const auto& s) -> SpectralSystem {
        if constexpr (std::is_same_v<std::decay_t<decltype(s)>, ExplicitSystem>) {
          return overlaps_from_explicit(s);
        } else {
          return s;
        }
      },
      spec);

  ArrowheadHamiltonian h;
  h.hub_energy = 0.5 * probe.omega + probe.epsilon0;
  h.spoke_energies.reserve(spectral.levels());
  h.couplings.reserve(spectral.levels());
  for (std::size_t i = 0; i < spectral.levels(); ++i) {
    h.spoke_energies.push_back(-0.5 * probe.omega + spectral.energies()[i]);
    h.couplings.push_back(probe.c * spectral.overlaps()[i]);
  }
  return h;
}

SpectralSystem build_degenerate(double d, double e_prime, std::size_t n_levels) {
  if (!(d > 0.0 && d <= 1.0)) throw ValidationError("overlap d must lie in (0, 1]");
  if (!std::isfinite(e_prime)) throw ValidationError("E' must be finite");
  if (n_levels < 2) throw ValidationError("degenerate spec needs N >= 2 levels");
  std::vector<double> energies(n_levels, e_prime + 0.5);
  energies[0] = 1.0;
  const double rest = std::sqrt((1.0 - d * d) / static_cast<double>(n_levels - 1));
  std::vector<Complex> overlaps(n_levels, rest);
  overlaps[0] = d;
  return SpectralSystem(std::move(energies), std::move(overlaps));
}

ArrowheadHamiltonian collapse_degenerate_spokes(const ArrowheadHamiltonian& h) {
  if (h.levels() < 2) throw ValidationError("need at least two spokes to collapse");
  const double e = h.spoke_energies[1];
  double g2 = 0.0;
  for (std::size_t i = 1; i < h.levels(); ++i) {
    if (!degenerate(h.spoke_energies[i], e)) {
      throw ValidationError("spokes 2..N are not degenerate");
    }
    g2 += std::norm(h.couplings[i]);
  }
  ArrowheadHamiltonian out;
  out.hub_energy = h.hub_energy;
  out.spoke_energies = {h.spoke_energies[0], e};
  out.couplings = {h.couplings[0], std::sqrt(g2)};
  return out;
}

}  // namespace resonance::hamiltonian
