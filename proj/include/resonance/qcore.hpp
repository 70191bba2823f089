#pragma once

// Dense complex linear algebra used by every simulation path: normalized
// state vectors, validated Hermitian operators, Kronecker products and
// exact propagators exp(-iHt) built from a Hermitian eigendecomposition.

#include <complex>
#include <cstddef>
#include <vector>

#include <Eigen/Dense>

namespace resonance::qcore {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

inline constexpr double kHermiticityTol = 1e-12;
inline constexpr double kNormTol = 1e-10;
inline constexpr std::size_t kMaxDim = std::size_t{1} << 14;

/// Tunable numeric limits. Defaults match the constants above; the CLI can
/// override them from a config file.
struct Limits {
  double hermiticity_tol = kHermiticityTol;
  std::size_t max_dim = kMaxDim;
};

class StateVector {
 public:
  /// Computational basis state |index> in a space of dimension dim.
  static StateVector basis(std::size_t dim, std::size_t index);
  /// Throws ValidationError unless | ||amps|| - 1 | <= tol.
  static StateVector from_amplitudes(Vector amps, double tol = kNormTol);

  std::size_t dim() const { return static_cast<std::size_t>(amps_.size()); }
  const Vector& amps() const { return amps_; }
  Complex operator[](std::size_t i) const { return amps_(static_cast<Eigen::Index>(i)); }
  double population(std::size_t i) const { return std::norm((*this)[i]); }
  double norm() const { return amps_.norm(); }

 private:
  explicit StateVector(Vector amps) : amps_(std::move(amps)) {}
  friend class Propagator;
  friend StateVector checked_state(Vector amps);

  Vector amps_;
};

/// Wraps an evolved amplitude vector; throws NumericError if the norm drifted
/// beyond kNormTol (never renormalizes).
StateVector checked_state(Vector amps);

class HermitianOperator {
 public:
  /// Rejects (ValidationError) any matrix that is not square or whose
  /// max-norm deviation from its adjoint exceeds tol. Never symmetrizes.
  explicit HermitianOperator(Matrix entries, double tol = kHermiticityTol);

  static HermitianOperator identity(std::size_t dim);
  static HermitianOperator diagonal(const std::vector<double>& values);

  std::size_t dim() const { return static_cast<std::size_t>(entries_.rows()); }
  const Matrix& matrix() const { return entries_; }
  Complex operator()(std::size_t i, std::size_t j) const {
    return entries_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
  }
  double max_abs() const;

 private:
  Matrix entries_;
};

HermitianOperator sigma_x();
HermitianOperator sigma_y();
HermitianOperator sigma_z();

/// Hadamard^{(x)n}; Hermitian and unitary.
Matrix hadamard(int n_qubits);

double max_abs(const Matrix& m);
bool is_hermitian(const Matrix& m, double tol = kHermiticityTol);
bool is_unitary(const Matrix& m, double tol = kNormTol);

/// Kronecker product a (x) b. Throws SizeError if the result exceeds max_dim.
Matrix kron(const Matrix& a, const Matrix& b, std::size_t max_dim = kMaxDim);
HermitianOperator tensor(const HermitianOperator& a, const HermitianOperator& b,
                         std::size_t max_dim = kMaxDim);

struct EigenSystem {
  std::vector<double> eigenvalues;  // ascending
  Matrix eigenvectors;              // column k pairs with eigenvalues[k]
};

/// h = V diag(lambda) V^dagger with ascending eigenvalues. Each eigenvector's
/// first non-negligible component is made real positive; exactly tied
/// eigenvalues are ordered by lexicographic comparison of their vectors.
EigenSystem eig_hermitian(const HermitianOperator& h);

/// Cached eigendecomposition for evaluating exp(-iht) at many times.
class Propagator {
 public:
  explicit Propagator(const HermitianOperator& h);

  StateVector apply(const StateVector& psi, double t) const;
  Matrix unitary(double t) const;
  const EigenSystem& eigensystem() const { return eig_; }
  std::size_t dim() const { return static_cast<std::size_t>(eig_.eigenvectors.rows()); }

 private:
  EigenSystem eig_;
};

StateVector propagate_exact(const HermitianOperator& h, const StateVector& psi, double t);

/// <psi|h|psi> (real for Hermitian h).
double expectation(const HermitianOperator& h, const StateVector& psi);

}  // namespace resonance::qcore
