#include "resonance/qcore.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include <Eigen/Eigenvalues>

#include "resonance/error.hpp"

namespace resonance::qcore {

namespace {

// Components smaller than this are skipped when fixing eigenvector phases.
constexpr double kPhaseAnchorTol = 1e-8;

bool lexicographically_less(const Vector& a, const Vector& b) {
  for (Eigen::Index k = 0; k < a.size(); ++k) {
    if (a(k).real() != b(k).real()) return a(k).real() < b(k).real();
    if (a(k).imag() != b(k).imag()) return a(k).imag() < b(k).imag();
  }
  return false;
}

}  // namespace

StateVector StateVector::basis(std::size_t dim, std::size_t index) {
  if (dim == 0 || index >= dim) {
    throw ValidationError("basis index " + std::to_string(index) + " out of range for dim " +
                          std::to_string(dim));
  }
  Vector v = Vector::Zero(static_cast<Eigen::Index>(dim));
  v(static_cast<Eigen::Index>(index)) = 1.0;
  return StateVector(std::move(v));
}

StateVector StateVector::from_amplitudes(Vector amps, double tol) {
  if (amps.size() == 0) throw ValidationError("state vector must be non-empty");
  if (!amps.allFinite()) throw ValidationError("state vector has non-finite amplitudes");
  const double n = amps.norm();
  if (std::abs(n - 1.0) > tol) {
    throw ValidationError("state vector not normalized (norm " + std::to_string(n) + ")");
  }
  return StateVector(std::move(amps));
}

StateVector checked_state(Vector amps) {
  const double n = amps.norm();
  if (!std::isfinite(n) || std::abs(n - 1.0) > kNormTol) {
    throw NumericError("evolution lost normalization (norm " + std::to_string(n) + ")");
  }
  return StateVector(std::move(amps));
}

double max_abs(const Matrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

bool is_hermitian(const Matrix& m, double tol) {
  return m.rows() == m.cols() && max_abs(m - m.adjoint()) <= tol;
}

bool is_unitary(const Matrix& m, double tol) {
  if (m.rows() != m.cols()) return false;
  return max_abs(m.adjoint() * m - Matrix::Identity(m.rows(), m.cols())) <= tol;
}

HermitianOperator::HermitianOperator(Matrix entries, double tol) : entries_(std::move(entries)) {
  if (entries_.rows() == 0 || entries_.rows() != entries_.cols()) {
    throw ValidationError("operator must be a non-empty square matrix");
  }
  if (!entries_.allFinite()) throw ValidationError("operator has non-finite entries");
  const double dev = qcore::max_abs(entries_ - entries_.adjoint());
  if (dev > tol) {
    throw ValidationError("operator is not Hermitian (max |H - H^dagger| = " +
                          std::to_string(dev) + ")");
  }
}

HermitianOperator HermitianOperator::identity(std::size_t dim) {
  const auto n = static_cast<Eigen::Index>(dim);
  return HermitianOperator(Matrix::Identity(n, n));
}

HermitianOperator HermitianOperator::diagonal(const std::vector<double>& values) {
  Matrix m = Matrix::Zero(static_cast<Eigen::Index>(values.size()),
                          static_cast<Eigen::Index>(values.size()));
  for (std::size_t i = 0; i < values.size(); ++i) {
    m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) = values[i];
  }
  return HermitianOperator(std::move(m));
}

double HermitianOperator::max_abs() const { return qcore::max_abs(entries_); }

HermitianOperator sigma_x() {
  Matrix m(2, 2);
  m << 0.0, 1.0, 1.0, 0.0;
  return HermitianOperator(std::move(m));
}

HermitianOperator sigma_y() {
  Matrix m(2, 2);
  m << 0.0, Complex(0.0, -1.0), Complex(0.0, 1.0), 0.0;
  return HermitianOperator(std::move(m));
}

HermitianOperator sigma_z() {
  Matrix m(2, 2);
  m << 1.0, 0.0, 0.0, -1.0;
  return HermitianOperator(std::move(m));
}

Matrix hadamard(int n_qubits) {
  if (n_qubits < 0) throw ValidationError("negative qubit count");
  Matrix h1(2, 2);
  const double s = 1.0 / std::sqrt(2.0);
  h1 << s, s, s, -s;
  Matrix out = Matrix::Identity(1, 1);
  for (int q = 0; q < n_qubits; ++q) out = kron(out, h1);
  return out;
}

Matrix kron(const Matrix& a, const Matrix& b, std::size_t max_dim) {
  const auto rows = static_cast<std::size_t>(a.rows()) * static_cast<std::size_t>(b.rows());
  const auto cols = static_cast<std::size_t>(a.cols()) * static_cast<std::size_t>(b.cols());
  if (rows > max_dim || cols > max_dim) {
    throw SizeError("Kronecker product of dimension " + std::to_string(rows) +
                    " exceeds the configured maximum " + std::to_string(max_dim));
  }
  Matrix out(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

HermitianOperator tensor(const HermitianOperator& a, const HermitianOperator& b,
                         std::size_t max_dim) {
  // A Kronecker product of Hermitian factors is exactly Hermitian.
  return HermitianOperator(kron(a.matrix(), b.matrix(), max_dim));
}

EigenSystem eig_hermitian(const HermitianOperator& h) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(h.matrix());
  if (solver.info() != Eigen::Success) {
    throw NumericError("Hermitian eigendecomposition did not converge");
  }
  const Eigen::Index n = h.matrix().rows();
  Matrix vecs = solver.eigenvectors();
  for (Eigen::Index k = 0; k < n; ++k) {
    auto col = vecs.col(k);
    for (Eigen::Index r = 0; r < n; ++r) {
      if (std::abs(col(r)) > kPhaseAnchorTol) {
        col *= std::conj(col(r)) / std::abs(col(r));
        col(r) = std::abs(col(r));
        break;
      }
    }
  }

  EigenSystem out;
  out.eigenvalues.resize(static_cast<std::size_t>(n));
  for (Eigen::Index k = 0; k < n; ++k) {
    out.eigenvalues[static_cast<std::size_t>(k)] = solver.eigenvalues()(k);
  }

  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  // Solver output is already ascending; only exact ties need a deterministic order.
  std::stable_sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) {
    const double la = out.eigenvalues[static_cast<std::size_t>(a)];
    const double lb = out.eigenvalues[static_cast<std::size_t>(b)];
    if (la != lb) return la < lb;
    return lexicographically_less(vecs.col(a), vecs.col(b));
  });
  out.eigenvectors.resize(n, n);
  std::vector<double> sorted(static_cast<std::size_t>(n));
  for (Eigen::Index k = 0; k < n; ++k) {
    out.eigenvectors.col(k) = vecs.col(order[static_cast<std::size_t>(k)]);
    sorted[static_cast<std::size_t>(k)] = out.eigenvalues[static_cast<std::size_t>(order[static_cast<std::size_t>(k)])];
  }
  out.eigenvalues = std::move(sorted);
  return out;
}

Propagator::Propagator(const HermitianOperator& h) : eig_(eig_hermitian(h)) {}

StateVector Propagator::apply(const StateVector& psi, double t) const {
  if (psi.dim() != dim()) {
    throw ValidationError("state dimension " + std::to_string(psi.dim()) +
                          " does not match operator dimension " + std::to_string(dim()));
  }
  if (t == 0.0) return psi;
  Vector coeffs = eig_.eigenvectors.adjoint() * psi.amps();
  for (Eigen::Index k = 0; k < coeffs.size(); ++k) {
    coeffs(k) *= std::polar(1.0, -eig_.eigenvalues[static_cast<std::size_t>(k)] * t);
  }
  return checked_state(eig_.eigenvectors * coeffs);
}

Matrix Propagator::unitary(double t) const {
  const auto n = static_cast<Eigen::Index>(dim());
  Vector phases(n);
  for (Eigen::Index k = 0; k < n; ++k) {
    phases(k) = std::polar(1.0, -eig_.eigenvalues[static_cast<std::size_t>(k)] * t);
  }
  return eig_.eigenvectors * phases.asDiagonal() * eig_.eigenvectors.adjoint();
}

StateVector propagate_exact(const HermitianOperator& h, const StateVector& psi, double t) {
  if (psi.dim() != h.dim()) {
    throw ValidationError("state dimension " + std::to_string(psi.dim()) +
                          " does not match operator dimension " + std::to_string(h.dim()));
  }
  return Propagator(h).apply(psi, t);
}

double expectation(const HermitianOperator& h, const StateVector& psi) {
  if (psi.dim() != h.dim()) throw ValidationError("dimension mismatch in expectation value");
  return psi.amps().dot(h.matrix() * psi.amps()).real();
}

}  // namespace resonance::qcore
