#pragma once

// Degenerate three-level model: hub |Psi_0>, target |Psi_1>, and the
// symmetric combination |Psi_2> of an (N-1)-fold degenerate excited manifold.
// p_numeric3 propagates the 3x3 Hamiltonian exactly and is the reference;
// p_analytic evaluates the closed-form residue sum over the cubic's roots.

#include <array>
#include <optional>

#include "resonance/qcore.hpp"

namespace resonance::analytic3 {

using qcore::Complex;

inline constexpr double kRootSeparationTol = 1e-8;
inline constexpr double kClampTol = 1e-8;

struct ThreeLevelParams {
  double c = 0.0;
  double d = 1.0;
  double e_prime = 0.0;
  double omega = 1.0;
  double epsilon0 = 0.0;
  std::optional<double> alpha;  // set when c was derived as d^alpha

  /// c = d^alpha.
  static ThreeLevelParams from_alpha(double d, double e_prime, double alpha, double omega = 1.0,
                                     double epsilon0 = 0.0);
  void validate() const;
};

qcore::HermitianOperator h3(const ThreeLevelParams& params);

/// Coefficients (x^3, x^2, x, 1) of the characteristic cubic, written in the
/// frame where the hub energy is 1/2. Other omega, epsilon0 map onto that
/// frame by a common energy shift of E'.
std::array<Complex, 4> cubic_coefficients(const ThreeLevelParams& params);

struct CubicRoots {
  std::array<Complex, 3> roots;  // sorted by imaginary part, then real part
  double min_separation = 0.0;
  bool nearly_repeated = false;
};

CubicRoots cubic_roots(const ThreeLevelParams& params);

/// |c_1(t)|^2 from the residue sum. Throws DegenerateRootsError when roots
/// are closer than kRootSeparationTol, NumericError when the result leaves
/// [0, 1] by more than kClampTol.
double p_analytic(const ThreeLevelParams& params, double t);

/// Amplitude c_1(t) from the residue sum (no root-separation check).
Complex c1_analytic(const ThreeLevelParams& params, double t);

double p_numeric3(const ThreeLevelParams& params, double t);

/// Cached 3x3 propagator for evaluating P(t) on many times.
class ThreeLevelModel {
 public:
  explicit ThreeLevelModel(const ThreeLevelParams& params);
  double p(double t) const;
  const ThreeLevelParams& params() const { return params_; }

 private:
  ThreeLevelParams params_;
  qcore::Propagator prop_;
};

}  // namespace resonance::analytic3
