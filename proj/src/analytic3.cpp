#include "resonance/analytic3.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/Eigenvalues>

#include "resonance/error.hpp"

namespace resonance::analytic3 {

namespace {

constexpr Complex kI{0.0, 1.0};

// E' expressed in the frame where omega/2 + epsilon0 = 1/2.
double shifted_e_prime(const ThreeLevelParams& p) {
  return p.e_prime - (0.5 * p.omega + p.epsilon0) + 0.5;
}

Complex eval_poly(const std::array<Complex, 4>& a, Complex x) {
  return ((a[0] * x + a[1]) * x + a[2]) * x + a[3];
}

Complex eval_derivative(const std::array<Complex, 4>& a, Complex x) {
  return (3.0 * a[0] * x + 2.0 * a[1]) * x + a[2];
}

}  // namespace

ThreeLevelParams ThreeLevelParams::from_alpha(double d, double e_prime, double alpha, double omega,
                                              double epsilon0) {
  ThreeLevelParams p;
  p.c = std::pow(d, alpha);
  p.d = d;
  p.e_prime = e_prime;
  p.omega = omega;
  p.epsilon0 = epsilon0;
  p.alpha = alpha;
  return p;
}

void ThreeLevelParams::validate() const {
  if (!std::isfinite(c) || !std::isfinite(d) || !std::isfinite(e_prime) || !std::isfinite(omega) ||
      !std::isfinite(epsilon0)) {
    throw ValidationError("three-level parameters must be finite");
  }
  if (c < 0.0) throw ValidationError("coupling c must be >= 0");
  if (!(d > 0.0 && d <= 1.0)) throw ValidationError("overlap d must lie in (0, 1]");
  if (alpha && *alpha < 0.0) throw ValidationError("exponent alpha must be >= 0");
}

qcore::HermitianOperator h3(const ThreeLevelParams& params) {
  params.validate();
  const double hub = 0.5 * params.omega + params.epsilon0;
  const double g1 = params.c * params.d;
  const double g2 = params.c * std::sqrt(1.0 - params.d * params.d);
  qcore::Matrix m(3, 3);
  m << hub, g1, g2,
       g1, hub, 0.0,
       g2, 0.0, params.e_prime;
  return qcore::HermitianOperator(std::move(m));
}

std::array<Complex, 4> cubic_coefficients(const ThreeLevelParams& params) {
  const double e = shifted_e_prime(params);
  const double c2 = params.c * params.c;
  const double d2 = params.d * params.d;
  return {Complex(4.0), 4.0 * kI * (e + 1.0), Complex(4.0 * c2 - 4.0 * e - 1.0),
          kI * (4.0 * c2 * d2 * e - 2.0 * c2 * d2 + 2.0 * c2 - e)};
}

CubicRoots cubic_roots(const ThreeLevelParams& params) {
  params.validate();
  const auto a = cubic_coefficients(params);
  Eigen::Matrix3cd companion = Eigen::Matrix3cd::Zero();
  companion(0, 0) = -a[1] / a[0];
  companion(0, 1) = -a[2] / a[0];
  companion(0, 2) = -a[3] / a[0];
  companion(1, 0) = 1.0;
  companion(2, 1) = 1.0;
  Eigen::ComplexEigenSolver<Eigen::Matrix3cd> solver(companion, /*computeEigenvectors=*/false);
  if (solver.info() != Eigen::Success) throw NumericError("companion eigensolver failed");

  CubicRoots out;
  for (int k = 0; k < 3; ++k) {
    Complex x = solver.eigenvalues()(k);
    // One Newton step tightens the residual for well-separated roots.
    const Complex dp = eval_derivative(a, x);
    if (std::abs(dp) > 0.0) {
      const Complex refined = x - eval_poly(a, x) / dp;
      if (std::abs(eval_poly(a, refined)) < std::abs(eval_poly(a, x))) x = refined;
    }
    out.roots[static_cast<std::size_t>(k)] = x;
  }
  std::sort(out.roots.begin(), out.roots.end(), [](Complex l, Complex r) {
    if (l.imag() != r.imag()) return l.imag() < r.imag();
    return l.real() < r.real();
  });
  out.min_separation = std::min({std::abs(out.roots[0] - out.roots[1]),
                                 std::abs(out.roots[0] - out.roots[2]),
                                 std::abs(out.roots[1] - out.roots[2])});
  out.nearly_repeated = out.min_separation < kRootSeparationTol;
  return out;
}

Complex c1_analytic(const ThreeLevelParams& params, double t) {
  const auto roots = cubic_roots(params);
  const double e = shifted_e_prime(params);
  const double c2 = params.c * params.c;
  Complex sum = 0.0;
  for (const Complex x : roots.roots) {
    const Complex denom =
        12.0 * kI * x * x - 8.0 * (e + 1.0) * x + 4.0 * kI * c2 - 4.0 * kI * e - kI;
    sum += (kI * e + x) * std::exp(x * t) / denom;
  }
  return 4.0 * params.c * params.d * sum;
}

double p_analytic(const ThreeLevelParams& params, double t) {
  const auto roots = cubic_roots(params);
  if (roots.nearly_repeated) {
    throw DegenerateRootsError("cubic roots nearly repeated (separation " +
                               std::to_string(roots.min_separation) +
                               "); use p_numeric3 instead");
  }
  const double p = std::norm(c1_analytic(params, t));
  if (!std::isfinite(p) || p < -kClampTol || p > 1.0 + kClampTol) {
    throw NumericError("closed-form probability " + std::to_string(p) + " outside [0, 1]");
  }
  return std::clamp(p, 0.0, 1.0);
}

ThreeLevelModel::ThreeLevelModel(const ThreeLevelParams& params)
    : params_(params), prop_(h3(params)) {}

double ThreeLevelModel::p(double t) const {
  return std::clamp(prop_.apply(qcore::StateVector::basis(3, 0), t).population(1), 0.0, 1.0);
}

double p_numeric3(const ThreeLevelParams& params, double t) { return ThreeLevelModel(params).p(t); }

}  // namespace resonance::analytic3
