#include <gtest/gtest.h>

#include <numbers>

#include "resonance/error.hpp"
#include "resonance/evolve.hpp"
#include "test_support.hpp"

using namespace resonance;
using namespace resonance::evolve;
using hamiltonian::ExplicitSystem;
using hamiltonian::ProbeConfig;
using hamiltonian::SpectralSystem;

namespace {

SystemSpec random_explicit(int n, std::uint64_t seed) {
  return ExplicitSystem(n, oracle::random_hermitian(std::size_t{1} << n, seed));
}

// Probe resonant with the ground level and eps0 far from 0 so the reference
// manifold |1>|0>|x != 0> is detuned.
ProbeConfig resonant_probe(const SystemSpec& spec, double c, double omega = 1.0) {
  const auto s = hamiltonian::overlaps_from_explicit(std::get<ExplicitSystem>(spec));
  return ProbeConfig{omega, s.energies()[0] - omega, c};
}

}  // namespace

TEST(Evolve, InitialState) {
  const SystemSpec spectral = SpectralSystem({1.0, 2.0}, {0.6, 0.8});
  const auto r = evolve::evolve(spectral, {1.0, 0.0, 0.1}, 0.0, Representation::reduced);
  EXPECT_EQ(r.success_prob, 0.0);
  EXPECT_EQ(r.probe_decay_prob, 0.0);
  EXPECT_EQ(r.leakage, 0.0);

  const auto spec = random_explicit(2, 3);
  const auto f = evolve::evolve(spec, {1.0, -2.0, 0.1}, 0.0, Representation::full);
  EXPECT_EQ(f.success_prob, 0.0);
  EXPECT_EQ(f.probe_decay_prob, 0.0);
  EXPECT_EQ(f.leakage, 0.0);
}

TEST(Evolve, TwoLevelRabi) {
  const double c = 0.05;
  const SystemSpec spec = SpectralSystem({1.0}, {1.0});
  const Evolver ev(spec, {1.0, 0.0, c}, Representation::reduced);
  for (double t : {0.0, 3.0, 10.0, 17.5, 31.4, 60.0}) {
    const double s = std::sin(c * t);
    EXPECT_NEAR(ev.at(t).success_prob, s * s, 1e-12);
  }
  EXPECT_NEAR(ev.at(std::numbers::pi / (2 * c)).success_prob, 1.0, 1e-12);
}

TEST(Evolve, LargestOverlapReachesTarget) {
  // d = 0.4, E' = 20, alpha = 0 (c = 1), t = 4
  const SystemSpec spec = hamiltonian::build_degenerate(0.4, 20.0, 5);
  const auto r = evolve::evolve(spec, {1.0, 0.0, 1.0}, 4.0, Representation::reduced);
  EXPECT_GE(r.success_prob, 0.99);
}

TEST(Evolve, FullRequiresExplicitSpec) {
  const SystemSpec spec = SpectralSystem({1.0}, {1.0});
  EXPECT_THROW(evolve::evolve(spec, {1.0, 0.0, 0.1}, 1.0, Representation::full), UnsupportedRepresentation);
  EXPECT_THROW(evolve_trotter(spec, {1.0, 0.0, 0.1}, 1.0, 4), UnsupportedRepresentation);
}

TEST(Evolve, PopulationsSumToOne) {
  const auto spec = random_explicit(2, 8);
  const ProbeConfig probe{1.0, -1.5, 0.2};
  const Evolver full(spec, probe, Representation::full);
  for (double t : {0.5, 5.0, 50.0}) {
    const auto r = full.at(t);
    double in_register = 0.0;
    for (std::size_t x = 0; x < 4; ++x) in_register += r.state.population(hamiltonian::register_index(2, x));
    const double p0 = r.state.population(hamiltonian::reference_index(2));
    EXPECT_NEAR(p0 + in_register + r.leakage, 1.0, 1e-10);
    EXPECT_LE(r.success_prob, in_register + 1e-15);
    EXPECT_GE(r.probe_decay_prob, in_register - 1e-12);
  }
}

TEST(Evolve, ResonanceMaximizesSuccess) {
  const double c = 0.05, d = 0.3;
  const SystemSpec spec = hamiltonian::build_degenerate(d, 6.0, 4);
  const double t = std::numbers::pi / (2 * c * d);
  double best_omega = 0.0, best_p = -1.0;
  for (int k = -20; k <= 20; ++k) {
    const double omega = 1.0 + 0.005 * k;
    const double p = evolve::evolve(spec, {omega, 0.0, c}, t, Representation::reduced).success_prob;
    if (p > best_p) {
      best_p = p;
      best_omega = omega;
    }
  }
  EXPECT_NEAR(best_omega, 1.0, 0.005 + 1e-12);
}

TEST(Evolve, FirstMaximumNearInverseCoupling) {
  const double c = 0.02;
  for (double d : {0.1, 0.3, 0.7}) {
    const Evolver ev(hamiltonian::build_degenerate(d, 8.0, 3), {1.0, 0.0, c}, Representation::reduced);
    const double scale = 1.0 / (c * d);
    const double dt = scale / 2000.0;
    double prev = 0.0, t_max = -1.0;
    for (int k = 1; k < 20000; ++k) {
      const double p = ev.at(k * dt).success_prob;
      const double next = ev.at((k + 1) * dt).success_prob;
      if (p > prev && p >= next && p > 0.1) {
        t_max = k * dt;
        break;
      }
      prev = p;
    }
    ASSERT_GT(t_max, 0.0);
    EXPECT_GE(t_max, 0.5 * scale);
    EXPECT_LE(t_max, 2.0 * scale);
  }
}

TEST(Evolve, FullAndReducedAgreeUpToLeakage) {
  // Beyond the real leakage population, virtual coupling to the detuned
  // |1>|0>|x != 0> manifold shifts spoke energies by ~c^2/|eps0|, so the
  // phase error grows like t c^2 / |eps0|.
  for (std::uint64_t seed : {3u, 5u, 19u}) {
    const auto spec = random_explicit(2, seed);
    const auto probe = resonant_probe(spec, 0.01);
    const Evolver full(spec, probe, Representation::full);
    const Evolver reduced(spec, probe, Representation::reduced);
    for (double t : {10.0, 100.0, 250.0, 400.0, 800.0}) {
      const auto f = full.at(t);
      const auto r = reduced.at(t);
      const double dispersive = 2.0 * t * probe.c * probe.c / std::abs(probe.epsilon0);
      EXPECT_LE(std::abs(f.success_prob - r.success_prob), 5.0 * f.leakage + dispersive + 1e-8)
          << "seed=" << seed << " t=" << t;
      EXPECT_LT(std::abs(f.success_prob - r.success_prob), 1e-4);
    }
  }
}

TEST(Evolve, DegenerateGroundSpaceProjector) {
  // H_S = diag(0, 0, 2, 3): ground space spanned by |00>, |01>.
  const SystemSpec spec = ExplicitSystem(2, qcore::HermitianOperator::diagonal({0.0, 0.0, 2.0, 3.0}));
  const ProbeConfig probe{1.0, -1.0, 0.01};
  const auto f = evolve::evolve(spec, probe, 60.0, Representation::full);
  const double want = f.state.population(hamiltonian::register_index(2, 0)) +
                      f.state.population(hamiltonian::register_index(2, 1));
  EXPECT_NEAR(f.success_prob, want, 1e-14);
  EXPECT_GT(f.success_prob, 0.0);
  const auto r = evolve::evolve(spec, probe, 60.0, Representation::reduced);
  EXPECT_NEAR(r.success_prob, f.success_prob, 1e-4);
}

TEST(Trotter, ExactWhenDecoupled) {
  const auto spec = random_explicit(2, 4);
  const ProbeConfig probe{1.0, -0.5, 0.0};
  const auto exact = evolve::evolve(spec, probe, 3.0, Representation::full);
  for (int m : {1, 3, 16}) {
    const auto tr = evolve_trotter(spec, probe, 3.0, m);
    EXPECT_LT((tr.state.amps() - exact.state.amps()).norm(), 1e-10) << m;
  }
}

TEST(Trotter, ConvergesFirstOrder) {
  const auto spec = random_explicit(2, 12);
  const ProbeConfig probe{1.0, -0.3, 0.2};
  const auto pts = trotter_convergence(spec, probe, 1.0, {8, 16, 32, 64, 128, 256, 512, 1024});
  EXPECT_LT(pts.back().error, pts.front().error);
  const double slope = loglog_slope(pts);
  EXPECT_GE(slope, -1.3);
  EXPECT_LE(slope, -0.7);
}

TEST(Trotter, OutputNormalized) {
  const auto spec = random_explicit(2, 13);
  const auto r = evolve_trotter(spec, {1.0, 0.0, 0.5}, 5.0, 300);
  EXPECT_LT(std::abs(r.state.norm() - 1.0), 1e-10);
  EXPECT_THROW(evolve_trotter(spec, {1.0, 0.0, 0.5}, 5.0, 0), ValidationError);
}

TEST(SampleProbe, Extremes) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    EXPECT_EQ(sample_probe(0.0, 1000, seed).count0, 0u);
    EXPECT_EQ(sample_probe(1.0, 1000, seed).count0, 1000u);
    const auto c = sample_probe(0.4, 777, seed);
    EXPECT_EQ(c.count0 + c.count1, 777u);
  }
  EXPECT_THROW(sample_probe(0.5, 0, 1), ValidationError);
}

TEST(SampleProbe, DeterministicGivenSeed) {
  EXPECT_EQ(sample_probe(0.3, 10000, 42).count0, sample_probe(0.3, 10000, 42).count0);
}

TEST(SampleProbe, BinomialConcentration) {
  int within = 0;
  for (std::uint64_t seed = 0; seed < 1000; ++seed) {
    const auto c = sample_probe(0.3, 10000, seed);
    if (std::abs(static_cast<double>(c.count0) / 10000.0 - 0.3) < 0.02) ++within;
  }
  EXPECT_GE(within, 990);
}

TEST(Representation, Parse) {
  EXPECT_EQ(parse_representation("full"), Representation::full);
  EXPECT_EQ(parse_representation("reduced"), Representation::reduced);
  EXPECT_THROW(parse_representation("dense"), ValidationError);
}
