#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "core/paths_born.hpp"
#include "core/quantum_engine.hpp"
#include "test_util.hpp"

using namespace tripath;

namespace {

LevelGaps gaps_hz(double f1, double f2, double f3) {
  return LevelGaps{{two_pi * f1, two_pi * f2, two_pi * f3}};
}

LevelGaps random_gaps(std::mt19937_64& gen) {
  std::uniform_real_distribution<double> f(-4000.0, 4000.0);
  return gaps_hz(f(gen), f(gen), f(gen));
}

PathProbabilities analytic_probabilities(const LevelGaps& gaps, double tau_s) {
  PathProbabilities p;
  p.tau_s = tau_s;
  for (const SlitConfig g : SlitConfig::all()) p[g] = born_probability(g, gaps, tau_s);
  return p;
}

}  // namespace

TEST_CASE("slit configuration encoding") {
  const SlitConfig g = SlitConfig::from_string("110");
  CHECK(g.open(1));
  CHECK(g.open(2));
  CHECK(!g.open(3));
  CHECK(g.index() == 6);
  CHECK(g.to_string() == "110");
  CHECK(SlitConfig::from_string("000").index() == 0);
  CHECK(SlitConfig::from_string("111").index() == 7);
  CHECK_THROWS_AS(SlitConfig::from_string("1102"), std::invalid_argument);
  CHECK_THROWS_AS(SlitConfig::from_string("abc"), std::invalid_argument);
}

TEST_CASE("slit states carry 0 or 1/sqrt(3) amplitudes and unit norm") {
  const double a = 1.0 / std::sqrt(3.0);

  const SlitState all_open = slit_state(SlitConfig::from_string("111"));
  CHECK(all_open.beta == 0.0);
  for (const cd& amp : all_open.amps) CHECK(amp.real() == doctest::Approx(a).epsilon(1e-15));

  const SlitState blocked = slit_state(SlitConfig::from_string("000"));
  CHECK(blocked.beta == 1.0);
  for (const cd& amp : blocked.amps) CHECK(std::abs(amp) == 0.0);

  const SlitState two = slit_state(SlitConfig::from_string("110"));
  CHECK(two.beta == doctest::Approx(a).epsilon(1e-15));
  CHECK(two.amps[0].real() == doctest::Approx(a).epsilon(1e-15));
  CHECK(two.amps[1].real() == doctest::Approx(a).epsilon(1e-15));
  CHECK(std::abs(two.amps[2]) == 0.0);

  for (const SlitConfig g : SlitConfig::all())
    CHECK(std::abs(slit_state(g).norm() - 1.0) < 1e-14);
}

TEST_CASE("evolved state accumulates the level-gap phases") {
  const LevelGaps gaps = gaps_hz(0.0, 250.0, 0.0);
  const auto amps = evolved_three_path(gaps, 1e-3);
  const double a = 1.0 / std::sqrt(3.0);
  CHECK(std::abs(amps[0] - cd(a, 0)) < 1e-15);
  CHECK(std::abs(amps[1] - cd(0, -a)) < 1e-15);  // phase pi/2
  CHECK(std::abs(amps[2] - cd(a, 0)) < 1e-15);

  auto gen = testutil::rng(31);
  std::uniform_real_distribution<double> taus(0.0, 5e-3);
  for (int trial = 0; trial < 30; ++trial) {
    const auto a3 = evolved_three_path(random_gaps(gen), taus(gen));
    double norm = 0.0;
    for (const cd& amp : a3) norm += std::norm(amp);
    CHECK(norm == doctest::Approx(1.0).epsilon(1e-14));
  }

  // tau = 0 reproduces the all-open slit state
  const auto a0 = evolved_three_path(gaps, 0.0);
  const SlitState ref = slit_state(SlitConfig::from_string("111"));
  for (int j = 0; j < 3; ++j) CHECK(std::abs(a0[j] - ref.amps[j]) < 1e-15);
}

TEST_CASE("born probability closed forms") {
  auto gen = testutil::rng(32);
  CHECK(born_probability(SlitConfig::from_string("111"), random_gaps(gen), 0.0) ==
        doctest::Approx(1.0).epsilon(1e-14));

  // single open path: |1/3|^2 independent of gaps and tau
  std::uniform_real_distribution<double> taus(0.0, 5e-3);
  for (int trial = 0; trial < 20; ++trial) {
    const double p = born_probability(SlitConfig::from_string("100"), random_gaps(gen), taus(gen));
    CHECK(p == doctest::Approx(1.0 / 9.0).epsilon(1e-13));
  }

  // two open paths: (2/9)(1 + cos(delta_2 - delta_1) tau)
  const LevelGaps gaps = gaps_hz(0.0, 250.0, 1234.0);
  CHECK(born_probability(SlitConfig::from_string("110"), gaps, 1e-3) ==
        doctest::Approx(2.0 / 9.0).epsilon(1e-13));  // cos(pi/2) = 0

  CHECK(born_probability(SlitConfig::from_string("000"), gaps, 0.5e-3) == 0.0);
}

TEST_CASE("three-path interference vanishes for analytic probabilities") {
  auto gen = testutil::rng(33);
  std::uniform_real_distribution<double> taus(0.0, 5e-3);
  for (int trial = 0; trial < 1000; ++trial) {
    const PathProbabilities p = analytic_probabilities(random_gaps(gen), taus(gen));
    CHECK(std::abs(three_path_interference(p)) < 1e-12);
  }
}

TEST_CASE("three-path interference is linear in a single inflated entry") {
  const PathProbabilities p0 = analytic_probabilities(gaps_hz(100, -300, 800), 1.3e-3);
  PathProbabilities p = p0;
  const double eps = 0.0123;
  p[SlitConfig::from_string("111")] += eps;
  CHECK(three_path_interference(p) ==
        doctest::Approx(three_path_interference(p0) + eps).epsilon(1e-12));

  PathProbabilities zeros;
  CHECK(three_path_interference(zeros) == 0.0);
}

TEST_CASE("two-path interference: values and closed form") {
  const LevelGaps gaps = gaps_hz(150.0, -720.0, 2400.0);
  const PathProbabilities at0 = analytic_probabilities(gaps, 0.0);
  CHECK(two_path_interference(SlitConfig::from_string("110"), at0) ==
        doctest::Approx(2.0 / 9.0).epsilon(1e-13));

  auto gen = testutil::rng(34);
  std::uniform_real_distribution<double> taus(0.0, 4e-3);
  for (int trial = 0; trial < 200; ++trial) {
    const double tau = taus(gen);
    const LevelGaps g = random_gaps(gen);
    const PathProbabilities p = analytic_probabilities(g, tau);
    const double expected = (2.0 / 9.0) * std::cos((g.delta[1] - g.delta[0]) * tau);
    CHECK(std::abs(two_path_interference(SlitConfig::from_string("110"), p) - expected) < 1e-12);
  }

  // all-equal probabilities cancel in the signed sum
  PathProbabilities flat;
  flat.p.fill(0.25);
  CHECK(two_path_interference(SlitConfig::from_string("101"), flat) == 0.0);

  CHECK_THROWS_AS(two_path_interference(SlitConfig::from_string("100"), flat),
                  std::invalid_argument);
}

TEST_CASE("kappa: zero for analytic data, linear response, undefined marker") {
  const LevelGaps gaps = gaps_hz(300.0, -500.0, 1100.0);
  const PathProbabilities at0 = analytic_probabilities(gaps, 0.0);
  const auto k0 = kappa(at0);
  REQUIRE(k0.has_value());
  CHECK(std::abs(*k0) < 1e-13);

  PathProbabilities inflated = at0;
  const double eps = 3e-4;
  inflated[SlitConfig::from_string("111")] += eps;
  const auto k1 = kappa(inflated);
  REQUIRE(k1.has_value());
  CHECK(*k1 == doctest::Approx(eps / (2.0 / 3.0)).epsilon(1e-10));

  // all pair interferences zero: undefined
  PathProbabilities degenerate;
  degenerate.p.fill(0.0);
  CHECK(!kappa(degenerate).has_value());

  // scaling invariance: kappa(c*p) = kappa(p)
  PathProbabilities scaled = inflated;
  for (double& v : scaled.p) v *= 7.25;
  CHECK(*kappa(scaled) == doctest::Approx(*k1).epsilon(1e-12));
}

TEST_CASE("interference record carries pairs and the kappa flag") {
  const PathProbabilities p = analytic_probabilities(gaps_hz(100.0, 700.0, -1300.0), 0.7e-3);
  const InterferenceRecord rec = interference_record(p);
  CHECK(rec.tau_s == p.tau_s);
  CHECK(std::abs(rec.i123) < 1e-12);
  CHECK(rec.kappa.has_value());
  double denom = 0.0;
  for (double ip : rec.i_pairs) denom += std::abs(ip);
  CHECK(denom > 1e-3);
}

TEST_CASE("target unitaries implement the slit overlaps") {
  const TargetUnitaries t = target_unitaries();
  CHECK(is_unitary(t.u_hat, 1e-12));
  for (const SlitConfig g : SlitConfig::all()) CHECK(is_unitary(t.v_hat[g.index()], 1e-12));

  // <00| V111 U |00> = <psi111|psi111> = 1
  const cd amp = (t.v_hat[7] * t.u_hat)(0, 0);
  CHECK(std::abs(amp - cd(1, 0)) < 1e-12);

  // first column of U is the all-open state
  const Eigen::Vector4cd psi = slit_state(SlitConfig::from_string("111")).as_vector();
  CHECK((t.u_hat.col(0) - psi).cwiseAbs().maxCoeff() < 1e-14);

  // first row of V_gamma is <psi_gamma|
  for (const SlitConfig g : SlitConfig::all()) {
    const Eigen::Vector4cd ref = slit_state(g).as_vector();
    CHECK((t.v_hat[g.index()].row(0).transpose() - ref.conjugate()).cwiseAbs().maxCoeff() < 1e-14);
  }
}

TEST_CASE("engine pipeline with ideal targets reproduces the analytic law") {
  // |<00| V freeprop U |00>|^2 against born_probability on random gaps
  auto gen = testutil::rng(35);
  std::uniform_real_distribution<double> taus(0.0, 3e-3);
  const TargetUnitaries t = target_unitaries();
  for (int trial = 0; trial < 100; ++trial) {
    const LevelGaps gaps = random_gaps(gen);
    const double tau = taus(gen);
    Eigen::Vector4cd energies;
    energies << 0.0, gaps.delta[0], gaps.delta[1], gaps.delta[2];
    const Eigen::MatrixXcd h = Eigen::MatrixXcd(energies.asDiagonal());
    const Eigen::MatrixXcd evo = free_propagator(h, tau);
    for (const SlitConfig g : SlitConfig::all()) {
      const cd amp = (t.v_hat[g.index()] * evo * t.u_hat)(0, 0);
      CHECK(std::abs(std::norm(amp) - born_probability(g, gaps, tau)) < 1e-12);
    }
  }
}

TEST_CASE("single-path probabilities sum to one third") {
  auto gen = testutil::rng(36);
  const LevelGaps gaps = random_gaps(gen);
  double sum = 0.0;
  for (const char* s : {"100", "010", "001"})
    sum += born_probability(SlitConfig::from_string(s), gaps, 1.1e-3);
  CHECK(sum == doctest::Approx(1.0 / 3.0).epsilon(1e-13));
}
