#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numeric>

#include "core/error_models.hpp"
#include "core/grape.hpp"
#include "core/rng.hpp"
#include "test_util.hpp"

using namespace tripath;

namespace {

SpinSystem bare_spin() {
  std::vector<Spin> spins = {{"H", 0.0, 5.0, 1.0, ""}};
  return SpinSystem(spins, Eigen::MatrixXd::Zero(1, 1));
}

double pulse_area(const PulseChannel& c) {
  return std::accumulate(c.x.begin(), c.x.end(), 0.0);
}

}  // namespace

TEST_CASE("rf scaling is exact and multiplicative") {
  const ControlPulse p = hard_pulse(two_pi / 2.0, 0.0, 20e-6, "H");
  const ControlPulse same = apply_rf_scale(p, 1.0);
  CHECK(same.channels[0].x[0] == p.channels[0].x[0]);  // bitwise identity

  const ControlPulse half = apply_rf_scale(p, 0.5);
  CHECK(half.channels[0].x[0] == doctest::Approx(0.5 * p.channels[0].x[0]).epsilon(1e-15));

  CHECK_THROWS_AS(apply_rf_scale(p, 0.0), std::invalid_argument);
}

TEST_CASE("a 0.7% miscalibrated pi pulse loses the Rabi closed-form fidelity") {
  const SpinSystem sys = bare_spin();
  const ControlPulse p = hard_pulse(two_pi / 2.0, 0.0, 20e-6, "H");
  const ControlPulse off = apply_rf_scale(p, 1.007);
  const double fid = hs_fidelity(propagator_from_pulse(off, sys, CouplingModel::weak), pauli_x());
  // rotation angle 1.007*pi: fidelity cos^2(0.007*pi/2), drop ~ (pi*0.007)^2/4
  const double expected_drop = std::sin(0.007 * two_pi / 4.0) * std::sin(0.007 * two_pi / 4.0);
  CHECK(1.0 - fid == doctest::Approx(expected_drop).epsilon(1e-10));
  CHECK(expected_drop == doctest::Approx(1.2e-4).epsilon(0.02));
}

TEST_CASE("per-species scaling touches only the named channel") {
  ControlPulse p;
  p.duration_s = 1e-3;
  p.n_slices = 2;
  p.channels.push_back({"C", {100.0, 200.0}, {0.0, 0.0}});
  p.channels.push_back({"H", {300.0, 400.0}, {0.0, 0.0}});
  const ControlPulse out = apply_rf_scale(p, {{"H", 2.0}});
  CHECK(out.channels[0].x[1] == 200.0);
  CHECK(out.channels[1].x[1] == 800.0);
}

TEST_CASE("fluctuation draws: zero sigmas give exact unity") {
  FluctuationSpec spec;
  spec.rf_sigma_by_species = {{"C", 0.0}, {"H", 0.0}};
  spec.pps_signal_sigma = 0.0;
  const FluctuationDraw d = sample_fluctuations(spec, 1234);
  CHECK(d.pps_factor == 1.0);
  CHECK(d.rf_scale_by_species.at("C") == 1.0);
  CHECK(d.rf_scale_by_species.at("H") == 1.0);
}

TEST_CASE("fluctuation draws are deterministic per seed") {
  FluctuationSpec spec;
  spec.rf_sigma_by_species = {{"C", 0.002}, {"H", 0.007}};
  const FluctuationDraw a = sample_fluctuations(spec, 99);
  const FluctuationDraw b = sample_fluctuations(spec, 99);
  CHECK(a.pps_factor == b.pps_factor);
  CHECK(a.rf_scale_by_species.at("C") == b.rf_scale_by_species.at("C"));
  CHECK(a.rf_scale_by_species.at("H") == b.rf_scale_by_species.at("H"));
  const FluctuationDraw c = sample_fluctuations(spec, 100);
  CHECK(c.pps_factor != a.pps_factor);
}

TEST_CASE("large-sample moments match the configured sigma and clamp") {
  FluctuationSpec spec;  // pps sigma 0.0095, worst 0.02
  double sum = 0.0, sumsq = 0.0;
  const int n = 100000;
  double worst = 0.0;
  for (int i = 0; i < n; ++i) {
    const double f = sample_fluctuations(spec, derive_seed(7, {std::uint64_t(i)})).pps_factor;
    sum += f - 1.0;
    sumsq += (f - 1.0) * (f - 1.0);
    worst = std::max(worst, std::abs(f - 1.0));
  }
  const double mean = sum / n;
  const double std = std::sqrt(sumsq / n - mean * mean);
  CHECK(std == doctest::Approx(0.0095).epsilon(0.03));
  CHECK(std::abs(mean) < 3 * 0.0095 / std::sqrt(double(n)) + 1e-4);
  CHECK(worst <= 0.02 + 1e-15);  // reconstructing (1+dev)-1 costs one ulp
}

TEST_CASE("distortion: identity kernel is bitwise exact") {
  auto gen = testutil::rng(51);
  ControlPulse p;
  p.duration_s = 1e-3;
  p.n_slices = 16;
  std::uniform_real_distribution<double> amp(-1e4, 1e4);
  p.channels.push_back({"C", {}, {}});
  for (int k = 0; k < 16; ++k) {
    p.channels[0].x.push_back(amp(gen));
    p.channels[0].y.push_back(amp(gen));
  }
  const ControlPulse out = distort(p, DistortionSpec{});
  for (int k = 0; k < 16; ++k) {
    CHECK(out.channels[0].x[k] == p.channels[0].x[k]);
    CHECK(out.channels[0].y[k] == p.channels[0].y[k]);
  }
}

TEST_CASE("distortion spreads a spike and conserves its area") {
  ControlPulse p;
  p.duration_s = 1e-3;
  p.n_slices = 9;
  p.channels.push_back({"C", std::vector<double>(9, 0.0), std::vector<double>(9, 0.0)});
  p.channels[0].x[4] = 1000.0;

  DistortionSpec spec;
  spec.kernel = {0.25, 0.5, 0.25};
  const ControlPulse out = distort(p, spec);
  CHECK(out.channels[0].x[3] == doctest::Approx(250.0));
  CHECK(out.channels[0].x[4] == doctest::Approx(500.0));
  CHECK(out.channels[0].x[5] == doctest::Approx(250.0));
  CHECK(out.channels[0].x[2] == 0.0);
  CHECK(pulse_area(out.channels[0]) == doctest::Approx(1000.0).epsilon(1e-13));
}

TEST_CASE("unit-DC kernels conserve channel area for arbitrary waveforms") {
  auto gen = testutil::rng(52);
  std::uniform_real_distribution<double> amp(-5e3, 5e3);
  DistortionSpec spec;
  spec.kernel = {0.1, 0.2, 0.4, 0.2, 0.1};
  for (int trial = 0; trial < 25; ++trial) {
    ControlPulse p;
    p.duration_s = 1e-3;
    p.n_slices = 11;
    p.channels.push_back({"C", {}, {}});
    for (int k = 0; k < 11; ++k) {
      p.channels[0].x.push_back(amp(gen));
      p.channels[0].y.push_back(amp(gen));
    }
    const ControlPulse out = distort(p, spec);
    CHECK(pulse_area(out.channels[0]) ==
          doctest::Approx(pulse_area(p.channels[0])).epsilon(1e-12));
  }
}

TEST_CASE("distortion gain error scales every amplitude") {
  ControlPulse p;
  p.duration_s = 1e-3;
  p.n_slices = 3;
  p.channels.push_back({"C", {100.0, 200.0, 300.0}, {0.0, 0.0, 0.0}});
  DistortionSpec spec;
  spec.residual_gain_error = 0.01;
  const ControlPulse out = distort(p, spec);
  for (int k = 0; k < 3; ++k)
    CHECK(out.channels[0].x[k] == doctest::Approx(1.01 * p.channels[0].x[k]).epsilon(1e-14));

  // non-normalized kernels are normalized to unit DC gain first
  DistortionSpec unnormalized;
  unnormalized.kernel = {2.0, 2.0};
  const ControlPulse flat = distort(p, unnormalized);
  CHECK(pulse_area(flat.channels[0]) == doctest::Approx(600.0).epsilon(1e-13));

  DistortionSpec degenerate;
  degenerate.kernel = {1.0, -1.0};
  CHECK_THROWS_AS(distort(p, degenerate), std::invalid_argument);
}

TEST_CASE("gate error: identity at zero, annihilation at one, uniform shrink") {
  const DensityMatrix rho = pps_deviation(3);
  const DensityMatrix same = inject_gate_error(rho, GateErrorSpec{0.0});
  CHECK(max_abs(same.entries - rho.entries) == 0.0);

  const DensityMatrix dead = inject_gate_error(rho, GateErrorSpec{1.0});
  CHECK(max_abs(dead.entries) == 0.0);

  auto gen = testutil::rng(53);
  DensityMatrix dev{testutil::random_hermitian(8, gen), StateKind::deviation};
  dev.entries -= (dev.entries.trace() / 8.0) * Eigen::MatrixXcd::Identity(8, 8);
  const DensityMatrix out = inject_gate_error(dev, GateErrorSpec{1e-3});
  CHECK(max_abs(out.entries - (1.0 - 1e-3) * dev.entries) < 1e-15);
  CHECK(std::abs(out.entries.trace()) < 1e-12);
  CHECK(max_abs(out.entries - out.entries.adjoint()) < 1e-14);

  // full states depolarize toward maximally mixed, trace preserved
  Eigen::MatrixXcd pure = Eigen::MatrixXcd::Zero(4, 4);
  pure(0, 0) = 1.0;
  const DensityMatrix mixed = inject_gate_error({pure, StateKind::full}, GateErrorSpec{1.0});
  CHECK(max_abs(mixed.entries - 0.25 * Eigen::MatrixXcd::Identity(4, 4)) < 1e-14);

  CHECK_THROWS_AS(inject_gate_error(rho, GateErrorSpec{1.5}), std::invalid_argument);
}

TEST_CASE("ensemble averaging: degenerate and symmetric cases") {
  const RfEnsemble one = RfEnsemble::single();
  CHECK(ensemble_average([](double s) { return 3.0 * s + 1.0; }, one) == doctest::Approx(4.0));

  RfEnsemble pair;
  pair.scale_factors = {0.99, 1.01};
  pair.weights = {0.5, 0.5};
  CHECK(ensemble_average([](double s) { return 5.0 * s; }, pair) ==
        doctest::Approx(5.0).epsilon(1e-14));

  RfEnsemble bad;
  bad.scale_factors = {1.0};
  bad.weights = {0.5};
  CHECK_THROWS_AS(ensemble_average([](double) { return 0.0; }, bad), std::invalid_argument);
}

TEST_CASE("five-point quadrature matches a Monte Carlo average of pulse fidelity") {
  const SpinSystem sys = bare_spin();
  const ControlPulse p = hard_pulse(two_pi / 2.0, 0.0, 20e-6, "H");
  const auto fidelity_at = [&](double scale) {
    return hs_fidelity(propagator_from_pulse(apply_rf_scale(p, scale), sys, CouplingModel::weak),
                       pauli_x());
  };

  const double sigma = 0.002;
  const RfEnsemble quad = RfEnsemble::gauss_hermite(sigma, 5);
  CHECK(quad.scale_factors.size() == 5);
  CHECK(std::accumulate(quad.weights.begin(), quad.weights.end(), 0.0) ==
        doctest::Approx(1.0).epsilon(1e-12));
  const double quad_mean = ensemble_average(fidelity_at, quad);

  auto rng = make_engine(2024);
  std::normal_distribution<double> scale(1.0, sigma);
  double mc = 0.0;
  const int n = 10000;
  for (int i = 0; i < n; ++i) mc += fidelity_at(scale(rng));
  mc /= n;

  CHECK(std::abs(quad_mean - mc) < 1e-5);
}
