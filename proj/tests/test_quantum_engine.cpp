#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "core/quantum_engine.hpp"
#include "test_util.hpp"

using namespace tripath;

namespace {

SpinSystem single_spin(double t1, double t2) {
  std::vector<Spin> spins = {{"H", 0.0, t1, t2, ""}};
  return SpinSystem(spins, Eigen::MatrixXd::Zero(1, 1));
}

SpinSystem uncoupled(int n, double t1, double t2) {
  std::vector<Spin> spins;
  for (int i = 0; i < n; ++i) spins.push_back({"S" + std::to_string(i), 0.0, t1, t2, ""});
  return SpinSystem(spins, Eigen::MatrixXd::Zero(n, n));
}

}  // namespace

TEST_CASE("pps deviation matches the direct tensor construction") {
  const DensityMatrix rho2 = pps_deviation(2);
  Eigen::MatrixXcd zero = Eigen::MatrixXcd::Zero(2, 2);
  zero(0, 0) = 1.0;  // |0><0|
  CHECK(max_abs(rho2.entries - kron(zero, pauli_x())) == 0.0);
  CHECK(rho2.kind == StateKind::deviation);

  const DensityMatrix rho3 = pps_deviation(3);
  CHECK(max_abs(rho3.entries - kron(kron(zero, zero), pauli_x())) == 0.0);
  CHECK(std::abs(rho3.entries.trace()) == 0.0);
  CHECK(max_abs(rho3.entries - rho3.entries.adjoint()) == 0.0);

  CHECK_THROWS_AS(pps_deviation(1), std::invalid_argument);
}

TEST_CASE("free propagator: identity at t = 0 and diagonal closed form") {
  auto gen = testutil::rng(5);
  const Eigen::MatrixXcd h = testutil::random_hermitian(4, gen);
  CHECK(max_abs(free_propagator(h, 0.0) - Eigen::MatrixXcd::Identity(4, 4)) < 1e-14);

  Eigen::VectorXd d(4);
  d << 0.3, -1.7, 2.2, 500.0;
  const Eigen::MatrixXcd hd = d.cast<cd>().asDiagonal();
  const double t = 0.37;
  const Eigen::MatrixXcd u = free_propagator(hd, t);
  for (int i = 0; i < 4; ++i) {
    CHECK(std::abs(u(i, i) - std::polar(1.0, -d(i) * t)) < 1e-13);
    for (int j = 0; j < 4; ++j)
      if (i != j) CHECK(std::abs(u(i, j)) < 1e-13);
  }
}

TEST_CASE("free propagator semigroup property") {
  auto gen = testutil::rng(6);
  for (int trial = 0; trial < 20; ++trial) {
    const Eigen::MatrixXcd h = testutil::random_hermitian(8, gen);
    std::uniform_real_distribution<double> td(0.0, 2.0);
    const double t = td(gen), s = td(gen);
    CHECK(max_abs(free_propagator(h, t) * free_propagator(h, s) - free_propagator(h, t + s)) <
          1e-12);
    const Eigen::MatrixXcd half = free_propagator(h, t / 2);
    CHECK(max_abs(half * half - free_propagator(h, t)) < 1e-12);
    CHECK(is_unitary(free_propagator(h, t), 1e-12));
  }
}

TEST_CASE("free propagator rejects non-Hermitian generators") {
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(2, 2);
  m(0, 1) = 1.0;
  CHECK_THROWS_AS(free_propagator(m, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(free_propagator(Eigen::MatrixXcd::Identity(2, 2), -1.0), std::invalid_argument);
}

TEST_CASE("apply_unitary conjugates and preserves spectra") {
  auto gen = testutil::rng(7);
  const Eigen::MatrixXcd u = testutil::random_unitary(4, gen);
  DensityMatrix rho{testutil::random_hermitian(4, gen), StateKind::deviation};

  const DensityMatrix out = apply_unitary(rho, u);
  CHECK(max_abs(out.entries - u * rho.entries * u.adjoint()) < 1e-13);
  CHECK(out.kind == rho.kind);

  // unitary conjugation preserves eigenvalues
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> e1(rho.entries), e2(out.entries);
  CHECK((e1.eigenvalues() - e2.eigenvalues()).cwiseAbs().maxCoeff() < 1e-12);

  // round trip U then U^dag
  const DensityMatrix back = apply_unitary(out, u.adjoint().eval());
  CHECK(max_abs(back.entries - rho.entries) < 1e-12);

  // statevector cross-check on a pure state
  Eigen::MatrixXcd pure = Eigen::MatrixXcd::Zero(4, 4);
  pure(0, 0) = 1.0;
  const Eigen::VectorXcd mapped = u.col(0);
  const DensityMatrix evolved = apply_unitary(DensityMatrix{pure, StateKind::full}, u);
  CHECK(max_abs(evolved.entries - mapped * mapped.adjoint()) < 1e-13);

  CHECK_THROWS_AS(apply_unitary(rho, Eigen::MatrixXcd::Identity(8, 8)), std::invalid_argument);
  CHECK(max_abs(apply_unitary(rho, Eigen::MatrixXcd::Identity(4, 4)).entries - rho.entries) == 0.0);
}

TEST_CASE("relaxation: single-spin closed forms") {
  const double t1 = 3.0, t2 = 0.8;
  const SpinSystem sys = single_spin(t1, t2);

  DensityMatrix x{pauli_x(), StateKind::deviation};
  const DensityMatrix xt = apply_relaxation(x, t2, sys);
  CHECK(max_abs(xt.entries - std::exp(-1.0) * pauli_x()) < 1e-14);

  DensityMatrix z{pauli_z(), StateKind::deviation};
  const DensityMatrix zt = apply_relaxation(z, t1, sys);
  CHECK(max_abs(zt.entries - std::exp(-1.0) * pauli_z()) < 1e-14);

  CHECK(max_abs(apply_relaxation(x, 0.0, sys).entries - x.entries) == 0.0);
}

TEST_CASE("relaxation damps toward zero deviation / maximally mixed full state") {
  const SpinSystem sys = uncoupled(2, 2.0, 0.5);
  auto gen = testutil::rng(8);
  DensityMatrix dev{testutil::random_hermitian(4, gen), StateKind::deviation};
  dev.entries -= (dev.entries.trace() / 4.0) * Eigen::MatrixXcd::Identity(4, 4);
  const DensityMatrix late = apply_relaxation(dev, 500.0, sys);
  CHECK(max_abs(late.entries) < 1e-12);

  Eigen::MatrixXcd pure = Eigen::MatrixXcd::Zero(4, 4);
  pure(0, 0) = 1.0;
  const DensityMatrix mixed = apply_relaxation(DensityMatrix{pure, StateKind::full}, 500.0, sys);
  CHECK(max_abs(mixed.entries - 0.25 * Eigen::MatrixXcd::Identity(4, 4)) < 1e-12);
}

TEST_CASE("relaxation is trace preserving and Hermiticity preserving") {
  const SpinSystem sys = uncoupled(3, 4.0, 0.7);
  auto gen = testutil::rng(9);
  for (int trial = 0; trial < 10; ++trial) {
    Eigen::MatrixXcd m = testutil::random_hermitian(8, gen);
    m = m * m.adjoint();  // positive
    m /= m.trace().real();
    const DensityMatrix out =
        apply_relaxation(DensityMatrix{m, StateKind::full}, 0.3 * (trial + 1), sys);
    CHECK(std::abs(out.entries.trace().real() - 1.0) < 1e-12);
    CHECK(max_abs(out.entries - out.entries.adjoint()) < 1e-12);
  }
}

TEST_CASE("relaxation never grows a single-spin coherence") {
  const SpinSystem sys = uncoupled(2, 1.5, 0.4);
  auto gen = testutil::rng(10);
  std::uniform_real_distribution<double> td(0.0, 3.0);
  for (int trial = 0; trial < 50; ++trial) {
    const DensityMatrix rho{testutil::random_hermitian(4, gen), StateKind::deviation};
    const DensityMatrix out = apply_relaxation(rho, td(gen), sys);
    // single-spin coherences: index pairs differing in exactly one bit
    double before = 0.0, after = 0.0;
    for (int r = 0; r < 4; ++r) {
      for (int c = 0; c < 4; ++c) {
        const int x = r ^ c;
        if (x != 1 && x != 2) continue;
        before = std::max(before, std::abs(rho.entries(r, c)));
        after = std::max(after, std::abs(out.entries(r, c)));
      }
    }
    CHECK(after <= before + 1e-15);
  }
}

TEST_CASE("magnetization readout conventions") {
  CHECK(measure_magnetization(pps_deviation(2)) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(measure_magnetization(pps_deviation(3)) == doctest::Approx(1.0).epsilon(1e-15));

  // |00><00| (x) Z is orthogonal to the readout operator
  Eigen::MatrixXcd zero = Eigen::MatrixXcd::Zero(2, 2);
  zero(0, 0) = 1.0;
  const Eigen::MatrixXcd zstate = kron(kron(zero, zero), pauli_z());
  CHECK(measure_magnetization(DensityMatrix{zstate, StateKind::deviation}) == 0.0);

  DensityMatrix scaled = pps_deviation(3);
  scaled.entries *= 0.3721;
  CHECK(measure_magnetization(scaled) == doctest::Approx(0.3721).epsilon(1e-15));
}

TEST_CASE("magnetization is linear in the state") {
  auto gen = testutil::rng(12);
  std::uniform_real_distribution<double> coeff(-2.0, 2.0);
  for (int trial = 0; trial < 50; ++trial) {
    const Eigen::MatrixXcd a = testutil::random_hermitian(8, gen);
    const Eigen::MatrixXcd b = testutil::random_hermitian(8, gen);
    const double ca = coeff(gen), cb = coeff(gen);
    const double lhs =
        measure_magnetization(DensityMatrix{ca * a + cb * b, StateKind::deviation});
    const double rhs = ca * measure_magnetization(DensityMatrix{a, StateKind::deviation}) +
                       cb * measure_magnetization(DensityMatrix{b, StateKind::deviation});
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
  }
}
