#pragma once

#include <random>

#include "core/linalg.hpp"

namespace tripath::testutil {

inline std::mt19937_64 rng(std::uint64_t seed) { return std::mt19937_64(seed); }

inline Eigen::MatrixXcd random_complex(int n, std::mt19937_64& gen) {
  std::normal_distribution<double> dist(0.0, 1.0);
  Eigen::MatrixXcd m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = cd(dist(gen), dist(gen));
  return m;
}

inline Eigen::MatrixXcd random_hermitian(int n, std::mt19937_64& gen) {
  Eigen::MatrixXcd m = random_complex(n, gen);
  return ((m + m.adjoint()) / 2.0).eval();
}

// Haar-distributed unitary via QR of a Ginibre matrix with phase fixing.
inline Eigen::MatrixXcd random_unitary(int n, std::mt19937_64& gen) {
  const Eigen::MatrixXcd g = random_complex(n, gen);
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(g);
  Eigen::MatrixXcd q = qr.householderQ();
  const Eigen::MatrixXcd r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int i = 0; i < n; ++i) q.col(i) *= r(i, i) / std::abs(r(i, i));
  return q;
}

}  // namespace tripath::testutil
