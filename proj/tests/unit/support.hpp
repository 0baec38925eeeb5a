#pragma once

#include <random>

#include <doctest.h>

#include "clebsch/clebsch.hpp"

namespace testing {

// so(3): [E_i, E_j] = eps_ijk E_k.
inline clebsch::LieAlgebra so3() {
  std::vector<double> c(27, 0.0);
  auto set = [&](int k, int i, int j, double v) { c[(k * 3 + i) * 3 + j] = v; };
  set(2, 0, 1, 1);
  set(2, 1, 0, -1);
  set(0, 1, 2, 1);
  set(0, 2, 1, -1);
  set(1, 2, 0, 1);
  set(1, 0, 2, -1);
  return clebsch::LieAlgebra(3, c, {"x", "y", "z"});
}

// Heisenberg algebra: [E1, E2] = E3, center spanned by E3.
inline clebsch::LieAlgebra heisenberg() {
  std::vector<double> c(27, 0.0);
  c[(2 * 3 + 0) * 3 + 1] = 1;
  c[(2 * 3 + 1) * 3 + 0] = -1;
  return clebsch::LieAlgebra(3, c);
}

class Random {
 public:
  explicit Random(std::uint64_t seed) : rng_(seed) {}

  Eigen::VectorXd vector(Eigen::Index n, double scale = 1.0) {
    Eigen::VectorXd v(n);
    for (Eigen::Index i = 0; i < n; ++i) v[i] = scale * normal_(rng_);
    return v;
  }
  clebsch::PhasePoint phase(Eigen::Index n, double scale = 1.0) {
    return {vector(n, scale), vector(n, scale)};
  }
  double uniform(double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng_);
  }

 private:
  std::mt19937_64 rng_;
  std::normal_distribution<double> normal_{0.0, 1.0};
};

inline double max_abs(const Eigen::MatrixXd& m) { return m.cwiseAbs().maxCoeff(); }

}  // namespace testing
