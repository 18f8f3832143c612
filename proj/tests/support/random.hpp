#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <random>

#include <Eigen/Dense>

#include "qroof/bipartite.hpp"
#include "qroof/channel.hpp"
#include "qroof/minkowski.hpp"

namespace qroof::testing {

class Random {
 public:
  explicit Random(std::uint64_t seed) : rng_(seed) {}

  double uniform(double lo = 0.0, double hi = 1.0) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
  double normal() { return std::normal_distribution<double>()(rng_); }

  Eigen::Vector3d unit_vector() {
    Eigen::Vector3d v;
    do {
      v = Eigen::Vector3d(normal(), normal(), normal());
    } while (v.norm() < 1e-8);
    return v.normalized();
  }

  Eigen::Vector3d ball_point() { return std::cbrt(uniform()) * unit_vector(); }

  FourVector mixed_state() { return FourVector::state(ball_point()); }
  FourVector pure_state() { return FourVector::state(unit_vector()); }

  Eigen::Matrix3d rotation() {
    Eigen::Matrix3d m;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) m(i, j) = normal();
    Eigen::HouseholderQR<Eigen::Matrix3d> qr(m);
    Eigen::Matrix3d q = qr.householderQ();
    if (q.determinant() < 0) q.col(0) *= -1.0;
    return q;
  }

  CanonicalParams canonical() {
    CanonicalParams p;
    p.alpha = uniform();
    p.beta = uniform();
    double a = uniform();
    double b = uniform();
    if (a > b) std::swap(a, b);
    p.omega = Eigen::Vector3d(a, b, 1.0);
    p.xi = unit_vector();
    return p;
  }

  CanonicalParams boundary_canonical() {
    CanonicalParams p = canonical();
    p.beta = 1.0;
    return p;
  }

  /// O1 Phi O2 for a canonical Phi and random rotations; stays positive.
  AffineMap rotated(const AffineMap& phi) {
    const Eigen::Matrix3d r1 = rotation();
    const Eigen::Matrix3d r2 = rotation();
    return {r1 * phi.lambda * r2, r1 * phi.t};
  }

  AffineMap channel() { return rotated(from_canonical(canonical())); }

  Eigen::Vector3d unital_lambda() { return {uniform(-1, 1), uniform(-1, 1), uniform(-1, 1)}; }

  Eigen::VectorXcd ket(int dim) {
    Eigen::VectorXcd v(dim);
    for (int i = 0; i < dim; ++i) v(i) = {normal(), normal()};
    return v.normalized();
  }

  BipartiteState rank2_state(int n) {
    const double p = uniform(0.05, 0.95);
    return BipartiteState::from_mixture(n, {{p, ket(2 * n)}, {1.0 - p, ket(2 * n)}});
  }

  Eigen::Matrix2cd unitary2() {
    Eigen::Matrix2cd m;
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) m(i, j) = {normal(), normal()};
    Eigen::HouseholderQR<Eigen::Matrix2cd> qr(m);
    return qr.householderQ();
  }

  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

}  // namespace qroof::testing
