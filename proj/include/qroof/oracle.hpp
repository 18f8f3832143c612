#pragma once

#include <cstdint>
#include <functional>

#include "qroof/channel.hpp"
#include "qroof/minkowski.hpp"

namespace qroof {

struct OracleConfig {
  /// Chord directions: grid_resolution azimuths times grid_resolution / 4 polar angles.
  int grid_resolution = 256;
  int refine_iterations = 200;
  int n_points = 2;
  int restarts = 16;
  std::uint64_t seed = 0x5eed2008;

  /// Throws InvalidConfig: grid_resolution >= 16, 2 <= n_points <= 8, restarts >= 1.
  void validate() const;
};

inline constexpr double kSufficiencyTolerance = 1e-3;

/// Cost of a normalized pure state (x0 = 1, |x| = 1).
using PureCost = std::function<double(const FourVector&)>;

/// Best decomposition found for sum_j p_j cost(pi_j) over n_points pure states.
/// Always an upper bound on the true minimum.
double brute_force_roof(const FourVector& state, const PureCost& cost, const OracleConfig& config);

/// brute_force_roof with cost 2 sqrt(det Phi(pi)). Throws NotPositiveMap, InvalidState, InvalidConfig.
double brute_force_concurrence(const AffineMap& phi, const FourVector& state, const OracleConfig& config = {});

struct SufficiencyReport {
  double min2 = 0.0;
  double min3 = 0.0;
  double min4 = 0.0;
  /// min2 <= min3 + tol and min2 <= min4 + tol.
  bool sufficient = false;
};

SufficiencyReport two_point_sufficiency(const AffineMap& phi, const FourVector& state, const OracleConfig& config = {});

}  // namespace qroof
