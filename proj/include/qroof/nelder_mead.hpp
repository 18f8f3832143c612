#pragma once

#include <functional>

#include <Eigen/Core>

namespace qroof {

struct NelderMeadOptions {
  int max_iterations = 200;
  double initial_step = 0.1;
  // Stop once both the spread of simplex values and the simplex size fall below these.
  double value_tolerance = 1e-15;
  double size_tolerance = 1e-12;
};

struct NelderMeadResult {
  Eigen::VectorXd x;
  double value = 0.0;
  int iterations = 0;
  int evaluations = 0;
};

/// Derivative-free minimization (reflect/expand/contract/shrink simplex).
/// Deterministic for a deterministic objective.
NelderMeadResult nelder_mead(const std::function<double(const Eigen::VectorXd&)>& objective,
                             const Eigen::VectorXd& start, const NelderMeadOptions& options = {});

}  // namespace qroof
