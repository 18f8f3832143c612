#pragma once

#include <Eigen/Core>

#include "qroof/minkowski.hpp"

namespace qroof {

/// Trace-preserving linear map on 2x2 Hermitian matrices in affine form:
/// (x0, x) -> (x0, x0 t + Lambda x).
struct AffineMap {
  Eigen::Matrix3d lambda = Eigen::Matrix3d::Identity();
  Eigen::Vector3d t = Eigen::Vector3d::Zero();

  /// 4x4 real matrix acting on FourVector::coeffs().
  Eigen::Matrix4d matrix() const;
};

/// Parameterization of the stochastic maps up to orthogonal transformations.
/// Ranges: alpha, beta in [0,1]; 0 <= omega1 <= omega2 <= omega3 = 1; |xi| = 1.
struct CanonicalParams {
  double alpha = 1.0;
  double beta = 1.0;
  Eigen::Vector3d omega = Eigen::Vector3d::Ones();
  Eigen::Vector3d xi = Eigen::Vector3d::UnitZ();

  double nu() const { return xi.cwiseProduct(omega).norm(); }
  /// Throws OutOfRange when a parameter leaves its range.
  void validate() const;
};

inline constexpr double kPositivityTolerance = 1e-9;
inline constexpr double kCompletePositivityTolerance = 1e-10;

FourVector apply(const AffineMap& phi, const FourVector& v);

AffineMap from_canonical(const CanonicalParams& p);

/// max over unit m of |t + Lambda m|: icosphere scan (subdivision 4) then
/// simplex refinement from the best few vertices.
double max_image_norm(const AffineMap& phi);

bool is_positive(const AffineMap& phi, double tolerance = kPositivityTolerance);

/// Choi matrix J = sum_ij E_ij (x) Phi(E_ij), E_ij the matrix units. The map
/// acts on E_ij through the complex-linear extension of the affine form.
/// Trace is 2 for trace-preserving maps; J >= 0 iff Phi is completely positive.
Eigen::Matrix4cd choi_matrix(const AffineMap& phi);

bool is_completely_positive(const AffineMap& phi, double tolerance = kCompletePositivityTolerance);

// Named channels.

AffineMap identity_map();

/// Lambda = diag(lambda), t = 0. Requires max |lambda_i| <= 1.
AffineMap unital(const Eigen::Vector3d& lambda);

/// Channels commuting with rotations about x3:
/// Lambda = diag(beta, beta, alpha + gamma - 1), t = (0, 0, alpha - gamma).
/// Requires alpha, gamma in [0,1] and a positive result.
AffineMap axial(double alpha, double beta, double gamma);

/// gamma = 1, beta = sqrt(alpha).
AffineMap amplitude_damping(double alpha);

/// alpha = gamma = 1.
AffineMap phase_damping(double beta);

/// alpha = gamma, beta = 2 alpha - 1, i.e. Lambda = (2 alpha - 1) I.
AffineMap depolarizing(double alpha);

}  // namespace qroof
