#pragma once

#include <limits>
#include <vector>

#include <Eigen/Core>

#include "qroof/channel.hpp"
#include "qroof/minkowski.hpp"

namespace qroof {

inline constexpr double kDefaultPsdTolerance = 1e-10;

struct RoofOptions {
  /// Relative to the Frobenius norm of Q_0.
  double tol_psd = kDefaultPsdTolerance;
  double tol_causal = kDefaultCausalTolerance;
  /// Skip the sphere search when the caller already knows the map is positive.
  bool check_positivity = true;
};

/// q_w(x) = Phi(x).Phi(x) - w x.x = 4 (det Phi(rho) - w det rho), with
/// matrix Q_w = Q_0 - w eta.
struct QuadraticForm {
  Eigen::Matrix4d q = Eigen::Matrix4d::Zero();
  double w = 0.0;

  double operator()(const FourVector& x) const { return x.coeffs().dot(q * x.coeffs()); }
};

QuadraticForm build_q(const AffineMap& phi, double w);

/// Real eigenvalues of eta Q_0, ascending. These are the w where Q_w is singular.
std::vector<double> pencil_eigenvalues(const AffineMap& phi);

struct PsdInterval {
  double lower = 0.0;
  double upper = 0.0;
};

struct RoofSolution {
  double w0 = 0.0;
  PsdInterval psd_interval;
  std::vector<FourVector> kernel_basis;
  bool flat = false;
  /// Kernel representative: n0 = 0 and unit spatial part when flat, otherwise n0 = 1 (the apex).
  FourVector n;
  /// Q_{w0}.
  Eigen::Matrix4d q = Eigen::Matrix4d::Zero();
  /// Frobenius norm of Q_0; tolerances are taken relative to it.
  double scale = 0.0;
  /// Q_{w0} = 0, so the concurrence vanishes identically.
  bool degenerate = false;
  /// True when the eigenvalue-bisection route produced the solution.
  bool used_fallback = false;

  double evaluate(const FourVector& x) const { return x.coeffs().dot(q * x.coeffs()); }
};

/// Finds w0 = min{w : Q_w >= 0}, the kernel of Q_{w0} and whether the roof is flat.
/// Throws NotPositiveMap, NoPsdWindow or AmbiguousW0.
RoofSolution solve_w0(const AffineMap& phi, const RoofOptions& options = {});

/// PSD window of Q_w located by bisection on the smallest eigenvalue of Q_w,
/// which is concave in w. Independent of the pencil and of solve_w0.
PsdInterval psd_interval_by_bisection(const AffineMap& phi, double tol_psd = kDefaultPsdTolerance);

/// Throws InvalidState unless x0 = 1 and |x| <= 1 (both within 1e-9).
void validate_state(const FourVector& state);

double concurrence(const AffineMap& phi, const FourVector& state, const RoofOptions& options = {});
double concurrence(const RoofSolution& solution, const FourVector& state);

/// 2 sqrt(det Phi(pi)) for a pure state pi; no roof involved.
double pure_state_concurrence(const AffineMap& phi, const FourVector& pure);

/// Closed form for diagonal unital maps, w = max lambda_i^2.
double unital_concurrence_closed_form(const Eigen::Vector3d& lambda, const FourVector& state);

struct AxialClosedForm {
  double w0 = 0.0;
  bool flat = false;
  double beta_c_squared = 0.0;
  /// Apex height of the kernel vector (1, 0, 0, z0); infinite when the x0-x3 coupling vanishes.
  double z0 = std::numeric_limits<double>::infinity();
};

AxialClosedForm axial_w0_closed_form(double alpha, double beta, double gamma);

/// Upper-triangular R with R R^T = Q_{alpha nu^2} for a boundary map (beta = 1).
Eigen::Matrix4d cholesky_boundary_check(const CanonicalParams& p);

/// Light-like kernel vector (1, xi_i omega_i / nu) of a boundary map. Requires nu > 0.
FourVector boundary_kernel_vector(const CanonicalParams& p);

struct Decomposition {
  struct Component {
    double weight = 0.0;
    FourVector pure;
  };
  std::vector<Component> components;
  /// Set when Q_{w0} = 0: every chord is optimal and an arbitrary one was returned.
  bool degenerate_leaf = false;

  FourVector reconstruct() const;
};

/// Two pure states on the leaf through `state`: along n when flat, towards the apex n otherwise.
Decomposition optimal_decomposition(const AffineMap& phi, const FourVector& state, const RoofOptions& options = {});
Decomposition optimal_decomposition(const RoofSolution& solution, const FourVector& state);

}  // namespace qroof
