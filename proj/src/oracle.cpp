#include "qroof/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <random>
#include <utility>
#include <vector>

#include <Eigen/Eigenvalues>

#include "qroof/error.hpp"
#include "qroof/nelder_mead.hpp"

namespace qroof {

void OracleConfig::validate() const {
  if (grid_resolution < 16) throw Error(ErrorCode::InvalidConfig, "grid_resolution must be >= 16");
  if (n_points < 2 || n_points > 8) throw Error(ErrorCode::InvalidConfig, "n_points must lie in [2, 8]");
  if (restarts < 1) throw Error(ErrorCode::InvalidConfig, "restarts must be >= 1");
  if (refine_iterations < 0) throw Error(ErrorCode::InvalidConfig, "refine_iterations must be >= 0");
}

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

Eigen::Vector3d direction(double theta, double phi) {
  return {std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi), std::cos(theta)};
}

// Every two-point decomposition of an interior Bloch point is a chord through it.
double chord_cost(const Eigen::Vector3d& x, const Eigen::Vector3d& u, const PureCost& cost) {
  const double b = x.dot(u);
  const double root = std::sqrt(std::max(0.0, b * b + 1.0 - x.squaredNorm()));
  const double s1 = -b + root;
  const double s2 = -b - root;
  const double span = s1 - s2;
  if (!(span > 0.0)) return cost(FourVector::state(x.normalized()));
  return (-s2 / span) * cost(FourVector::state(x + s1 * u)) + (s1 / span) * cost(FourVector::state(x + s2 * u));
}

double chord_search(const Eigen::Vector3d& x, const PureCost& cost, const OracleConfig& config) {
  const int n_phi = config.grid_resolution;
  const int n_theta = std::max(1, config.grid_resolution / 4);
  const double d_theta = 0.5 * std::numbers::pi / n_theta;
  const double d_phi = 2.0 * std::numbers::pi / n_phi;

  std::vector<std::pair<double, Eigen::Vector2d>> scored;
  scored.reserve(static_cast<std::size_t>(n_phi * n_theta));
  for (int i = 0; i < n_theta; ++i) {
    const double theta = (i + 0.5) * d_theta;
    for (int j = 0; j < n_phi; ++j) {
      const double phi = j * d_phi;
      scored.emplace_back(chord_cost(x, direction(theta, phi), cost), Eigen::Vector2d(theta, phi));
    }
  }
  const auto starts = std::min<std::size_t>(static_cast<std::size_t>(config.restarts), scored.size());
  std::partial_sort(scored.begin(), scored.begin() + static_cast<std::ptrdiff_t>(starts), scored.end(),
                    [](const auto& a, const auto& b) { return a.first < b.first; });

  double best = scored.front().first;
  if (config.refine_iterations == 0) return best;
  NelderMeadOptions options;
  options.max_iterations = config.refine_iterations;
  options.initial_step = d_theta;
  options.value_tolerance = 1e-16;
  options.size_tolerance = 1e-12;
  auto objective = [&](const Eigen::VectorXd& a) { return chord_cost(x, direction(a(0), a(1)), cost); };
  for (std::size_t k = 0; k < starts; ++k) {
    const Eigen::VectorXd start = scored[k].second;
    best = std::min(best, nelder_mead(objective, start, options).value);
  }
  return best;
}

// Decompositions with n elements: rho = sum_j |psi_j><psi_j| with
// psi_j = sum_k U_jk sqrt(l_k) e_k, U an n x 2 isometry and (l_k, e_k) the
// eigenpairs of rho. Any complex n x 2 matrix of full rank gives U by
// Gram-Schmidt, so the search is unconstrained.
class IsometrySearch {
 public:
  IsometrySearch(const FourVector& state, const PureCost& cost, int n) : cost_(cost), n_(n) {
    Eigen::Matrix2cd rho;
    rho << 0.5 * (state.x0 + state.x(2)), std::complex<double>(0.5 * state.x(0), -0.5 * state.x(1)),
        std::complex<double>(0.5 * state.x(0), 0.5 * state.x(1)), 0.5 * (state.x0 - state.x(2));
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix2cd> es(rho);
    for (int k = 0; k < 2; ++k) scaled_.col(k) = std::sqrt(std::max(0.0, es.eigenvalues()(k))) * es.eigenvectors().col(k);
  }

  double operator()(const Eigen::VectorXd& params) const {
    Eigen::MatrixXcd u(n_, 2);
    for (int j = 0; j < n_; ++j)
      for (int k = 0; k < 2; ++k) u(j, k) = {params(4 * j + 2 * k), params(4 * j + 2 * k + 1)};
    const double n0 = u.col(0).norm();
    if (!(n0 > 1e-12)) return std::numeric_limits<double>::max();
    u.col(0) /= n0;
    u.col(1) -= u.col(0).dot(u.col(1)) * u.col(0);
    const double n1 = u.col(1).norm();
    if (!(n1 > 1e-12)) return std::numeric_limits<double>::max();
    u.col(1) /= n1;

    double total = 0.0;
    for (int j = 0; j < n_; ++j) {
      const Eigen::Vector2cd psi = u(j, 0) * scaled_.col(0) + u(j, 1) * scaled_.col(1);
      const double weight = psi.squaredNorm();
      if (weight <= 0.0) continue;
      const Eigen::Vector2cd unit = psi / std::sqrt(weight);
      const std::complex<double> off = unit(0) * std::conj(unit(1));
      const FourVector pure{1.0, 2.0 * off.real(), -2.0 * off.imag(), std::norm(unit(0)) - std::norm(unit(1))};
      total += weight * cost_(pure);
    }
    return total;
  }

  int dimension() const { return 4 * n_; }

 private:
  const PureCost& cost_;
  int n_;
  Eigen::Matrix2cd scaled_ = Eigen::Matrix2cd::Zero();
};

double isometry_search(const FourVector& state, const PureCost& cost, const OracleConfig& config) {
  const IsometrySearch objective(state, cost, config.n_points);
  NelderMeadOptions options;
  options.max_iterations = config.refine_iterations * objective.dimension();
  options.initial_step = 0.3;
  options.value_tolerance = 1e-14;
  options.size_tolerance = 1e-10;

  double best = std::numeric_limits<double>::max();
  for (int r = 0; r < config.restarts; ++r) {
    std::mt19937_64 rng(splitmix64(config.seed ^ splitmix64(static_cast<std::uint64_t>(r))));
    std::normal_distribution<double> normal;
    Eigen::VectorXd start(objective.dimension());
    for (Eigen::Index i = 0; i < start.size(); ++i) start(i) = normal(rng);
    auto fn = [&](const Eigen::VectorXd& p) { return objective(p); };
    NelderMeadResult result = nelder_mead(fn, start, options);
    // One restart of the simplex at the optimum shakes off premature collapse.
    options.initial_step = 0.05;
    result = nelder_mead(fn, result.x, options);
    options.initial_step = 0.3;
    best = std::min(best, result.value);
  }
  return best;
}

}  // namespace

double brute_force_roof(const FourVector& state, const PureCost& cost, const OracleConfig& config) {
  config.validate();
  const double radius = state.x.norm();
  if (radius >= 1.0 - 1e-12) return cost(FourVector::state(state.x / radius));
  if (config.n_points == 2) return chord_search(state.x, cost, config);
  return isometry_search(state, cost, config);
}

double brute_force_concurrence(const AffineMap& phi, const FourVector& state, const OracleConfig& config) {
  config.validate();
  if (!is_positive(phi)) throw Error(ErrorCode::NotPositiveMap, "map does not send the Bloch ball into itself");
  if (!(std::abs(state.x0 - 1.0) <= 1e-9 && state.x.norm() <= 1.0 + 1e-9))
    throw Error(ErrorCode::InvalidState, "state must have x0 = 1 and |x| <= 1");
  const PureCost cost = [&phi](const FourVector& pure) {
    const Eigen::Vector3d image = phi.t + phi.lambda * pure.x;
    return std::sqrt(std::max(0.0, 1.0 - image.squaredNorm()));
  };
  return brute_force_roof(state, cost, config);
}

SufficiencyReport two_point_sufficiency(const AffineMap& phi, const FourVector& state, const OracleConfig& config) {
  SufficiencyReport report;
  OracleConfig c = config;
  c.n_points = 2;
  report.min2 = brute_force_concurrence(phi, state, c);
  c.n_points = 3;
  report.min3 = brute_force_concurrence(phi, state, c);
  c.n_points = 4;
  report.min4 = brute_force_concurrence(phi, state, c);
  report.sufficient = report.min2 <= report.min3 + kSufficiencyTolerance && report.min2 <= report.min4 + kSufficiencyTolerance;
  return report;
}

}  // namespace qroof
