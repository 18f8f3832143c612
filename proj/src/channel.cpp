#include "qroof/channel.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <numbers>
#include <utility>
#include <vector>

#include <Eigen/Eigenvalues>

#include "qroof/error.hpp"
#include "qroof/nelder_mead.hpp"

namespace qroof {

Eigen::Matrix4d AffineMap::matrix() const {
  Eigen::Matrix4d m = Eigen::Matrix4d::Zero();
  m(0, 0) = 1.0;
  m.block<3, 1>(1, 0) = t;
  m.block<3, 3>(1, 1) = lambda;
  return m;
}

void CanonicalParams::validate() const {
  auto unit_interval = [](double v) { return v >= 0.0 && v <= 1.0; };
  if (!unit_interval(alpha)) throw Error(ErrorCode::OutOfRange, "alpha must lie in [0,1]");
  if (!unit_interval(beta)) throw Error(ErrorCode::OutOfRange, "beta must lie in [0,1]");
  if (!(omega(0) >= 0.0 && omega(0) <= omega(1) && omega(1) <= omega(2) && omega(2) == 1.0))
    throw Error(ErrorCode::OutOfRange, "omega must satisfy 0 <= w1 <= w2 <= w3 = 1");
  if (std::abs(xi.norm() - 1.0) > 1e-12) throw Error(ErrorCode::OutOfRange, "xi must be a unit vector");
}

FourVector apply(const AffineMap& phi, const FourVector& v) {
  return {v.x0, v.x0 * phi.t + phi.lambda * v.x};
}

AffineMap from_canonical(const CanonicalParams& p) {
  p.validate();
  const double nu = p.nu();
  AffineMap phi;
  phi.lambda.setZero();
  for (int i = 0; i < 3; ++i) {
    const double w = p.omega(i);
    phi.t(i) = p.beta * p.xi(i) * (1.0 - p.alpha * w * w);
    phi.lambda(i, i) = p.alpha * p.beta * nu * w;
  }
  return phi;
}

namespace {

std::vector<Eigen::Vector3d> build_icosphere(int subdivisions) {
  const double g = (1.0 + std::sqrt(5.0)) / 2.0;
  std::vector<Eigen::Vector3d> vertices = {
      {-1, g, 0}, {1, g, 0}, {-1, -g, 0}, {1, -g, 0}, {0, -1, g}, {0, 1, g},
      {0, -1, -g}, {0, 1, -g}, {g, 0, -1}, {g, 0, 1}, {-g, 0, -1}, {-g, 0, 1}};
  for (auto& v : vertices) v.normalize();
  std::vector<std::array<int, 3>> faces = {
      {0, 11, 5}, {0, 5, 1}, {0, 1, 7}, {0, 7, 10}, {0, 10, 11}, {1, 5, 9}, {5, 11, 4},
      {11, 10, 2}, {10, 7, 6}, {7, 1, 8}, {3, 9, 4}, {3, 4, 2}, {3, 2, 6}, {3, 6, 8},
      {3, 8, 9}, {4, 9, 5}, {2, 4, 11}, {6, 2, 10}, {8, 6, 7}, {9, 8, 1}};

  for (int level = 0; level < subdivisions; ++level) {
    std::map<std::pair<int, int>, int> midpoints;
    auto midpoint = [&](int a, int b) {
      const auto key = std::minmax(a, b);
      if (auto it = midpoints.find(key); it != midpoints.end()) return it->second;
      vertices.push_back((vertices[static_cast<std::size_t>(a)] + vertices[static_cast<std::size_t>(b)]).normalized());
      const int idx = static_cast<int>(vertices.size()) - 1;
      midpoints.emplace(key, idx);
      return idx;
    };
    std::vector<std::array<int, 3>> refined;
    refined.reserve(faces.size() * 4);
    for (const auto& f : faces) {
      const int ab = midpoint(f[0], f[1]);
      const int bc = midpoint(f[1], f[2]);
      const int ca = midpoint(f[2], f[0]);
      refined.push_back({f[0], ab, ca});
      refined.push_back({f[1], bc, ab});
      refined.push_back({f[2], ca, bc});
      refined.push_back({ab, bc, ca});
    }
    faces = std::move(refined);
  }
  return vertices;
}

const std::vector<Eigen::Vector3d>& icosphere() {
  static const std::vector<Eigen::Vector3d> vertices = build_icosphere(4);
  return vertices;
}

Eigen::Vector3d spherical(double theta, double phi) {
  return {std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi), std::cos(theta)};
}

constexpr int kRefinementStarts = 4;

}  // namespace

double max_image_norm(const AffineMap& phi) {
  const auto& grid = icosphere();
  std::vector<std::pair<double, std::size_t>> scored;
  scored.reserve(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) scored.emplace_back((phi.t + phi.lambda * grid[i]).squaredNorm(), i);
  const auto starts = std::min<std::size_t>(kRefinementStarts, scored.size());
  std::partial_sort(scored.begin(), scored.begin() + static_cast<std::ptrdiff_t>(starts), scored.end(),
                    [](const auto& a, const auto& b) { return a.first > b.first; });

  double best = scored.front().first;
  auto objective = [&](const Eigen::VectorXd& angles) {
    return -(phi.t + phi.lambda * spherical(angles(0), angles(1))).squaredNorm();
  };
  NelderMeadOptions options;
  options.initial_step = 0.05;  // about the icosphere vertex spacing
  options.max_iterations = 400;
  options.value_tolerance = 1e-18;
  options.size_tolerance = 1e-12;
  for (std::size_t k = 0; k < starts; ++k) {
    const Eigen::Vector3d& m = grid[scored[k].second];
    Eigen::VectorXd start(2);
    start << std::acos(std::clamp(m(2), -1.0, 1.0)), std::atan2(m(1), m(0));
    best = std::max(best, -nelder_mead(objective, start, options).value);
  }
  return std::sqrt(best);
}

bool is_positive(const AffineMap& phi, double tolerance) { return max_image_norm(phi) <= 1.0 + tolerance; }

Eigen::Matrix4cd choi_matrix(const AffineMap& phi) {
  using cd = std::complex<double>;
  const cd i{0.0, 1.0};
  // Pauli coordinates of the matrix units: E = (y0 I + y.sigma) / 2.
  const std::array<std::array<Eigen::Vector4cd, 2>, 2> units = {{
      {Eigen::Vector4cd(1, 0, 0, 1), Eigen::Vector4cd(0, 1, i, 0)},
      {Eigen::Vector4cd(0, 1, -i, 0), Eigen::Vector4cd(1, 0, 0, -1)},
  }};
  const Eigen::Matrix4cd action = phi.matrix().cast<cd>();

  Eigen::Matrix4cd choi = Eigen::Matrix4cd::Zero();
  for (int r = 0; r < 2; ++r) {
    for (int c = 0; c < 2; ++c) {
      const Eigen::Vector4cd y = action * units[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)];
      Eigen::Matrix2cd image;
      image << y(0) + y(3), y(1) - i * y(2), y(1) + i * y(2), y(0) - y(3);
      choi.block<2, 2>(2 * r, 2 * c) = 0.5 * image;
    }
  }
  return choi;
}

bool is_completely_positive(const AffineMap& phi, double tolerance) {
  Eigen::Matrix4cd choi = choi_matrix(phi);
  choi = 0.5 * (choi + choi.adjoint()).eval();
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> solver(choi, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff() >= -tolerance;
}

AffineMap identity_map() { return {}; }

AffineMap unital(const Eigen::Vector3d& lambda) {
  if (!(lambda.cwiseAbs().maxCoeff() <= 1.0)) throw Error(ErrorCode::OutOfRange, "unital map needs max |lambda_i| <= 1");
  AffineMap phi;
  phi.lambda = lambda.asDiagonal();
  phi.t.setZero();
  return phi;
}

AffineMap axial(double alpha, double beta, double gamma) {
  if (!(alpha >= 0.0 && alpha <= 1.0 && gamma >= 0.0 && gamma <= 1.0))
    throw Error(ErrorCode::OutOfRange, "axial map needs alpha, gamma in [0,1]");
  if (!std::isfinite(beta)) throw Error(ErrorCode::OutOfRange, "axial map needs finite beta");
  AffineMap phi;
  phi.lambda = Eigen::Vector3d(beta, beta, alpha + gamma - 1.0).asDiagonal();
  phi.t = Eigen::Vector3d(0.0, 0.0, alpha - gamma);
  if (!is_positive(phi)) throw Error(ErrorCode::NotPositiveMap, "axial parameters do not give a positive map");
  return phi;
}

AffineMap amplitude_damping(double alpha) {
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw Error(ErrorCode::OutOfRange, "amplitude damping needs alpha in [0,1]");
  return axial(alpha, std::sqrt(alpha), 1.0);
}

AffineMap phase_damping(double beta) {
  if (!(std::abs(beta) <= 1.0)) throw Error(ErrorCode::OutOfRange, "phase damping needs |beta| <= 1");
  return axial(1.0, beta, 1.0);
}

AffineMap depolarizing(double alpha) {
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw Error(ErrorCode::OutOfRange, "depolarizing needs alpha in [0,1]");
  return axial(alpha, 2.0 * alpha - 1.0, alpha);
}

}  // namespace qroof
