#include "qroof/bipartite.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>

#include "qroof/error.hpp"

namespace qroof {

namespace {

void check_dimension(int n, Eigen::Index rows, Eigen::Index cols) {
  if (n < 1) throw Error(ErrorCode::WrongDims, "second factor must have dimension >= 1");
  if (rows != 2 * n || cols != 2 * n) throw Error(ErrorCode::WrongDims, "matrix size does not match dims (2, n)");
}

}  // namespace

BipartiteState::BipartiteState(int n, Eigen::MatrixXcd matrix) : n_(n), matrix_(std::move(matrix)) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(matrix_);
  eigenvalues_ = solver.eigenvalues();
  eigenvectors_ = solver.eigenvectors();
  const double largest = eigenvalues_.maxCoeff();
  rank_ = static_cast<int>((eigenvalues_.array() > kRankCutoff * largest).count());
}

BipartiteState BipartiteState::from_matrix(int n, const Eigen::MatrixXcd& matrix) {
  check_dimension(n, matrix.rows(), matrix.cols());
  if ((matrix - matrix.adjoint()).cwiseAbs().maxCoeff() > 1e-12)
    throw Error(ErrorCode::InvalidState, "bipartite matrix is not Hermitian");
  const Eigen::MatrixXcd herm = 0.5 * (matrix + matrix.adjoint());
  if (std::abs(herm.trace().real() - 1.0) > 1e-12) throw Error(ErrorCode::InvalidState, "bipartite trace must be 1");
  BipartiteState s(n, herm);
  if (s.eigenvalues_(0) < -1e-10) throw Error(ErrorCode::InvalidState, "bipartite matrix is not positive semidefinite");
  return s;
}

BipartiteState BipartiteState::from_mixture(int n, const std::vector<std::pair<double, Eigen::VectorXcd>>& mixture) {
  if (n < 1) throw Error(ErrorCode::WrongDims, "second factor must have dimension >= 1");
  if (mixture.empty()) throw Error(ErrorCode::InvalidState, "empty mixture");
  Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(2 * n, 2 * n);
  double total = 0.0;
  for (const auto& [weight, ket] : mixture) {
    if (ket.size() != 2 * n) throw Error(ErrorCode::WrongDims, "ket length does not match dims (2, n)");
    if (!(weight >= 0.0)) throw Error(ErrorCode::InvalidState, "mixture weights must be non-negative");
    const double norm = ket.norm();
    if (!(norm > 0.0)) throw Error(ErrorCode::InvalidState, "zero ket in mixture");
    const Eigen::VectorXcd unit = ket / norm;
    rho += weight * unit * unit.adjoint();
    total += weight;
  }
  if (std::abs(total - 1.0) > 1e-12) throw Error(ErrorCode::InvalidState, "mixture weights must sum to 1");
  return from_matrix(n, 0.5 * (rho + rho.adjoint()));
}

Eigen::Matrix2cd partial_trace_b(const Eigen::VectorXcd& u, const Eigen::VectorXcd& v, int n) {
  Eigen::Matrix2cd out = Eigen::Matrix2cd::Zero();
  for (int a = 0; a < 2; ++a)
    for (int a2 = 0; a2 < 2; ++a2)
      for (int b = 0; b < n; ++b) out(a, a2) += u(a * n + b) * std::conj(v(a2 * n + b));
  return out;
}

InducedMap induce_from_basis(const BipartiteState& s, const Eigen::MatrixXcd& basis) {
  if (basis.rows() != 2 * s.n() || basis.cols() != 2) throw Error(ErrorCode::WrongDims, "support basis must be 2n x 2");
  InducedMap out;
  out.basis = basis;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      out.d[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = partial_trace_b(basis.col(i), basis.col(j), s.n());

  auto image = [&](const Eigen::Matrix2cd& coeff) {
    Eigen::Matrix2cd result = Eigen::Matrix2cd::Zero();
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) result += coeff(i, j) * out.d[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
    return to_four_vector(Hermitian2::from_matrix(result));
  };
  const FourVector shift = image(from_four_vector({1.0, 0.0, 0.0, 0.0}).matrix());
  out.map.t = shift.x;
  for (int k = 0; k < 3; ++k) {
    FourVector axis{0.0, 0.0, 0.0, 0.0};
    axis.x(k) = 1.0;
    out.map.lambda.col(k) = image(from_four_vector(axis).matrix()).x;
  }

  const Eigen::Matrix2cd coeff = basis.adjoint() * s.matrix() * basis;
  const FourVector raw = to_four_vector(Hermitian2::from_matrix(coeff));
  out.coefficients = FourVector::state(raw.x / raw.x0);
  return out;
}

InducedMap induced_map(const BipartiteState& s) {
  if (s.rank() > 2) throw Error(ErrorCode::RankTooHigh, "state has rank " + std::to_string(s.rank()));
  const Eigen::Index dim = s.matrix().rows();
  Eigen::MatrixXcd basis(dim, 2);
  basis.col(0) = s.eigenvectors().col(dim - 1);
  basis.col(1) = s.eigenvectors().col(dim - 2);
  for (int k = 0; k < 2; ++k) {
    Eigen::Index lead = 0;
    basis.col(k).cwiseAbs().maxCoeff(&lead);
    const std::complex<double> z = basis(lead, k);
    basis.col(k) *= std::conj(z) / std::abs(z);
    basis(lead, k) = std::abs(basis(lead, k));
  }
  return induce_from_basis(s, basis);
}

namespace {

double pure_concurrence(const BipartiteState& s) {
  const Eigen::VectorXcd psi = s.eigenvectors().col(s.matrix().rows() - 1);
  const Eigen::Matrix2cd marginal = partial_trace_b(psi, psi, s.n());
  const double det = (marginal(0, 0) * marginal(1, 1) - marginal(0, 1) * marginal(1, 0)).real();
  return 2.0 * std::sqrt(std::max(0.0, det));
}

}  // namespace

double concurrence_2xn(const BipartiteState& s, const RoofOptions& options) {
  if (s.rank() > 2) throw Error(ErrorCode::RankTooHigh, "state has rank " + std::to_string(s.rank()));
  if (s.rank() == 1) return pure_concurrence(s);
  const InducedMap induced = induced_map(s);
  return concurrence(induced.map, induced.coefficients, options);
}

double wootters_concurrence(const BipartiteState& s) {
  if (s.n() != 2) throw Error(ErrorCode::WrongDims, "Wootters formula needs a 2 x 2 system");
  Eigen::Matrix4cd flip = Eigen::Matrix4cd::Zero();
  flip(0, 3) = -1.0;
  flip(1, 2) = 1.0;
  flip(2, 1) = 1.0;
  flip(3, 0) = -1.0;
  const Eigen::Matrix4cd rho = s.matrix();
  const Eigen::Matrix4cd tilde = flip * rho.conjugate() * flip;

  Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> es(rho);
  const Eigen::Vector4d roots = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  const Eigen::Matrix4cd sqrt_rho = es.eigenvectors() * roots.asDiagonal() * es.eigenvectors().adjoint();
  Eigen::Matrix4cd product = sqrt_rho * tilde * sqrt_rho;
  product = 0.5 * (product + product.adjoint()).eval();
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> ps(product, Eigen::EigenvaluesOnly);
  Eigen::Vector4d l = ps.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  std::sort(l.data(), l.data() + 4, std::greater<>());
  return std::max(0.0, l(0) - l(1) - l(2) - l(3));
}

double eof_from_concurrence(double c) {
  if (!(c >= -1e-12 && c <= 1.0 + 1e-12)) throw Error(ErrorCode::OutOfRange, "concurrence must lie in [0,1]");
  c = std::clamp(c, 0.0, 1.0);
  const double x = 0.5 * (1.0 + std::sqrt(1.0 - c * c));
  auto term = [](double p) { return p > 0.0 ? -p * std::log2(p) : 0.0; };
  return term(x) + term(1.0 - x);
}

EofBound eof_bound(const BipartiteState& s, const RoofOptions& options) {
  if (s.rank() > 2) throw Error(ErrorCode::RankTooHigh, "state has rank " + std::to_string(s.rank()));
  EofBound out;
  if (s.rank() == 1) {
    out.concurrence = pure_concurrence(s);
    out.exact = true;
  } else {
    const InducedMap induced = induced_map(s);
    const RoofSolution roof = solve_w0(induced.map, options);
    out.concurrence = concurrence(roof, induced.coefficients);
    out.exact = roof.flat;
  }
  out.value = eof_from_concurrence(std::min(1.0, out.concurrence));
  return out;
}

}  // namespace qroof
