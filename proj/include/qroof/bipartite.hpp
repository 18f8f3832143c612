#pragma once

#include <array>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "qroof/channel.hpp"
#include "qroof/minkowski.hpp"
#include "qroof/roof.hpp"

namespace qroof {

inline constexpr double kRankCutoff = 1e-9;

/// Density operator of a 2 x n system in the product basis, index a * n + b.
class BipartiteState {
 public:
  /// Validates hermiticity, PSD (1e-10) and unit trace (1e-12).
  static BipartiteState from_matrix(int n, const Eigen::MatrixXcd& matrix);
  /// Kets are normalized; weights must be non-negative and sum to 1.
  static BipartiteState from_mixture(int n, const std::vector<std::pair<double, Eigen::VectorXcd>>& mixture);

  int n() const { return n_; }
  const Eigen::MatrixXcd& matrix() const { return matrix_; }
  /// Eigenvalues above kRankCutoff times the largest one.
  int rank() const { return rank_; }
  /// Ascending.
  const Eigen::VectorXd& eigenvalues() const { return eigenvalues_; }
  const Eigen::MatrixXcd& eigenvectors() const { return eigenvectors_; }

 private:
  BipartiteState(int n, Eigen::MatrixXcd matrix);

  int n_ = 2;
  Eigen::MatrixXcd matrix_;
  Eigen::VectorXd eigenvalues_;
  Eigen::MatrixXcd eigenvectors_;
  int rank_ = 0;
};

/// Tr_B |u><v| for vectors of a 2 x n system.
Eigen::Matrix2cd partial_trace_b(const Eigen::VectorXcd& u, const Eigen::VectorXcd& v, int n);

/// The qubit map rho -> sum_ij rho_ij D_ij with D_ij = Tr_B |v_i><v_j|.
struct InducedMap {
  Eigen::MatrixXcd basis;  // 2n x 2, orthonormal columns v_1, v_2
  std::array<std::array<Eigen::Matrix2cd, 2>, 2> d;
  AffineMap map;
  /// The state written in the support basis, rho_ij = <v_i|rho|v_j>.
  FourVector coefficients;
};

/// Support basis from the two leading eigenvectors, each phased so that its
/// largest-magnitude component is real and positive. Throws RankTooHigh.
InducedMap induced_map(const BipartiteState& s);

/// Same construction for a caller-supplied orthonormal basis of the support.
InducedMap induce_from_basis(const BipartiteState& s, const Eigen::MatrixXcd& basis);

double concurrence_2xn(const BipartiteState& s, const RoofOptions& options = {});

/// Two-qubit concurrence max(0, l1 - l2 - l3 - l4) from the spin-flipped state.
double wootters_concurrence(const BipartiteState& s);

/// Binary entropy of (1 + sqrt(1 - c^2)) / 2, in bits.
double eof_from_concurrence(double c);

struct EofBound {
  double value = 0.0;
  /// The roof is flat (or the state pure), so the value is the entanglement of formation itself.
  bool exact = false;
  double concurrence = 0.0;
};

EofBound eof_bound(const BipartiteState& s, const RoofOptions& options = {});

}  // namespace qroof
