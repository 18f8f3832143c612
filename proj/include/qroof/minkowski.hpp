#pragma once

#include <complex>

#include <Eigen/Core>

namespace qroof {

/// Point of R^{1,3}. For a qubit operator rho = (x0 I + x.sigma)/2 this is
/// (x0, x); states have x0 = 1 and lie inside the forward light cone.
struct FourVector {
  double x0 = 0.0;
  Eigen::Vector3d x = Eigen::Vector3d::Zero();

  FourVector() = default;
  FourVector(double x0_, const Eigen::Vector3d& x_) : x0(x0_), x(x_) {}
  FourVector(double x0_, double x1, double x2, double x3) : x0(x0_), x(x1, x2, x3) {}

  /// State with the given Bloch vector (x0 = 1).
  static FourVector state(const Eigen::Vector3d& bloch) { return {1.0, bloch}; }
  static FourVector from_coeffs(const Eigen::Vector4d& c) { return {c(0), c.tail<3>()}; }

  Eigen::Vector4d coeffs() const {
    Eigen::Vector4d c;
    c << x0, x;
    return c;
  }

  double operator[](int i) const { return i == 0 ? x0 : x(i - 1); }

  friend FourVector operator+(const FourVector& a, const FourVector& b) { return {a.x0 + b.x0, a.x + b.x}; }
  friend FourVector operator-(const FourVector& a, const FourVector& b) { return {a.x0 - b.x0, a.x - b.x}; }
  friend FourVector operator*(double s, const FourVector& a) { return {s * a.x0, s * a.x}; }
  friend bool operator==(const FourVector& a, const FourVector& b) { return a.x0 == b.x0 && a.x == b.x; }
};

/// Hermitian 2x2 matrix stored as its independent real data; the lower
/// off-diagonal entry is conj(m01) by construction.
struct Hermitian2 {
  double m00 = 0.0;
  double m11 = 0.0;
  std::complex<double> m01{0.0, 0.0};

  Eigen::Matrix2cd matrix() const;
  /// Takes the upper triangle; the caller is responsible for hermiticity.
  static Hermitian2 from_matrix(const Eigen::Matrix2cd& m);
  double det() const { return m00 * m11 - std::norm(m01); }
  double trace() const { return m00 + m11; }
};

enum class CausalClass { TimeLike, LightLike, SpaceLike };

const char* to_string(CausalClass c);

inline constexpr double kDefaultCausalTolerance = 1e-9;

/// Signature (+1, -1, -1, -1).
const Eigen::Matrix4d& minkowski_metric();

FourVector to_four_vector(const Hermitian2& m);
Hermitian2 from_four_vector(const FourVector& v);

/// a0 b0 - a.b
double minkowski_dot(const FourVector& a, const FourVector& b);

/// det of the matrix represented by v, i.e. v.v / 4.
double det_from_vector(const FourVector& v);

/// Classifies v by the Minkowski square of v / |v|_2. Throws OutOfRange for v = 0.
CausalClass causal_class(const FourVector& v, double tolerance = kDefaultCausalTolerance);

}  // namespace qroof
