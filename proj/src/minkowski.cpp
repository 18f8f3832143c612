#include "qroof/minkowski.hpp"

#include "qroof/error.hpp"

namespace qroof {

Eigen::Matrix2cd Hermitian2::matrix() const {
  Eigen::Matrix2cd m;
  m << m00, m01, std::conj(m01), m11;
  return m;
}

Hermitian2 Hermitian2::from_matrix(const Eigen::Matrix2cd& m) {
  return {m(0, 0).real(), m(1, 1).real(), m(0, 1)};
}

const char* to_string(CausalClass c) {
  switch (c) {
    case CausalClass::TimeLike: return "TimeLike";
    case CausalClass::LightLike: return "LightLike";
    case CausalClass::SpaceLike: return "SpaceLike";
  }
  return "Unknown";
}

const Eigen::Matrix4d& minkowski_metric() {
  static const Eigen::Matrix4d eta = Eigen::Vector4d(1.0, -1.0, -1.0, -1.0).asDiagonal();
  return eta;
}

FourVector to_four_vector(const Hermitian2& m) {
  return {m.m00 + m.m11, 2.0 * m.m01.real(), -2.0 * m.m01.imag(), m.m00 - m.m11};
}

Hermitian2 from_four_vector(const FourVector& v) {
  return {0.5 * (v.x0 + v.x(2)), 0.5 * (v.x0 - v.x(2)), {0.5 * v.x(0), -0.5 * v.x(1)}};
}

double minkowski_dot(const FourVector& a, const FourVector& b) { return a.x0 * b.x0 - a.x.dot(b.x); }

double det_from_vector(const FourVector& v) { return 0.25 * minkowski_dot(v, v); }

CausalClass causal_class(const FourVector& v, double tolerance) {
  const double norm = v.coeffs().norm();
  if (norm == 0.0) throw Error(ErrorCode::OutOfRange, "causal class of the zero vector");
  const FourVector u = (1.0 / norm) * v;
  const double sq = minkowski_dot(u, u);
  if (sq > tolerance) return CausalClass::TimeLike;
  if (sq < -tolerance) return CausalClass::SpaceLike;
  return CausalClass::LightLike;
}

}  // namespace qroof
