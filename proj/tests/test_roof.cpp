#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include <Eigen/Eigenvalues>

#include "qroof/error.hpp"
#include "qroof/roof.hpp"
#include "support/random.hpp"

using namespace qroof;
using doctest::Approx;

namespace {

double max_abs(const Eigen::Matrix4d& m) { return m.cwiseAbs().maxCoeff(); }

double det_of(const FourVector& v) { return det_from_vector(v); }

}  // namespace

TEST_CASE("build_q examples") {
  for (double w : {-0.5, 0.0, 0.3, 1.0, 2.0}) {
    const Eigen::Matrix4d id = build_q(identity_map(), w).q;
    CHECK(max_abs(id - Eigen::Vector4d(1 - w, w - 1, w - 1, w - 1).asDiagonal().toDenseMatrix()) == 0.0);

    AffineMap zero;
    zero.lambda.setZero();
    CHECK(max_abs(build_q(zero, w).q - Eigen::Vector4d(1 - w, w, w, w).asDiagonal().toDenseMatrix()) == 0.0);

    const Eigen::Matrix4d u = build_q(unital({0.2, 0.5, 0.8}), w).q;
    CHECK(max_abs(u - Eigen::Vector4d(1 - w, w - 0.04, w - 0.25, w - 0.64).asDiagonal().toDenseMatrix()) <= 1e-15);
  }

  testing::Random rnd(11);
  const AffineMap phi = rnd.channel();
  const Eigen::Matrix4d q = build_q(phi, 0.37).q;
  CHECK(q(0, 0) == Approx(1 - phi.t.squaredNorm() - 0.37).epsilon(1e-15));
  const Eigen::RowVector3d cross = -phi.t.transpose() * phi.lambda;
  CHECK((q.block<1, 3>(0, 1) - cross).norm() <= 1e-15);
  CHECK((q.block<3, 3>(1, 1) - (0.37 * Eigen::Matrix3d::Identity() - phi.lambda.transpose() * phi.lambda)).norm() <=
        1e-15);
  CHECK(max_abs(q - q.transpose()) <= 1e-14);
}

TEST_CASE("quadratic form matches determinants") {
  testing::Random rnd(12);
  double worst = 0.0;
  for (int i = 0; i < 2000; ++i) {
    const AffineMap phi = rnd.channel();
    const double w = rnd.uniform(-1, 2);
    const QuadraticForm q = build_q(phi, w);
    const FourVector x{rnd.uniform(-1, 1), rnd.uniform(-1, 1), rnd.uniform(-1, 1), rnd.uniform(-1, 1)};
    worst = std::max(worst, std::abs(q(x) - 4 * (det_of(apply(phi, x)) - w * det_of(x))));
    // degree-2 homogeneity
    const double s = rnd.uniform(-3, 3);
    const double scaled = q(s * x);
    CHECK(std::abs(scaled - s * s * q(x)) <= 1e-13 * std::max(1.0, std::abs(scaled)));
  }
  CHECK(worst <= 1e-12);
}

TEST_CASE("solve_w0: identity") {
  const RoofSolution s = solve_w0(identity_map());
  CHECK(s.w0 == Approx(1.0).epsilon(1e-12));
  CHECK(s.psd_interval.lower == Approx(1.0).epsilon(1e-9));
  CHECK(s.psd_interval.upper == Approx(1.0).epsilon(1e-9));
  CHECK(s.kernel_basis.size() == 4);
  CHECK(s.flat);
  CHECK(s.degenerate);
  CHECK(max_abs(s.q) <= 1e-12);
}

TEST_CASE("solve_w0: unital 0.2 0.5 0.8") {
  const RoofSolution s = solve_w0(unital({0.2, 0.5, 0.8}));
  CHECK(s.w0 == Approx(0.64).epsilon(1e-14));
  CHECK(s.flat);
  CHECK_FALSE(s.degenerate);
  CHECK(s.n.x0 == 0.0);
  CHECK(std::abs(std::abs(s.n.x(2)) - 1.0) <= 1e-12);
  CHECK(s.psd_interval.lower == Approx(0.64).epsilon(1e-12));
  CHECK(s.psd_interval.upper == Approx(1.0).epsilon(1e-9));
}

TEST_CASE("solve_w0: axial 0.9 / 0.1 / 0.3") {
  const double beta_c2 = 0.06504545830264968;
  const double z0 = 4.7912878474779195;
  const AxialClosedForm closed = axial_w0_closed_form(0.9, 0.1, 0.3);
  CHECK(closed.beta_c_squared == Approx(beta_c2).epsilon(1e-14));
  CHECK(closed.w0 == Approx(beta_c2).epsilon(1e-14));
  CHECK_FALSE(closed.flat);
  CHECK(closed.z0 == Approx(z0).epsilon(1e-13));

  const RoofSolution s = solve_w0(axial(0.9, 0.1, 0.3));
  CHECK(s.w0 == Approx(beta_c2).epsilon(1e-12));
  CHECK_FALSE(s.flat);
  CHECK(s.n.x0 == 1.0);
  CHECK(s.n.x(2) == Approx(z0).epsilon(1e-9));
  CHECK(std::hypot(s.n.x(0), s.n.x(1)) <= 1e-9);

  const std::vector<double> pencil = pencil_eigenvalues(axial(0.9, 0.1, 0.3));
  bool found = false;
  for (double w : pencil) found = found || std::abs(w - beta_c2) <= 1e-8;
  CHECK(found);
}

TEST_CASE("axial closed form examples") {
  const AxialClosedForm pd = axial_w0_closed_form(1.0, 0.4, 1.0);
  CHECK(pd.beta_c_squared == Approx(1.0).epsilon(1e-15));
  CHECK(pd.w0 == Approx(1.0).epsilon(1e-15));
  CHECK(pd.flat);

  for (double alpha : {0.25, 0.5, 0.9}) {
    const AxialClosedForm ad = axial_w0_closed_form(alpha, std::sqrt(alpha), 1.0);
    CHECK(ad.beta_c_squared == Approx(alpha).epsilon(1e-14));
    CHECK(ad.w0 == Approx(alpha).epsilon(1e-14));
    CHECK(ad.flat);
  }
  CHECK_THROWS_AS(axial_w0_closed_form(1.1, 0.1, 0.5), Error);
}

TEST_CASE("concurrence examples") {
  testing::Random rnd(13);
  AffineMap zero;
  zero.lambda.setZero();
  for (int i = 0; i < 20; ++i) {
    const FourVector x = rnd.mixed_state();
    CHECK(concurrence(identity_map(), x) <= 1e-6);
    CHECK(concurrence(zero, x) == Approx(1.0).epsilon(1e-12));
  }
  for (double alpha : {0.25, 0.5, 0.9}) {
    const AffineMap ad = amplitude_damping(alpha);
    for (int i = 0; i < 20; ++i) {
      const FourVector x = rnd.mixed_state();
      const double rho00 = (x.x0 + x.x(2)) / 2;
      CHECK(concurrence(ad, x) == Approx(2 * std::sqrt(alpha * (1 - alpha)) * rho00).epsilon(1e-9));
    }
  }
  CHECK(concurrence(phase_damping(0.6), FourVector::state({0.6, 0, 0.2})) == Approx(0.48).epsilon(1e-12));
  CHECK(concurrence(amplitude_damping(0.5), FourVector::state({0, 0, 0})) == Approx(0.5).epsilon(1e-12));

  CHECK_THROWS_AS(concurrence(identity_map(), FourVector(2, 0, 0, 0)), Error);
  CHECK_THROWS_AS(concurrence(identity_map(), FourVector::state({0.8, 0.8, 0})), Error);
  AffineMap bad;
  bad.lambda = 0.5 * Eigen::Matrix3d::Identity();
  bad.t = Eigen::Vector3d(0, 0, 0.6);
  try {
    concurrence(bad, FourVector::state({0, 0, 0}));
    FAIL("expected NotPositiveMap");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotPositiveMap);
  }
}

TEST_CASE("unital closed form") {
  testing::Random rnd(14);
  for (int i = 0; i < 50; ++i) {
    const FourVector x = rnd.mixed_state();
    CHECK(unital_concurrence_closed_form({1, 1, 1}, x) == 0.0);
    CHECK(unital_concurrence_closed_form({0, 0, 0}, x) == Approx(1.0).epsilon(1e-15));
    const double beta = rnd.uniform();
    CHECK(unital_concurrence_closed_form({beta, beta, 1}, x) ==
          Approx(std::sqrt(1 - beta * beta) * x.x.head<2>().norm()).epsilon(1e-12));
  }
  CHECK_THROWS_AS(unital_concurrence_closed_form({1.2, 0, 0}, FourVector::state({0, 0, 0})), Error);
}

TEST_CASE("boundary Cholesky factor") {
  CanonicalParams p;
  p.beta = 1;
  p.alpha = 1;
  p.omega = Eigen::Vector3d::Ones();
  p.xi = Eigen::Vector3d::UnitZ();
  CHECK(max_abs(cholesky_boundary_check(p)) <= 1e-15);

  p.alpha = 0;
  CHECK(max_abs(cholesky_boundary_check(p)) <= 1e-15);

  p.alpha = 0.5;
  p.omega = Eigen::Vector3d(0.6, 0.8, 1.0);
  const Eigen::Matrix4d r = cholesky_boundary_check(p);
  const AffineMap phi = from_canonical(p);
  CHECK(p.nu() == Approx(1.0).epsilon(1e-15));
  CHECK(max_abs(r * r.transpose() - build_q(phi, 0.5).q) <= 1e-12);
  CHECK(r.isUpperTriangular(0.0));
  const FourVector n = boundary_kernel_vector(p);
  CHECK((build_q(phi, 0.5).q * n.coeffs()).norm() <= 1e-12);
  CHECK(minkowski_dot(n, n) == Approx(0.0).epsilon(1e-12));

  p.beta = 0.5;
  CHECK_THROWS_AS(cholesky_boundary_check(p), Error);

  testing::Random rnd(15);
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const CanonicalParams b = rnd.boundary_canonical();
    const Eigen::Matrix4d rb = cholesky_boundary_check(b);
    const double w = b.alpha * b.nu() * b.nu();
    worst = std::max(worst, max_abs(rb * rb.transpose() - build_q(from_canonical(b), w).q));
  }
  CHECK(worst <= 1e-10);
}

TEST_CASE("beta < 1 splits into a beta = 1 part and a rank-one part") {
  testing::Random rnd(16);
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    CanonicalParams p = rnd.canonical();
    p.beta = rnd.uniform(0.01, 0.99);
    CanonicalParams boundary = p;
    boundary.beta = 1;
    const double b2 = p.beta * p.beta;
    const double w = rnd.uniform(-1, 1);
    Eigen::Matrix4d rhs = b2 * build_q(from_canonical(boundary), w / b2).q;
    rhs(0, 0) += 1 - b2;
    worst = std::max(worst, max_abs(build_q(from_canonical(p), w).q - rhs));
  }
  CHECK(worst <= 1e-12);
}

TEST_CASE("pencil eigenvalues are singular points of Q_w") {
  testing::Random rnd(17);
  for (int i = 0; i < 500; ++i) {
    const AffineMap phi = rnd.channel();
    const double scale = build_q(phi, 0).q.norm();
    for (double w : pencil_eigenvalues(phi)) {
      CHECK(std::abs(build_q(phi, w).q.determinant()) <= 1e-8 * std::pow(scale, 4));
    }
  }
}

TEST_CASE("solve_w0 agrees with the bisection route and satisfies its invariants") {
  testing::Random rnd(18);
  for (int i = 0; i < 500; ++i) {
    const AffineMap phi = rnd.channel();
    const RoofSolution s = solve_w0(phi);
    const PsdInterval b = psd_interval_by_bisection(phi);
    CHECK(s.w0 == Approx(b.lower).epsilon(1e-7));
    CHECK(s.psd_interval.lower == s.w0);
    CHECK(s.psd_interval.lower <= s.psd_interval.upper);

    Eigen::SelfAdjointEigenSolver<Eigen::Matrix4d> es(s.q);
    CHECK(es.eigenvalues()(0) >= -10 * kDefaultPsdTolerance * s.scale);
    CHECK(es.eigenvalues()(0) <= 10 * kDefaultPsdTolerance * s.scale);

    const CausalClass c = causal_class(s.n);
    CHECK((c == CausalClass::SpaceLike || c == CausalClass::LightLike));
    if (!s.flat) CHECK(s.n.x0 == 1.0);
    if (s.flat) CHECK(s.n.x0 == 0.0);

    // PSD set is convex in w
    const double w1 = s.psd_interval.lower;
    const double w2 = s.psd_interval.upper;
    const double a = rnd.uniform(w1, w2);
    const double c2 = rnd.uniform(w1, w2);
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix4d> mid(build_q(phi, (a + c2) / 2).q);
    CHECK(mid.eigenvalues()(0) >= -10 * kDefaultPsdTolerance * s.scale);

    // the far end of the window has a time-like kernel
    if (w2 - w1 > 1e-6) {
      Eigen::SelfAdjointEigenSolver<Eigen::Matrix4d> end(build_q(phi, w2).q);
      const FourVector k = FourVector::from_coeffs(end.eigenvectors().col(0));
      CHECK(causal_class(k, 1e-6) == CausalClass::TimeLike);
    }
  }
}

TEST_CASE("roof equals the pure-state value on pure states") {
  testing::Random rnd(19);
  double worst = 0.0;
  for (int c = 0; c < 100; ++c) {
    const AffineMap phi = rnd.channel();
    const RoofSolution s = solve_w0(phi);
    for (int i = 0; i < 100; ++i) {
      const FourVector pure = rnd.pure_state();
      worst = std::max(worst, std::abs(concurrence(s, pure) - pure_state_concurrence(phi, pure)));
    }
  }
  CHECK(worst <= 1e-9);
}

TEST_CASE("convexity") {
  testing::Random rnd(20);
  double worst = 0.0;
  for (int c = 0; c < 50; ++c) {
    const RoofSolution s = solve_w0(rnd.channel());
    for (int i = 0; i < 200; ++i) {
      const FourVector a = rnd.mixed_state();
      const FourVector b = rnd.mixed_state();
      const double l = rnd.uniform();
      const FourVector m = l * a + (1 - l) * b;
      worst = std::max(worst, concurrence(s, m) - l * concurrence(s, a) - (1 - l) * concurrence(s, b));
    }
  }
  CHECK(worst <= 1e-9);
}

TEST_CASE("optimal decomposition examples") {
  const Decomposition pd = optimal_decomposition(phase_damping(0.6), FourVector::state({0.6, 0, 0.2}));
  REQUIRE(pd.components.size() == 2);
  CHECK_FALSE(pd.degenerate_leaf);
  const auto& hi = pd.components[0].pure.x(2) > 0 ? pd.components[0] : pd.components[1];
  const auto& lo = pd.components[0].pure.x(2) > 0 ? pd.components[1] : pd.components[0];
  CHECK(hi.weight == Approx(0.625).epsilon(1e-12));
  CHECK(lo.weight == Approx(0.375).epsilon(1e-12));
  CHECK((hi.pure.coeffs() - Eigen::Vector4d(1, 0.6, 0, 0.8)).norm() <= 1e-12);
  CHECK((lo.pure.coeffs() - Eigen::Vector4d(1, 0.6, 0, -0.8)).norm() <= 1e-12);

  testing::Random rnd(21);
  for (int i = 0; i < 10; ++i) {
    const Decomposition single = optimal_decomposition(rnd.channel(), FourVector(1, 0, 0, 1));
    REQUIRE(single.components.size() == 1);
    CHECK(single.components[0].weight == 1.0);
    CHECK(single.components[0].pure == FourVector(1, 0, 0, 1));
  }

  const Decomposition ax = optimal_decomposition(axial(0.9, 0.1, 0.3), FourVector(1, 0, 0, 0));
  REQUIRE(ax.components.size() == 2);
  for (const auto& c : ax.components) {
    CHECK(c.weight == Approx(0.5).epsilon(1e-9));
    CHECK(std::abs(std::abs(c.pure.x(2)) - 1.0) <= 1e-9);
  }

  const Decomposition id = optimal_decomposition(identity_map(), FourVector::state({0.1, 0.2, 0.3}));
  CHECK(id.degenerate_leaf);
  CHECK((id.reconstruct().coeffs() - FourVector::state({0.1, 0.2, 0.3}).coeffs()).norm() <= 1e-12);
}

TEST_CASE("decompositions reconstruct the state and attain the roof") {
  testing::Random rnd(22);
  double rec = 0.0;
  double gap = 0.0;
  double affine = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const AffineMap phi = rnd.channel();
    const FourVector x = rnd.mixed_state();
    const RoofSolution s = solve_w0(phi);
    const Decomposition d = optimal_decomposition(s, x);
    double total = 0.0;
    double value = 0.0;
    for (const auto& c : d.components) {
      total += c.weight;
      value += c.weight * concurrence(s, c.pure);
      CHECK(c.weight > 0.0);
      CHECK(c.weight <= 1.0);
      CHECK(std::abs(minkowski_dot(c.pure, c.pure)) <= 1e-10);
      CHECK(c.pure.x0 == 1.0);
    }
    CHECK(total == Approx(1.0).epsilon(1e-12));
    rec = std::max(rec, (d.reconstruct().coeffs() - x.coeffs()).cwiseAbs().maxCoeff());
    gap = std::max(gap, std::abs(value - concurrence(s, x)));

    if (d.components.size() == 2) {
      const FourVector& a = d.components[0].pure;
      const FourVector& b = d.components[1].pure;
      const double ca = concurrence(s, a);
      const double cb = concurrence(s, b);
      for (double l : {0.1, 0.25, 0.5, 0.75, 0.9})
        affine = std::max(affine, std::abs(concurrence(s, l * a + (1 - l) * b) - (l * ca + (1 - l) * cb)));
    }
  }
  CHECK(rec <= 1e-10);
  CHECK(gap <= 1e-9);
  CHECK(affine <= 1e-9);
}
