#include "qroof/roof.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "qroof/error.hpp"

namespace qroof {

QuadraticForm build_q(const AffineMap& phi, double w) {
  QuadraticForm form;
  form.w = w;
  const Eigen::RowVector3d t_lambda = phi.t.transpose() * phi.lambda;
  form.q(0, 0) = 1.0 - phi.t.squaredNorm() - w;
  form.q.block<1, 3>(0, 1) = -t_lambda;
  form.q.block<3, 1>(1, 0) = -t_lambda.transpose();
  form.q.block<3, 3>(1, 1) = w * Eigen::Matrix3d::Identity() - phi.lambda.transpose() * phi.lambda;
  form.q = 0.5 * (form.q + form.q.transpose()).eval();
  return form;
}

std::vector<double> pencil_eigenvalues(const AffineMap& phi) {
  const Eigen::Matrix4d pencil = minkowski_metric() * build_q(phi, 0.0).q;
  Eigen::EigenSolver<Eigen::Matrix4d> solver(pencil, false);
  std::vector<double> real;
  for (const auto& ev : solver.eigenvalues()) {
    if (std::abs(ev.imag()) <= 1e-9 * std::max(1.0, std::abs(ev.real()))) real.push_back(ev.real());
  }
  std::sort(real.begin(), real.end());
  return real;
}

namespace {

double min_eigenvalue(const Eigen::Matrix4d& m) {
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix4d> solver(m, Eigen::EigenvaluesOnly);
  return solver.eigenvalues()(0);
}

// Bisection on a sign change of f between lo and hi (f(lo) and f(hi) of opposite sign),
// carried to the floating-point resolution of the bracket.
template <class F>
double bisect(F&& f, double lo, double hi, bool f_lo_negative) {
  for (int i = 0; i < 2000; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (!(mid > lo && mid < hi)) break;
    if ((f(mid) < 0.0) == f_lo_negative)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

// Q_w in the eigenbasis of Lambda^T Lambda reads
//   [[a - w, c^T], [c, diag(w - s_k)]],
// so for w above every s_k it is PSD iff the Schur complement
//   g(w) = a - w - sum_k c_k^2 / (w - s_k)
// is non-negative. g is concave between its poles, which makes the PSD window
// an interval whose ends are the roots of g (the real pencil eigenvalues).
struct Secular {
  double a = 0.0;
  Eigen::Vector3d s = Eigen::Vector3d::Zero();  // eigenvalues of Lambda^T Lambda, ascending
  Eigen::Vector3d c = Eigen::Vector3d::Zero();  // coupling to x0 in that basis
  Eigen::Matrix3d basis = Eigen::Matrix3d::Identity();
  std::vector<int> top;                          // indices clustered with the largest s
  std::vector<int> poles;                        // indices with non-negligible coupling
  double top_value = 0.0;
  bool top_has_pole = false;

  double g(double w) const {
    double v = a - w;
    for (int k : poles) v -= c(k) * c(k) / (w - s(k));
    return v;
  }
  double dg(double w) const {
    double v = -1.0;
    for (int k : poles) {
      const double d = w - s(k);
      v += c(k) * c(k) / (d * d);
    }
    return v;
  }
  bool in_top(int k) const { return std::find(top.begin(), top.end(), k) != top.end(); }

  // Kernel vector (1, y) of Q_w at a root of g.
  FourVector kernel_at(double w) const {
    Eigen::Vector3d y = Eigen::Vector3d::Zero();
    for (int k = 0; k < 3; ++k) {
      if (in_top(k) && !top_has_pole) continue;
      y(k) = -c(k) / (w - s(k));
    }
    return {1.0, basis * y};
  }
};

Secular make_secular(const AffineMap& phi, double scale) {
  Secular sec;
  sec.a = 1.0 - phi.t.squaredNorm();
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> solver(phi.lambda.transpose() * phi.lambda);
  sec.s = solver.eigenvalues().cwiseMax(0.0);
  sec.basis = solver.eigenvectors();
  sec.c = sec.basis.transpose() * (-(phi.lambda.transpose() * phi.t));

  const double cluster_gap = 1e-13 * std::max(1.0, sec.s(2));
  sec.top_value = sec.s(2);
  for (int k = 2; k >= 0; --k) {
    if (sec.s(2) - sec.s(k) <= cluster_gap) sec.top.push_back(k);
  }
  // Merge the top cluster into a single pole at the largest value.
  double top_coupling = 0.0;
  for (int k : sec.top) top_coupling += sec.c(k) * sec.c(k);
  const double coupling_floor = 1e-13 * std::max(scale, 1e-300);
  sec.top_has_pole = std::sqrt(top_coupling) > coupling_floor;
  if (sec.top_has_pole) {
    for (int k : sec.top) sec.s(k) = sec.top_value;
    // Concentrate the cluster's coupling on one index so that y stays well defined.
    const int lead = sec.top.front();
    for (int k : sec.top) sec.c(k) = 0.0;
    sec.c(lead) = std::sqrt(top_coupling);
    // basis column for `lead` must be the direction of the coupling within the cluster
    Eigen::Vector3d direction = Eigen::Vector3d::Zero();
    const Eigen::Vector3d c_full = sec.basis.transpose() * (-(phi.lambda.transpose() * phi.t));
    for (int k : sec.top) direction += c_full(k) * sec.basis.col(k);
    direction.normalize();
    // Re-orthonormalize the cluster with `direction` first.
    std::vector<Eigen::Vector3d> cols = {direction};
    for (int k : sec.top) {
      Eigen::Vector3d v = sec.basis.col(k);
      for (const auto& u : cols) v -= u.dot(v) * u;
      if (v.norm() > 1e-8 && cols.size() < sec.top.size()) cols.push_back(v.normalized());
    }
    for (std::size_t i = 0; i < sec.top.size() && i < cols.size(); ++i) sec.basis.col(sec.top[i]) = cols[i];
    sec.poles.push_back(lead);
  }
  for (int k = 0; k < 3; ++k) {
    if (sec.in_top(k)) continue;
    if (std::abs(sec.c(k)) > coupling_floor) sec.poles.push_back(k);
  }
  return sec;
}

// Smallest w > lo with dg(w) <= 0 (the maximum of g), given dg(lo) > 0.
double argmax_g(const Secular& sec, double lo) {
  double hi = lo + 1.0;
  while (sec.dg(hi) > 0.0) hi = lo + 2.0 * (hi - lo);
  return bisect([&](double w) { return -sec.dg(w); }, lo, hi, true);
}

// Root of g on (from, inf) given g(from) > 0.
double right_root(const Secular& sec, double from) {
  double hi = from + 1.0;
  while (sec.g(hi) >= 0.0) hi = from + 2.0 * (hi - from);
  return bisect([&](double w) { return -sec.g(w); }, from, hi, true);
}

FourVector normalized_euclidean(const FourVector& v) { return (1.0 / v.coeffs().norm()) * v; }

void finish(RoofSolution& sol, const AffineMap& phi, double tol) {
  sol.q = build_q(phi, sol.w0).q;
  sol.degenerate = sol.kernel_basis.size() >= 4 || sol.q.norm() <= 10.0 * tol;
  const auto spatial = std::find_if(sol.kernel_basis.begin(), sol.kernel_basis.end(),
                                    [](const FourVector& k) { return k.x0 == 0.0; });
  if (sol.flat && spatial != sol.kernel_basis.end()) {
    sol.n = normalized_euclidean(*spatial);
  } else if (!sol.kernel_basis.empty()) {
    const FourVector& k = sol.kernel_basis.front();
    sol.n = (1.0 / k.x0) * k;
  }
}

RoofSolution solve_secular(const AffineMap& phi, double scale, double tol) {
  const Secular sec = make_secular(phi, scale);
  RoofSolution sol;
  sol.scale = scale;
  const double lo = sec.top_value;

  auto kernel_spatial_top = [&] {
    for (int k : sec.top) sol.kernel_basis.push_back({0.0, sec.basis.col(k)});
  };

  if (!sec.top_has_pole) {
    const double g_lo = sec.g(lo);
    if (g_lo >= -tol) {
      sol.w0 = lo;
      sol.flat = true;
      kernel_spatial_top();
      if (std::abs(g_lo) <= 10.0 * tol) sol.kernel_basis.push_back(sec.kernel_at(lo));
      double upper = lo;
      if (g_lo > tol) {
        const double peak = sec.dg(lo) > 0.0 ? argmax_g(sec, lo) : lo;
        upper = right_root(sec, peak);
      } else if (sec.dg(lo) > 0.0) {
        const double peak = argmax_g(sec, lo);
        if (sec.g(peak) > tol) upper = right_root(sec, peak);
      }
      sol.psd_interval = {lo, upper};
      return sol;
    }
    if (sec.dg(lo) <= 0.0) throw Error(ErrorCode::NoPsdWindow, "Q_w is not PSD for any w");
  }

  const double peak = argmax_g(sec, lo);
  const double g_peak = sec.g(peak);
  if (g_peak < -tol) {
    std::ostringstream msg;
    msg << "Q_w is not PSD for any w (max Schur complement " << g_peak << ")";
    throw Error(ErrorCode::NoPsdWindow, msg.str());
  }
  if (g_peak <= tol) {
    sol.w0 = peak;
    sol.psd_interval = {peak, peak};
  } else {
    const double w1 = bisect([&](double w) { return sec.g(w); }, lo, peak, true);
    sol.w0 = w1;
    sol.psd_interval = {w1, right_root(sec, peak)};
  }
  sol.flat = false;
  sol.kernel_basis.push_back(sec.kernel_at(sol.w0));
  return sol;
}

// Kernel of Q_{w} from its eigenvectors; flat if a combination with zero x0 component exists.
void kernel_from_eigenvectors(RoofSolution& sol, const AffineMap& phi, double tol) {
  const Eigen::Matrix4d q = build_q(phi, sol.w0).q;
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix4d> solver(q);
  std::vector<Eigen::Vector4d> kernel;
  for (int i = 0; i < 4; ++i) {
    if (std::abs(solver.eigenvalues()(i)) <= 10.0 * tol || i == 0) kernel.push_back(solver.eigenvectors().col(i));
  }
  sol.flat = false;
  for (const auto& k : kernel) sol.kernel_basis.push_back(FourVector::from_coeffs(k));
  if (kernel.size() == 1) {
    sol.flat = std::abs(kernel[0](0)) <= 10.0 * tol;
    if (sol.flat) sol.kernel_basis[0].x0 = 0.0;
    return;
  }
  // Eliminate the x0 component between the two kernel vectors with the largest |x0|.
  std::sort(kernel.begin(), kernel.end(),
            [](const Eigen::Vector4d& a, const Eigen::Vector4d& b) { return std::abs(a(0)) > std::abs(b(0)); });
  Eigen::Vector4d u = kernel[1];
  if (std::abs(kernel[0](0)) > 0.0) u -= (kernel[1](0) / kernel[0](0)) * kernel[0];
  u(0) = 0.0;
  if (u.norm() > 0.0 && (q * u).norm() <= 10.0 * tol * u.norm()) {
    sol.flat = true;
    sol.kernel_basis.insert(sol.kernel_basis.begin(), FourVector::from_coeffs(u.normalized()));
  }
}

bool verified(const RoofSolution& sol, const AffineMap& phi, double tol) {
  const Eigen::Matrix4d q = build_q(phi, sol.w0).q;
  if (min_eigenvalue(q) < -10.0 * tol) return false;
  for (const auto& k : sol.kernel_basis) {
    const Eigen::Vector4d v = k.coeffs();
    if ((q * v).norm() > 1e3 * tol * std::max(1.0, v.norm())) return false;
  }
  return !sol.kernel_basis.empty();
}

}  // namespace

PsdInterval psd_interval_by_bisection(const AffineMap& phi, double tol_psd) {
  const Eigen::Matrix4d q0 = build_q(phi, 0.0).q;
  const Eigen::Matrix4d& eta = minkowski_metric();
  const double tol = tol_psd * q0.norm();
  auto f = [&](double w) { return min_eigenvalue(q0 - w * eta); };

  // Q_w >= 0 forces sigma_max(Lambda)^2 <= w <= 1 - |t|^2, inside [-1, 2] for positive maps.
  double lo = -1.0;
  double hi = 2.0;
  const auto candidates = pencil_eigenvalues(phi);
  if (!candidates.empty()) {
    lo = std::min(lo, candidates.front() - 1.0);
    hi = std::max(hi, candidates.back() + 1.0);
  }
  // f is concave: golden-section search for its maximum.
  const double ratio = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo;
  double b = hi;
  double x1 = b - ratio * (b - a);
  double x2 = a + ratio * (b - a);
  double f1 = f(x1);
  double f2 = f(x2);
  for (int i = 0; i < 200 && b - a > 1e-15 * std::max(1.0, std::abs(a)); ++i) {
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + ratio * (b - a);
      f2 = f(x2);
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - ratio * (b - a);
      f1 = f(x1);
    }
  }
  const double peak = 0.5 * (a + b);
  if (f(peak) < -tol) throw Error(ErrorCode::NoPsdWindow, "smallest eigenvalue of Q_w never reaches zero");
  auto inside = [&](double w) { return f(w) >= -tol ? 1.0 : -1.0; };
  return {bisect(inside, lo, peak, true), bisect([&](double w) { return -inside(w); }, peak, hi, true)};
}

RoofSolution solve_w0(const AffineMap& phi, const RoofOptions& options) {
  if (options.check_positivity && !is_positive(phi))
    throw Error(ErrorCode::NotPositiveMap, "map does not send the Bloch ball into itself");

  const double scale = build_q(phi, 0.0).q.norm();
  const double tol = options.tol_psd * scale;

  RoofSolution sol;
  bool ok = false;
  try {
    sol = solve_secular(phi, scale, tol);
    ok = verified(sol, phi, tol);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::NoPsdWindow) throw;
  }
  if (!ok) {
    sol = RoofSolution{};
    sol.scale = scale;
    sol.psd_interval = psd_interval_by_bisection(phi, options.tol_psd);
    sol.w0 = sol.psd_interval.lower;
    sol.used_fallback = true;
    kernel_from_eigenvectors(sol, phi, tol);
  }
  finish(sol, phi, tol);

  if (!sol.degenerate) {
    const CausalClass lower = causal_class(sol.n, options.tol_causal);
    if (lower == CausalClass::TimeLike)
      throw Error(ErrorCode::NoPsdWindow, "kernel at the lower end of the PSD window is time-like");
    // The upper end must not qualify as well.
    const auto [w1, w2] = sol.psd_interval;
    if (w2 - w1 > 1e-7 * std::max(1.0, std::abs(w1))) {
      const Eigen::Matrix4d q2 = build_q(phi, w2).q;
      Eigen::SelfAdjointEigenSolver<Eigen::Matrix4d> solver(q2);
      const FourVector k2 = FourVector::from_coeffs(solver.eigenvectors().col(0));
      if (std::abs(solver.eigenvalues()(1)) > 10.0 * tol && causal_class(k2, options.tol_causal) != CausalClass::TimeLike) {
        std::ostringstream msg;
        msg << "both ends of the PSD window [" << w1 << ", " << w2 << "] have non-time-like kernels";
        throw Error(ErrorCode::AmbiguousW0, msg.str());
      }
    }
  }
  return sol;
}

void validate_state(const FourVector& state) {
  if (!(std::abs(state.x0 - 1.0) <= 1e-9)) throw Error(ErrorCode::InvalidState, "state must have x0 = 1");
  if (!(state.x.norm() <= 1.0 + 1e-9)) throw Error(ErrorCode::InvalidState, "Bloch vector outside the unit ball");
}

namespace {

double clamped_sqrt(double q) {
  if (q < 0.0) {
    if (q < -1e-12) std::clog << "qroof: clamping negative quadratic form value " << q << " to 0\n";
    return 0.0;
  }
  return std::sqrt(q);
}

}  // namespace

double concurrence(const RoofSolution& solution, const FourVector& state) {
  validate_state(state);
  return clamped_sqrt(solution.evaluate(state));
}

double concurrence(const AffineMap& phi, const FourVector& state, const RoofOptions& options) {
  validate_state(state);
  return concurrence(solve_w0(phi, options), state);
}

double pure_state_concurrence(const AffineMap& phi, const FourVector& pure) {
  const FourVector image = apply(phi, pure);
  return 2.0 * std::sqrt(std::max(0.0, det_from_vector(image)));
}

double unital_concurrence_closed_form(const Eigen::Vector3d& lambda, const FourVector& state) {
  if (!(lambda.cwiseAbs().maxCoeff() <= 1.0)) throw Error(ErrorCode::OutOfRange, "need max |lambda_i| <= 1");
  validate_state(state);
  const Eigen::Vector3d sq = lambda.cwiseAbs2();
  const double w = sq.maxCoeff();
  double q = (1.0 - w) * state.x0 * state.x0;
  for (int i = 0; i < 3; ++i) q += (w - sq(i)) * state.x(i) * state.x(i);
  return std::sqrt(std::max(0.0, q));
}

AxialClosedForm axial_w0_closed_form(double alpha, double beta, double gamma) {
  if (!(alpha >= 0.0 && alpha <= 1.0 && gamma >= 0.0 && gamma <= 1.0 && std::isfinite(beta)))
    throw Error(ErrorCode::OutOfRange, "axial closed form needs alpha, gamma in [0,1]");
  const double sa = std::sqrt(alpha * (1.0 - alpha));
  const double sg = std::sqrt(gamma * (1.0 - gamma));
  AxialClosedForm out;
  out.beta_c_squared = 1.0 + 2.0 * alpha * gamma - alpha - gamma - 2.0 * sa * sg;
  out.w0 = std::max(beta * beta, out.beta_c_squared);
  // exact ties (e.g. alpha = 0, beta^2 = 1 - gamma) land a few ulps either side
  const double tie = 16.0 * std::numeric_limits<double>::epsilon();
  const bool uncoupled = std::abs(sg - sa) <= tie;
  out.flat = beta * beta >= out.beta_c_squared - tie || uncoupled;
  if (!uncoupled) out.z0 = (sg + sa) / (sg - sa);
  return out;
}

Eigen::Matrix4d cholesky_boundary_check(const CanonicalParams& p) {
  p.validate();
  if (p.beta != 1.0) throw Error(ErrorCode::OutOfRange, "boundary factorization needs beta = 1");
  const double nu = p.nu();
  // Lower-triangular factor L with Q = L^T L; return R = L^T so that Q = R R^T.
  Eigen::Matrix4d lower = Eigen::Matrix4d::Zero();
  for (int i = 0; i < 3; ++i) {
    const double w = p.omega(i);
    const double mu = std::sqrt(std::max(0.0, p.alpha * (1.0 - p.alpha * w * w)));
    lower(i + 1, 0) = -w * p.xi(i) * mu;
    lower(i + 1, i + 1) = nu * mu;
  }
  return lower.transpose();
}

FourVector boundary_kernel_vector(const CanonicalParams& p) {
  p.validate();
  const double nu = p.nu();
  if (!(nu > 0.0)) throw Error(ErrorCode::OutOfRange, "boundary kernel vector needs nu > 0");
  return {1.0, p.xi.cwiseProduct(p.omega) / nu};
}

FourVector Decomposition::reconstruct() const {
  FourVector sum{0.0, 0.0, 0.0, 0.0};
  for (const auto& c : components) sum = sum + c.weight * c.pure;
  return sum;
}

namespace {

constexpr double kSphereTolerance = 1e-12;

// Endpoints of the chord through x along unit direction d and the weights that recombine to x.
Decomposition chord(const Eigen::Vector3d& x, const Eigen::Vector3d& d) {
  const double b = x.dot(d);
  const double disc = std::sqrt(std::max(0.0, b * b + 1.0 - x.squaredNorm()));
  const double s_plus = -b + disc;
  const double s_minus = -b - disc;
  const double span = s_plus - s_minus;
  Decomposition out;
  out.components.push_back({-s_minus / span, FourVector::state(x + s_plus * d)});
  out.components.push_back({s_plus / span, FourVector::state(x + s_minus * d)});
  return out;
}

}  // namespace

Decomposition optimal_decomposition(const RoofSolution& solution, const FourVector& state) {
  validate_state(state);
  const Eigen::Vector3d x = state.x;
  const double radius = x.norm();
  if (radius >= 1.0 - kSphereTolerance) {
    Decomposition out;
    out.components.push_back({1.0, FourVector::state(x / radius)});
    return out;
  }

  if (solution.degenerate) {
    Decomposition out = chord(x, Eigen::Vector3d::UnitZ());
    out.degenerate_leaf = true;
    return out;
  }
  if (solution.flat) return chord(x, solution.n.x.normalized());

  const Eigen::Vector3d towards_apex = x - solution.n.x;
  if (towards_apex.norm() == 0.0) return chord(x, Eigen::Vector3d::UnitZ());
  return chord(x, towards_apex.normalized());
}

Decomposition optimal_decomposition(const AffineMap& phi, const FourVector& state, const RoofOptions& options) {
  validate_state(state);
  return optimal_decomposition(solve_w0(phi, options), state);
}

}  // namespace qroof
