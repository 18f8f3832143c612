#include "qroof/nelder_mead.hpp"

#include <algorithm>
#include <numeric>
#include <vector>

namespace qroof {

NelderMeadResult nelder_mead(const std::function<double(const Eigen::VectorXd&)>& objective,
                             const Eigen::VectorXd& start, const NelderMeadOptions& options) {
  const Eigen::Index dim = start.size();
  const auto count = static_cast<std::size_t>(dim + 1);

  NelderMeadResult result;
  std::vector<Eigen::VectorXd> simplex(count, start);
  std::vector<double> values(count);
  auto eval = [&](const Eigen::VectorXd& p) {
    ++result.evaluations;
    return objective(p);
  };

  for (Eigen::Index i = 0; i < dim; ++i) simplex[static_cast<std::size_t>(i + 1)](i) += options.initial_step;
  for (std::size_t i = 0; i < count; ++i) values[i] = eval(simplex[i]);

  std::vector<std::size_t> order(count);
  auto sort_simplex = [&] {
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
    std::vector<Eigen::VectorXd> s(count);
    std::vector<double> v(count);
    for (std::size_t i = 0; i < count; ++i) {
      s[i] = std::move(simplex[order[i]]);
      v[i] = values[order[i]];
    }
    simplex = std::move(s);
    values = std::move(v);
  };

  sort_simplex();
  for (; result.iterations < options.max_iterations; ++result.iterations) {
    const double spread = values.back() - values.front();
    double size = 0.0;
    for (std::size_t i = 1; i < count; ++i) size = std::max(size, (simplex[i] - simplex[0]).cwiseAbs().maxCoeff());
    if (spread <= options.value_tolerance && size <= options.size_tolerance) break;

    Eigen::VectorXd centroid = Eigen::VectorXd::Zero(dim);
    for (std::size_t i = 0; i + 1 < count; ++i) centroid += simplex[i];
    centroid /= static_cast<double>(dim);

    const Eigen::VectorXd& worst = simplex.back();
    const Eigen::VectorXd reflected = centroid + (centroid - worst);
    const double f_reflected = eval(reflected);

    if (f_reflected < values.front()) {
      const Eigen::VectorXd expanded = centroid + 2.0 * (centroid - worst);
      const double f_expanded = eval(expanded);
      if (f_expanded < f_reflected) {
        simplex.back() = expanded;
        values.back() = f_expanded;
      } else {
        simplex.back() = reflected;
        values.back() = f_reflected;
      }
    } else if (f_reflected < values[count - 2]) {
      simplex.back() = reflected;
      values.back() = f_reflected;
    } else {
      const bool outside = f_reflected < values.back();
      const Eigen::VectorXd contracted =
          outside ? Eigen::VectorXd(centroid + 0.5 * (reflected - centroid))
                  : Eigen::VectorXd(centroid + 0.5 * (worst - centroid));
      const double f_contracted = eval(contracted);
      if (f_contracted < (outside ? f_reflected : values.back())) {
        simplex.back() = contracted;
        values.back() = f_contracted;
      } else {
        for (std::size_t i = 1; i < count; ++i) {
          simplex[i] = simplex[0] + 0.5 * (simplex[i] - simplex[0]);
          values[i] = eval(simplex[i]);
        }
      }
    }
    sort_simplex();
  }

  result.x = simplex.front();
  result.value = values.front();
  return result;
}

}  // namespace qroof
