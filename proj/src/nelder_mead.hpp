// nelder_mead.hpp - compact downhill-simplex minimizer for the handful of
// low-dimensional hyperparameter searches in this library.
#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <functional>
#include <vector>

namespace mobo::detail {

struct SimplexResult {
  Eigen::VectorXd x;
  double value;
};

inline SimplexResult nelder_mead(const std::function<double(const Eigen::VectorXd&)>& f,
                                 const Eigen::VectorXd& x0, double step, int max_evals) {
  const int n = static_cast<int>(x0.size());
  struct Point {
    Eigen::VectorXd x;
    double v;
  };
  std::vector<Point> simplex;
  simplex.reserve(n + 1);
  int evals = 0;
  auto eval = [&](const Eigen::VectorXd& x) {
    ++evals;
    return f(x);
  };

  simplex.push_back({x0, eval(x0)});
  for (int i = 0; i < n; ++i) {
    Eigen::VectorXd xi = x0;
    xi[i] += step;
    simplex.push_back({xi, eval(xi)});
  }
  auto order = [&] {
    std::sort(simplex.begin(), simplex.end(),
              [](const Point& a, const Point& b) { return a.v < b.v; });
  };
  order();

  while (evals < max_evals) {
    if (std::abs(simplex.front().v - simplex.back().v) <
        1e-10 * (1.0 + std::abs(simplex.front().v)))
      break;
    Eigen::VectorXd centroid = Eigen::VectorXd::Zero(n);
    for (int i = 0; i < n; ++i) centroid += simplex[static_cast<std::size_t>(i)].x;
    centroid /= n;

    const Point& worst = simplex.back();
    Eigen::VectorXd xr = centroid + (centroid - worst.x);
    const double vr = eval(xr);
    if (vr < simplex.front().v) {
      Eigen::VectorXd xe = centroid + 2.0 * (centroid - worst.x);
      const double ve = eval(xe);
      simplex.back() = (ve < vr) ? Point{xe, ve} : Point{xr, vr};
    } else if (vr < simplex[static_cast<std::size_t>(n) - 1].v) {
      simplex.back() = {xr, vr};
    } else {
      Eigen::VectorXd xc = centroid + 0.5 * (worst.x - centroid);
      const double vc = eval(xc);
      if (vc < worst.v) {
        simplex.back() = {xc, vc};
      } else {
        for (std::size_t i = 1; i < simplex.size(); ++i) {
          simplex[i].x = simplex[0].x + 0.5 * (simplex[i].x - simplex[0].x);
          simplex[i].v = eval(simplex[i].x);
        }
      }
    }
    order();
  }
  return {simplex.front().x, simplex.front().v};
}

}  // namespace mobo::detail
