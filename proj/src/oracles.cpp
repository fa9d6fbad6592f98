#include "mobo/evaluation.hpp"

#include "mobo/gaussian.hpp"
#include "mobo/pareto.hpp"

#include <cmath>

namespace mobo {

namespace {

double simpson(double a, double b, double fa, double fm, double fb) {
  return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

double adaptive_rec(const std::function<double(double)>& f, double a, double b,
                    double fa, double fm, double fb, double whole, double tol,
                    int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm), frm = f(rm);
  const double left = simpson(a, m, fa, flm, fm);
  const double right = simpson(m, b, fm, frm, fb);
  if (depth <= 0 || std::abs(left + right - whole) < 15.0 * tol)
    return left + right + (left + right - whole) / 15.0;
  return adaptive_rec(f, a, m, fa, flm, fm, left, tol / 2, depth - 1) +
         adaptive_rec(f, m, b, fm, frm, fb, right, tol / 2, depth - 1);
}

double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double tol) {
  if (a >= b) return 0.0;
  const double m = 0.5 * (a + b);
  const double fa = f(a), fm = f(m), fb = f(b);
  return adaptive_rec(f, a, b, fa, fm, fb, simpson(a, b, fa, fm, fb), tol, 48);
}

// Standardized-coordinate integration with breakpoints inside the hump.
double standardized_moment(double a, double b, double c, double mu, double sigma) {
  constexpr double kInvSqrt2Pi = 0.3989422804014326779;
  const double za = std::max((a - mu) / sigma, -60.0);
  const double zb = std::min((b - mu) / sigma, 60.0);
  if (za >= zb) return 0.0;
  std::vector<double> cuts = {za};
  for (double k : {-8.0, -2.0, 0.0, 2.0, 8.0})
    if (k > za && k < zb) cuts.push_back(k);
  cuts.push_back(zb);
  auto integrand = [&](double z) {
    return (mu - c + sigma * z) * kInvSqrt2Pi * std::exp(-0.5 * z * z);
  };
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i)
    total += adaptive_simpson(integrand, cuts[i], cuts[i + 1], 1e-13);
  return total;
}

}  // namespace

double oracle_quadrature_i1(double a, double b, double c, double mu, double sigma) {
  require(a <= b, "oracle_quadrature_i1: a <= b required");
  if (sigma == 0.0) return (mu - c) * heaviside(b - mu) * heaviside(mu - a);
  return standardized_moment(a, b, c, mu, sigma);
}

double oracle_quadrature_i2(double b, double c, double mu, double sigma) {
  if (sigma == 0.0) return (mu - c) * heaviside(b - mu);
  return standardized_moment(mu - 61.0 * sigma, b, c, mu, sigma);
}

double oracle_quadrature_i3(double a, double b, double mu, double sigma) {
  require(a <= b, "oracle_quadrature_i3: a <= b required");
  if (sigma == 0.0) return heaviside(b - mu) * heaviside(mu - a);
  constexpr double kInvSqrt2Pi = 0.3989422804014326779;
  const double za = std::max((a - mu) / sigma, -60.0);
  const double zb = std::min((b - mu) / sigma, 60.0);
  if (za >= zb) return 0.0;
  std::vector<double> cuts = {za};
  for (double k : {-8.0, -2.0, 0.0, 2.0, 8.0})
    if (k > za && k < zb) cuts.push_back(k);
  cuts.push_back(zb);
  auto integrand = [&](double z) { return kInvSqrt2Pi * std::exp(-0.5 * z * z); };
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i)
    total += adaptive_simpson(integrand, cuts[i], cuts[i + 1], 1e-13);
  return total;
}

OracleEstimate oracle_mc_evi(const std::vector<Vector>& front, const Vector& ref,
                             const NormalPrediction& pred, int draws,
                             std::mt19937_64& rng) {
  require(draws >= 1, "oracle_mc_evi: draws >= 1 required");
  std::normal_distribution<double> gauss(0.0, 1.0);
  double sum = 0.0, sum_sq = 0.0;
  Vector y(ref.size());
  for (int d = 0; d < draws; ++d) {
    for (Eigen::Index i = 0; i < ref.size(); ++i)
      y[i] = pred.mu[i] + pred.sigma[i] * gauss(rng);
    const double dv = hypervolume_improvement(front, ref, y);
    sum += dv;
    sum_sq += dv * dv;
  }
  const double mean = sum / draws;
  const double var = std::max(sum_sq / draws - mean * mean, 0.0);
  return {mean, std::sqrt(var / draws)};
}

OracleEstimate oracle_mc_pnd(const std::vector<Vector>& front,
                             const NormalPrediction& pred, int draws,
                             std::mt19937_64& rng) {
  require(draws >= 1, "oracle_mc_pnd: draws >= 1 required");
  std::normal_distribution<double> gauss(0.0, 1.0);
  Vector y(pred.mu.size());
  long hits = 0;
  for (int d = 0; d < draws; ++d) {
    for (Eigen::Index i = 0; i < y.size(); ++i)
      y[i] = pred.mu[i] + pred.sigma[i] * gauss(rng);
    bool dominated = false;
    for (const auto& p : front) {
      if (dominates(p, y)) {
        dominated = true;
        break;
      }
    }
    if (!dominated) ++hits;
  }
  const double mean = static_cast<double>(hits) / draws;
  const double smoothed = (static_cast<double>(hits) + 1.0) / (draws + 2.0);
  return {mean, std::sqrt(smoothed * (1.0 - smoothed) / draws)};
}

OracleEstimate oracle_mc_hypervolume(const std::vector<Vector>& front,
                                     const Vector& ref, int draws,
                                     std::mt19937_64& rng) {
  require(draws >= 1, "oracle_mc_hypervolume: draws >= 1 required");
  const std::vector<Vector> pts = pareto_subset(front);
  if (pts.empty()) return {0.0, 0.0};
  Vector lo = pts.front();
  for (const auto& y : pts) lo = lo.cwiseMin(y);
  double box = 1.0;
  for (Eigen::Index i = 0; i < ref.size(); ++i) box *= ref[i] - lo[i];
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  long hits = 0;
  Vector z(ref.size());
  for (int d = 0; d < draws; ++d) {
    for (Eigen::Index i = 0; i < ref.size(); ++i)
      z[i] = lo[i] + u01(rng) * (ref[i] - lo[i]);
    for (const auto& y : pts) {
      if ((y.array() <= z.array()).all()) {
        ++hits;
        break;
      }
    }
  }
  const double p = static_cast<double>(hits) / draws;
  return {box * p, box * std::sqrt(p * (1.0 - p) / draws)};
}

}  // namespace mobo
