// Gaussian process regression with an anisotropic Matern 5/2 kernel, fitted
// by marginal-likelihood maximization over multistarted simplex searches.
#include "mobo/surrogates.hpp"

#include "nelder_mead.hpp"

#include <Eigen/Cholesky>

#include <cmath>
#include <random>

namespace mobo {

namespace {

constexpr double kJitter = 1e-10;
constexpr double kSqrt5 = 2.2360679774997896964;

// Log-parameter box in scaled-input / standardized-output units:
// length-scales, signal std, noise std.
constexpr double kLogLenLo = -3.9, kLogLenHi = 2.3;     // ~0.02 .. 10
constexpr double kLogSfLo = -2.3, kLogSfHi = 1.6;       // ~0.1 .. 5
constexpr double kLogSnLo = -13.8, kLogSnHi = 0.0;      // ~1e-6 .. 1

double matern52(double r) {
  const double s = kSqrt5 * r;
  return (1.0 + s + s * s / 3.0) * std::exp(-s);
}

struct ObjectiveModel {
  Vector log_params;  // (log len_1..d, log sf, log sn)
  Eigen::MatrixXd chol_lower;
  Vector alpha;
  double y_mean = 0.0;
  double y_scale = 1.0;
};

Eigen::MatrixXd kernel_matrix(const Eigen::MatrixXd& x_scaled, const Vector& lengths,
                              double sf2, double diag_add) {
  const Eigen::Index k = x_scaled.rows();
  Eigen::MatrixXd kmat(k, k);
  for (Eigen::Index i = 0; i < k; ++i) {
    kmat(i, i) = sf2 + diag_add;
    for (Eigen::Index j = 0; j < i; ++j) {
      const double r =
          ((x_scaled.row(i) - x_scaled.row(j)).transpose().cwiseQuotient(lengths))
              .norm();
      kmat(i, j) = kmat(j, i) = sf2 * matern52(r);
    }
  }
  return kmat;
}

class GpRegressor final : public Regressor {
 public:
  GpRegressor(const std::vector<std::pair<Vector, Vector>>& xy,
              const RegressorOptions& opts) {
    const Eigen::Index k = static_cast<Eigen::Index>(xy.size());
    const Eigen::Index d = xy.front().first.size();
    const Eigen::Index n = xy.front().second.size();

    bounds_ = opts.bounds ? *opts.bounds : data_bounds(xy);
    x_scaled_.resize(k, d);
    for (Eigen::Index i = 0; i < k; ++i)
      x_scaled_.row(i) = bounds_.to_unit(xy[static_cast<std::size_t>(i)].first);

    std::mt19937_64 rng(0x9e3779b97f4a7c15ULL ^ opts.seed);
    models_.reserve(static_cast<std::size_t>(n));
    for (Eigen::Index j = 0; j < n; ++j) {
      Vector y(k);
      for (Eigen::Index i = 0; i < k; ++i)
        y[i] = xy[static_cast<std::size_t>(i)].second[j];
      const Vector* warm = nullptr;
      if (static_cast<Eigen::Index>(opts.warm_start.size()) > j &&
          opts.warm_start[static_cast<std::size_t>(j)].size() == d + 2)
        warm = &opts.warm_start[static_cast<std::size_t>(j)];
      models_.push_back(fit_objective(y, opts, warm, rng));
    }
  }

  NormalPrediction predict(const Vector& x) const override {
    const Eigen::Index k = x_scaled_.rows();
    const Eigen::Index d = x_scaled_.cols();
    const Vector xs = bounds_.to_unit(x);
    const Eigen::Index n = static_cast<Eigen::Index>(models_.size());
    Vector mu(n), sigma(n);
    Vector kstar(k);
    for (Eigen::Index j = 0; j < n; ++j) {
      const ObjectiveModel& m = models_[static_cast<std::size_t>(j)];
      const Vector lengths = m.log_params.head(d).array().exp();
      const double sf2 = std::exp(2.0 * m.log_params[d]);
      for (Eigen::Index i = 0; i < k; ++i) {
        const double r =
            ((x_scaled_.row(i).transpose() - xs).cwiseQuotient(lengths)).norm();
        kstar[i] = sf2 * matern52(r);
      }
      const double mean = kstar.dot(m.alpha);
      const Vector v = m.chol_lower.triangularView<Eigen::Lower>().solve(kstar);
      const double var = std::max(sf2 - v.squaredNorm(), 0.0);
      mu[j] = mean * m.y_scale + m.y_mean;
      sigma[j] = std::sqrt(var) * m.y_scale;
    }
    return {std::move(mu), std::move(sigma)};
  }

  int objective_count() const override { return static_cast<int>(models_.size()); }

  std::vector<Vector> hyperparameters() const override {
    std::vector<Vector> out;
    for (const auto& m : models_) out.push_back(m.log_params);
    return out;
  }

 private:
  static Bounds data_bounds(const std::vector<std::pair<Vector, Vector>>& xy) {
    Vector lo = xy.front().first, hi = xy.front().first;
    for (const auto& [x, y] : xy) {
      lo = lo.cwiseMin(x);
      hi = hi.cwiseMax(x);
    }
    for (Eigen::Index i = 0; i < lo.size(); ++i)
      if (hi[i] - lo[i] < 1e-12) hi[i] = lo[i] + 1.0;
    return {lo, hi};
  }

  // Negative log marginal likelihood with a soft pull back into the
  // hyperparameter box; infeasible Cholesky factorizations are rejected.
  double negative_lml(const Vector& log_params, const Vector& y_std) const {
    const Eigen::Index d = x_scaled_.cols();
    Vector clamped = log_params;
    double penalty = 0.0;
    auto clamp = [&](Eigen::Index i, double lo, double hi) {
      const double t = std::min(std::max(clamped[i], lo), hi);
      penalty += 1e3 * (clamped[i] - t) * (clamped[i] - t);
      clamped[i] = t;
    };
    for (Eigen::Index i = 0; i < d; ++i) clamp(i, kLogLenLo, kLogLenHi);
    clamp(d, kLogSfLo, kLogSfHi);
    clamp(d + 1, kLogSnLo, kLogSnHi);

    const Vector lengths = clamped.head(d).array().exp();
    const double sf2 = std::exp(2.0 * clamped[d]);
    const double sn2 = std::exp(2.0 * clamped[d + 1]);
    const Eigen::MatrixXd kmat = kernel_matrix(x_scaled_, lengths, sf2, sn2 + kJitter);
    Eigen::LLT<Eigen::MatrixXd> llt(kmat);
    if (llt.info() != Eigen::Success) return 1e12;
    const Vector alpha = llt.solve(y_std);
    double log_det = 0.0;
    for (Eigen::Index i = 0; i < kmat.rows(); ++i)
      log_det += std::log(llt.matrixL()(i, i));
    const double k = static_cast<double>(kmat.rows());
    return 0.5 * y_std.dot(alpha) + log_det + 0.5 * k * std::log(2.0 * M_PI) + penalty;
  }

  ObjectiveModel fit_objective(const Vector& y, const RegressorOptions& opts,
                               const Vector* warm, std::mt19937_64& rng) const {
    const Eigen::Index d = x_scaled_.cols();
    ObjectiveModel m;
    m.y_mean = y.mean();
    const double var = (y.array() - m.y_mean).square().sum() / y.size();
    m.y_scale = std::max(std::sqrt(var), 1e-12);
    const Vector y_std = (y.array() - m.y_mean) / m.y_scale;

    auto objective = [&](const Vector& p) { return negative_lml(p, y_std); };

    Vector init(d + 2);
    init.head(d).setConstant(std::log(0.3));
    init[d] = 0.0;
    init[d + 1] = std::log(1e-3);

    std::vector<Vector> starts = {init};
    if (warm) starts.push_back(*warm);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    while (static_cast<int>(starts.size()) < std::max(opts.restarts, 1)) {
      Vector p(d + 2);
      for (Eigen::Index i = 0; i < d; ++i)
        p[i] = kLogLenLo + u(rng) * (kLogLenHi - kLogLenLo);
      p[d] = kLogSfLo + u(rng) * (kLogSfHi - kLogSfLo);
      p[d + 1] = kLogSnLo + u(rng) * (kLogSnHi - kLogSnLo);
      starts.push_back(p);
    }

    const int budget =
        opts.search_budget > 0 ? opts.search_budget : 80 * static_cast<int>(d + 2);
    Vector best = init;
    double best_value = std::numeric_limits<double>::infinity();
    for (const Vector& s : starts) {
      auto r = detail::nelder_mead(objective, s, 0.4, budget);
      if (r.value < best_value) {
        best_value = r.value;
        best = r.x;
      }
    }

    // Clamp into the box and refactor at the winning hyperparameters.
    for (Eigen::Index i = 0; i < d; ++i)
      best[i] = std::min(std::max(best[i], kLogLenLo), kLogLenHi);
    best[d] = std::min(std::max(best[d], kLogSfLo), kLogSfHi);
    best[d + 1] = std::min(std::max(best[d + 1], kLogSnLo), kLogSnHi);
    m.log_params = best;

    const Vector lengths = best.head(d).array().exp();
    const double sf2 = std::exp(2.0 * best[d]);
    const double sn2 = std::exp(2.0 * best[d + 1]);
    double jitter = kJitter;
    Eigen::LLT<Eigen::MatrixXd> llt;
    for (int attempt = 0; attempt < 6; ++attempt) {
      llt.compute(kernel_matrix(x_scaled_, lengths, sf2, sn2 + jitter));
      if (llt.info() == Eigen::Success) break;
      jitter *= 100.0;
    }
    require(llt.info() == Eigen::Success, "GpRegressor: kernel matrix not positive definite");
    m.chol_lower = llt.matrixL();
    m.alpha = llt.solve(y_std);
    return m;
  }

  Bounds bounds_;
  Eigen::MatrixXd x_scaled_;
  std::vector<ObjectiveModel> models_;
};

}  // namespace

std::unique_ptr<Regressor> make_gp_regressor(
    const std::vector<std::pair<Vector, Vector>>& xy, const RegressorOptions& opts) {
  return std::make_unique<GpRegressor>(xy, opts);
}

}  // namespace mobo
