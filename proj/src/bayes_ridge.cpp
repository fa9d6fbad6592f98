// Bayesian ridge regression on polynomial features with evidence-maximized
// precision hyperparameters (fixed-point iteration).
#include "mobo/surrogates.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>

namespace mobo {

namespace {

// All monomial exponent tuples with total degree <= degree.
void enumerate_exponents(int dims, int degree, std::vector<int>& current,
                         std::vector<std::vector<int>>& out) {
  if (static_cast<int>(current.size()) == dims) {
    out.push_back(current);
    return;
  }
  int used = 0;
  for (int e : current) used += e;
  for (int e = 0; e + used <= degree; ++e) {
    current.push_back(e);
    enumerate_exponents(dims, degree, current, out);
    current.pop_back();
  }
}

class BayesRidgeRegressor final : public Regressor {
 public:
  BayesRidgeRegressor(const std::vector<std::pair<Vector, Vector>>& xy,
                      const RegressorOptions& opts) {
    const Eigen::Index k = static_cast<Eigen::Index>(xy.size());
    const Eigen::Index d = xy.front().first.size();
    const Eigen::Index n = xy.front().second.size();

    bounds_ = opts.bounds ? *opts.bounds : data_bounds(xy);
    std::vector<int> scratch;
    enumerate_exponents(static_cast<int>(d), opts.poly_degree, scratch, exponents_);

    Eigen::MatrixXd phi(k, static_cast<Eigen::Index>(exponents_.size()));
    for (Eigen::Index i = 0; i < k; ++i)
      phi.row(i) = features(xy[static_cast<std::size_t>(i)].first);

    const Eigen::MatrixXd gram = phi.transpose() * phi;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(gram);
    const Vector lambda = eig.eigenvalues().cwiseMax(0.0);
    const Eigen::MatrixXd v = eig.eigenvectors();

    for (Eigen::Index j = 0; j < n; ++j) {
      Vector y(k);
      for (Eigen::Index i = 0; i < k; ++i)
        y[i] = xy[static_cast<std::size_t>(i)].second[j];
      models_.push_back(fit_objective(phi, v, lambda, y));
    }
  }

  NormalPrediction predict(const Vector& x) const override {
    const Eigen::Index n = static_cast<Eigen::Index>(models_.size());
    const Vector phi = features(x);
    Vector mu(n), sigma(n);
    for (Eigen::Index j = 0; j < n; ++j) {
      const auto& m = models_[static_cast<std::size_t>(j)];
      const double mean = phi.dot(m.weights);
      const Vector proj = m.basis.transpose() * phi;
      double var = 1.0 / m.beta;
      for (Eigen::Index i = 0; i < proj.size(); ++i)
        var += proj[i] * proj[i] / (m.alpha + m.beta * m.lambda[i]);
      mu[j] = mean * m.y_scale + m.y_mean;
      sigma[j] = std::sqrt(var) * m.y_scale;
    }
    return {std::move(mu), std::move(sigma)};
  }

  int objective_count() const override { return static_cast<int>(models_.size()); }

 private:
  struct ObjectiveModel {
    Vector weights;
    Eigen::MatrixXd basis;  // eigenvectors of the gram matrix
    Vector lambda;
    double alpha = 1.0;
    double beta = 1.0;
    double y_mean = 0.0;
    double y_scale = 1.0;
  };

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

  Vector features(const Vector& x) const {
    const Vector u = bounds_.to_unit(x);
    Vector phi(static_cast<Eigen::Index>(exponents_.size()));
    for (std::size_t t = 0; t < exponents_.size(); ++t) {
      double value = 1.0;
      for (std::size_t i = 0; i < exponents_[t].size(); ++i)
        for (int e = 0; e < exponents_[t][i]; ++e) value *= u[static_cast<Eigen::Index>(i)];
      phi[static_cast<Eigen::Index>(t)] = value;
    }
    return phi;
  }

  ObjectiveModel fit_objective(const Eigen::MatrixXd& phi, const Eigen::MatrixXd& v,
                               const Vector& lambda, const Vector& y_raw) const {
    ObjectiveModel m;
    m.basis = v;
    m.lambda = lambda;
    m.y_mean = y_raw.mean();
    const double var = (y_raw.array() - m.y_mean).square().sum() / y_raw.size();
    m.y_scale = std::max(std::sqrt(var), 1e-12);
    const Vector y = (y_raw.array() - m.y_mean) / m.y_scale;

    const Vector phity = v.transpose() * (phi.transpose() * y);
    const double n_samples = static_cast<double>(phi.rows());

    double alpha = 1.0, beta = 1.0;
    Vector weights_eig;
    for (int it = 0; it < 100; ++it) {
      weights_eig =
          (beta * phity.array() / (alpha + beta * lambda.array())).matrix();
      double gamma_eff = 0.0;
      for (Eigen::Index i = 0; i < lambda.size(); ++i)
        gamma_eff += beta * lambda[i] / (alpha + beta * lambda[i]);
      const Vector w = v * weights_eig;
      const double rss = (y - phi * w).squaredNorm();
      const double alpha_new = gamma_eff / std::max(w.squaredNorm(), 1e-12);
      const double beta_new =
          std::max(n_samples - gamma_eff, 1e-6) / std::max(rss, 1e-12);
      const bool converged = std::abs(alpha_new - alpha) < 1e-6 * alpha &&
                             std::abs(beta_new - beta) < 1e-6 * beta;
      alpha = alpha_new;
      beta = beta_new;
      if (converged) break;
    }
    m.alpha = alpha;
    m.beta = beta;
    m.weights = v * weights_eig;
    return m;
  }

  Bounds bounds_;
  std::vector<std::vector<int>> exponents_;
  std::vector<ObjectiveModel> models_;
};

}  // namespace

std::unique_ptr<Regressor> make_bayes_ridge_regressor(
    const std::vector<std::pair<Vector, Vector>>& xy, const RegressorOptions& opts) {
  return std::make_unique<BayesRidgeRegressor>(xy, opts);
}

std::unique_ptr<Regressor> make_gp_regressor(
    const std::vector<std::pair<Vector, Vector>>& xy, const RegressorOptions& opts);

std::unique_ptr<Regressor> fit_regressor(
    const std::vector<std::pair<Vector, Vector>>& xy, RegressorKind kind,
    const RegressorOptions& opts) {
  if (xy.size() < 2) throw NotEnoughData("fit_regressor: at least 2 samples required");
  for (const auto& [x, y] : xy)
    require(x.size() == xy.front().first.size() && y.size() == xy.front().second.size(),
            "fit_regressor: inconsistent dimensions");
  if (opts.bounds)
    for (const auto& [x, y] : xy)
      require(opts.bounds->contains(x, 1e-9), "fit_regressor: sample outside bounds");
  if (kind == RegressorKind::kGpMatern) return make_gp_regressor(xy, opts);
  return make_bayes_ridge_regressor(xy, opts);
}

}  // namespace mobo
