// Feasibility classifier: Laplace-approximated Gaussian process classifier
// with an RBF kernel, hyperparameters picked by the Laplace marginal
// likelihood. The predictive probability shrinks toward 1/2 wherever the
// latent posterior is uncertain, so the feasibility entropy stays informative
// in unexplored regions.
#include "mobo/surrogates.hpp"

#include <Eigen/Cholesky>

#include <algorithm>
#include <cmath>
#include <vector>

namespace mobo {

namespace {

constexpr double kJitter = 1e-8;

double sigmoid(double t) {
  if (t >= 0.0) return 1.0 / (1.0 + std::exp(-t));
  const double e = std::exp(t);
  return e / (1.0 + e);
}

class ConstantClassifier final : public Classifier {
 public:
  explicit ConstantClassifier(double p) : p_(p) {}
  double predict_feasible(const Vector&) const override { return p_; }

 private:
  double p_;
};

struct LaplaceFit {
  Vector f_hat;        // latent posterior mode
  Vector grad;         // t - sigmoid(f_hat), the prediction weights
  Vector sqrt_w;       // sqrt of the likelihood curvature at the mode
  Eigen::MatrixXd chol_b;  // lower factor of I + sqrtW K sqrtW
  double log_marginal = -std::numeric_limits<double>::infinity();
};

Eigen::MatrixXd rbf_kernel(const Eigen::MatrixXd& x, double length, double sf2) {
  const Eigen::Index k = x.rows();
  Eigen::MatrixXd kmat(k, k);
  const double inv = 1.0 / (2.0 * length * length);
  for (Eigen::Index i = 0; i < k; ++i) {
    kmat(i, i) = sf2 + kJitter;
    for (Eigen::Index j = 0; j < i; ++j)
      kmat(i, j) = kmat(j, i) =
          sf2 * std::exp(-(x.row(i) - x.row(j)).squaredNorm() * inv);
  }
  return kmat;
}

// Newton iteration for the posterior mode (the usual stabilized form built
// on the Cholesky factor of I + sqrtW K sqrtW).
LaplaceFit laplace_mode(const Eigen::MatrixXd& kmat, const Vector& t) {
  const Eigen::Index k = t.size();
  LaplaceFit fit;
  Vector f = Vector::Zero(k);
  Vector a = Vector::Zero(k);
  for (int it = 0; it < 40; ++it) {
    Vector p(k), w(k);
    for (Eigen::Index i = 0; i < k; ++i) {
      p[i] = sigmoid(f[i]);
      w[i] = std::max(p[i] * (1.0 - p[i]), 1e-10);
    }
    const Vector sqrt_w = w.cwiseSqrt();
    Eigen::MatrixXd b = Eigen::MatrixXd::Identity(k, k);
    b.noalias() += sqrt_w.asDiagonal() * kmat * sqrt_w.asDiagonal();
    Eigen::LLT<Eigen::MatrixXd> llt(b);
    if (llt.info() != Eigen::Success) break;

    const Vector rhs = w.cwiseProduct(f) + (t - p);
    const Vector kb = kmat * rhs;
    const Vector inner = llt.solve(sqrt_w.cwiseProduct(kb));
    a = rhs - sqrt_w.cwiseProduct(inner);
    const Vector f_new = kmat * a;
    const double shift = (f_new - f).lpNorm<Eigen::Infinity>();
    f = f_new;

    if (shift < 1e-9 || it == 39) {
      double log_lik = 0.0;
      for (Eigen::Index i = 0; i < k; ++i) {
        const double pi = std::clamp(sigmoid(f[i]), 1e-15, 1.0 - 1e-15);
        log_lik += t[i] * std::log(pi) + (1.0 - t[i]) * std::log(1.0 - pi);
      }
      double log_det = 0.0;
      for (Eigen::Index i = 0; i < k; ++i) log_det += std::log(llt.matrixL()(i, i));
      fit.f_hat = f;
      fit.sqrt_w = sqrt_w;
      fit.chol_b = llt.matrixL();
      fit.log_marginal = -0.5 * a.dot(f) + log_lik - log_det;
      break;
    }
  }
  if (fit.f_hat.size() == 0) {
    fit.f_hat = f;
    fit.sqrt_w = Vector::Constant(k, 0.5);
    fit.chol_b = Eigen::MatrixXd::Identity(k, k);
  }
  Vector p(k);
  for (Eigen::Index i = 0; i < k; ++i) p[i] = sigmoid(fit.f_hat[i]);
  fit.grad = t - p;
  return fit;
}

class GpcClassifier final : public Classifier {
 public:
  GpcClassifier(const std::vector<std::pair<Vector, Feasibility>>& xf,
                const ClassifierOptions& opts) {
    const Eigen::Index k = static_cast<Eigen::Index>(xf.size());
    const Eigen::Index d = xf.front().first.size();
    bounds_ = opts.bounds ? *opts.bounds : data_bounds(xf);

    x_scaled_.resize(k, d);
    labels_.resize(k);
    for (Eigen::Index i = 0; i < k; ++i) {
      x_scaled_.row(i) = bounds_.to_unit(xf[static_cast<std::size_t>(i)].first);
      labels_[i] = is_feasible(xf[static_cast<std::size_t>(i)].second) ? 1.0 : 0.0;
    }

    // Length-scales capped well below the domain diameter: a near-global
    // kernel flattens the probability field at the class prior, which both
    // erases the "unexplored means uncertain" signal and lets single new
    // samples change almost nothing.
    const double dim_scale = std::sqrt(static_cast<double>(d) / 2.0);
    std::vector<std::pair<double, double>> grid;
    if (opts.warm_length > 0.0 && opts.warm_signal > 0.0) {
      grid.emplace_back(opts.warm_length, opts.warm_signal);
    } else {
      for (double l : {0.05, 0.1, 0.2, 0.4})
        for (double sf : {1.5, 3.0, 6.0}) grid.emplace_back(l * dim_scale, sf);
    }

    double best = -std::numeric_limits<double>::infinity();
    for (const auto& [length, signal] : grid) {
      const Eigen::MatrixXd kmat = rbf_kernel(x_scaled_, length, signal * signal);
      LaplaceFit fit = laplace_mode(kmat, labels_);
      if (fit.log_marginal > best) {
        best = fit.log_marginal;
        length_ = length;
        signal_ = signal;
        fit_ = std::move(fit);
      }
    }
  }

  double predict_feasible(const Vector& x) const override {
    const Vector xs = bounds_.to_unit(x);
    const Eigen::Index k = x_scaled_.rows();
    const double sf2 = signal_ * signal_;
    const double inv = 1.0 / (2.0 * length_ * length_);
    Vector kstar(k);
    for (Eigen::Index i = 0; i < k; ++i)
      kstar[i] =
          sf2 * std::exp(-(x_scaled_.row(i).transpose() - xs).squaredNorm() * inv);
    const double mean = kstar.dot(fit_.grad);
    const Vector v = fit_.chol_b.triangularView<Eigen::Lower>().solve(
        fit_.sqrt_w.cwiseProduct(kstar));
    const double var = std::max(sf2 + kJitter - v.squaredNorm(), 0.0);
    // Probit-style squashing of the latent Gaussian through the sigmoid.
    return sigmoid(mean / std::sqrt(1.0 + M_PI * var / 8.0));
  }

  std::pair<double, double> kernel_hyperparameters() const override {
    return {length_, signal_};
  }

 private:
  static Bounds data_bounds(const std::vector<std::pair<Vector, Feasibility>>& xf) {
    Vector lo = xf.front().first, hi = xf.front().first;
    for (const auto& [x, f] : xf) {
      lo = lo.cwiseMin(x);
      hi = hi.cwiseMax(x);
    }
    for (Eigen::Index i = 0; i < lo.size(); ++i)
      if (hi[i] - lo[i] < 1e-12) hi[i] = lo[i] + 1.0;
    return {lo, hi};
  }

  Bounds bounds_;
  Eigen::MatrixXd x_scaled_;
  Vector labels_;
  LaplaceFit fit_;
  double length_ = 0.4;
  double signal_ = 3.0;
};

}  // namespace

std::unique_ptr<Classifier> fit_classifier(
    const std::vector<std::pair<Vector, Feasibility>>& xf,
    const ClassifierOptions& opts) {
  if (xf.empty()) throw NotEnoughData("fit_classifier: at least 1 sample required");
  std::size_t feasible = 0;
  for (const auto& [x, f] : xf)
    if (is_feasible(f)) ++feasible;
  if (feasible == 0 || feasible == xf.size()) {
    const double k = static_cast<double>(xf.size());
    return std::make_unique<ConstantClassifier>((static_cast<double>(feasible) + 1.0) /
                                                (k + 2.0));
  }
  return std::make_unique<GpcClassifier>(xf, opts);
}

}  // namespace mobo
