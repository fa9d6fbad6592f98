// surrogates.hpp - probabilistic models behind the optimization loop: a
// regressor with a separable normal predictive density over the objectives
// and a calibrated probabilistic feasibility classifier.
#pragma once

#include "mobo/types.hpp"

#include <cstdint>
#include <memory>
#include <optional>
#include <utility>
#include <vector>

namespace mobo {

enum class RegressorKind { kGpMatern, kBayesRidgePoly };

struct RegressorOptions {
  // Input scaling box; per-dimension data extent when absent.
  std::optional<Bounds> bounds;
  // Marginal-likelihood multistarts for the GP kernel hyperparameters.
  int restarts = 16;
  // Function-evaluation budget of each gradient-free search restart.
  int search_budget = 0;  // 0 -> 80 * parameter count
  std::uint64_t seed = 0;
  int poly_degree = 3;
  // Previous per-objective log hyperparameters; used as an extra restart.
  std::vector<Vector> warm_start;
};

class Regressor {
 public:
  virtual ~Regressor() = default;
  virtual NormalPrediction predict(const Vector& x) const = 0;
  virtual int objective_count() const = 0;
  // Fitted per-objective log hyperparameters, when the model has any.
  virtual std::vector<Vector> hyperparameters() const { return {}; }
};

inline NormalPrediction predict_density(const Regressor& r, const Vector& x) {
  return r.predict(x);
}

// First moment of the separable normal density: just the predictive mean.
inline Vector expected_objectives(const Regressor& r, const Vector& x) {
  return r.predict(x).mu;
}

class Classifier {
 public:
  virtual ~Classifier() = default;
  virtual double predict_feasible(const Vector& x) const = 0;
  // Fitted kernel hyperparameters (length, signal) when the model has any.
  virtual std::pair<double, double> kernel_hyperparameters() const { return {0, 0}; }
};

// Feasibility expectation with feasible = 1, infeasible = 0.
inline double expected_feasibility(const Classifier& c, const Vector& x) {
  return c.predict_feasible(x);
}

// Requires at least two samples. One independent model per objective.
std::unique_ptr<Regressor> fit_regressor(
    const std::vector<std::pair<Vector, Vector>>& xy, RegressorKind kind,
    const RegressorOptions& opts = {});

struct ClassifierOptions {
  std::optional<Bounds> bounds;
  std::uint64_t seed = 0;
  // Previous kernel hyperparameters; both positive skips the selection grid.
  double warm_length = 0.0;
  double warm_signal = 0.0;
};

// Requires at least one sample. Single-class data yields the constant
// Laplace-smoothed classifier p = (k_feasible + 1) / (k + 2).
std::unique_ptr<Classifier> fit_classifier(
    const std::vector<std::pair<Vector, Feasibility>>& xf,
    const ClassifierOptions& opts = {});

}  // namespace mobo
