#include "mobo/acquisition.hpp"

#include "mobo/gaussian.hpp"
#include "mobo/pareto.hpp"

#include <cmath>
#include <limits>

namespace mobo {

double relative_volume_gamma(const std::vector<Vector>& feasible_objectives,
                             const Vector& ref) {
  if (feasible_objectives.empty())
    throw EmptyParetoSet("relative_volume_gamma: empty feasible set");
  const std::vector<Vector> pareto = pareto_subset(feasible_objectives);
  double volume = 1.0;
  for (Eigen::Index i = 0; i < ref.size(); ++i) {
    double best = -std::numeric_limits<double>::infinity();
    for (const auto& y : pareto) best = std::max(best, ref[i] - y[i]);
    volume *= std::max(best, 1e-12);
  }
  return volume;
}

double binary_entropy(double p) {
  require(p >= 0.0 && p <= 1.0, "binary_entropy: p in [0,1] required");
  const double a = (p > 0.0) ? -p * std::log(p) : 0.0;
  const double b = (p < 1.0) ? -(1.0 - p) * std::log(1.0 - p) : 0.0;
  return (a + b) / M_LN2;
}

double p_nondominated_closed_form(const std::vector<Vector>& pareto_front,
                                  const NormalPrediction& pred) {
  double prob = 1.0;
  for (const auto& y : pareto_front) {
    double dominated = 1.0;  // P(yhat_i >= y_i for all i)
    for (Eigen::Index i = 0; i < y.size(); ++i)
      dominated *= normal_sf(y[i], pred.mu[i], pred.sigma[i]);
    prob *= 1.0 - dominated;
  }
  return std::min(std::max(prob, 0.0), 1.0);
}

double p_nondominated(const Regressor& regressor, const Dataset& data, const Vector& x) {
  const std::vector<Vector> pareto = pareto_subset(data.feasible_objectives());
  if (pareto.empty()) return 1.0;
  return p_nondominated_closed_form(pareto, regressor.predict(x));
}

double distance_metric(const Vector& x1, const Vector& x2, double epsilon,
                       const Bounds& bounds) {
  require(x1.size() == x2.size() && x1.size() == bounds.dim(),
          "distance_metric: dimension mismatch");
  if (epsilon == 0.0) return 0.0;
  const double d2 = (bounds.to_unit(x1) - bounds.to_unit(x2)).squaredNorm();
  return 1.0 - std::exp(-epsilon * d2);
}

double repulsion(const std::vector<Vector>& explored, double epsilon, const Vector& x,
                 const Bounds& bounds) {
  require(!explored.empty(), "repulsion: explored set must be non-empty");
  // epsilon = 0 collapses numerator and diameter to zero; defined as 0.
  if (epsilon == 0.0) return 0.0;
  // Distance to the nearest explored point. Taking the farthest instead
  // saturates at the design-space corners and the search keeps resampling
  // them; nearest-point repulsion is what actually spreads the samples.
  double numerator = std::numeric_limits<double>::infinity();
  for (const auto& xp : explored)
    numerator = std::min(numerator, distance_metric(x, xp, epsilon, bounds));
  const double diameter = 1.0 - std::exp(-epsilon * static_cast<double>(bounds.dim()));
  return numerator / diameter;
}

AcquisitionEvaluator::AcquisitionEvaluator(const Classifier* classifier,
                                           const Regressor* regressor,
                                           std::vector<Vector> explored_x,
                                           const std::vector<Vector>& feasible_objectives,
                                           AcquisitionConfig cfg, Bounds bounds)
    : classifier_(classifier),
      regressor_(regressor),
      explored_x_(std::move(explored_x)),
      pareto_(pareto_subset(feasible_objectives)),
      cfg_(std::move(cfg)),
      bounds_(std::move(bounds)) {
  cfg_.validate();
  require(classifier_ != nullptr, "AcquisitionEvaluator: classifier required");
  if (!pareto_.empty() && regressor_ != nullptr) {
    gamma_volume_ = relative_volume_gamma(pareto_, cfg_.y_ref);
    if (cfg_.weights.opt > 0.0) workspace_.emplace(pareto_, cfg_.y_ref);
  }
}

std::optional<NormalPrediction> AcquisitionEvaluator::predict(const Vector& x) const {
  if (regressor_ == nullptr) return std::nullopt;
  return regressor_->predict(x);
}

double AcquisitionEvaluator::p_nd(const NormalPrediction* pred) const {
  if (pareto_.empty() || pred == nullptr) return 1.0;
  return p_nondominated_closed_form(pareto_, *pred);
}

double AcquisitionEvaluator::u_opt(const Vector& x) const {
  if (!workspace_) return 0.0;
  const auto pred = predict(x);
  const double evi = workspace_->evi_truncated(*pred, cfg_.sigma_ref);
  const double feasible = classifier_->predict_feasible(x);
  return feasible * (1.0 - std::exp(-cfg_.gamma * evi / gamma_volume_));
}

double AcquisitionEvaluator::u_con(const Vector& x) const {
  const auto pred = predict(x);
  return p_nd(pred ? &*pred : nullptr) *
         binary_entropy(classifier_->predict_feasible(x));
}

double AcquisitionEvaluator::u_exp(const Vector& x) const {
  const auto pred = predict(x);
  return p_nd(pred ? &*pred : nullptr) *
         repulsion(explored_x_, cfg_.epsilon, x, bounds_);
}

double AcquisitionEvaluator::acquisition(const Vector& x) const {
  const double l1 = cfg_.weights.l1();
  // Zero-weight components are skipped entirely; the prediction is shared by
  // the components that need it.
  std::optional<NormalPrediction> pred;
  if (regressor_ != nullptr &&
      (cfg_.weights.opt > 0 || cfg_.weights.con > 0 || cfg_.weights.exp > 0))
    pred = regressor_->predict(x);
  const double feasible = (cfg_.weights.opt > 0 || cfg_.weights.con > 0)
                              ? classifier_->predict_feasible(x)
                              : 0.0;
  const double pnd = (cfg_.weights.con > 0 || cfg_.weights.exp > 0)
                         ? p_nd(pred ? &*pred : nullptr)
                         : 1.0;

  double total = 0.0;
  if (cfg_.weights.opt > 0 && workspace_) {
    const double evi = workspace_->evi_truncated(*pred, cfg_.sigma_ref);
    total += cfg_.weights.opt * feasible *
             (1.0 - std::exp(-cfg_.gamma * evi / gamma_volume_));
  }
  if (cfg_.weights.con > 0) total += cfg_.weights.con * pnd * binary_entropy(feasible);
  if (cfg_.weights.exp > 0)
    total += cfg_.weights.exp * pnd * repulsion(explored_x_, cfg_.epsilon, x, bounds_);
  return total / l1;
}

double u_opt(const Classifier& classifier, const Regressor& regressor,
             const Dataset& data, const AcquisitionConfig& cfg, const Bounds& bounds,
             const Vector& x) {
  const auto feasible = data.feasible_objectives();
  if (feasible.empty()) throw EmptyParetoSet("u_opt: empty feasible set");
  // Component evaluation ignores the mixing weights; force the workspace on.
  AcquisitionConfig with_opt = cfg;
  with_opt.weights.opt = 1.0;
  AcquisitionEvaluator eval(&classifier, &regressor, data.xs(), feasible, with_opt,
                            bounds);
  return eval.u_opt(x);
}

double u_con(const Classifier& classifier, const Regressor& regressor,
             const Dataset& data, const AcquisitionConfig& cfg, const Bounds& bounds,
             const Vector& x) {
  AcquisitionConfig with_con = cfg;
  with_con.weights.con = 1.0;
  AcquisitionEvaluator eval(&classifier, &regressor, data.xs(),
                            data.feasible_objectives(), with_con, bounds);
  return eval.u_con(x);
}

double u_exp(const Regressor& regressor, const Dataset& data, double epsilon,
             const Bounds& bounds, const Vector& x) {
  const double pnd = p_nondominated(regressor, data, x);
  return pnd * repulsion(data.xs(), epsilon, x, bounds);
}

double acquisition(const Classifier& classifier, const Regressor* regressor,
                   const Dataset& data, const AcquisitionConfig& cfg,
                   const Bounds& bounds, const Vector& x) {
  AcquisitionEvaluator eval(&classifier, regressor, data.xs(),
                            data.feasible_objectives(), cfg, bounds);
  return eval.acquisition(x);
}

}  // namespace mobo
