// acquisition.hpp - the three-part acquisition function: optimization
// (feasibility-weighted expected hypervolume improvement), constraint finding
// (non-domination-weighted feasibility entropy) and exploration
// (non-domination-weighted repulsion), mixed by nonnegative weights.
#pragma once

#include "mobo/ehvi.hpp"
#include "mobo/surrogates.hpp"
#include "mobo/types.hpp"

#include <optional>
#include <vector>

namespace mobo {

struct AcquisitionWeights {
  double opt = 0.0;
  double con = 0.0;
  double exp = 0.0;

  double l1() const { return opt + con + exp; }
};

struct AcquisitionConfig {
  AcquisitionWeights weights;
  double gamma = 1.0;      // > 0, rescales EVI inside the saturating exponential
  double sigma_ref = 1.0;  // > 0, ellipsoid truncation control
  double epsilon = 0.0;    // >= 0, distance metric control
  Vector y_ref;

  void validate() const {
    require(weights.opt >= 0 && weights.con >= 0 && weights.exp >= 0,
            "AcquisitionConfig: weights >= 0 required");
    require(weights.l1() > 0, "AcquisitionConfig: at least one positive weight");
    require(gamma > 0, "AcquisitionConfig: gamma > 0 required");
    require(sigma_ref > 0, "AcquisitionConfig: sigma_ref > 0 required");
    require(epsilon >= 0, "AcquisitionConfig: epsilon >= 0 required");
  }
};

// Product over dimensions of the largest per-dimension gap between the
// reference point and the Pareto subset, floored at 1e-12 per dimension.
double relative_volume_gamma(const std::vector<Vector>& feasible_objectives,
                             const Vector& ref);

// Shannon entropy of a binary event in bits, with 0 ln 0 = 0.
double binary_entropy(double p);

// Probability that a draw from pred is not dominated by any point of the
// (already Pareto-optimal) front; product of per-point closed forms.
double p_nondominated_closed_form(const std::vector<Vector>& pareto_front,
                                  const NormalPrediction& pred);

double p_nondominated(const Regressor& regressor, const Dataset& data, const Vector& x);

// Exponential-kernel distance on design vectors scaled to the unit cube:
// 1 - exp(-epsilon |u1 - u2|^2); zero when epsilon = 0.
double distance_metric(const Vector& x1, const Vector& x2, double epsilon,
                       const Bounds& bounds);

// Largest metric distance from x to any explored point, normalized by the
// analytic design-space diameter 1 - exp(-epsilon d). Zero when epsilon = 0.
double repulsion(const std::vector<Vector>& explored, double epsilon, const Vector& x,
                 const Bounds& bounds);

// Acquisition function bound to fitted models and a dataset snapshot. The
// regressor may be absent (no two feasible points seen yet); the empty-Pareto
// fallback then sets u_opt = 0 and p_nondominated = 1.
class AcquisitionEvaluator {
 public:
  AcquisitionEvaluator(const Classifier* classifier, const Regressor* regressor,
                       std::vector<Vector> explored_x,
                       const std::vector<Vector>& feasible_objectives,
                       AcquisitionConfig cfg, Bounds bounds);

  double operator()(const Vector& x) const { return acquisition(x); }
  double acquisition(const Vector& x) const;
  double u_opt(const Vector& x) const;
  double u_con(const Vector& x) const;
  double u_exp(const Vector& x) const;

  bool pareto_empty() const { return pareto_.empty(); }
  const std::vector<Vector>& pareto() const { return pareto_; }

 private:
  double p_nd(const NormalPrediction* pred) const;
  std::optional<NormalPrediction> predict(const Vector& x) const;

  const Classifier* classifier_;
  const Regressor* regressor_;
  std::vector<Vector> explored_x_;
  std::vector<Vector> pareto_;
  AcquisitionConfig cfg_;
  Bounds bounds_;
  std::optional<EviWorkspace> workspace_;
  double gamma_volume_ = 1.0;
};

// Free-function forms over a dataset snapshot.
double u_opt(const Classifier& classifier, const Regressor& regressor,
             const Dataset& data, const AcquisitionConfig& cfg, const Bounds& bounds,
             const Vector& x);
double u_con(const Classifier& classifier, const Regressor& regressor,
             const Dataset& data, const AcquisitionConfig& cfg, const Bounds& bounds,
             const Vector& x);
double u_exp(const Regressor& regressor, const Dataset& data, double epsilon,
             const Bounds& bounds, const Vector& x);
double acquisition(const Classifier& classifier, const Regressor* regressor,
                   const Dataset& data, const AcquisitionConfig& cfg,
                   const Bounds& bounds, const Vector& x);

}  // namespace mobo
