// optimizer.hpp - inner acquisition maximization (differential evolution plus
// a bound-constrained quasi-Newton polish) and the outer adaptive loop with
// fantasy-point batch suggestions.
#pragma once

#include "mobo/acquisition.hpp"
#include "mobo/surrogates.hpp"
#include "mobo/types.hpp"

#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <random>
#include <vector>

namespace mobo {

// Black-box problem surface: evaluate must be pure and deterministic.
struct BlackBox {
  Bounds bounds;
  Bounds initial_domain;
  std::function<Sample(const Vector&)> evaluate;
};

struct DifferentialEvolutionOptions {
  int population = 0;  // 0 -> 15 * d, capped at 120
  int generations = 100;
  // Differential weight drawn per generation from [dither_min, dither_max];
  // equal values give a fixed weight. A fixed 0.7 converges prematurely on
  // multimodal landscapes, so the dithered range is the default.
  double dither_min = 0.5;
  double dither_max = 1.0;
  double crossover = 0.9;
};

struct PolishOptions {
  int budget = 200;       // objective evaluations, gradients included
  double fd_step = 1e-6;  // central-difference step in scaled coordinates
};

// Global maximization of af over the box: best/1/bin differential evolution
// followed by a projected quasi-Newton polish. The result never scores below
// the evolutionary incumbent.
Vector maximize_acquisition(const std::function<double(const Vector&)>& af,
                            const Bounds& bounds, std::mt19937_64& rng,
                            const DifferentialEvolutionOptions& de_opts = {},
                            const PolishOptions& polish_opts = {});

struct FantasyRecord {
  Vector x;
  std::optional<Vector> y_hat;  // absent while the regressor is unfit
  double f_hat = 0.0;
};

struct SuggestionBatch {
  std::vector<Vector> points;
  std::vector<FantasyRecord> fantasies;
};

// Iteratively maximizes the acquisition function, appending the model
// prediction of each chosen point to a working copy of the dataset views so
// later maximizations move elsewhere. Models are not refit in the sequence;
// a fantasy objective joins the Pareto view only when f_hat >= 0.5.
SuggestionBatch suggestion_sequence(const Classifier& classifier,
                                    const Regressor* regressor, const Dataset& data,
                                    const AcquisitionConfig& cfg, const Bounds& bounds,
                                    int n_seq, std::mt19937_64& rng,
                                    const DifferentialEvolutionOptions& de_opts = {},
                                    const PolishOptions& polish_opts = {});

// Uniform sampling of the initial domain, evaluated through the black box.
Dataset initial_calculation(const BlackBox& problem, int n0, std::mt19937_64& rng);

struct StoppingCriterion {
  std::optional<std::size_t> max_evaluations;
  std::optional<double> target_relative_volume;  // needs a reference volume

  void validate() const {
    require(max_evaluations.has_value() || target_relative_volume.has_value(),
            "StoppingCriterion: at least one criterion required");
  }
};

struct IterationRow {
  int iter = 0;
  std::size_t evals = 0;
  double dv = std::numeric_limits<double>::quiet_NaN();
  double t_pure_s = 0.0;   // cumulative, excludes black-box evaluation time
  double t_model_s = 0.0;  // per-iteration model fitting time
  double t_acq_s = 0.0;    // per-iteration acquisition maximization time
};

struct RunState {
  Dataset dataset;
  int iterations = 0;
  std::vector<IterationRow> rows;
};

struct AdaptiveOptions {
  AcquisitionConfig acquisition;
  RegressorKind regressor_kind = RegressorKind::kGpMatern;
  int n0 = 10;
  int n_seq = 1;
  StoppingCriterion stop;
  std::uint64_t seed = 0;
  // > 0 enables relative-volume tracking (and the target_relative_volume stop).
  double reference_volume = 0.0;
  DifferentialEvolutionOptions de;
  PolishOptions polish;
  // Hyperparameter search effort: full multistart on the first fit, smaller
  // warm-started searches on the per-iteration refits.
  int fit_restarts_first = 16;
  int fit_restarts_update = 4;
};

struct OptimizeResult {
  std::vector<Vector> front;                // Pareto subset of feasible objectives
  std::vector<std::size_t> front_indices;   // into state.dataset
  RunState state;
};

OptimizeResult optimize(const BlackBox& problem, const AdaptiveOptions& opts);

}  // namespace mobo
