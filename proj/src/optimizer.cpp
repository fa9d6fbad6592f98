#include "mobo/optimizer.hpp"

#include "mobo/pareto.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

namespace mobo {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

// best/1/bin differential evolution in unit coordinates, maximizing.
struct DeResult {
  Vector x;  // unit coordinates
  double value;
};

DeResult differential_evolution(const std::function<double(const Vector&)>& f_unit,
                                int dims, std::mt19937_64& rng,
                                const DifferentialEvolutionOptions& opts) {
  const int np = opts.population > 0 ? std::max(opts.population, 4)
                                     : std::min(15 * dims, 120);
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  std::uniform_int_distribution<int> pick(0, np - 1);
  std::uniform_int_distribution<int> pick_dim(0, dims - 1);

  std::vector<Vector> pop(static_cast<std::size_t>(np));
  std::vector<double> score(static_cast<std::size_t>(np));
  int best = 0;
  for (int i = 0; i < np; ++i) {
    Vector x(dims);
    for (int j = 0; j < dims; ++j) x[j] = u01(rng);
    pop[static_cast<std::size_t>(i)] = x;
    score[static_cast<std::size_t>(i)] = f_unit(x);
    if (score[static_cast<std::size_t>(i)] > score[static_cast<std::size_t>(best)])
      best = i;
  }

  Vector trial(dims);
  for (int gen = 0; gen < opts.generations; ++gen) {
    const double weight =
        opts.dither_min + (opts.dither_max - opts.dither_min) * u01(rng);
    for (int i = 0; i < np; ++i) {
      int r1 = pick(rng), r2 = pick(rng);
      while (r1 == i) r1 = pick(rng);
      while (r2 == i || r2 == r1) r2 = pick(rng);
      const int jrand = pick_dim(rng);
      const Vector& xi = pop[static_cast<std::size_t>(i)];
      const Vector& xb = pop[static_cast<std::size_t>(best)];
      const Vector& a = pop[static_cast<std::size_t>(r1)];
      const Vector& b = pop[static_cast<std::size_t>(r2)];
      for (int j = 0; j < dims; ++j) {
        if (u01(rng) < opts.crossover || j == jrand)
          trial[j] = std::clamp(xb[j] + weight * (a[j] - b[j]), 0.0, 1.0);
        else
          trial[j] = xi[j];
      }
      const double v = f_unit(trial);
      if (v > score[static_cast<std::size_t>(i)]) {
        pop[static_cast<std::size_t>(i)] = trial;
        score[static_cast<std::size_t>(i)] = v;
        if (v > score[static_cast<std::size_t>(best)]) best = i;
      }
    }
  }
  return {pop[static_cast<std::size_t>(best)], score[static_cast<std::size_t>(best)]};
}

// Projected quasi-Newton ascent with central finite differences, budgeted by
// objective evaluations. Falls back to the incumbent if no progress is made.
DeResult polish_bounded(const std::function<double(const Vector&)>& f_unit,
                        DeResult incumbent, const PolishOptions& opts) {
  const int dims = static_cast<int>(incumbent.x.size());
  int evals_left = opts.budget;
  Vector x = incumbent.x;
  double fx = incumbent.value;

  Eigen::MatrixXd hessian_inv = Eigen::MatrixXd::Identity(dims, dims);
  Vector grad(dims), grad_prev(dims);
  bool have_prev = false;
  Vector x_prev = x;

  auto gradient = [&](const Vector& at) {
    Vector g(dims);
    for (int j = 0; j < dims; ++j) {
      Vector hi = at, lo = at;
      hi[j] = std::min(at[j] + opts.fd_step, 1.0);
      lo[j] = std::max(at[j] - opts.fd_step, 0.0);
      const double denom = hi[j] - lo[j];
      g[j] = denom > 0 ? (f_unit(hi) - f_unit(lo)) / denom : 0.0;
      evals_left -= 2;
    }
    return g;
  };

  while (evals_left > 2 * dims) {
    grad = gradient(x);
    if (have_prev) {
      const Vector s = x - x_prev;
      const Vector yv = grad_prev - grad;  // ascent: sign-flipped secant pair
      const double sy = s.dot(yv);
      if (sy > 1e-12) {
        const Vector hy = hessian_inv * yv;
        hessian_inv += ((sy + yv.dot(hy)) / (sy * sy)) * (s * s.transpose()) -
                       (hy * s.transpose() + s * hy.transpose()) / sy;
      }
    }
    Vector direction = hessian_inv * grad;
    if (direction.dot(grad) <= 0.0) direction = grad;
    const double dnorm = direction.norm();
    if (dnorm < 1e-14) break;

    double step = std::min(0.25 / dnorm, 1.0);
    bool improved = false;
    while (evals_left > 0) {
      Vector candidate = (x + step * direction).cwiseMax(0.0).cwiseMin(1.0);
      const double fc = f_unit(candidate);
      --evals_left;
      if (fc > fx + 1e-14) {
        x_prev = x;
        grad_prev = grad;
        have_prev = true;
        x = candidate;
        fx = fc;
        improved = true;
        break;
      }
      step *= 0.5;
      if (step * dnorm < 1e-10) break;
    }
    if (!improved) break;
  }
  if (fx > incumbent.value) return {x, fx};
  return incumbent;
}

}  // namespace

Vector maximize_acquisition(const std::function<double(const Vector&)>& af,
                            const Bounds& bounds, std::mt19937_64& rng,
                            const DifferentialEvolutionOptions& de_opts,
                            const PolishOptions& polish_opts) {
  const int dims = static_cast<int>(bounds.dim());
  auto f_unit = [&](const Vector& u) { return af(bounds.from_unit(u)); };
  DeResult best = differential_evolution(f_unit, dims, rng, de_opts);
  best = polish_bounded(f_unit, std::move(best), polish_opts);
  return bounds.from_unit(best.x);
}

SuggestionBatch suggestion_sequence(const Classifier& classifier,
                                    const Regressor* regressor, const Dataset& data,
                                    const AcquisitionConfig& cfg, const Bounds& bounds,
                                    int n_seq, std::mt19937_64& rng,
                                    const DifferentialEvolutionOptions& de_opts,
                                    const PolishOptions& polish_opts) {
  require(n_seq >= 1, "suggestion_sequence: n_seq >= 1 required");
  SuggestionBatch batch;
  std::vector<Vector> explored = data.xs();
  std::vector<Vector> feasible = data.feasible_objectives();

  for (int k = 0; k < n_seq; ++k) {
    AcquisitionEvaluator eval(&classifier, regressor, explored, feasible, cfg, bounds);
    const Vector x = maximize_acquisition(
        [&eval](const Vector& p) { return eval.acquisition(p); }, bounds, rng, de_opts,
        polish_opts);

    FantasyRecord fantasy;
    fantasy.x = x;
    fantasy.f_hat = expected_feasibility(classifier, x);
    if (regressor != nullptr) fantasy.y_hat = expected_objectives(*regressor, x);

    explored.push_back(x);
    if (fantasy.y_hat && fantasy.f_hat >= 0.5) feasible.push_back(*fantasy.y_hat);

    batch.points.push_back(x);
    batch.fantasies.push_back(std::move(fantasy));
  }
  return batch;
}

Dataset initial_calculation(const BlackBox& problem, int n0, std::mt19937_64& rng) {
  require(n0 >= 1, "initial_calculation: n0 >= 1 required");
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  Dataset data;
  const Eigen::Index d = problem.initial_domain.dim();
  for (int i = 0; i < n0; ++i) {
    Vector u(d);
    for (Eigen::Index j = 0; j < d; ++j) u[j] = u01(rng);
    data.append(problem.evaluate(problem.initial_domain.from_unit(u)));
  }
  return data;
}

OptimizeResult optimize(const BlackBox& problem, const AdaptiveOptions& opts) {
  opts.stop.validate();
  opts.acquisition.validate();
  std::mt19937_64 rng(opts.seed);

  RunState state;
  double t_pure = 0.0;

  state.dataset = initial_calculation(problem, opts.n0, rng);

  auto current_dv = [&]() {
    if (opts.reference_volume <= 0.0) return std::numeric_limits<double>::quiet_NaN();
    const double hv =
        hypervolume(state.dataset.feasible_objectives(), opts.acquisition.y_ref);
    return std::min(hv / opts.reference_volume, 1.0);
  };

  state.rows.push_back({0, state.dataset.size(), current_dv(), 0.0, 0.0, 0.0});

  auto should_stop = [&]() {
    if (opts.stop.max_evaluations &&
        state.dataset.size() >= *opts.stop.max_evaluations)
      return true;
    if (opts.stop.target_relative_volume) {
      require(opts.reference_volume > 0.0,
              "optimize: target_relative_volume needs a reference volume");
      if (state.rows.back().dv >= *opts.stop.target_relative_volume) return true;
    }
    return false;
  };

  std::vector<Vector> warm_start;
  std::pair<double, double> classifier_warm{0.0, 0.0};
  while (!should_stop()) {
    // UpdateModels: classifier on all samples, regressor on the feasible
    // pairs once at least two exist (lazily before that). Kernel
    // hyperparameters re-select on a coarse cadence and warm-start between.
    const auto t_model_start = Clock::now();
    ClassifierOptions copts;
    copts.bounds = problem.bounds;
    copts.seed = rng();
    if (state.iterations % 8 != 0) {
      copts.warm_length = classifier_warm.first;
      copts.warm_signal = classifier_warm.second;
    }
    auto classifier = fit_classifier(state.dataset.labels(), copts);
    classifier_warm = classifier->kernel_hyperparameters();

    std::unique_ptr<Regressor> regressor;
    const auto pairs = state.dataset.feasible_pairs();
    if (pairs.size() >= 2) {
      RegressorOptions ropts;
      ropts.bounds = problem.bounds;
      ropts.seed = rng();
      ropts.restarts = warm_start.empty() ? opts.fit_restarts_first
                                          : opts.fit_restarts_update;
      ropts.warm_start = warm_start;
      regressor = fit_regressor(pairs, opts.regressor_kind, ropts);
      warm_start = regressor->hyperparameters();
    }
    const double t_model = seconds_since(t_model_start);

    const auto t_acq_start = Clock::now();
    SuggestionBatch batch =
        suggestion_sequence(*classifier, regressor.get(), state.dataset,
                            opts.acquisition, problem.bounds, opts.n_seq, rng,
                            opts.de, opts.polish);
    const double t_acq = seconds_since(t_acq_start);

    // Calculation: the batch is evaluated in suggestion order; evaluation
    // time stays outside the pure-runtime account.
    for (const Vector& x : batch.points) state.dataset.append(problem.evaluate(x));

    ++state.iterations;
    t_pure += t_model + t_acq;
    state.rows.push_back({state.iterations, state.dataset.size(), current_dv(), t_pure,
                          t_model, t_acq});
  }

  OptimizeResult result;
  std::vector<Vector> feasible;
  std::vector<std::size_t> feasible_idx;
  for (std::size_t i = 0; i < state.dataset.size(); ++i) {
    if (state.dataset[i].feasible()) {
      feasible.push_back(state.dataset[i].objectives());
      feasible_idx.push_back(i);
    }
  }
  for (std::size_t j : pareto_indices(feasible)) {
    result.front.push_back(feasible[j]);
    result.front_indices.push_back(feasible_idx[j]);
  }
  result.state = std::move(state);
  return result;
}

}  // namespace mobo
