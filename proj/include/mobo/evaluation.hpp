// evaluation.hpp - performance metrics, the NSGA-II comparison baseline and
// the Monte-Carlo / quadrature oracles backing the closed forms.
#pragma once

#include "mobo/optimizer.hpp"
#include "mobo/problems.hpp"
#include "mobo/types.hpp"

#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

namespace mobo {

struct RunRecord {
  std::string algorithm;
  int n_seq = 1;  // points suggested per iteration (population for nsgaii)
  std::vector<IterationRow> rows;
};

// Serialized as CSV with the fixed header iter,evals,dv,t_pure_s,t_model_s,t_acq_s.
void write_run_record_csv(const RunRecord& record, const std::string& path);

// hypervolume(Pareto(D_y*), ref) / true_volume, clipped into [0, 1].
double relative_dominated_volume(const std::vector<Vector>& feasible_objectives,
                                 const Vector& ref, double true_volume);

// T_sim * ceil(n_seq / n_sim) * n_iter + t_pure.
double effective_runtime(int n_seq, int n_sim, int n_iter, double t_sim, double t_pure);

struct BreakEvenResult {
  double delta_v = 0.0;
  int iters_adaptive = 0;
  int iters_baseline = 0;
  double t_adaptive = 0.0;
  double t_baseline = 0.0;
  double tau = 0.0;  // seconds of simulation time per evaluation
};

// Break-even simulation time at n_sim = 1 between an adaptive record and the
// evolutionary baseline, at quality threshold delta_v. Throws
// ThresholdUnreached when a record never reaches the threshold and
// NotApplicable when the baseline does not need more evaluations.
BreakEvenResult break_even_time(const RunRecord& adaptive, const RunRecord& baseline,
                                double delta_v);

struct NsgaiiOptions {
  int population = 50;  // >= 4, even
  StoppingCriterion stop;
  std::uint64_t seed = 0;
  // Both present -> per-generation relative-volume tracking.
  double reference_volume = 0.0;
  Vector y_ref;
  double crossover_rate = 0.9;
  double crossover_eta = 15.0;
  double mutation_eta = 20.0;  // mutation rate defaults to 1/d
};

struct NsgaiiResult {
  RunRecord record;
  Dataset dataset;                // every evaluation performed
  std::vector<Vector> front;      // feasible Pareto subset of the dataset
};

// Constrained-domination NSGA-II over the binary feasibility signal:
// feasible individuals always dominate infeasible ones; infeasible ties are
// broken randomly. Seeded from the same initial dataset as the adaptive runs.
NsgaiiResult nsgaii_run(const BlackBox& problem, const NsgaiiOptions& opts,
                        const Dataset& initial);

struct OracleEstimate {
  double estimate = 0.0;
  double std_error = 0.0;
};

// Sample mean of the hypervolume improvement over predictive-density draws.
OracleEstimate oracle_mc_evi(const std::vector<Vector>& front, const Vector& ref,
                             const NormalPrediction& pred, int draws,
                             std::mt19937_64& rng);

// Fraction of predictive-density draws not dominated by any point of front.
// The standard error uses add-one smoothing so degenerate 0/1 outcomes keep
// a usable scale.
OracleEstimate oracle_mc_pnd(const std::vector<Vector>& front,
                             const NormalPrediction& pred, int draws,
                             std::mt19937_64& rng);

// Adaptive Simpson quadrature oracles for the Gaussian moment integrals,
// integrated in standardized coordinates. sigma = 0 falls back to the
// analytic point-mass value.
double oracle_quadrature_i1(double a, double b, double c, double mu, double sigma);
double oracle_quadrature_i2(double b, double c, double mu, double sigma);
double oracle_quadrature_i3(double a, double b, double mu, double sigma);

// Uniform-sampling hypervolume estimate over the [min, ref] bounding box.
OracleEstimate oracle_mc_hypervolume(const std::vector<Vector>& front,
                                     const Vector& ref, int draws,
                                     std::mt19937_64& rng);

}  // namespace mobo
