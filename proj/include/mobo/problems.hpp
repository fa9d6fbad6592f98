// problems.hpp - registry of the six constrained bi-objective benchmark
// problems (BNH, SRN, OSY, CEX, FFF, CIR) with their initial domains,
// reference points and per-problem optimizer defaults, plus numerically
// estimated reference front volumes.
#pragma once

#include "mobo/acquisition.hpp"
#include "mobo/optimizer.hpp"
#include "mobo/surrogates.hpp"
#include "mobo/types.hpp"

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace mobo {

struct BenchmarkProblem {
  std::string name;
  int design_dims = 0;      // d
  int objective_dims = 0;   // n
  int constraint_count = 0; // m
  Bounds bounds;
  Bounds initial_domain;
  int n0 = 10;
  Vector y_ref;
  AcquisitionConfig default_config;
  RegressorKind regressor_kind = RegressorKind::kGpMatern;

  std::function<Vector(const Vector&)> objectives;
  std::function<Vector(const Vector&)> constraints;
  // Feasibility from the constraint values; mutual fulfillment by default.
  std::function<bool(const Vector&)> feasible_rule;

  BlackBox black_box() const;
};

// All m constraints satisfied (c_i <= 0); binary feasibility is the only
// signal the optimizer ever sees.
Sample evaluate(const BenchmarkProblem& problem, const Vector& x);

std::vector<std::string> list_problems();
const BenchmarkProblem& lookup_problem(const std::string& name);

struct TrueFrontReference {
  std::string problem;
  std::uint64_t seed = 0;
  std::int64_t resolution = 0;
  double volume = 0.0;
  std::size_t front_size = 0;
  // Populated on fresh computation; empty when served from the cache file.
  std::vector<Vector> front;
};

// Dense uniform sampling of the full design space, feasibility-filtered,
// Pareto-filtered and measured against y_ref. Results are cached on disk
// keyed by (problem, resolution, seed); pass an empty cache_dir to skip
// caching. resolution <= 0 picks the per-problem default.
TrueFrontReference reference_front_volume(const BenchmarkProblem& problem,
                                          std::int64_t resolution = 0,
                                          std::uint64_t seed = 20240901,
                                          const std::string& cache_dir = "");

}  // namespace mobo
