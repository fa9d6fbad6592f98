// Minimal NSGA-II with binary-feasibility constrained domination: feasible
// individuals always dominate infeasible ones, infeasible individuals carry
// no objectives and are ranked behind every feasible front with random
// tie-breaking.
#include "mobo/evaluation.hpp"

#include "mobo/pareto.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>

namespace mobo {

namespace {

using Clock = std::chrono::steady_clock;

struct Individual {
  Sample sample;
  int rank = 0;
  double crowding = 0.0;
};

bool constrained_dominates(const Individual& a, const Individual& b) {
  if (a.sample.feasible() && !b.sample.feasible()) return true;
  if (!a.sample.feasible()) return false;
  if (!b.sample.feasible()) return true;
  return dominates(a.sample.objectives(), b.sample.objectives());
}

std::vector<std::vector<std::size_t>> nondominated_sort(std::vector<Individual>& pop) {
  const std::size_t n = pop.size();
  std::vector<int> dominated_count(n, 0);
  std::vector<std::vector<std::size_t>> dominates_list(n);
  std::vector<std::vector<std::size_t>> fronts(1);

  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      if (constrained_dominates(pop[i], pop[j])) dominates_list[i].push_back(j);
      else if (constrained_dominates(pop[j], pop[i])) ++dominated_count[i];
    }
    if (dominated_count[i] == 0) {
      pop[i].rank = 0;
      fronts[0].push_back(i);
    }
  }
  std::size_t current = 0;
  while (current < fronts.size() && !fronts[current].empty()) {
    std::vector<std::size_t> next;
    for (std::size_t i : fronts[current]) {
      for (std::size_t j : dominates_list[i]) {
        if (--dominated_count[j] == 0) {
          pop[j].rank = static_cast<int>(current) + 1;
          next.push_back(j);
        }
      }
    }
    if (next.empty()) break;
    fronts.push_back(std::move(next));
    ++current;
  }
  return fronts;
}

void assign_crowding(std::vector<Individual>& pop, const std::vector<std::size_t>& front,
                     std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  if (front.empty()) return;
  if (!pop[front.front()].sample.feasible()) {
    // No objective payload to crowd on; random values break the ties.
    for (std::size_t i : front) pop[i].crowding = u01(rng);
    return;
  }
  for (std::size_t i : front) pop[i].crowding = 0.0;
  const Eigen::Index n_obj = pop[front.front()].sample.objectives().size();
  std::vector<std::size_t> order(front);
  for (Eigen::Index m = 0; m < n_obj; ++m) {
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return pop[a].sample.objectives()[m] < pop[b].sample.objectives()[m];
    });
    const double lo = pop[order.front()].sample.objectives()[m];
    const double hi = pop[order.back()].sample.objectives()[m];
    pop[order.front()].crowding = std::numeric_limits<double>::infinity();
    pop[order.back()].crowding = std::numeric_limits<double>::infinity();
    if (hi - lo <= 0.0) continue;
    for (std::size_t t = 1; t + 1 < order.size(); ++t)
      pop[order[t]].crowding += (pop[order[t + 1]].sample.objectives()[m] -
                                 pop[order[t - 1]].sample.objectives()[m]) /
                                (hi - lo);
  }
}

// Simulated binary crossover on one variable pair.
std::pair<double, double> sbx_pair(double a, double b, double lo, double hi, double eta,
                                   std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  const double u = u01(rng);
  const double beta = (u <= 0.5) ? std::pow(2.0 * u, 1.0 / (eta + 1.0))
                                 : std::pow(1.0 / (2.0 * (1.0 - u)), 1.0 / (eta + 1.0));
  double c1 = 0.5 * ((1 + beta) * a + (1 - beta) * b);
  double c2 = 0.5 * ((1 - beta) * a + (1 + beta) * b);
  return {std::clamp(c1, lo, hi), std::clamp(c2, lo, hi)};
}

void polynomial_mutation(Vector& x, const Bounds& bounds, double rate, double eta,
                         std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  for (Eigen::Index j = 0; j < x.size(); ++j) {
    if (u01(rng) >= rate) continue;
    const double lo = bounds.lo[j], hi = bounds.hi[j];
    const double u = u01(rng);
    const double delta = (u < 0.5)
                             ? std::pow(2.0 * u, 1.0 / (eta + 1.0)) - 1.0
                             : 1.0 - std::pow(2.0 * (1.0 - u), 1.0 / (eta + 1.0));
    x[j] = std::clamp(x[j] + delta * (hi - lo), lo, hi);
  }
}

}  // namespace

NsgaiiResult nsgaii_run(const BlackBox& problem, const NsgaiiOptions& opts,
                        const Dataset& initial) {
  require(opts.population >= 4 && opts.population % 2 == 0,
          "nsgaii_run: population >= 4 and even required");
  opts.stop.validate();
  std::mt19937_64 rng(opts.seed);
  std::uniform_real_distribution<double> u01(0.0, 1.0);

  NsgaiiResult result;
  result.record.algorithm = "nsgaii";
  result.record.n_seq = opts.population;

  const auto run_start = Clock::now();
  double eval_time = 0.0;
  auto evaluate = [&](const Vector& x) {
    const auto t0 = Clock::now();
    Sample s = problem.evaluate(x);
    eval_time += std::chrono::duration<double>(Clock::now() - t0).count();
    result.dataset.append(s);
    return s;
  };
  auto pure_time = [&]() {
    return std::chrono::duration<double>(Clock::now() - run_start).count() - eval_time;
  };
  auto current_dv = [&]() {
    if (opts.reference_volume <= 0.0) return std::numeric_limits<double>::quiet_NaN();
    const double hv = hypervolume(result.dataset.feasible_objectives(), opts.y_ref);
    return std::min(hv / opts.reference_volume, 1.0);
  };

  // Population: the shared initial dataset first, uniform fills after.
  std::vector<Individual> pop;
  for (std::size_t i = 0; i < initial.size() &&
                          pop.size() < static_cast<std::size_t>(opts.population);
       ++i) {
    result.dataset.append(initial[i]);
    pop.push_back({initial[i], 0, 0.0});
  }
  const Eigen::Index d = problem.bounds.dim();
  while (pop.size() < static_cast<std::size_t>(opts.population)) {
    Vector u(d);
    for (Eigen::Index j = 0; j < d; ++j) u[j] = u01(rng);
    pop.push_back({evaluate(problem.bounds.from_unit(u)), 0, 0.0});
  }
  {
    auto fronts = nondominated_sort(pop);
    for (const auto& f : fronts) assign_crowding(pop, f, rng);
  }

  require(opts.reference_volume > 0.0 || !opts.stop.target_relative_volume,
          "nsgaii_run: target_relative_volume needs a reference volume");

  int generation = 0;
  result.record.rows.push_back(
      {generation, result.dataset.size(), current_dv(), pure_time(), 0.0, 0.0});

  auto tournament = [&](const Individual& a, const Individual& b) -> const Individual& {
    if (a.rank != b.rank) return a.rank < b.rank ? a : b;
    if (a.crowding != b.crowding) return a.crowding > b.crowding ? a : b;
    return u01(rng) < 0.5 ? a : b;
  };

  auto should_stop = [&]() {
    if (opts.stop.max_evaluations && result.dataset.size() >= *opts.stop.max_evaluations)
      return true;
    if (opts.stop.target_relative_volume &&
        result.record.rows.back().dv >= *opts.stop.target_relative_volume)
      return true;
    return false;
  };

  std::uniform_int_distribution<int> pick(0, opts.population - 1);
  while (!should_stop()) {
    std::vector<Individual> offspring;
    offspring.reserve(static_cast<std::size_t>(opts.population));
    while (offspring.size() < static_cast<std::size_t>(opts.population)) {
      const Individual& p1 = tournament(pop[static_cast<std::size_t>(pick(rng))],
                                        pop[static_cast<std::size_t>(pick(rng))]);
      const Individual& p2 = tournament(pop[static_cast<std::size_t>(pick(rng))],
                                        pop[static_cast<std::size_t>(pick(rng))]);
      Vector c1 = p1.sample.x, c2 = p2.sample.x;
      if (u01(rng) < opts.crossover_rate) {
        for (Eigen::Index j = 0; j < d; ++j) {
          if (u01(rng) < 0.5) continue;
          std::tie(c1[j], c2[j]) = sbx_pair(c1[j], c2[j], problem.bounds.lo[j],
                                            problem.bounds.hi[j], opts.crossover_eta,
                                            rng);
        }
      }
      const double mutation_rate = 1.0 / static_cast<double>(d);
      polynomial_mutation(c1, problem.bounds, mutation_rate, opts.mutation_eta, rng);
      polynomial_mutation(c2, problem.bounds, mutation_rate, opts.mutation_eta, rng);
      offspring.push_back({evaluate(c1), 0, 0.0});
      if (offspring.size() < static_cast<std::size_t>(opts.population))
        offspring.push_back({evaluate(c2), 0, 0.0});
    }

    std::vector<Individual> combined = pop;
    combined.insert(combined.end(), offspring.begin(), offspring.end());
    auto fronts = nondominated_sort(combined);
    for (const auto& f : fronts) assign_crowding(combined, f, rng);

    std::vector<Individual> next;
    next.reserve(static_cast<std::size_t>(opts.population));
    for (const auto& f : fronts) {
      if (next.size() + f.size() <= static_cast<std::size_t>(opts.population)) {
        for (std::size_t i : f) next.push_back(combined[i]);
      } else {
        std::vector<std::size_t> sorted(f);
        std::sort(sorted.begin(), sorted.end(), [&](std::size_t a, std::size_t b) {
          return combined[a].crowding > combined[b].crowding;
        });
        for (std::size_t i : sorted) {
          if (next.size() == static_cast<std::size_t>(opts.population)) break;
          next.push_back(combined[i]);
        }
      }
      if (next.size() == static_cast<std::size_t>(opts.population)) break;
    }
    pop = std::move(next);
    ++generation;
    result.record.rows.push_back(
        {generation, result.dataset.size(), current_dv(), pure_time(), 0.0, 0.0});
  }

  result.front = pareto_subset(result.dataset.feasible_objectives());
  return result;
}

}  // namespace mobo
