#include "doctest.h"

#include "mobo/evaluation.hpp"
#include "mobo/gaussian.hpp"
#include "mobo/pareto.hpp"

#include <cmath>
#include <random>

using mobo::Dataset;
using mobo::NormalPrediction;
using mobo::RunRecord;
using mobo::Vector;

namespace {

Vector vec2(double a, double b) {
  Vector v(2);
  v << a, b;
  return v;
}

RunRecord record_with(std::string name, int n_seq,
                      std::vector<std::tuple<int, double, double>> rows) {
  RunRecord r;
  r.algorithm = std::move(name);
  r.n_seq = n_seq;
  for (auto& [iter, dv, t] : rows) {
    mobo::IterationRow row;
    row.iter = iter;
    row.evals = static_cast<std::size_t>(iter);
    row.dv = dv;
    row.t_pure_s = t;
    r.rows.push_back(row);
  }
  return r;
}

}  // namespace

TEST_CASE("relative dominated volume") {
  CHECK(mobo::relative_dominated_volume({}, vec2(3, 3), 6.0) == 0.0);
  CHECK(mobo::relative_dominated_volume({vec2(0, 2), vec2(1, 1), vec2(2, 0)},
                                        vec2(3, 3), 6.0) == doctest::Approx(1.0));
  CHECK_THROWS_AS(
      (void)mobo::relative_dominated_volume({vec2(1, 1)}, vec2(3, 3), 0.0),
      mobo::ContractViolation);
}

TEST_CASE("effective runtime arithmetic") {
  CHECK(mobo::effective_runtime(5, 5, 10, 60.0, 12.0) == doctest::Approx(612.0));
  CHECK(mobo::effective_runtime(5, 1, 10, 60.0, 12.0) == doctest::Approx(3012.0));
  CHECK(mobo::effective_runtime(5, 5, 10, 0.0, 12.0) == doctest::Approx(12.0));
  CHECK_THROWS_AS((void)mobo::effective_runtime(5, 0, 10, 60.0, 12.0),
                  mobo::ContractViolation);
}

TEST_CASE("break even time") {
  // adaptive: 40 iterations at n_seq 1, 10 s; baseline: 4 generations of 50,
  // 2 s -> tau = (10 - 2) / (200 - 40) = 0.05.
  RunRecord adaptive = record_with("adaptive-1", 1, {{0, 0.1, 0.0}, {40, 0.85, 10.0}});
  RunRecord baseline = record_with("nsgaii", 50, {{0, 0.1, 0.0}, {4, 0.9, 2.0}});
  const auto r = mobo::break_even_time(adaptive, baseline, 0.8);
  CHECK(r.tau == doctest::Approx(0.05));
  CHECK(r.iters_adaptive == 40);
  CHECK(r.iters_baseline == 4);

  RunRecord same = record_with("nsgaii", 1, {{0, 0.1, 0.0}, {40, 0.9, 2.0}});
  CHECK_THROWS_AS((void)mobo::break_even_time(adaptive, same, 0.8),
                  mobo::NotApplicable);

  RunRecord low = record_with("nsgaii", 50, {{0, 0.1, 0.0}, {4, 0.5, 2.0}});
  CHECK_THROWS_AS((void)mobo::break_even_time(adaptive, low, 0.8),
                  mobo::ThresholdUnreached);
}

TEST_CASE("nsgaii with a zero-generation budget returns the initial pareto subset") {
  const auto& bnh = mobo::lookup_problem("BNH");
  auto box = bnh.black_box();
  std::mt19937_64 rng(31);
  Dataset initial = mobo::initial_calculation(box, 10, rng);

  mobo::NsgaiiOptions opts;
  opts.population = 50;
  opts.stop.max_evaluations = 10;  // already spent by the initial dataset
  opts.seed = 5;
  auto result = mobo::nsgaii_run(box, opts, initial);
  CHECK(result.dataset.size() >= 10);
  CHECK(result.record.rows.size() == 1);
  // Front equals the Pareto subset of what was evaluated.
  const auto expected = mobo::pareto_subset(result.dataset.feasible_objectives());
  CHECK(result.front == expected);
}

TEST_CASE("nsgaii is deterministic and its front is feasible") {
  const auto& bnh = mobo::lookup_problem("BNH");
  auto box = bnh.black_box();
  std::mt19937_64 rng(33);
  Dataset initial = mobo::initial_calculation(box, 10, rng);

  mobo::NsgaiiOptions opts;
  opts.population = 50;
  opts.stop.max_evaluations = 400;
  opts.seed = 7;
  auto a = mobo::nsgaii_run(box, opts, initial);
  auto b = mobo::nsgaii_run(box, opts, initial);
  REQUIRE(a.dataset.size() == b.dataset.size());
  for (std::size_t i = 0; i < a.dataset.size(); ++i)
    CHECK(a.dataset[i].x == b.dataset[i].x);
  CHECK_FALSE(a.front.empty());
}

TEST_CASE("nsgaii eventually reaches a high relative volume on bnh") {
  const auto& bnh = mobo::lookup_problem("BNH");
  auto box = bnh.black_box();
  const auto ref = mobo::reference_front_volume(bnh, 200000, 42);

  std::mt19937_64 rng(35);
  Dataset initial = mobo::initial_calculation(box, 10, rng);

  mobo::NsgaiiOptions opts;
  opts.population = 50;
  opts.stop.max_evaluations = 2500;
  opts.seed = 11;
  opts.reference_volume = ref.volume;
  opts.y_ref = bnh.y_ref;
  auto result = mobo::nsgaii_run(box, opts, initial);
  CHECK(result.record.rows.back().dv >= 0.8);
  // dv never decreases along the archive-based record.
  for (std::size_t i = 1; i < result.record.rows.size(); ++i)
    CHECK(result.record.rows[i].dv >= result.record.rows[i - 1].dv);
}

TEST_CASE("mc evi oracle basics") {
  std::mt19937_64 rng(37);
  NormalPrediction dirac(vec2(1, 1), vec2(0, 0));
  auto at = mobo::oracle_mc_evi({vec2(0, 2), vec2(2, 0)}, vec2(3, 3), dirac, 10000, rng);
  CHECK(at.estimate == doctest::Approx(1.0));
  CHECK(at.std_error == 0.0);
}

TEST_CASE("mc oracles converge at the square-root rate") {
  std::mt19937_64 rng(41);
  NormalPrediction pred(vec2(0.4, 0.6), vec2(0.3, 0.4));
  const std::vector<Vector> front = {vec2(0.2, 0.9), vec2(0.8, 0.2)};
  const Vector ref = vec2(1.5, 1.5);

  auto se_at = [&](int draws) {
    double total = 0.0;
    for (int rep = 0; rep < 8; ++rep)
      total += mobo::oracle_mc_evi(front, ref, pred, draws, rng).std_error;
    return total / 8.0;
  };
  const double se1 = se_at(5000);
  const double se4 = se_at(20000);
  CHECK(se4 / se1 == doctest::Approx(0.5).epsilon(0.2));
}

TEST_CASE("mc pnd oracle basics") {
  std::mt19937_64 rng(43);
  NormalPrediction pred(vec2(0, 0), vec2(1, 1));
  auto empty = mobo::oracle_mc_pnd({}, pred, 1000, rng);
  CHECK(empty.estimate == 1.0);

  auto sym = mobo::oracle_mc_pnd({vec2(0, 0)}, pred, 100000, rng);
  CHECK(std::abs(sym.estimate - 0.75) <= 3.0 * sym.std_error);
}

TEST_CASE("quadrature oracles agree with the closed forms") {
  CHECK(std::abs(mobo::oracle_quadrature_i1(0, 1, 0, 0.3, 0.7) -
                 mobo::gaussian_integral_i1(0, 1, 0, 0.3, 0.7)) <= 1e-10);
  CHECK(std::abs(mobo::oracle_quadrature_i2(0.4, -1, 0, 1) -
                 mobo::gaussian_integral_i2(0.4, -1, 0, 1)) <= 1e-10);
  CHECK(std::abs(mobo::oracle_quadrature_i3(-1, 0.5, 0, 2) -
                 mobo::gaussian_integral_i3(-1, 0.5, 0, 2)) <= 1e-10);
}
