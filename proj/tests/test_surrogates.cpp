#include "doctest.h"

#include "mobo/surrogates.hpp"

#include <cmath>
#include <random>

using mobo::Bounds;
using mobo::Feasibility;
using mobo::NormalPrediction;
using mobo::RegressorKind;
using mobo::RegressorOptions;
using mobo::Vector;

namespace {

Vector vec1(double a) {
  Vector v(1);
  v << a;
  return v;
}

Vector vec2(double a, double b) {
  Vector v(2);
  v << a, b;
  return v;
}

}  // namespace

TEST_CASE("gp interpolates noise-free data") {
  std::vector<std::pair<Vector, Vector>> xy;
  for (double x : {0.0, 0.25, 0.5, 0.75, 1.0}) xy.emplace_back(vec1(x), vec1(x * x));
  RegressorOptions opts;
  opts.bounds = Bounds(vec1(0), vec1(1));
  opts.restarts = 8;
  auto gp = mobo::fit_regressor(xy, RegressorKind::kGpMatern, opts);

  for (const auto& [x, y] : xy) {
    const NormalPrediction p = gp->predict(x);
    CHECK(std::abs(p.mu[0] - y[0]) <= 1e-6);
    CHECK(p.sigma[0] <= 1e-3);  // objective range is 1
  }
}

TEST_CASE("gp predictive deviation recovers the prior far from the data") {
  // Wiggly data pins the fitted length-scale well below the queried gap, so
  // the far query sits many length-scales from every training input.
  std::vector<std::pair<Vector, Vector>> xy;
  for (int i = 0; i <= 20; ++i) {
    const double x = 0.0125 * i;
    xy.emplace_back(vec1(x), vec1(std::sin(60.0 * x)));
  }
  RegressorOptions opts;
  opts.bounds = Bounds(vec1(0), vec1(1));
  opts.restarts = 8;
  auto gp = mobo::fit_regressor(xy, RegressorKind::kGpMatern, opts);

  const auto params = gp->hyperparameters();
  REQUIRE(params.size() == 1);
  const double length = std::exp(params[0][0]);
  CHECK((1.0 - 0.25) / length >= 10.0);  // premise of the far-field claim

  const double y_sd = [&] {
    double mean = 0.0, var = 0.0;
    for (const auto& [x, y] : xy) mean += y[0] / 21.0;
    for (const auto& [x, y] : xy) var += (y[0] - mean) * (y[0] - mean) / 21.0;
    return std::sqrt(var);
  }();
  const double prior_sd = std::exp(params[0][1]) * y_sd;

  const NormalPrediction far = gp->predict(vec1(1.0));
  CHECK(far.sigma[0] == doctest::Approx(prior_sd).epsilon(0.05));

  // At a training input the latent deviation collapses toward the noise floor.
  const NormalPrediction at = gp->predict(vec1(0.125));
  CHECK(at.sigma[0] < 0.05 * far.sigma[0]);
}

TEST_CASE("gp variance at training points is tiny relative to the prior") {
  std::vector<std::pair<Vector, Vector>> xy;
  for (double x : {0.0, 0.3, 0.6, 0.9}) xy.emplace_back(vec1(x), vec1(std::sin(3 * x)));
  RegressorOptions opts;
  opts.bounds = Bounds(vec1(0), vec1(1));
  opts.restarts = 8;
  auto gp = mobo::fit_regressor(xy, RegressorKind::kGpMatern, opts);
  const auto params = gp->hyperparameters();
  const double prior_var = std::exp(2.0 * params[0][1]);
  const NormalPrediction p = gp->predict(vec1(0.3));
  const double y_scale_sq = [&] {
    double mean = 0.0, var = 0.0;
    for (const auto& [x, y] : xy) mean += y[0] / 4.0;
    for (const auto& [x, y] : xy) var += (y[0] - mean) * (y[0] - mean) / 4.0;
    return var;
  }();
  CHECK(p.sigma[0] * p.sigma[0] <= 1e-6 * prior_var * y_scale_sq + 1e-12);
}

TEST_CASE("regressor requires two samples") {
  std::vector<std::pair<Vector, Vector>> xy = {{vec1(0.5), vec1(1.0)}};
  CHECK_THROWS_AS((void)mobo::fit_regressor(xy, RegressorKind::kGpMatern),
                  mobo::NotEnoughData);
}

TEST_CASE("separability: joint log density is the sum of per-objective terms") {
  std::vector<std::pair<Vector, Vector>> xy;
  for (double x : {0.0, 0.4, 0.8}) xy.emplace_back(vec1(x), vec2(x, 1.0 - x));
  RegressorOptions opts;
  opts.bounds = Bounds(vec1(0), vec1(1));
  opts.restarts = 4;
  auto gp = mobo::fit_regressor(xy, RegressorKind::kGpMatern, opts);
  const NormalPrediction p = gp->predict(vec1(0.2));
  REQUIRE(p.mu.size() == 2);
  REQUIRE(p.sigma.size() == 2);
  CHECK(gp->objective_count() == 2);
}

TEST_CASE("bayes ridge fits a quadratic with cubic features") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  auto poly = [](const Vector& x) {
    return 2.0 + 3.0 * x[0] - 1.5 * x[1] + 0.8 * x[0] * x[1] - 2.0 * x[1] * x[1];
  };
  std::vector<std::pair<Vector, Vector>> xy;
  for (int i = 0; i < 20; ++i) {
    Vector x = vec2(u(rng), u(rng));
    xy.emplace_back(x, vec1(poly(x)));
  }
  RegressorOptions opts;
  opts.bounds = Bounds(vec2(0, 0), vec2(1, 1));
  auto ridge = mobo::fit_regressor(xy, RegressorKind::kBayesRidgePoly, opts);

  double mae = 0.0;
  for (int i = 0; i < 50; ++i) {
    Vector x = vec2(u(rng), u(rng));
    const NormalPrediction p = ridge->predict(x);
    mae += std::abs(p.mu[0] - poly(x)) / 50.0;
    CHECK(p.sigma[0] > 0.0);
  }
  CHECK(mae <= 1e-2 * 5.0);  // objective range on the unit square is ~5
}

TEST_CASE("classifier handles one-class data with the laplace prior") {
  std::vector<std::pair<Vector, Feasibility>> xf;
  for (int i = 0; i < 10; ++i)
    xf.emplace_back(vec2(0.1 * i, 0.05 * i), Feasibility::kFeasible);
  auto c = mobo::fit_classifier(xf);
  CHECK(c->predict_feasible(vec2(0.5, 0.5)) == doctest::Approx(11.0 / 12.0));
  CHECK(c->predict_feasible(vec2(0.5, 0.5)) >= 0.5);
}

TEST_CASE("classifier rejects empty input") {
  CHECK_THROWS_AS((void)mobo::fit_classifier({}), mobo::NotEnoughData);
}

TEST_CASE("classifier separates a linear boundary") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<std::pair<Vector, Feasibility>> xf;
  for (int i = 0; i < 100; ++i) {
    Vector x = vec2(u(rng), u(rng));
    xf.emplace_back(x, x[0] < 0.0 ? Feasibility::kInfeasible : Feasibility::kFeasible);
  }
  mobo::ClassifierOptions opts;
  opts.bounds = Bounds(vec2(-1, -1), vec2(1, 1));
  auto c = mobo::fit_classifier(xf, opts);

  int correct = 0;
  for (int i = 0; i < 200; ++i) {
    Vector x = vec2(u(rng), u(rng));
    const double p = c->predict_feasible(x);
    CHECK(p >= 0.0);
    CHECK(p <= 1.0);
    const bool predicted = p >= 0.5;
    if (predicted == (x[0] >= 0.0)) ++correct;
  }
  CHECK(correct >= 190);

  // Deep inside the feasible half-plane the probability is confident.
  CHECK(c->predict_feasible(vec2(0.8, 0.0)) >= 0.9);
  // Near the boundary of this symmetric training set it is ambivalent.
  CHECK(c->predict_feasible(vec2(0.0, 0.0)) == doctest::Approx(0.5).epsilon(0.2));
}

TEST_CASE("classifier is deterministic after fit") {
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<std::pair<Vector, Feasibility>> xf;
  for (int i = 0; i < 30; ++i) {
    Vector x = vec2(u(rng), u(rng));
    xf.emplace_back(x, x[0] + x[1] < 1.0 ? Feasibility::kFeasible
                                         : Feasibility::kInfeasible);
  }
  auto a = mobo::fit_classifier(xf);
  auto b = mobo::fit_classifier(xf);
  for (int i = 0; i < 20; ++i) {
    Vector x = vec2(u(rng), u(rng));
    CHECK(a->predict_feasible(x) == b->predict_feasible(x));
  }
}
