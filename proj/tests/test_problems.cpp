#include "doctest.h"

#include "mobo/problems.hpp"

#include <cmath>
#include <filesystem>
#include <random>

using mobo::BenchmarkProblem;
using mobo::Vector;

namespace {

Vector vec2(double a, double b) {
  Vector v(2);
  v << a, b;
  return v;
}

}  // namespace

TEST_CASE("registry lists the six problems with their table data") {
  const auto names = mobo::list_problems();
  REQUIRE(names.size() == 6);
  CHECK(names == std::vector<std::string>{"BNH", "SRN", "OSY", "CEX", "FFF", "CIR"});

  const auto& bnh = mobo::lookup_problem("BNH");
  CHECK(bnh.design_dims == 2);
  CHECK(bnh.objective_dims == 2);
  CHECK(bnh.constraint_count == 2);
  CHECK(bnh.n0 == 10);
  CHECK(bnh.y_ref == vec2(200, 50));
  CHECK(bnh.default_config.weights.opt == 0.0);
  CHECK(bnh.default_config.weights.con == 1.0);
  CHECK(bnh.default_config.weights.exp == 0.0);
  CHECK(bnh.default_config.epsilon == 0.0);
  CHECK(bnh.default_config.gamma == 10.0);
  CHECK(bnh.default_config.sigma_ref == 1.0);
  CHECK(bnh.regressor_kind == mobo::RegressorKind::kGpMatern);

  const auto& osy = mobo::lookup_problem("OSY");
  CHECK(osy.design_dims == 6);
  CHECK(osy.constraint_count == 6);
  CHECK(osy.y_ref == vec2(0, 80));
  CHECK(osy.n0 == 100);
  CHECK(osy.default_config.gamma == 200.0);
  CHECK(osy.default_config.sigma_ref == 5.0);
  CHECK(osy.regressor_kind == mobo::RegressorKind::kBayesRidgePoly);

  const auto& cex = mobo::lookup_problem("CEX");
  CHECK(cex.default_config.weights.opt == 1.0);
  CHECK(cex.default_config.weights.con == 3.0);
  CHECK(cex.default_config.weights.exp == 1.0);
  CHECK(cex.default_config.epsilon == 1.0);
  CHECK(cex.default_config.sigma_ref == 1.5);
  // The initial domain of the second variable reads [0.5, 2.5].
  CHECK(cex.initial_domain.lo[1] == 0.5);
  CHECK(cex.initial_domain.hi[1] == 2.5);

  const auto& cir = mobo::lookup_problem("CIR");
  CHECK(cir.default_config.weights.opt == 1.0);
  CHECK(cir.default_config.weights.con == 1.0);
  CHECK(cir.default_config.weights.exp == 1.0);
  CHECK(cir.default_config.gamma == 1.0);

  const auto& fff = mobo::lookup_problem("FFF");
  CHECK(fff.default_config.weights.con == 2.0);
  CHECK(fff.default_config.gamma == 10.0);

  CHECK_THROWS_AS((void)mobo::lookup_problem("XXX"), mobo::ContractViolation);
}

TEST_CASE("bnh evaluations match hand calculations") {
  const auto& bnh = mobo::lookup_problem("BNH");

  const auto at_origin = mobo::evaluate(bnh, vec2(0, 0));
  REQUIRE(at_origin.feasible());
  CHECK(at_origin.objectives() == vec2(0, 50));
  CHECK(bnh.constraints(vec2(0, 0))[1] == doctest::Approx(-65.3));

  const auto at_edge = mobo::evaluate(bnh, vec2(5, 0));
  REQUIRE(at_edge.feasible());
  CHECK(at_edge.objectives() == vec2(100, 25));
  CHECK(bnh.constraints(vec2(5, 0))[0] == doctest::Approx(-25.0));
  CHECK(bnh.constraints(vec2(5, 0))[1] == doctest::Approx(-10.3));

  CHECK_THROWS_AS((void)mobo::evaluate(bnh, vec2(100, 0)), mobo::ContractViolation);
}

TEST_CASE("fff constraint on the circle boundary is infeasible") {
  const auto& fff = mobo::lookup_problem("FFF");
  const double s = 1.0 / std::sqrt(2.0);
  const auto sample = mobo::evaluate(fff, vec2(s, s));
  CHECK_FALSE(sample.feasible());
  CHECK_FALSE(sample.y.has_value());
  // c1 is violated there while the band constraints hold.
  const Vector c = fff.constraints(vec2(s, s));
  CHECK(c[0] == doctest::Approx(0.5));
  CHECK(c[1] <= 0.0);
}

TEST_CASE("cex feasibility splits into two bands of x1") {
  const auto& cex = mobo::lookup_problem("CEX");
  CHECK(mobo::evaluate(cex, vec2(0.6, 1.0)).feasible());
  CHECK(mobo::evaluate(cex, vec2(0.9, 1.0)).feasible());
  // Inside the excluded band (2/3, 0.8) everything is infeasible.
  CHECK_FALSE(mobo::evaluate(cex, vec2(0.75, 1.0)).feasible());
  // The original two constraints still apply outside the band.
  CHECK_FALSE(mobo::evaluate(cex, vec2(0.5, 0.0)).feasible());
}

TEST_CASE("cir objectives use the symmetric step convention") {
  const auto& cir = mobo::lookup_problem("CIR");
  const auto inside = mobo::evaluate(cir, vec2(1.0, 0.0));
  REQUIRE(inside.feasible());
  CHECK(inside.objectives() == vec2(-1.0, -0.25));
  // On the diagonal both steps contribute half.
  const Vector y = cir.objectives(vec2(0.7, 0.7));
  CHECK(y[0] == doctest::Approx(-(0.25 + 0.7) * (0.25 + 0.7)));
  CHECK(y[1] == doctest::Approx(-(0.25 + 0.7) * (0.25 + 0.7)));
}

TEST_CASE("every initial domain contains feasible points") {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  for (const auto& name : mobo::list_problems()) {
    const auto& p = mobo::lookup_problem(name);
    int feasible = 0;
    for (int t = 0; t < 10000; ++t) {
      Vector u(p.initial_domain.dim());
      for (Eigen::Index j = 0; j < u.size(); ++j) u[j] = u01(rng);
      if (mobo::evaluate(p, p.initial_domain.from_unit(u)).feasible()) ++feasible;
    }
    INFO("problem ", name);
    CHECK(feasible >= 1);
  }
}

TEST_CASE("evaluate is pure") {
  const auto& fff = mobo::lookup_problem("FFF");
  const Vector x = vec2(0.5, 0.31);
  const auto a = mobo::evaluate(fff, x);
  const auto b = mobo::evaluate(fff, x);
  CHECK(a.f == b.f);
  if (a.feasible()) CHECK(a.objectives() == b.objectives());
}

TEST_CASE("reference front volume is reproducible and converges") {
  const auto& bnh = mobo::lookup_problem("BNH");
  const auto a = mobo::reference_front_volume(bnh, 100000, 42);
  const auto b = mobo::reference_front_volume(bnh, 100000, 42);
  CHECK(a.volume == b.volume);
  CHECK(a.volume > 0.0);
  CHECK(a.front_size > 10);

  const auto fine = mobo::reference_front_volume(bnh, 1000000, 42);
  CHECK(std::abs(fine.volume - a.volume) / fine.volume < 0.01);
}

TEST_CASE("cir reference volume is positive and cached") {
  namespace fs = std::filesystem;
  const auto& cir = mobo::lookup_problem("CIR");
  const std::string dir = (fs::temp_directory_path() / "mobo_ref_cache_test").string();
  fs::remove_all(dir);

  const auto fresh = mobo::reference_front_volume(cir, 200000, 7, dir);
  CHECK(fresh.volume > 0.0);
  CHECK_FALSE(fresh.front.empty());

  const auto cached = mobo::reference_front_volume(cir, 200000, 7, dir);
  CHECK(cached.volume == fresh.volume);
  CHECK(cached.front_size == fresh.front_size);
  fs::remove_all(dir);
}
