#include "mobo/problems.hpp"

#include "mobo/pareto.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

namespace mobo {

namespace {

Vector make_vec(std::initializer_list<double> values) {
  Vector v(static_cast<Eigen::Index>(values.size()));
  Eigen::Index i = 0;
  for (double t : values) v[i++] = t;
  return v;
}

// Symmetric Heaviside step used by the CIR objectives.
double theta(double t) { return t > 0.0 ? 1.0 : (t < 0.0 ? 0.0 : 0.5); }

bool all_nonpositive(const Vector& c) { return (c.array() <= 0.0).all(); }

AcquisitionConfig config(double w_opt, double w_con, double w_exp, double epsilon,
                         double gamma, double sigma_ref, Vector y_ref) {
  AcquisitionConfig cfg;
  cfg.weights = {w_opt, w_con, w_exp};
  cfg.epsilon = epsilon;
  cfg.gamma = gamma;
  cfg.sigma_ref = sigma_ref;
  cfg.y_ref = std::move(y_ref);
  return cfg;
}

std::vector<BenchmarkProblem> build_registry() {
  std::vector<BenchmarkProblem> reg;

  {
    BenchmarkProblem p;
    p.name = "BNH";
    p.design_dims = 2;
    p.objective_dims = 2;
    p.constraint_count = 2;
    p.bounds = Bounds(make_vec({-5, -10}), make_vec({15, 10}));
    p.initial_domain = Bounds(make_vec({0, -5}), make_vec({5, 0}));
    p.n0 = 10;
    p.y_ref = make_vec({200, 50});
    p.default_config = config(0, 1, 0, 0.0, 10.0, 1.0, p.y_ref);
    p.regressor_kind = RegressorKind::kGpMatern;
    p.objectives = [](const Vector& x) {
      return make_vec({4 * x[0] * x[0] + 4 * x[1] * x[1],
                       (x[0] - 5) * (x[0] - 5) + (x[1] - 5) * (x[1] - 5)});
    };
    p.constraints = [](const Vector& x) {
      return make_vec({(x[0] - 5) * (x[0] - 5) + x[1] * x[1] - 25,
                       -(x[0] - 8) * (x[0] - 8) - (x[1] + 3) * (x[1] + 3) + 7.7});
    };
    p.feasible_rule = all_nonpositive;
    reg.push_back(std::move(p));
  }

  {
    BenchmarkProblem p;
    p.name = "SRN";
    p.design_dims = 2;
    p.objective_dims = 2;
    p.constraint_count = 2;
    p.bounds = Bounds(make_vec({-20, -20}), make_vec({20, 20}));
    p.initial_domain = Bounds(make_vec({0, 0}), make_vec({20, 20}));
    p.n0 = 10;
    p.y_ref = make_vec({250, 50});
    p.default_config = config(0, 1, 0, 0.0, 10.0, 1.0, p.y_ref);
    p.regressor_kind = RegressorKind::kGpMatern;
    p.objectives = [](const Vector& x) {
      return make_vec({2 + (x[0] - 2) * (x[0] - 2) + (x[1] - 1) * (x[1] - 1),
                       9 * x[0] - (x[1] - 1) * (x[1] - 1)});
    };
    p.constraints = [](const Vector& x) {
      return make_vec({x[0] * x[0] + x[1] * x[1] - 255, x[0] - 3 * x[1] + 10});
    };
    p.feasible_rule = all_nonpositive;
    reg.push_back(std::move(p));
  }

  {
    BenchmarkProblem p;
    p.name = "OSY";
    p.design_dims = 6;
    p.objective_dims = 2;
    p.constraint_count = 6;
    p.bounds = Bounds(make_vec({0, 0, 1, 0, 1, 0}), make_vec({10, 10, 5, 6, 5, 10}));
    p.initial_domain = Bounds(make_vec({2, 0, 2, 0, 1, 0}), make_vec({4, 3, 4, 2, 2, 10}));
    p.n0 = 100;
    p.y_ref = make_vec({0, 80});
    p.default_config = config(0, 1, 0, 0.0, 200.0, 5.0, p.y_ref);
    p.regressor_kind = RegressorKind::kBayesRidgePoly;
    p.objectives = [](const Vector& x) {
      const double y1 = -25 * (x[0] - 2) * (x[0] - 2) - (x[1] - 2) * (x[1] - 2) -
                        (x[2] - 1) * (x[2] - 1) - (x[3] - 4) * (x[3] - 4) -
                        (x[4] - 1) * (x[4] - 1);
      return make_vec({y1, x.squaredNorm()});
    };
    p.constraints = [](const Vector& x) {
      return make_vec({-x[0] - x[1] + 2, x[0] + x[1] - 6, x[1] - x[0] - 2,
                       x[0] - 3 * x[1] - 2, (x[2] - 3) * (x[2] - 3) + x[3] - 4,
                       -(x[4] - 3) * (x[4] - 3) - x[5] + 4});
    };
    p.feasible_rule = all_nonpositive;
    reg.push_back(std::move(p));
  }

  {
    BenchmarkProblem p;
    p.name = "CEX";
    p.design_dims = 2;
    p.objective_dims = 2;
    p.constraint_count = 4;
    p.bounds = Bounds(make_vec({0.1, 0}), make_vec({1, 5}));
    p.initial_domain = Bounds(make_vec({0.1, 0.5}), make_vec({1, 2.5}));
    p.n0 = 10;
    p.y_ref = make_vec({1, 9});
    p.default_config = config(1, 3, 1, 1.0, 1.0, 1.5, p.y_ref);
    p.regressor_kind = RegressorKind::kBayesRidgePoly;
    p.objectives = [](const Vector& x) {
      return make_vec({x[0], (x[1] + 1) / x[0]});
    };
    p.constraints = [](const Vector& x) {
      return make_vec({-9 * x[0] - x[1] + 6, -9 * x[0] + x[1] + 1, 0.8 - x[0],
                       x[0] - 2.0 / 3.0});
    };
    // c3 and c4 carve out the band 2/3 < x1 < 0.8: they hold as a
    // disjunction (a conjunction would leave no feasible point at all and
    // the front would not split).
    p.feasible_rule = [](const Vector& c) {
      return c[0] <= 0 && c[1] <= 0 && (c[2] <= 0 || c[3] <= 0);
    };
    reg.push_back(std::move(p));
  }

  {
    BenchmarkProblem p;
    p.name = "FFF";
    p.design_dims = 2;
    p.objective_dims = 2;
    p.constraint_count = 3;
    p.bounds = Bounds(make_vec({-1, -1}), make_vec({1, 1}));
    p.initial_domain = Bounds(make_vec({0.25, 0.25}), make_vec({1, 1}));
    p.n0 = 10;
    p.y_ref = make_vec({1, 1});
    p.default_config = config(1, 2, 1, 1.0, 10.0, 1.0, p.y_ref);
    p.regressor_kind = RegressorKind::kGpMatern;
    const double s = 1.0 / std::sqrt(2.0);
    p.objectives = [s](const Vector& x) {
      const double y1 = 1 - std::exp(-(x[0] - s) * (x[0] - s) - (x[1] - s) * (x[1] - s));
      const double y2 = 1 - std::exp(-(x[0] + s) * (x[0] + s) - (x[1] + s) * (x[1] + s));
      return make_vec({y1, y2});
    };
    p.constraints = [p_obj = p.objectives](const Vector& x) {
      const Vector y = p_obj(x);
      return make_vec({x[0] * x[0] + x[1] * x[1] - 0.5,
                       std::min(y[0] - 0.4, 0.6 - y[0]),
                       std::min(y[1] - 0.4, 0.6 - y[1])});
    };
    p.feasible_rule = all_nonpositive;
    reg.push_back(std::move(p));
  }

  {
    BenchmarkProblem p;
    p.name = "CIR";
    p.design_dims = 2;
    p.objective_dims = 2;
    p.constraint_count = 1;
    p.bounds = Bounds(make_vec({-2, -2}), make_vec({2, 2}));
    p.initial_domain = Bounds(make_vec({0.5, -0.5}), make_vec({1.5, 0.5}));
    p.n0 = 10;
    p.y_ref = make_vec({0, 0});
    p.default_config = config(1, 1, 1, 1.0, 1.0, 1.0, p.y_ref);
    p.regressor_kind = RegressorKind::kGpMatern;
    p.objectives = [](const Vector& x) {
      const double a = 0.5 * theta(x[1] - x[0]) + x[0];
      const double b = 0.5 * theta(x[0] - x[1]) + x[1];
      return make_vec({-a * a, -b * b});
    };
    p.constraints = [](const Vector& x) {
      const double disk1 = (x[0] - 1) * (x[0] - 1) + x[1] * x[1] - 0.25;
      const double disk2 = x[0] * x[0] + (x[1] - 1) * (x[1] - 1) - 0.25;
      return make_vec({std::min(disk1, disk2)});
    };
    p.feasible_rule = all_nonpositive;
    reg.push_back(std::move(p));
  }

  return reg;
}

const std::vector<BenchmarkProblem>& registry() {
  static const std::vector<BenchmarkProblem> reg = build_registry();
  return reg;
}

std::int64_t default_resolution(const BenchmarkProblem& p) {
  // The six-dimensional design space needs a denser sweep.
  return p.design_dims >= 6 ? 10000000 : 1000000;
}

}  // namespace

Sample evaluate(const BenchmarkProblem& problem, const Vector& x) {
  require(problem.bounds.contains(x, 1e-9), "evaluate: x outside the design space");
  const Vector c = problem.constraints(x);
  if (problem.feasible_rule(c)) return Sample(x, problem.objectives(x));
  return Sample(x, std::nullopt);
}

BlackBox BenchmarkProblem::black_box() const {
  return {bounds, initial_domain,
          [this](const Vector& x) { return mobo::evaluate(*this, x); }};
}

std::vector<std::string> list_problems() {
  std::vector<std::string> names;
  for (const auto& p : registry()) names.push_back(p.name);
  return names;
}

const BenchmarkProblem& lookup_problem(const std::string& name) {
  for (const auto& p : registry())
    if (p.name == name) return p;
  throw ContractViolation("unknown problem: " + name);
}

TrueFrontReference reference_front_volume(const BenchmarkProblem& problem,
                                          std::int64_t resolution, std::uint64_t seed,
                                          const std::string& cache_dir) {
  if (resolution <= 0) resolution = default_resolution(problem);

  namespace fs = std::filesystem;
  fs::path cache_file;
  if (!cache_dir.empty()) {
    std::ostringstream name;
    name << problem.name << "_r" << resolution << "_s" << seed << ".ref";
    cache_file = fs::path(cache_dir) / name.str();
    if (fs::exists(cache_file)) {
      std::ifstream in(cache_file);
      TrueFrontReference ref;
      std::string key;
      while (in >> key) {
        if (key == "problem") in >> ref.problem;
        else if (key == "seed") in >> ref.seed;
        else if (key == "resolution") in >> ref.resolution;
        else if (key == "volume") in >> ref.volume;
        else if (key == "front_size") in >> ref.front_size;
      }
      if (ref.problem == problem.name && ref.volume > 0.0) return ref;
    }
  }

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  const Eigen::Index d = problem.bounds.dim();

  // Stream samples, keep feasible objectives, compact periodically so the
  // working set stays proportional to the running front.
  std::vector<Vector> pool;
  pool.reserve(1 << 16);
  const std::size_t compact_at = 1 << 16;
  for (std::int64_t i = 0; i < resolution; ++i) {
    Vector u(d);
    for (Eigen::Index j = 0; j < d; ++j) u[j] = u01(rng);
    const Vector x = problem.bounds.from_unit(u);
    const Vector c = problem.constraints(x);
    if (!problem.feasible_rule(c)) continue;
    pool.push_back(problem.objectives(x));
    if (pool.size() >= compact_at) pool = pareto_subset(pool);
  }

  TrueFrontReference ref;
  ref.problem = problem.name;
  ref.seed = seed;
  ref.resolution = resolution;
  ref.front = pareto_subset(pool);
  ref.front_size = ref.front.size();
  ref.volume = hypervolume(ref.front, problem.y_ref);

  if (!cache_file.empty()) {
    fs::create_directories(cache_file.parent_path());
    fs::path tmp = cache_file;
    tmp += ".tmp";
    {
      std::ofstream out(tmp);
      out.precision(17);
      out << "problem " << ref.problem << "\n"
          << "seed " << ref.seed << "\n"
          << "resolution " << ref.resolution << "\n"
          << "volume " << ref.volume << "\n"
          << "front_size " << ref.front_size << "\n";
    }
    fs::rename(tmp, cache_file);
  }
  return ref;
}

}  // namespace mobo
