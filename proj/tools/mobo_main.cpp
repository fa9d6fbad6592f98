// mobo - command-line front end: single optimization runs, benchmark
// replications, oracle validation suites and the problem registry.
#include "CLI11.hpp"

#include "mobo/evaluation.hpp"
#include "mobo/io.hpp"
#include "mobo/oracle_suites.hpp"
#include "mobo/optimizer.hpp"
#include "mobo/problems.hpp"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <numeric>
#include <optional>
#include <sstream>

namespace {

constexpr const char* kVersion = "0.1.0";
constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitUsage = 2;

std::string default_out_root() {
  if (const char* env = std::getenv("MOBO_OUT_DIR")) return env;
  return "mobo_out";
}

struct ExperimentConfig {
  std::string problem;
  std::string algorithm = "adaptive";
  int n_seq = 1;
  std::optional<int> n0;
  std::optional<double> w_opt, w_con, w_exp, gamma, sigma_ref, epsilon;
  std::optional<long long> max_evals;
  std::optional<double> target_dv;
  int population = 50;
  unsigned long long seed = 1;
  bool track_dv = false;
  long long reference_resolution = 0;  // 0 -> per-problem default
  std::string out_dir;
  std::string cache_dir;
};

// Merge a flat config file under the CLI values; unknown keys are rejected.
void apply_config_file(ExperimentConfig& cfg, const std::string& path) {
  const mobo::FlatConfig file = mobo::FlatConfig::parse_file(path);
  for (const auto& [key, value] : file.values()) {
    if (key == "problem") cfg.problem = value;
    else if (key == "algorithm") cfg.algorithm = value;
    else if (key == "nseq") cfg.n_seq = static_cast<int>(file.as_int(key));
    else if (key == "n0") cfg.n0 = static_cast<int>(file.as_int(key));
    else if (key == "seed") cfg.seed = static_cast<unsigned long long>(file.as_int(key));
    else if (key == "acquisition.w_opt") cfg.w_opt = file.as_double(key);
    else if (key == "acquisition.w_con") cfg.w_con = file.as_double(key);
    else if (key == "acquisition.w_exp") cfg.w_exp = file.as_double(key);
    else if (key == "acquisition.gamma") cfg.gamma = file.as_double(key);
    else if (key == "acquisition.sigma_ref") cfg.sigma_ref = file.as_double(key);
    else if (key == "acquisition.epsilon") cfg.epsilon = file.as_double(key);
    else if (key == "stop.max_evals") cfg.max_evals = file.as_int(key);
    else if (key == "stop.target_dv") cfg.target_dv = file.as_double(key);
    else if (key == "nsgaii.population") cfg.population = static_cast<int>(file.as_int(key));
    else if (key == "reference.resolution") cfg.reference_resolution = file.as_int(key);
    else if (key == "output.dir") cfg.out_dir = value;
    else if (key == "output.dv") cfg.track_dv = file.as_int(key) != 0;
    else throw mobo::ContractViolation("config: unknown key '" + key + "'");
  }
}

mobo::AcquisitionConfig resolve_acquisition(const ExperimentConfig& cfg,
                                            const mobo::BenchmarkProblem& problem) {
  mobo::AcquisitionConfig acq = problem.default_config;
  if (cfg.w_opt) acq.weights.opt = *cfg.w_opt;
  if (cfg.w_con) acq.weights.con = *cfg.w_con;
  if (cfg.w_exp) acq.weights.exp = *cfg.w_exp;
  if (cfg.gamma) acq.gamma = *cfg.gamma;
  if (cfg.sigma_ref) acq.sigma_ref = *cfg.sigma_ref;
  if (cfg.epsilon) acq.epsilon = *cfg.epsilon;
  return acq;
}

mobo::FlatConfig echo_config(const ExperimentConfig& cfg,
                             const mobo::BenchmarkProblem& problem,
                             const mobo::AcquisitionConfig& acq, double ref_volume) {
  mobo::FlatConfig echo;
  echo.set("version", std::string(kVersion));
  echo.set("problem", cfg.problem);
  echo.set("algorithm", cfg.algorithm);
  echo.set("nseq", static_cast<long long>(cfg.n_seq));
  echo.set("n0", static_cast<long long>(cfg.n0.value_or(problem.n0)));
  echo.set("seed", static_cast<long long>(cfg.seed));
  echo.set("acquisition.w_opt", acq.weights.opt);
  echo.set("acquisition.w_con", acq.weights.con);
  echo.set("acquisition.w_exp", acq.weights.exp);
  echo.set("acquisition.gamma", acq.gamma);
  echo.set("acquisition.sigma_ref", acq.sigma_ref);
  echo.set("acquisition.epsilon", acq.epsilon);
  if (cfg.max_evals) echo.set("stop.max_evals", static_cast<long long>(*cfg.max_evals));
  if (cfg.target_dv) echo.set("stop.target_dv", *cfg.target_dv);
  if (cfg.algorithm == "nsgaii")
    echo.set("nsgaii.population", static_cast<long long>(cfg.population));
  if (ref_volume > 0.0) echo.set("reference.volume", ref_volume);
  return echo;
}

double maybe_reference_volume(const ExperimentConfig& cfg,
                              const mobo::BenchmarkProblem& problem) {
  if (!cfg.track_dv && !cfg.target_dv) return 0.0;
  const std::string cache =
      cfg.cache_dir.empty() ? default_out_root() + "/ref_cache" : cfg.cache_dir;
  return mobo::reference_front_volume(problem, cfg.reference_resolution, 20240901,
                                      cache)
      .volume;
}

int cmd_run(const ExperimentConfig& cfg) {
  const auto& problem = mobo::lookup_problem(cfg.problem);
  const auto box = problem.black_box();
  const mobo::AcquisitionConfig acq = resolve_acquisition(cfg, problem);
  const double ref_volume = maybe_reference_volume(cfg, problem);

  if (!cfg.max_evals && !cfg.target_dv)
    throw mobo::ContractViolation("run: set --max-evals and/or --target-dv");

  std::string out = cfg.out_dir;
  if (out.empty()) {
    std::ostringstream name;
    name << default_out_root() << "/" << cfg.problem << "_" << cfg.algorithm << "_seed"
         << cfg.seed;
    out = name.str();
  }

  mobo::RunRecord record;
  mobo::Dataset dataset;
  std::vector<std::pair<mobo::Vector, mobo::Vector>> front_pairs;

  if (cfg.algorithm == "adaptive") {
    mobo::AdaptiveOptions opts;
    opts.acquisition = acq;
    opts.regressor_kind = problem.regressor_kind;
    opts.n0 = cfg.n0.value_or(problem.n0);
    opts.n_seq = cfg.n_seq;
    if (cfg.max_evals) opts.stop.max_evaluations = static_cast<std::size_t>(*cfg.max_evals);
    if (cfg.target_dv) opts.stop.target_relative_volume = *cfg.target_dv;
    opts.seed = cfg.seed;
    opts.reference_volume = ref_volume;
    const auto result = mobo::optimize(box, opts);
    record.algorithm = "adaptive-" + std::to_string(cfg.n_seq);
    record.n_seq = cfg.n_seq;
    record.rows = result.state.rows;
    dataset = result.state.dataset;
    for (std::size_t i : result.front_indices)
      front_pairs.emplace_back(dataset[i].x, dataset[i].objectives());
  } else if (cfg.algorithm == "nsgaii") {
    std::mt19937_64 init_rng(cfg.seed);
    const mobo::Dataset initial =
        mobo::initial_calculation(box, cfg.n0.value_or(problem.n0), init_rng);
    mobo::NsgaiiOptions opts;
    opts.population = cfg.population;
    if (cfg.max_evals) opts.stop.max_evaluations = static_cast<std::size_t>(*cfg.max_evals);
    if (cfg.target_dv) opts.stop.target_relative_volume = *cfg.target_dv;
    opts.seed = cfg.seed;
    opts.reference_volume = ref_volume;
    opts.y_ref = problem.y_ref;
    const auto result = mobo::nsgaii_run(box, opts, initial);
    record = result.record;
    dataset = result.dataset;
    for (const auto& s : dataset.samples())
      if (s.feasible()) {
        bool on_front = false;
        for (const auto& y : result.front)
          if (y == s.objectives()) on_front = true;
        if (on_front) front_pairs.emplace_back(s.x, s.objectives());
      }
  } else {
    throw mobo::ContractViolation("run: unknown algorithm '" + cfg.algorithm + "'");
  }

  mobo::write_run_record_csv(record, out + "/results.csv");
  mobo::write_front_csv(out + "/front.csv", front_pairs);
  mobo::write_dataset_csv(out + "/dataset.csv", dataset);
  mobo::write_text_atomic(out + "/config.echo",
                          echo_config(cfg, problem, acq, ref_volume).echo());

  std::cout << record.algorithm << " on " << cfg.problem << ": evaluations "
            << record.rows.back().evals;
  if (ref_volume > 0.0) std::cout << ", dv " << record.rows.back().dv;
  std::cout << ", results in " << out << "\n";
  return kExitOk;
}

struct BenchRow {
  unsigned long long seed;
  std::vector<double> evals_to;  // per threshold, NaN when unreached
  double t_pure = 0.0;
  int iters = 0;
};

int cmd_bench(const ExperimentConfig& cfg, int replicates,
              std::vector<double> thresholds, unsigned long long seed_base) {
  const auto& problem = mobo::lookup_problem(cfg.problem);
  const auto box = problem.black_box();
  const mobo::AcquisitionConfig acq = resolve_acquisition(cfg, problem);
  const std::string cache =
      cfg.cache_dir.empty() ? default_out_root() + "/ref_cache" : cfg.cache_dir;
  const double ref_volume =
      mobo::reference_front_volume(problem, cfg.reference_resolution, 20240901, cache)
          .volume;
  std::sort(thresholds.begin(), thresholds.end());
  const double top = thresholds.back();
  const long long cap = cfg.max_evals.value_or(2500);

  std::string out = cfg.out_dir.empty() ? default_out_root() + "/bench_" + cfg.problem
                                        : cfg.out_dir;

  auto evals_at = [&](const std::vector<mobo::IterationRow>& rows, double dv) {
    for (const auto& r : rows)
      if (r.dv >= dv) return static_cast<double>(r.evals);
    return std::numeric_limits<double>::quiet_NaN();
  };

  std::vector<mobo::RunRecord> adaptive_records, baseline_records;
  std::ostringstream adaptive_csv, baseline_csv;
  adaptive_csv << "seed,dv,evals,t_pure_s\n";
  baseline_csv << "seed,dv,evals,t_pure_s\n";

  for (int rep = 0; rep < replicates; ++rep) {
    const unsigned long long seed = seed_base + static_cast<unsigned long long>(rep);

    mobo::AdaptiveOptions aopts;
    aopts.acquisition = acq;
    aopts.regressor_kind = problem.regressor_kind;
    aopts.n0 = cfg.n0.value_or(problem.n0);
    aopts.n_seq = cfg.n_seq;
    aopts.stop.max_evaluations = static_cast<std::size_t>(cap);
    aopts.stop.target_relative_volume = top;
    aopts.seed = seed;
    aopts.reference_volume = ref_volume;
    const auto adaptive = mobo::optimize(box, aopts);
    mobo::RunRecord arec;
    arec.algorithm = "adaptive-" + std::to_string(cfg.n_seq);
    arec.n_seq = cfg.n_seq;
    arec.rows = adaptive.state.rows;
    adaptive_records.push_back(arec);

    std::mt19937_64 init_rng(seed);
    const mobo::Dataset initial =
        mobo::initial_calculation(box, cfg.n0.value_or(problem.n0), init_rng);
    mobo::NsgaiiOptions nopts;
    nopts.population = cfg.population;
    nopts.stop.max_evaluations = static_cast<std::size_t>(cap);
    nopts.stop.target_relative_volume = top;
    nopts.seed = seed;
    nopts.reference_volume = ref_volume;
    nopts.y_ref = problem.y_ref;
    const auto baseline = mobo::nsgaii_run(box, nopts, initial);
    baseline_records.push_back(baseline.record);

    for (double dv : thresholds) {
      adaptive_csv << seed << ',' << dv << ',' << evals_at(arec.rows, dv) << ','
                   << arec.rows.back().t_pure_s << "\n";
      baseline_csv << seed << ',' << dv << ',' << evals_at(baseline.record.rows, dv)
                   << ',' << baseline.record.rows.back().t_pure_s << "\n";
    }
  }

  mobo::write_text_atomic(out + "/bench_" + cfg.problem + "_adaptive.csv",
                          adaptive_csv.str());
  mobo::write_text_atomic(out + "/bench_" + cfg.problem + "_nsgaii.csv",
                          baseline_csv.str());

  auto mean_std = [&](const std::vector<mobo::RunRecord>& records, double dv) {
    std::vector<double> values;
    for (const auto& r : records) {
      const double e = evals_at(r.rows, dv);
      if (!std::isnan(e)) values.push_back(e);
    }
    if (values.empty()) return std::string("unreached");
    double mean = std::accumulate(values.begin(), values.end(), 0.0) / values.size();
    double var = 0.0;
    for (double v : values) var += (v - mean) * (v - mean);
    var = values.size() > 1 ? var / (values.size() - 1) : 0.0;
    std::ostringstream s;
    s.precision(4);
    s << mean << " +- " << std::sqrt(var) << " (" << values.size() << "/"
      << records.size() << ")";
    return s.str();
  };

  std::ostringstream summary;
  summary << "benchmark " << cfg.problem << ", " << replicates
          << " replicates, evaluations to reach dv:\n";
  for (double dv : thresholds) {
    summary << "  dv=" << dv << "  adaptive-" << cfg.n_seq << ": "
            << mean_std(adaptive_records, dv) << "  nsgaii: "
            << mean_std(baseline_records, dv);
    // Raw per-seed break-even times at n_sim = 1.
    std::vector<double> taus;
    for (std::size_t i = 0; i < adaptive_records.size(); ++i) {
      try {
        taus.push_back(
            mobo::break_even_time(adaptive_records[i], baseline_records[i], dv).tau);
      } catch (const std::runtime_error&) {
      }
    }
    if (!taus.empty()) {
      double mean = std::accumulate(taus.begin(), taus.end(), 0.0) / taus.size();
      double var = 0.0;
      for (double v : taus) var += (v - mean) * (v - mean);
      var = taus.size() > 1 ? var / (taus.size() - 1) : 0.0;
      summary.precision(3);
      summary << "  tau: " << mean << " +- " << std::sqrt(var) << " s";
    }
    summary << "\n";
  }
  std::cout << summary.str();
  mobo::write_text_atomic(out + "/summary.txt", summary.str());
  return kExitOk;
}

int cmd_oracle(const std::string& suite, int instances, int draws,
               unsigned long long seed, bool quiet) {
  mobo::OracleSuiteOptions opts;
  opts.instances = instances;
  opts.draws = draws;
  opts.seed = seed;

  std::vector<std::string> suites;
  if (suite == "all") suites = mobo::oracle_suite_names();
  else suites.push_back(suite);

  bool all_passed = true;
  for (const auto& name : suites) {
    const auto report = mobo::run_oracle_suite(name, opts);
    if (!quiet)
      for (const auto& line : report.lines) std::cout << line << "\n";
    std::cout << "suite " << report.suite << ": " << (report.checked - report.failed)
              << "/" << report.checked << " passed, worst deviation " << report.worst
              << (report.passed() ? " [PASS]" : " [FAIL]") << "\n";
    all_passed = all_passed && report.passed();
  }
  return all_passed ? kExitOk : kExitValidation;
}

int cmd_problems() {
  for (const auto& name : mobo::list_problems()) {
    const auto& p = mobo::lookup_problem(name);
    std::cout << name << ": d=" << p.design_dims << " n=" << p.objective_dims
              << " m=" << p.constraint_count << " n0=" << p.n0 << " y_ref=(";
    for (Eigen::Index i = 0; i < p.y_ref.size(); ++i)
      std::cout << (i ? "," : "") << p.y_ref[i];
    std::cout << ") w=(" << p.default_config.weights.opt << ","
              << p.default_config.weights.con << "," << p.default_config.weights.exp
              << ") eps=" << p.default_config.epsilon
              << " gamma=" << p.default_config.gamma
              << " sigma_ref=" << p.default_config.sigma_ref << " regressor="
              << (p.regressor_kind == mobo::RegressorKind::kGpMatern ? "gp_matern"
                                                                     : "bayes_ridge_poly")
              << "\n";
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Adaptive multi-objective optimization under binary feasibility"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kVersion));

  ExperimentConfig cfg;
  std::string config_file;

  auto* run = app.add_subcommand("run", "Run one seeded optimization");
  run->add_option("--problem", cfg.problem, "Problem name")->required();
  run->add_option("--algo", cfg.algorithm, "adaptive | nsgaii");
  run->add_option("--nseq", cfg.n_seq, "Suggestions per iteration");
  int n0_flag = -1, max_evals_flag = -1;
  double target_dv_flag = -1, w_opt_flag = -1, w_con_flag = -1, w_exp_flag = -1;
  double gamma_flag = -1, sigma_ref_flag = -1, epsilon_flag = -1;
  run->add_option("--n0", n0_flag, "Initial samples (problem default otherwise)");
  run->add_option("--max-evals", max_evals_flag, "Total evaluation budget");
  run->add_option("--target-dv", target_dv_flag, "Stop at this relative volume");
  run->add_option("--seed", cfg.seed, "Random seed");
  run->add_option("--out", cfg.out_dir, "Output directory");
  run->add_option("--config", config_file, "Flat key=value config file");
  run->add_option("--w-opt", w_opt_flag, "Optimization weight");
  run->add_option("--w-con", w_con_flag, "Constraint-finding weight");
  run->add_option("--w-exp", w_exp_flag, "Exploration weight");
  run->add_option("--gamma", gamma_flag, "EVI rescaling parameter");
  run->add_option("--sigma-ref", sigma_ref_flag, "Truncation ellipsoid size");
  run->add_option("--epsilon", epsilon_flag, "Distance metric parameter");
  run->add_option("--population", cfg.population, "nsgaii population size");
  run->add_flag("--dv", cfg.track_dv, "Track the relative dominated volume");
  run->add_option("--cache-dir", cfg.cache_dir, "Reference-volume cache directory");
  run->add_option("--ref-resolution", cfg.reference_resolution,
                  "Reference front sampling resolution");

  int replicates = 10;
  unsigned long long seed_base = 100;
  std::string dv_list = "0.8,0.85,0.9,0.95";
  auto* bench = app.add_subcommand("bench", "Replicated two-algorithm benchmark");
  bench->add_option("--problem", cfg.problem, "Problem name")->required();
  bench->add_option("--replicates", replicates, "Independent seeded runs");
  bench->add_option("--dv-list", dv_list, "Comma-separated quality thresholds");
  bench->add_option("--seed-base", seed_base, "First seed; replicates count up");
  bench->add_option("--nseq", cfg.n_seq, "Adaptive suggestions per iteration");
  bench->add_option("--max-evals", max_evals_flag, "Evaluation cap per run");
  bench->add_option("--n0", n0_flag, "Initial samples");
  bench->add_option("--population", cfg.population, "nsgaii population size");
  bench->add_option("--out", cfg.out_dir, "Output directory");
  bench->add_option("--cache-dir", cfg.cache_dir, "Reference-volume cache directory");
  bench->add_option("--ref-resolution", cfg.reference_resolution,
                    "Reference front sampling resolution");

  std::string suite = "all";
  int instances = 50, draws = 100000;
  unsigned long long oracle_seed = 12345;
  bool quiet = false;
  auto* oracle = app.add_subcommand("oracle", "Closed-form validation suites");
  oracle->add_option("--suite", suite, "integrals|evi|pnd|hv|truncation|all");
  oracle->add_option("--instances", instances, "Instances per suite");
  oracle->add_option("--draws", draws, "Monte-Carlo draws per instance");
  oracle->add_option("--seed", oracle_seed, "Suite seed");
  oracle->add_flag("--quiet", quiet, "Summary lines only");

  auto* problems = app.add_subcommand("problems", "List the problem registry");
  (void)problems;

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return kExitOk;  // --help / --version
    std::cerr << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (run->parsed()) {
      if (!config_file.empty()) apply_config_file(cfg, config_file);
      // Command-line flags override file values.
      if (n0_flag >= 0) cfg.n0 = n0_flag;
      if (max_evals_flag >= 0) cfg.max_evals = max_evals_flag;
      if (target_dv_flag >= 0) {
        cfg.target_dv = target_dv_flag;
        cfg.track_dv = true;
      }
      if (w_opt_flag >= 0) cfg.w_opt = w_opt_flag;
      if (w_con_flag >= 0) cfg.w_con = w_con_flag;
      if (w_exp_flag >= 0) cfg.w_exp = w_exp_flag;
      if (gamma_flag >= 0) cfg.gamma = gamma_flag;
      if (sigma_ref_flag >= 0) cfg.sigma_ref = sigma_ref_flag;
      if (epsilon_flag >= 0) cfg.epsilon = epsilon_flag;
      return cmd_run(cfg);
    }
    if (bench->parsed()) {
      if (n0_flag >= 0) cfg.n0 = n0_flag;
      if (max_evals_flag >= 0) cfg.max_evals = max_evals_flag;
      std::vector<double> thresholds;
      std::istringstream in(dv_list);
      std::string token;
      while (std::getline(in, token, ',')) thresholds.push_back(std::stod(token));
      if (thresholds.empty()) throw mobo::ContractViolation("bench: empty --dv-list");
      return cmd_bench(cfg, replicates, thresholds, seed_base);
    }
    if (oracle->parsed()) return cmd_oracle(suite, instances, draws, oracle_seed, quiet);
    if (problems->parsed()) return cmd_problems();
  } catch (const mobo::ContractViolation& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  }
  return kExitUsage;
}
