#include "mobo/evaluation.hpp"

#include "mobo/pareto.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>

namespace mobo {

void write_run_record_csv(const RunRecord& record, const std::string& path) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  if (target.has_parent_path()) fs::create_directories(target.parent_path());
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp);
    out.precision(17);
    out << "iter,evals,dv,t_pure_s,t_model_s,t_acq_s\n";
    for (const auto& r : record.rows)
      out << r.iter << ',' << r.evals << ',' << r.dv << ',' << r.t_pure_s << ','
          << r.t_model_s << ',' << r.t_acq_s << '\n';
  }
  fs::rename(tmp, target);
}

double relative_dominated_volume(const std::vector<Vector>& feasible_objectives,
                                 const Vector& ref, double true_volume) {
  require(true_volume > 0.0, "relative_dominated_volume: true_volume > 0 required");
  const double hv = hypervolume(pareto_subset(feasible_objectives), ref);
  return std::min(std::max(hv / true_volume, 0.0), 1.0);
}

double effective_runtime(int n_seq, int n_sim, int n_iter, double t_sim,
                         double t_pure) {
  require(n_seq >= 0 && n_iter >= 0 && t_sim >= 0 && t_pure >= 0,
          "effective_runtime: nonnegative inputs required");
  require(n_sim >= 1, "effective_runtime: n_sim >= 1 required");
  const int rounds = (n_seq + n_sim - 1) / n_sim;
  return t_sim * static_cast<double>(rounds) * static_cast<double>(n_iter) + t_pure;
}

namespace {

// First row reaching the threshold; (iterations, cumulative pure time).
std::pair<int, double> threshold_row(const RunRecord& record, double delta_v) {
  for (const auto& r : record.rows)
    if (r.dv >= delta_v) return {r.iter, r.t_pure_s};
  throw ThresholdUnreached(record.algorithm + " never reached dv >= " +
                           std::to_string(delta_v));
}

}  // namespace

BreakEvenResult break_even_time(const RunRecord& adaptive, const RunRecord& baseline,
                                double delta_v) {
  BreakEvenResult result;
  result.delta_v = delta_v;
  const auto [iters_a, t_a] = threshold_row(adaptive, delta_v);
  const auto [iters_b, t_b] = threshold_row(baseline, delta_v);
  result.iters_adaptive = iters_a;
  result.iters_baseline = iters_b;
  result.t_adaptive = t_a;
  result.t_baseline = t_b;
  const double nu_a = static_cast<double>(adaptive.n_seq) * iters_a;
  const double nu_b = static_cast<double>(baseline.n_seq) * iters_b;
  if (nu_b <= nu_a)
    throw NotApplicable("break_even_time: baseline needs no more evaluations");
  result.tau = (t_a - t_b) / (nu_b - nu_a);
  return result;
}

}  // namespace mobo
