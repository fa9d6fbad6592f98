#include "mobo/oracle_suites.hpp"

#include "mobo/acquisition.hpp"
#include "mobo/ehvi.hpp"
#include "mobo/evaluation.hpp"
#include "mobo/gaussian.hpp"
#include "mobo/pareto.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

namespace mobo {

namespace {

Vector vec2(double a, double b) {
  Vector v(2);
  v << a, b;
  return v;
}

std::vector<Vector> random_pareto_front(std::mt19937_64& rng, int max_points) {
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  std::uniform_int_distribution<int> count(0, max_points);
  const int target = count(rng);
  std::vector<Vector> cloud;
  for (int i = 0; i < 3 * target + 3; ++i) cloud.push_back(vec2(u01(rng), u01(rng)));
  auto front = pareto_subset(cloud);
  if (front.size() > static_cast<std::size_t>(target)) front.resize(target);
  return front;
}

std::string line(int index, const std::string& what, double dev, double limit,
                 bool ok) {
  std::ostringstream out;
  out << "  [" << index << "] " << what << " dev=" << dev << " limit=" << limit << " "
      << (ok ? "ok" : "FAIL");
  return out.str();
}

OracleSuiteReport suite_integrals(const OracleSuiteOptions& opts) {
  OracleSuiteReport report;
  report.suite = "integrals";
  std::mt19937_64 rng(opts.seed);
  std::uniform_real_distribution<double> coord(-3.0, 3.0), width(0.05, 3.0),
      sig(0.05, 2.0);
  for (int t = 0; t < opts.instances; ++t) {
    const double a = coord(rng);
    const double b = a + width(rng);
    const double c = coord(rng);
    const double mu = coord(rng);
    double sigma = sig(rng);
    if (t % 5 == 3) sigma = 1e-12;
    if (t % 5 == 4) sigma = 0.0;

    double dev = std::abs(gaussian_integral_i1(a, b, c, mu, sigma) -
                          oracle_quadrature_i1(a, b, c, mu, sigma));
    dev = std::max(dev, std::abs(gaussian_integral_i2(b, c, mu, sigma) -
                                 oracle_quadrature_i2(b, c, mu, sigma)));
    dev = std::max(dev, std::abs(gaussian_integral_i3(a, b, mu, sigma) -
                                 oracle_quadrature_i3(a, b, mu, sigma)));
    const bool ok = dev <= 1e-10;
    report.lines.push_back(line(t, "i1/i2/i3 vs quadrature", dev, 1e-10, ok));
    report.worst = std::max(report.worst, dev);
    ++report.checked;
    if (!ok) ++report.failed;
  }
  return report;
}

OracleSuiteReport suite_evi(const OracleSuiteOptions& opts) {
  OracleSuiteReport report;
  report.suite = "evi";
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  for (int t = 0; t < opts.instances; ++t) {
    std::mt19937_64 rng(opts.seed + 1000003ULL * static_cast<std::uint64_t>(t));
    const auto front = random_pareto_front(rng, 5);
    const Vector ref = vec2(1.2, 1.2);
    const NormalPrediction pred(
        vec2(-0.4 + 1.8 * u01(rng), -0.4 + 1.8 * u01(rng)),
        vec2(0.05 + 0.5 * u01(rng), 0.05 + 0.5 * u01(rng)));

    const double exact = evi_exact(front, ref, pred);
    const auto mc = oracle_mc_evi(front, ref, pred, opts.draws, rng);
    // Rule-of-three resolution bound: a finite sample cannot certify means
    // below ~3 V_box / draws, which matters when no draw lands below ref.
    double box_bound = 1.0;
    for (int i = 0; i < 2; ++i)
      box_bound *= std::max(ref[i] - (pred.mu[i] - 6.0 * pred.sigma[i]), 0.0);
    const double band = 3.0 * mc.std_error + 3.0 * box_bound / opts.draws + 1e-12;
    const double dev = std::abs(exact - mc.estimate);
    bool ok = dev <= band;

    // Dirac limit against the deterministic improvement at the mean.
    const NormalPrediction dirac(pred.mu, vec2(0, 0));
    const double dv_exact = evi_exact(front, ref, dirac);
    const double dv_direct = hypervolume_improvement(front, ref, pred.mu);
    const double dirac_dev = std::abs(dv_exact - dv_direct);
    ok = ok && dirac_dev <= 1e-8 * std::max(1.0, dv_direct);

    std::ostringstream what;
    what << "evi |P|=" << front.size() << " vs mc, dirac dev=" << dirac_dev;
    report.lines.push_back(line(t, what.str(), dev, band, ok));
    report.worst = std::max(report.worst, dev / band);
    ++report.checked;
    if (!ok) ++report.failed;
  }
  return report;
}

OracleSuiteReport suite_pnd(const OracleSuiteOptions& opts) {
  OracleSuiteReport report;
  report.suite = "pnd";
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  for (int t = 0; t < opts.instances; ++t) {
    std::mt19937_64 rng(opts.seed + 7000003ULL * static_cast<std::uint64_t>(t));
    const int n = 1 + t % 3;
    Vector y(n), mu(n), sigma(n);
    for (int i = 0; i < n; ++i) {
      y[i] = u01(rng);
      mu[i] = -0.3 + 1.6 * u01(rng);
      sigma[i] = 0.05 + 0.6 * u01(rng);
    }
    if (t % 5 == 4) sigma.setZero();  // Heaviside limit at generic positions
    const NormalPrediction pred(mu, sigma);

    const double closed = p_nondominated_closed_form({y}, pred);
    const auto mc = oracle_mc_pnd({y}, pred, opts.draws, rng);
    const double band = 3.0 * mc.std_error + 1e-12;
    const double dev = std::abs(closed - mc.estimate);
    const bool ok = dev <= band;
    std::ostringstream what;
    what << "pnd |P|=1 n=" << n << (sigma.isZero() ? " sigma=0" : "");
    report.lines.push_back(line(t, what.str(), dev, band, ok));
    report.worst = std::max(report.worst, dev / band);
    ++report.checked;
    if (!ok) ++report.failed;
  }

  // The product expression for several front points assumes independence
  // across them; deviations are reported, never asserted.
  for (int t = 0; t < std::min(opts.instances, 10); ++t) {
    std::mt19937_64 rng(opts.seed + 13000003ULL * static_cast<std::uint64_t>(t));
    std::vector<Vector> front;
    const int points = 2 + t % 2;
    for (int i = 0; i < points; ++i) front.push_back(vec2(u01(rng), u01(rng)));
    front = pareto_subset(front);
    const NormalPrediction pred(vec2(u01(rng), u01(rng)),
                                vec2(0.1 + 0.4 * u01(rng), 0.1 + 0.4 * u01(rng)));
    const double closed = p_nondominated_closed_form(front, pred);
    const auto mc = oracle_mc_pnd(front, pred, opts.draws, rng);
    std::ostringstream what;
    what << "  [report] pnd |P|=" << front.size() << " closed=" << closed
         << " mc=" << mc.estimate << " (" << std::abs(closed - mc.estimate) /
                                                 (mc.std_error + 1e-300)
         << " se, independence approximation, not asserted)";
    report.lines.push_back(what.str());
  }
  return report;
}

OracleSuiteReport suite_hv(const OracleSuiteOptions& opts) {
  OracleSuiteReport report;
  report.suite = "hv";
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  for (int t = 0; t < opts.instances; ++t) {
    std::mt19937_64 rng(opts.seed + 29000003ULL * static_cast<std::uint64_t>(t));
    std::vector<Vector> cloud;
    const int points = 1 + t % 8;
    for (int i = 0; i < points; ++i) cloud.push_back(vec2(u01(rng), u01(rng)));
    const Vector ref = vec2(1.3, 1.3);

    const double sweep = hypervolume(cloud, ref);
    const double grid = hypervolume_by_grid(cloud, ref);
    const double rel = std::abs(sweep - grid) / std::max(sweep, 1e-300);
    bool ok = rel <= 1e-9;

    const auto mc = oracle_mc_hypervolume(cloud, ref, opts.draws, rng);
    const double band = 3.0 * mc.std_error + 1e-12;
    const double dev = std::abs(sweep - mc.estimate);
    ok = ok && dev <= band;

    std::ostringstream what;
    what << "hv sweep-vs-grid rel=" << rel << ", sweep-vs-mc dev=" << dev;
    report.lines.push_back(line(t, what.str(), dev, band, ok));
    report.worst = std::max(report.worst, rel);
    ++report.checked;
    if (!ok) ++report.failed;
  }
  return report;
}

OracleSuiteReport suite_truncation(const OracleSuiteOptions& opts) {
  OracleSuiteReport report;
  report.suite = "truncation";
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  const double ladder[] = {0.5, 1.0, 2.0, 3.0, 6.0, 50.0};
  int t = 0;
  std::uint64_t attempt = 0;
  while (t < opts.instances) {
    std::mt19937_64 rng(opts.seed + 31000003ULL * (attempt++));
    const auto front = random_pareto_front(rng, 5);
    const Vector ref = vec2(1.2, 1.2);
    const NormalPrediction pred(
        vec2(-0.4 + 1.8 * u01(rng), -0.4 + 1.8 * u01(rng)),
        vec2(0.05 + 0.5 * u01(rng), 0.05 + 0.5 * u01(rng)));
    // The truncation trades tail mass for speed, so its accuracy claim is
    // about candidate means in the non-dominated region (where acquisition
    // maximization actually queries it); dominated means have tail-driven
    // expectations that no finite ellipsoid captures.
    if (hypervolume_improvement(front, ref, pred.mu) <= 0.0) continue;

    EviWorkspace ws(front, ref);
    const double exact = ws.evi_exact(pred);
    if (exact < 1e-9) continue;  // relative comparisons need signal

    const double wide = ws.evi_truncated(pred, 50.0);
    const double rel50 = std::abs(wide - exact) / exact;
    bool ok = rel50 <= 1e-9;

    double prev = 0.0;
    bool monotone = true;
    double at3 = 0.0;
    for (double s : ladder) {
      const double v = ws.evi_truncated(pred, s);
      if (v < prev - 1e-15) monotone = false;
      prev = v;
      if (s == 3.0) at3 = v;
    }
    const double rel3 = std::abs(at3 - exact) / exact;
    ok = ok && monotone && rel3 <= 1e-2;

    std::ostringstream what;
    what << "truncation rel50=" << rel50 << " rel3=" << rel3
         << (monotone ? "" : " NON-MONOTONE");
    report.lines.push_back(line(t, what.str(), rel3, 1e-2, ok));
    report.worst = std::max(report.worst, rel3);
    ++report.checked;
    if (!ok) ++report.failed;
    ++t;
  }
  return report;
}

}  // namespace

std::vector<std::string> oracle_suite_names() {
  return {"integrals", "evi", "pnd", "hv", "truncation"};
}

OracleSuiteReport run_oracle_suite(const std::string& suite,
                                   const OracleSuiteOptions& opts) {
  require(opts.instances >= 1, "run_oracle_suite: instances >= 1 required");
  if (suite == "integrals") return suite_integrals(opts);
  if (suite == "evi") return suite_evi(opts);
  if (suite == "pnd") return suite_pnd(opts);
  if (suite == "hv") return suite_hv(opts);
  if (suite == "truncation") return suite_truncation(opts);
  throw ContractViolation("unknown oracle suite: " + suite);
}

}  // namespace mobo
