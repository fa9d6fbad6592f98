#include "doctest.h"

#include "mobo/ehvi.hpp"
#include "mobo/pareto.hpp"

#include <cmath>
#include <random>

using mobo::EviWorkspace;
using mobo::NormalPrediction;
using mobo::TruncationEllipsoid;
using mobo::Vector;

namespace mobo {
// Access to the generic pairwise accumulation for cross-checking the 2-d
// prefix-table path.
struct EviWorkspaceTestAccess {
  static double pairwise(const EviWorkspace& ws, const NormalPrediction& pred,
                         double sigma_ref) {
    return ws.truncated_pairwise(pred, sigma_ref);
  }
};
}  // namespace mobo

namespace {

Vector vec2(double a, double b) {
  Vector v(2);
  v << a, b;
  return v;
}

struct Instance {
  std::vector<Vector> front;
  Vector ref;
  NormalPrediction pred;
};

Instance random_instance(std::mt19937_64& rng, int max_points, bool small_sigma = false) {
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  std::uniform_int_distribution<int> count(0, max_points);
  Instance inst;
  inst.ref = vec2(1.2, 1.2);
  const int target = count(rng);
  std::vector<Vector> cloud;
  for (int i = 0; i < 3 * target + 3; ++i) cloud.push_back(vec2(u01(rng), u01(rng)));
  auto front = mobo::pareto_subset(cloud);
  if (front.size() > static_cast<std::size_t>(target)) front.resize(target);
  inst.front = front;
  Vector mu = vec2(-0.4 + 1.8 * u01(rng), -0.4 + 1.8 * u01(rng));
  Vector sigma = small_sigma ? vec2(1e-9, 1e-9)
                             : vec2(0.05 + 0.5 * u01(rng), 0.05 + 0.5 * u01(rng));
  inst.pred = NormalPrediction(mu, sigma);
  return inst;
}

// Monte-Carlo estimate of E[hypervolume_improvement] under the prediction.
std::pair<double, double> mc_evi(const Instance& inst, int draws, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  double sum = 0.0, sum_sq = 0.0;
  for (int d = 0; d < draws; ++d) {
    Vector y(inst.ref.size());
    for (Eigen::Index i = 0; i < y.size(); ++i)
      y[i] = inst.pred.mu[i] + inst.pred.sigma[i] * gauss(rng);
    const double dv = mobo::hypervolume_improvement(inst.front, inst.ref, y);
    sum += dv;
    sum_sq += dv * dv;
  }
  const double mean = sum / draws;
  const double var = std::max(sum_sq / draws - mean * mean, 0.0);
  return {mean, std::sqrt(var / draws)};
}

}  // namespace

TEST_CASE("evi with a dirac prediction on an empty front is the box volume") {
  Vector ref = vec2(1, 1);
  NormalPrediction pred(vec2(0, 0), vec2(0, 0));
  CHECK(mobo::evi_exact({}, ref, pred) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("evi of a nearly deterministic dominated prediction vanishes") {
  NormalPrediction pred(vec2(2, 2), vec2(1e-9, 1e-9));
  CHECK(mobo::evi_exact({vec2(1, 1)}, vec2(3, 3), pred) <= 1e-6);
}

TEST_CASE("evi matches the monte-carlo oracle") {
  std::mt19937_64 rng(101);
  int checked = 0;
  while (checked < 12) {
    Instance inst = random_instance(rng, 4);
    const double exact = mobo::evi_exact(inst.front, inst.ref, inst.pred);
    auto [est, se] = mc_evi(inst, 40000, rng);
    if (se == 0.0) continue;
    CHECK(std::abs(exact - est) <= 3.0 * se);
    ++checked;
  }
}

TEST_CASE("evi at vanishing sigma equals the deterministic improvement") {
  std::mt19937_64 rng(103);
  for (int t = 0; t < 25; ++t) {
    Instance inst = random_instance(rng, 4, /*small_sigma=*/true);
    NormalPrediction dirac(inst.pred.mu, vec2(0, 0));
    const double exact = mobo::evi_exact(inst.front, inst.ref, dirac);
    const double dv = mobo::hypervolume_improvement(inst.front, inst.ref, inst.pred.mu);
    CHECK(std::abs(exact - dv) <= 1e-8 * std::max(1.0, dv));
  }
}

TEST_CASE("evi is invariant under a consistent permutation of objectives") {
  std::mt19937_64 rng(107);
  for (int t = 0; t < 20; ++t) {
    Instance inst = random_instance(rng, 4);
    std::vector<Vector> swapped;
    for (const auto& y : inst.front) swapped.push_back(vec2(y[1], y[0]));
    NormalPrediction pred_swapped(vec2(inst.pred.mu[1], inst.pred.mu[0]),
                                  vec2(inst.pred.sigma[1], inst.pred.sigma[0]));
    const double a = mobo::evi_exact(inst.front, inst.ref, inst.pred);
    const double b = mobo::evi_exact(swapped, vec2(inst.ref[1], inst.ref[0]), pred_swapped);
    CHECK(a == doctest::Approx(b).epsilon(1e-12));
  }
}

TEST_CASE("truncated evi converges to the exact value for a wide ellipsoid") {
  std::mt19937_64 rng(109);
  for (int t = 0; t < 25; ++t) {
    Instance inst = random_instance(rng, 5);
    const double exact = mobo::evi_exact(inst.front, inst.ref, inst.pred);
    if (exact < 1e-9) continue;
    const double wide = mobo::evi_truncated(inst.front, inst.ref, inst.pred, 50.0);
    CHECK(wide == doctest::Approx(exact).epsilon(1e-9));
    CHECK(wide <= exact * (1.0 + 1e-12));
  }
}

TEST_CASE("truncated evi is monotone in sigma_ref") {
  std::mt19937_64 rng(113);
  const double ladder[] = {0.5, 1.0, 2.0, 3.0, 6.0, 50.0};
  for (int t = 0; t < 20; ++t) {
    Instance inst = random_instance(rng, 5);
    EviWorkspace ws(inst.front, inst.ref);
    double prev = 0.0;
    for (double s : ladder) {
      const double v = ws.evi_truncated(inst.pred, s);
      CHECK(v >= prev - 1e-15);
      prev = v;
    }
  }
}

TEST_CASE("tight truncation of a near-dirac prediction recovers the improvement") {
  std::mt19937_64 rng(127);
  for (int t = 0; t < 20; ++t) {
    Instance inst = random_instance(rng, 4, /*small_sigma=*/true);
    const double dv = mobo::hypervolume_improvement(inst.front, inst.ref, inst.pred.mu);
    const double v = mobo::evi_truncated(inst.front, inst.ref, inst.pred, 1e-6);
    CHECK(std::abs(v - dv) <= 1e-8 * std::max(1.0, dv));
  }
}

TEST_CASE("prefix-table path agrees with the pairwise accumulation") {
  std::mt19937_64 rng(131);
  for (int t = 0; t < 30; ++t) {
    Instance inst = random_instance(rng, 5);
    EviWorkspace ws(inst.front, inst.ref);
    for (double s : {0.7, 2.0, 50.0}) {
      const double fast = ws.evi_truncated(inst.pred, s);
      const double slow = mobo::EviWorkspaceTestAccess::pairwise(ws, inst.pred, s);
      CHECK(fast == doctest::Approx(slow).epsilon(1e-12));
    }
  }
}

TEST_CASE("box ellipsoid intersection basics") {
  TruncationEllipsoid e;
  e.center = vec2(0, 0);
  e.semi_axes = vec2(1, 1);
  CHECK(mobo::box_intersects_ellipsoid(vec2(-0.5, -0.5), vec2(0.5, 0.5), e));
  CHECK_FALSE(mobo::box_intersects_ellipsoid(vec2(2, -1), vec2(3, 1), e));
  // Corner cases: the disk of radius 1 reaches the box corner (0.8, 0.8)?
  // distance sqrt(1.28) > 1 -> no intersection.
  CHECK_FALSE(mobo::box_intersects_ellipsoid(vec2(0.8, 0.8), vec2(2, 2), e));
  CHECK(mobo::box_intersects_ellipsoid(vec2(0.6, 0.6), vec2(2, 2), e));

  e.semi_axes = vec2(0, 1);
  CHECK(mobo::box_intersects_ellipsoid(vec2(-0.5, 0.5), vec2(0.5, 2), e));
  CHECK_FALSE(mobo::box_intersects_ellipsoid(vec2(0.1, -0.5), vec2(0.5, 0.5), e));
}

TEST_CASE("box ellipsoid intersection matches a sampling oracle") {
  std::mt19937_64 rng(137);
  std::uniform_real_distribution<double> u(-1.5, 1.5), axis(0.1, 1.0), side(0.2, 1.5);
  int tested = 0;
  while (tested < 120) {
    TruncationEllipsoid e;
    e.center = vec2(u(rng), u(rng));
    e.semi_axes = vec2(axis(rng), axis(rng));
    Vector lo = vec2(u(rng), u(rng));
    Vector hi = lo + vec2(side(rng), side(rng));

    // Sample the ellipsoid uniformly (rejection from its bounding box).
    bool hit = false;
    double nearest = std::numeric_limits<double>::infinity();
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    for (int k = 0; k < 20000; ++k) {
      const double ux = unit(rng), uy = unit(rng);
      if (ux * ux + uy * uy > 1.0) continue;
      const Vector p = vec2(e.center[0] + ux * e.semi_axes[0],
                            e.center[1] + uy * e.semi_axes[1]);
      if ((p.array() >= lo.array()).all() && (p.array() <= hi.array()).all()) hit = true;
    }
    // Skip undecidable boundary-grazing pairs: compare the clamped distance
    // against 1 with a tolerance band.
    double d2 = 0.0;
    for (int i = 0; i < 2; ++i) {
      const double cl = std::min(std::max(e.center[i], lo[i]), hi[i]);
      const double r = (cl - e.center[i]) / e.semi_axes[i];
      d2 += r * r;
    }
    if (std::abs(std::sqrt(d2) - 1.0) < 5e-2) continue;
    (void)nearest;
    CHECK(mobo::box_intersects_ellipsoid(lo, hi, e) == hit);
    ++tested;
  }
}
