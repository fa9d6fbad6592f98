#include "mobo/pareto.hpp"

#include "mobo/sector_grid.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

namespace mobo {

bool dominates(const Vector& a, const Vector& b) {
  require(a.size() == b.size(), "dominates: dimension mismatch");
  bool strict = false;
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    if (a[i] > b[i]) return false;
    if (a[i] < b[i]) strict = true;
  }
  return strict;
}

namespace {

// Sort-and-sweep filter for two objectives; survivors come out in input
// order, duplicates collapse to the first occurrence.
std::vector<std::size_t> pareto_indices_2d(const std::vector<Vector>& ys) {
  std::vector<std::size_t> order(ys.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (ys[a][0] != ys[b][0]) return ys[a][0] < ys[b][0];
    if (ys[a][1] != ys[b][1]) return ys[a][1] < ys[b][1];
    return a < b;
  });

  std::vector<std::size_t> keep;
  double best_prev_y2 = std::numeric_limits<double>::infinity();
  std::size_t t = 0;
  while (t < order.size()) {
    // One group of equal first coordinates; only its y2-minimum (first
    // occurrence on exact ties) can survive.
    std::size_t end = t;
    const double y1 = ys[order[t]][0];
    while (end < order.size() && ys[order[end]][0] == y1) ++end;
    std::size_t head = order[t];
    for (std::size_t s = t; s < end; ++s)
      if (ys[order[s]][1] < ys[head][1] ||
          (ys[order[s]][1] == ys[head][1] && order[s] < head))
        head = order[s];
    if (ys[head][1] < best_prev_y2) keep.push_back(head);
    best_prev_y2 = std::min(best_prev_y2, ys[head][1]);
    t = end;
  }
  std::sort(keep.begin(), keep.end());
  return keep;
}

}  // namespace

std::vector<std::size_t> pareto_indices(const std::vector<Vector>& ys) {
  if (!ys.empty() && ys.front().size() == 2) return pareto_indices_2d(ys);
  std::vector<std::size_t> keep;
  for (std::size_t i = 0; i < ys.size(); ++i) {
    bool dominated = false;
    for (std::size_t j = 0; j < ys.size() && !dominated; ++j) {
      if (j == i) continue;
      if (dominates(ys[j], ys[i])) dominated = true;
      // Equal vectors collapse to the first occurrence.
      if (ys[j] == ys[i] && j < i) dominated = true;
    }
    if (!dominated) keep.push_back(i);
  }
  return keep;
}

std::vector<Vector> pareto_subset(const std::vector<Vector>& ys) {
  std::vector<Vector> out;
  for (std::size_t i : pareto_indices(ys)) out.push_back(ys[i]);
  return out;
}

namespace {

// Points strictly below ref in every component; others dominate zero volume.
std::vector<Vector> clip_to_box(const std::vector<Vector>& front, const Vector& ref) {
  std::vector<Vector> out;
  for (const auto& y : front) {
    if (y.size() != ref.size()) throw ContractViolation("hypervolume: dimension mismatch");
    if ((y.array() < ref.array()).all()) out.push_back(y);
  }
  return out;
}

// Exact coordinate sweep for two objectives: staircase area below ref.
double hypervolume_2d(std::vector<Vector> pts, const Vector& ref) {
  std::sort(pts.begin(), pts.end(),
            [](const Vector& a, const Vector& b) { return a[0] < b[0]; });
  double volume = 0.0;
  double prev_y2 = ref[1];
  for (const auto& p : pts) {
    volume += (ref[0] - p[0]) * (prev_y2 - p[1]);
    prev_y2 = p[1];
  }
  return volume;
}

// General-n fallback: sum the finite volumes of the dominated grid sectors.
double hypervolume_grid(const std::vector<Vector>& pts, const Vector& ref) {
  SectorGrid grid = build_sector_grid(pts, ref);
  double volume = 0.0;
  const int n = grid.dims();
  for (const Sector& s : grid.sectors()) {
    if (sector_is_nondominated(grid, s, pts)) continue;
    double v = 1.0;
    for (int i = 0; i < n; ++i) v *= grid.upper(i, s[i]) - grid.lower(i, s[i]);
    volume += v;
  }
  return volume;
}

}  // namespace

double hypervolume(const std::vector<Vector>& front, const Vector& ref) {
  require(ref.size() >= 1, "hypervolume: empty reference point");
  std::vector<Vector> pts = pareto_subset(clip_to_box(front, ref));
  if (pts.empty()) return 0.0;
  if (ref.size() == 1) {
    double best = pts[0][0];
    for (const auto& p : pts) best = std::min(best, p[0]);
    return ref[0] - best;
  }
  if (ref.size() == 2) return hypervolume_2d(std::move(pts), ref);
  return hypervolume_grid(pts, ref);
}

double hypervolume_improvement(const std::vector<Vector>& front, const Vector& ref,
                               const Vector& y) {
  std::vector<Vector> extended = front;
  extended.push_back(y);
  double gain = hypervolume(extended, ref) - hypervolume(front, ref);
  return std::max(gain, 0.0);
}

double hypervolume_by_grid(const std::vector<Vector>& front, const Vector& ref) {
  std::vector<Vector> pts = pareto_subset(clip_to_box(front, ref));
  if (pts.empty()) return 0.0;
  return hypervolume_grid(pts, ref);
}

}  // namespace mobo
