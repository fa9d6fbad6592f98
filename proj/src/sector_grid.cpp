#include "mobo/sector_grid.hpp"

#include <algorithm>

namespace mobo {

SectorGrid::SectorGrid(const std::vector<Vector>& pareto_front, Vector ref)
    : ref_(std::move(ref)) {
  require(ref_.size() >= 1, "SectorGrid: empty reference point");
  const int n = dims();
  coords_.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    auto& xi = coords_[static_cast<std::size_t>(i)];
    xi.push_back(ref_[i]);
    for (const auto& y : pareto_front) {
      require(y.size() == ref_.size(), "SectorGrid: point dimension mismatch");
      if (y[i] < ref_[i]) xi.push_back(y[i]);
    }
    std::sort(xi.begin(), xi.end(), std::greater<double>());
    xi.erase(std::unique(xi.begin(), xi.end()), xi.end());
  }

  // Odometer enumeration keeps the sector order deterministic.
  std::size_t total = 1;
  for (int i = 0; i < n; ++i) total *= coords_[static_cast<std::size_t>(i)].size();
  sectors_.reserve(total);
  Sector cursor(static_cast<std::size_t>(n), 0);
  for (std::size_t c = 0; c < total; ++c) {
    sectors_.push_back(cursor);
    for (int i = n - 1; i >= 0; --i) {
      auto& k = cursor[static_cast<std::size_t>(i)];
      if (++k < interval_count(i)) break;
      k = 0;
    }
  }
}

bool sector_is_nondominated(const SectorGrid& grid, const Sector& s,
                            const std::vector<Vector>& pareto_front) {
  const int n = grid.dims();
  for (const auto& y : pareto_front) {
    bool escapes = false;
    for (int i = 0; i < n; ++i) {
      const int k = s[static_cast<std::size_t>(i)];
      if (grid.lower_is_infinite(i, k) || grid.lower(i, k) < y[i]) {
        escapes = true;
        break;
      }
    }
    if (!escapes) return false;
  }
  return true;
}

std::vector<Sector> nondominated_sectors(const SectorGrid& grid,
                                         const std::vector<Sector>& sectors,
                                         const std::vector<Vector>& pareto_front) {
  std::vector<Sector> kept;
  kept.reserve(sectors.size());
  for (const auto& s : sectors)
    if (sector_is_nondominated(grid, s, pareto_front)) kept.push_back(s);
  return kept;
}

}  // namespace mobo
