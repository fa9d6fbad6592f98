// sector_grid.hpp - non-regular grid of axis-aligned sectors spanned by the
// per-dimension coordinates of a Pareto set, the reference point and a
// symbolic minus-infinity. The grid tiles the region below the reference
// point; hypervolume and expected-improvement computations decompose over it.
#pragma once

#include "mobo/types.hpp"

#include <vector>

namespace mobo {

// A sector is addressed by one interval index per objective dimension.
// Interval k of dimension i spans (coord[k+1], coord[k]] with coordinates
// sorted descending from ref_i; the lowest interval extends to -infinity,
// which stays symbolic (never enters arithmetic).
using Sector = std::vector<int>;

class SectorGrid {
 public:
  // P may contain points at or above ref in some components; only
  // coordinates strictly below ref_i enter the grid of dimension i.
  SectorGrid(const std::vector<Vector>& pareto_front, Vector ref);

  int dims() const { return static_cast<int>(ref_.size()); }
  const Vector& ref() const { return ref_; }

  // Finite grid coordinates of dimension i, descending, starting at ref_i.
  const std::vector<double>& coordinates(int i) const { return coords_[i]; }

  int interval_count(int i) const { return static_cast<int>(coords_[i].size()); }

  double upper(int i, int k) const { return coords_[i][static_cast<std::size_t>(k)]; }

  bool lower_is_infinite(int i, int k) const {
    return k + 1 == static_cast<int>(coords_[i].size());
  }

  // Finite lower bound; must not be called on the lowest interval.
  double lower(int i, int k) const { return coords_[i][static_cast<std::size_t>(k) + 1]; }

  // Every sector of the grid in a fixed lexicographic order.
  const std::vector<Sector>& sectors() const { return sectors_; }

  std::size_t sector_count() const { return sectors_.size(); }

 private:
  Vector ref_;
  std::vector<std::vector<double>> coords_;
  std::vector<Sector> sectors_;
};

inline SectorGrid build_sector_grid(const std::vector<Vector>& pareto_front,
                                    const Vector& ref) {
  return SectorGrid(pareto_front, ref);
}

// A sector is non-dominated iff its interior contains points not dominated
// by any member of P: for every y in P there is a dimension whose sector
// lower bound lies strictly below y_i.
bool sector_is_nondominated(const SectorGrid& grid, const Sector& s,
                            const std::vector<Vector>& pareto_front);

std::vector<Sector> nondominated_sectors(const SectorGrid& grid,
                                         const std::vector<Sector>& sectors,
                                         const std::vector<Vector>& pareto_front);

}  // namespace mobo
