// ehvi.hpp - closed-form expected hypervolume improvement over the sector
// grid, and its ellipsoid-truncated approximation. The expectation is taken
// under a separable normal predictive density; every term reduces to products
// of one-dimensional Gaussian moment integrals.
#pragma once

#include "mobo/sector_grid.hpp"
#include "mobo/types.hpp"

#include <vector>

namespace mobo {

// Axis-aligned ellipsoid centered at the predictive mean with semi-axes
// sigma_ref * sigma_i. Zero semi-axes collapse the ellipsoid in that dimension.
struct TruncationEllipsoid {
  Vector center;
  Vector semi_axes;

  TruncationEllipsoid() = default;
  TruncationEllipsoid(const NormalPrediction& pred, double sigma_ref)
      : center(pred.mu), semi_axes(sigma_ref * pred.sigma) {
    require(sigma_ref > 0.0, "TruncationEllipsoid: sigma_ref > 0 required");
  }
};

// Box/ellipsoid overlap via per-dimension clamping of the center onto the
// box. lo entries may be -infinity (half-open sectors). Zero semi-axis
// dimensions require the clamped coordinate to match the center within 1e-12.
bool box_intersects_ellipsoid(const Vector& lo, const Vector& hi,
                              const TruncationEllipsoid& e);

bool sector_intersects_ellipsoid(const SectorGrid& grid, const Sector& s,
                                 const TruncationEllipsoid& e);

// Precomputed decomposition state for one (Pareto front, reference point)
// pair. Building it once and evaluating many predictions against it is the
// intended use inside acquisition maximization.
class EviWorkspace {
 public:
  EviWorkspace(const std::vector<Vector>& front, Vector ref);

  double evi_exact(const NormalPrediction& pred) const;
  double evi_truncated(const NormalPrediction& pred, double sigma_ref) const;

  const SectorGrid& grid() const { return grid_; }
  const std::vector<Sector>& nondominated() const { return nondominated_; }
  const std::vector<Vector>& front() const { return front_; }

 private:
  struct Moments;  // per-dimension integral tables for one prediction

  Moments moments_for(const NormalPrediction& pred) const;
  double term(const Sector& outer, const Sector& inner, const Moments& m) const;
  double truncated_pairwise(const NormalPrediction& pred, double sigma_ref) const;
  double truncated_2d(const NormalPrediction& pred, double sigma_ref) const;

  std::vector<Vector> front_;  // Pareto-filtered copy
  SectorGrid grid_;
  std::vector<Sector> nondominated_;
  // width of interval k per dimension; the lowest (half-open) interval
  // carries 0 here and is excluded from every width sum by construction
  std::vector<std::vector<double>> widths_;
  // n = 2 fast path: membership matrix of nondominated sectors and
  // width-weighted prefix sums over it
  bool fast2d_ = false;
  std::vector<std::vector<char>> nd2_;
  std::vector<std::vector<double>> row_prefix_;   // sum over k1' < k1 at fixed k2
  std::vector<std::vector<double>> col_prefix_;   // sum over k2' < k2 at fixed k1
  std::vector<std::vector<double>> rect_prefix_;  // sum over k1' < k1, k2' < k2

  friend struct EviWorkspaceTestAccess;
};

// One-shot convenience wrappers.
double evi_exact(const std::vector<Vector>& front, const Vector& ref,
                 const NormalPrediction& pred);
double evi_truncated(const std::vector<Vector>& front, const Vector& ref,
                     const NormalPrediction& pred, double sigma_ref);

}  // namespace mobo
