#include "mobo/ehvi.hpp"

#include "mobo/gaussian.hpp"
#include "mobo/pareto.hpp"

#include <cmath>
#include <limits>

namespace mobo {

namespace {
constexpr double kZeroAxisTol = 1e-12;
constexpr double kNegInf = -std::numeric_limits<double>::infinity();
}  // namespace

bool box_intersects_ellipsoid(const Vector& lo, const Vector& hi,
                              const TruncationEllipsoid& e) {
  require(lo.size() == hi.size() && lo.size() == e.center.size(),
          "box_intersects_ellipsoid: dimension mismatch");
  require((e.semi_axes.array() >= 0.0).all(),
          "box_intersects_ellipsoid: semi-axes >= 0 required");
  double d2 = 0.0;
  for (Eigen::Index i = 0; i < lo.size(); ++i) {
    const double clamped = std::min(std::max(e.center[i], lo[i]), hi[i]);
    const double delta = clamped - e.center[i];
    if (e.semi_axes[i] == 0.0) {
      if (std::abs(delta) > kZeroAxisTol) return false;
      continue;
    }
    const double r = delta / e.semi_axes[i];
    d2 += r * r;
    if (d2 > 1.0) return false;
  }
  return d2 <= 1.0;
}

bool sector_intersects_ellipsoid(const SectorGrid& grid, const Sector& s,
                                 const TruncationEllipsoid& e) {
  const int n = grid.dims();
  Vector lo(n), hi(n);
  for (int i = 0; i < n; ++i) {
    const int k = s[static_cast<std::size_t>(i)];
    hi[i] = grid.upper(i, k);
    lo[i] = grid.lower_is_infinite(i, k) ? kNegInf : grid.lower(i, k);
  }
  return box_intersects_ellipsoid(lo, hi, e);
}

// Per-dimension building blocks for one prediction. For interval k with
// upper bound U and lower bound L:
//   mass[k]  = int_L^U N(y) dy
//   wedge[k] = int_L^U (U - y) N(y) dy
//   tail[k]  = P(y <= L), the mass below the interval (0 for L = -inf)
struct EviWorkspace::Moments {
  std::vector<std::vector<double>> mass;
  std::vector<std::vector<double>> wedge;
  std::vector<std::vector<double>> tail;
};

EviWorkspace::EviWorkspace(const std::vector<Vector>& front, Vector ref)
    : front_(pareto_subset(front)), grid_(front_, std::move(ref)) {
  nondominated_ = nondominated_sectors(grid_, grid_.sectors(), front_);

  const int n = grid_.dims();
  widths_.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    const int m = grid_.interval_count(i);
    auto& w = widths_[static_cast<std::size_t>(i)];
    w.assign(static_cast<std::size_t>(m), 0.0);
    for (int k = 0; k + 1 < m; ++k)
      w[static_cast<std::size_t>(k)] = grid_.upper(i, k) - grid_.lower(i, k);
  }

  fast2d_ = (n == 2);
  if (!fast2d_) return;

  const std::size_t m1 = static_cast<std::size_t>(grid_.interval_count(0));
  const std::size_t m2 = static_cast<std::size_t>(grid_.interval_count(1));
  nd2_.assign(m1, std::vector<char>(m2, 0));
  for (const Sector& s : nondominated_)
    nd2_[static_cast<std::size_t>(s[0])][static_cast<std::size_t>(s[1])] = 1;

  // Width-weighted prefix sums over the nondominated membership matrix.
  // Strict prefixes: entry (k1, k2) accumulates indices < k1 / < k2 only,
  // so the zero width stored for the half-open lowest interval of each
  // dimension is never picked up.
  row_prefix_.assign(m1 + 1, std::vector<double>(m2, 0.0));
  for (std::size_t k2 = 0; k2 < m2; ++k2)
    for (std::size_t k1 = 0; k1 < m1; ++k1)
      row_prefix_[k1 + 1][k2] =
          row_prefix_[k1][k2] + (nd2_[k1][k2] ? widths_[0][k1] : 0.0);

  col_prefix_.assign(m1, std::vector<double>(m2 + 1, 0.0));
  for (std::size_t k1 = 0; k1 < m1; ++k1)
    for (std::size_t k2 = 0; k2 < m2; ++k2)
      col_prefix_[k1][k2 + 1] =
          col_prefix_[k1][k2] + (nd2_[k1][k2] ? widths_[1][k2] : 0.0);

  rect_prefix_.assign(m1 + 1, std::vector<double>(m2 + 1, 0.0));
  for (std::size_t k1 = 0; k1 < m1; ++k1)
    for (std::size_t k2 = 0; k2 < m2; ++k2)
      rect_prefix_[k1 + 1][k2 + 1] =
          rect_prefix_[k1][k2 + 1] + rect_prefix_[k1 + 1][k2] - rect_prefix_[k1][k2] +
          (nd2_[k1][k2] ? widths_[0][k1] * widths_[1][k2] : 0.0);
}

EviWorkspace::Moments EviWorkspace::moments_for(const NormalPrediction& pred) const {
  const int n = grid_.dims();
  require(pred.mu.size() == n, "evi: prediction dimension mismatch");
  Moments m;
  m.mass.resize(static_cast<std::size_t>(n));
  m.wedge.resize(static_cast<std::size_t>(n));
  m.tail.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    const double mu = pred.mu[i];
    const double sigma = pred.sigma[i];
    const auto& xi = grid_.coordinates(i);
    const std::size_t nc = xi.size();
    auto& mass = m.mass[static_cast<std::size_t>(i)];
    auto& wedge = m.wedge[static_cast<std::size_t>(i)];
    auto& tail = m.tail[static_cast<std::size_t>(i)];
    mass.resize(nc);
    wedge.resize(nc);
    tail.resize(nc);

    if (sigma == 0.0) {
      for (std::size_t k = 0; k < nc; ++k) {
        const double u = xi[k];
        const bool open = (k + 1 == nc);
        const double above_lower = open ? 1.0 : heaviside(mu - xi[k + 1]);
        mass[k] = heaviside(u - mu) * above_lower;
        wedge[k] = (u - mu) * mass[k];
        tail[k] = open ? 0.0 : heaviside(xi[k + 1] - mu);
      }
      continue;
    }

    // One erf/exp pair per grid coordinate, combined per interval.
    constexpr double kInvSqrt2 = 0.7071067811865475244;
    constexpr double kInvSqrt2Pi = 0.3989422804014326779;
    std::vector<double> erfs(nc), gausses(nc);
    for (std::size_t j = 0; j < nc; ++j) {
      const double z = (xi[j] - mu) * kInvSqrt2 / sigma;
      erfs[j] = std::erf(z);
      gausses[j] = std::exp(-z * z);
    }
    for (std::size_t k = 0; k < nc; ++k) {
      const double u = xi[k];
      if (k + 1 < nc) {
        mass[k] = 0.5 * (erfs[k] - erfs[k + 1]);
        wedge[k] = 0.5 * (u - mu) * (erfs[k] - erfs[k + 1]) +
                   sigma * kInvSqrt2Pi * (gausses[k] - gausses[k + 1]);
        tail[k] = 0.5 * (1.0 + erfs[k + 1]);
      } else {
        mass[k] = 0.5 * (erfs[k] + 1.0);
        wedge[k] = 0.5 * (u - mu) * (erfs[k] + 1.0) + sigma * kInvSqrt2Pi * gausses[k];
        tail[k] = 0.0;
      }
    }
  }
  return m;
}

// Exact expectation as a single sum over nondominated sectors: the expected
// newly dominated volume inside sector s is
//   prod_i [ wedge_i(k_i) + width_i(k_i) * tail_i(k_i) ].
double EviWorkspace::evi_exact(const NormalPrediction& pred) const {
  const Moments m = moments_for(pred);
  const int n = grid_.dims();
  double total = 0.0;
  for (const Sector& s : nondominated_) {
    double f = 1.0;
    for (int i = 0; i < n; ++i) {
      const std::size_t k = static_cast<std::size_t>(s[static_cast<std::size_t>(i)]);
      const std::size_t d = static_cast<std::size_t>(i);
      f *= m.wedge[d][k] + widths_[d][k] * m.tail[d][k];
      if (f == 0.0) break;
    }
    total += f;
  }
  return std::max(total, 0.0);
}

// Contribution of one (landing sector, improvement sector) pair: dimensions
// sharing the interval integrate the wedge, dimensions where the improvement
// sector lies strictly above contribute its full width times the landing mass.
double EviWorkspace::term(const Sector& outer, const Sector& inner,
                          const Moments& m) const {
  const int n = grid_.dims();
  double f = 1.0;
  for (int i = 0; i < n; ++i) {
    const std::size_t d = static_cast<std::size_t>(i);
    const std::size_t k = static_cast<std::size_t>(outer[d]);
    const std::size_t kb = static_cast<std::size_t>(inner[d]);
    f *= (kb == k) ? m.wedge[d][k] : widths_[d][kb] * m.mass[d][k];
    if (f == 0.0) return 0.0;
  }
  return f;
}

double EviWorkspace::truncated_pairwise(const NormalPrediction& pred,
                                        double sigma_ref) const {
  const Moments m = moments_for(pred);
  const TruncationEllipsoid ellipsoid(pred, sigma_ref);
  const int n = grid_.dims();
  double total = 0.0;
  for (const Sector& s : nondominated_) {
    if (!sector_intersects_ellipsoid(grid_, s, ellipsoid)) continue;
    for (const Sector& sb : nondominated_) {
      bool above = true;
      for (int i = 0; i < n && above; ++i)
        above = sb[static_cast<std::size_t>(i)] <= s[static_cast<std::size_t>(i)];
      if (above) total += term(s, sb, m);
    }
  }
  return std::max(total, 0.0);
}

double EviWorkspace::truncated_2d(const NormalPrediction& pred, double sigma_ref) const {
  const Moments m = moments_for(pred);
  const TruncationEllipsoid ellipsoid(pred, sigma_ref);
  double total = 0.0;
  for (const Sector& s : nondominated_) {
    if (!sector_intersects_ellipsoid(grid_, s, ellipsoid)) continue;
    const std::size_t k1 = static_cast<std::size_t>(s[0]);
    const std::size_t k2 = static_cast<std::size_t>(s[1]);
    const double w1 = m.wedge[0][k1], w2 = m.wedge[1][k2];
    const double z1 = m.mass[0][k1], z2 = m.mass[1][k2];
    total += w1 * w2 + w1 * z2 * col_prefix_[k1][k2] + z1 * w2 * row_prefix_[k1][k2] +
             z1 * z2 * rect_prefix_[k1][k2];
  }
  return std::max(total, 0.0);
}

double EviWorkspace::evi_truncated(const NormalPrediction& pred, double sigma_ref) const {
  require(sigma_ref > 0.0, "evi_truncated: sigma_ref > 0 required");
  return fast2d_ ? truncated_2d(pred, sigma_ref) : truncated_pairwise(pred, sigma_ref);
}

double evi_exact(const std::vector<Vector>& front, const Vector& ref,
                 const NormalPrediction& pred) {
  return EviWorkspace(front, ref).evi_exact(pred);
}

double evi_truncated(const std::vector<Vector>& front, const Vector& ref,
                     const NormalPrediction& pred, double sigma_ref) {
  return EviWorkspace(front, ref).evi_truncated(pred, sigma_ref);
}

}  // namespace mobo
