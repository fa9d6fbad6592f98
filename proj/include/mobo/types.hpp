// types.hpp - domain types shared across the library.
#pragma once

#include <Eigen/Dense>

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace mobo {

using Vector = Eigen::VectorXd;

// Thrown when a documented precondition is violated by the caller.
struct ContractViolation : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct NotEnoughData : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct EmptyParetoSet : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ThresholdUnreached : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NotApplicable : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline void require(bool condition, const char* message) {
  if (!condition) throw ContractViolation(message);
}

// Closed axis-aligned box [lo, hi] in design space. lo_j < hi_j per dimension.
struct Bounds {
  Vector lo;
  Vector hi;

  Bounds() = default;
  Bounds(Vector lo_in, Vector hi_in) : lo(std::move(lo_in)), hi(std::move(hi_in)) {
    require(lo.size() == hi.size() && lo.size() >= 1, "Bounds: dimension mismatch or empty");
    require((lo.array() < hi.array()).all(), "Bounds: lo_j < hi_j required");
  }

  Eigen::Index dim() const { return lo.size(); }

  bool contains(const Vector& x, double tol = 0.0) const {
    if (x.size() != lo.size()) return false;
    return (x.array() >= lo.array() - tol).all() && (x.array() <= hi.array() + tol).all();
  }

  // Affine map onto the unit cube [0,1]^d and back.
  Vector to_unit(const Vector& x) const { return (x - lo).cwiseQuotient(hi - lo); }
  Vector from_unit(const Vector& u) const { return lo + u.cwiseProduct(hi - lo); }

  Vector clamp(const Vector& x) const { return x.cwiseMax(lo).cwiseMin(hi); }
};

// Separable normal predictive density: one (mu_i, sigma_i) per objective.
// sigma_i = 0 is allowed and routes Dirac-limit code paths.
struct NormalPrediction {
  Vector mu;
  Vector sigma;

  NormalPrediction() = default;
  NormalPrediction(Vector mu_in, Vector sigma_in)
      : mu(std::move(mu_in)), sigma(std::move(sigma_in)) {
    require(mu.size() == sigma.size(), "NormalPrediction: length mismatch");
    require((sigma.array() >= 0.0).all(), "NormalPrediction: sigma >= 0 required");
  }
};

enum class Feasibility { kFeasible, kInfeasible };

inline bool is_feasible(Feasibility f) { return f == Feasibility::kFeasible; }

// One black-box evaluation record (x, y, f). The objective payload is absent
// for infeasible samples and must not be read in that case.
struct Sample {
  Vector x;
  std::optional<Vector> y;
  Feasibility f = Feasibility::kInfeasible;

  Sample() = default;
  Sample(Vector x_in, Vector y_in)
      : x(std::move(x_in)), y(std::move(y_in)), f(Feasibility::kFeasible) {}
  Sample(Vector x_in, std::nullopt_t) : x(std::move(x_in)), y(std::nullopt) {}

  bool feasible() const { return f == Feasibility::kFeasible; }

  const Vector& objectives() const {
    require(feasible() && y.has_value(), "Sample: objectives read on infeasible sample");
    return *y;
  }
};

// Append-only collection of samples with the derived partial views.
class Dataset {
 public:
  Dataset() = default;

  void append(Sample s) { samples_.push_back(std::move(s)); }
  void append(const Dataset& other) {
    samples_.insert(samples_.end(), other.samples_.begin(), other.samples_.end());
  }

  std::size_t size() const { return samples_.size(); }
  bool empty() const { return samples_.empty(); }
  const Sample& operator[](std::size_t i) const { return samples_[i]; }
  const std::vector<Sample>& samples() const { return samples_; }

  // D_x: every evaluated design point.
  std::vector<Vector> xs() const {
    std::vector<Vector> out;
    out.reserve(samples_.size());
    for (const auto& s : samples_) out.push_back(s.x);
    return out;
  }

  // D_y*: objectives of the feasible samples only.
  std::vector<Vector> feasible_objectives() const {
    std::vector<Vector> out;
    for (const auto& s : samples_)
      if (s.feasible()) out.push_back(s.objectives());
    return out;
  }

  // D_xy*: (x, y) of the feasible samples.
  std::vector<std::pair<Vector, Vector>> feasible_pairs() const {
    std::vector<std::pair<Vector, Vector>> out;
    for (const auto& s : samples_)
      if (s.feasible()) out.emplace_back(s.x, s.objectives());
    return out;
  }

  // D_xf: (x, f) for every sample.
  std::vector<std::pair<Vector, Feasibility>> labels() const {
    std::vector<std::pair<Vector, Feasibility>> out;
    out.reserve(samples_.size());
    for (const auto& s : samples_) out.emplace_back(s.x, s.f);
    return out;
  }

  std::size_t feasible_count() const {
    std::size_t n = 0;
    for (const auto& s : samples_)
      if (s.feasible()) ++n;
    return n;
  }

 private:
  std::vector<Sample> samples_;
};

}  // namespace mobo
