// pareto.hpp - Pareto dominance, Pareto-optimal subsets and dominated
// hypervolume with respect to a reference point (minimization throughout).
#pragma once

#include "mobo/types.hpp"

#include <vector>

namespace mobo {

// True iff a is no worse in every component and differs from b.
bool dominates(const Vector& a, const Vector& b);

// Elements of ys not dominated by any other element. Componentwise-equal
// duplicates collapse to the first occurrence. Order of survivors is the
// input order.
std::vector<Vector> pareto_subset(const std::vector<Vector>& ys);

// Indices into ys of the Pareto-optimal subset (first occurrence on ties).
std::vector<std::size_t> pareto_indices(const std::vector<Vector>& ys);

// Volume of { y | P <= y <= ref componentwise }. Points with any component
// at or above ref contribute nothing. Input need not be mutually
// non-dominated; a Pareto filter is applied internally.
double hypervolume(const std::vector<Vector>& front, const Vector& ref);

// hypervolume(P u {y}) - hypervolume(P), always >= 0.
double hypervolume_improvement(const std::vector<Vector>& front, const Vector& ref,
                               const Vector& y);

// Same quantity through the sector-grid decomposition for any n. hypervolume()
// routes n = 2 through a coordinate sweep instead; keeping this entry point
// public lets the two routes be checked against each other.
double hypervolume_by_grid(const std::vector<Vector>& front, const Vector& ref);

}  // namespace mobo
