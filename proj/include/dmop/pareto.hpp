#ifndef DMOP_PARETO_HPP
#define DMOP_PARETO_HPP

#include <cstddef>
#include <iosfwd>
#include <vector>

#include "dmop/core.hpp"

namespace dmop {

class DynamicProblem;

/// (time, POS approximation, POF approximation) triple produced by the
/// grid oracle. pos and pof index-correspond.
struct FrontSnapshot {
    double t = 0.0;
    std::vector<DecisionVector> pos;
    std::vector<ObjectiveVector> pof;

    /// CSV rows: t, x_1..x_n, f_1..f_k, one row per POS member.
    void write_csv(std::ostream& os) const;
};

/// Exceeding the grid evaluation budget; carries the required count.
struct CapacityError : std::runtime_error {
    std::size_t required;
    explicit CapacityError(std::size_t req);
};

/// v <_p w: componentwise strict.
bool strictly_less(const ObjectiveVector& v, const ObjectiveVector& w);

/// v <=_p w: componentwise.
bool weakly_less(const ObjectiveVector& v, const ObjectiveVector& w);

/// u dominates v: u <=_p v with at least one strict component.
/// Exact floating-point comparison, no epsilon.
bool dominates(const ObjectiveVector& u, const ObjectiveVector& v);

/// Indices of the non-dominated members of points. Duplicates of a
/// non-dominated value are all retained.
std::vector<std::size_t> non_dominated_filter(const std::vector<ObjectiveVector>& points);

/// True iff no member of points dominates another.
bool mutually_non_dominated(const std::vector<ObjectiveVector>& points);

inline constexpr std::size_t kDefaultGridBudget = 10'000'000;

/// Full-lattice brute force at frozen time t: evaluates the problem on
/// the Cartesian grid over its bounds (both endpoints included),
/// filters non-dominated points. OpenMP-parallel when available.
FrontSnapshot brute_force_front(const DynamicProblem& problem, double t,
                                std::size_t grid_per_dim,
                                std::size_t budget = kDefaultGridBudget);

/// Single-threaded reference implementation; must agree exactly with
/// brute_force_front.
FrontSnapshot brute_force_front_serial(const DynamicProblem& problem, double t,
                                       std::size_t grid_per_dim,
                                       std::size_t budget = kDefaultGridBudget);

} // namespace dmop

#endif
