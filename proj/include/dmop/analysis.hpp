#ifndef DMOP_ANALYSIS_HPP
#define DMOP_ANALYSIS_HPP

#include <iosfwd>
#include <vector>

#include "dmop/dynamics.hpp"
#include "dmop/pareto.hpp"

namespace dmop {

enum class ChangeType { TypeI, TypeII, TypeIII, TypeIV };

const char* change_type_name(ChangeType t);

struct OrderClass {
    enum class Level { Static, FirstOrder, SecondOrder, ThirdOrder, FourthOrder };
    enum class States { Independent, Correlated };
    Level level = Level::Static;
    States states = States::Independent;
};

const char* order_class_name(const OrderClass& c);

/// Table-driven class of a constructed problem: parameters/independent
/// is 1st order, functions/independent 2nd, correlated states 3rd,
/// environment 4th.
OrderClass order_of(const DynamicProblem& problem);

/// Symmetric Hausdorff distance between two point sets.
double hausdorff(const std::vector<std::vector<double>>& a,
                 const std::vector<std::vector<double>>& b);

struct ChangeReport {
    ChangeType type = ChangeType::TypeIV;
    // Per consecutive time pair: sampled time, whether POS/POF moved
    // beyond eps, and the measured Hausdorff distances.
    struct Row {
        double t;
        bool pos_changed;
        bool pof_changed;
        double pos_dist;
        double pof_dist;
    };
    std::vector<Row> rows;
    std::vector<FrontSnapshot> snapshots;
};

/// Default eps for a grid oracle: twice the grid cell diagonal.
double default_change_eps(const Bounds& bounds, std::size_t grid_per_dim);

ChangeReport classify_change(const DynamicProblem& problem, const std::vector<double>& times,
                             std::size_t grid_per_dim, double eps,
                             std::size_t budget = kDefaultGridBudget);

ChangeType classify_change_type(const DynamicProblem& problem, const std::vector<double>& times,
                                std::size_t grid_per_dim, double eps,
                                std::size_t budget = kDefaultGridBudget);

/// Inverted generational distance: mean over reference points of the
/// distance to the nearest approximation point.
double igd(const std::vector<ObjectiveVector>& approx,
           const std::vector<ObjectiveVector>& reference);

/// Area dominated by a bi-objective front and bounded by ref_point.
/// Points not dominating ref_point are excluded; warning_count, when
/// given, receives how many were dropped.
double hypervolume_2d(const std::vector<ObjectiveVector>& front, const ObjectiveVector& ref_point,
                      std::size_t* warning_count = nullptr);

/// CSV: t, pos_changed, pof_changed, type, igd, hv (one row per
/// consecutive time pair; igd/hv of that snapshot against the first).
void write_classification_csv(std::ostream& os, const OrderClass& order,
                              const ChangeReport& report);

} // namespace dmop

#endif
