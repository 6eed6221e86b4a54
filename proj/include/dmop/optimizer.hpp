#ifndef DMOP_OPTIMIZER_HPP
#define DMOP_OPTIMIZER_HPP

#include <iosfwd>
#include <vector>

#include "dmop/dynamics.hpp"
#include "dmop/pareto.hpp"

namespace dmop {

struct EaConfig {
    std::size_t budget = 20000;        // evaluation budget
    std::size_t mu = 100;              // population size
    double crossover_rate = 0.9;
    double mutation_rate = -1.0;       // < 0 means 1/n
    double sbx_eta = 15.0;
    double mutation_eta = 20.0;
    double sentinel_delta = 1e-12;     // change-detection threshold
    double immigrant_fraction = 0.2;   // injected on a detected change
    std::size_t sentinel_count = 5;    // bounds center + 4 random points
    std::size_t archive_capacity = 200; // crowding-truncated archive bound
};

struct TimelineRow {
    long tau;
    double t;
    std::size_t evaluations;
    bool change_detected;
    FrontSnapshot archive;
};

struct RunTimeline {
    std::vector<TimelineRow> rows;

    /// CSV: tau, t, evaluations, change, archive_size, hv (2-objective
    /// runs only; the column is left blank otherwise).
    void write_csv(std::ostream& os) const;
};

/// Pinned points re-evaluated each generation to detect a landscape
/// change.
struct SentinelSet {
    std::vector<DecisionVector> points;
    std::vector<ObjectiveVector> values;
};

/// True iff any sentinel re-evaluation at (problem, t) differs from its
/// stored value by more than delta. Stored values are refreshed.
bool sentinel_change_detect(SentinelSet& sentinels, const DynamicProblem& problem, double t,
                            double delta, std::size_t& evaluations);

/// Baseline generational EA: rank + crowding selection, SBX/polynomial
/// variation (bit-flip on discrete problems), sentinel change detection
/// with re-evaluation plus random immigrants, advance() at each change
/// period boundary. Deterministic for a fixed seed.
RunTimeline run_dynamic_ea(DynamicProblem& problem, const EaConfig& cfg, Rng rng);

} // namespace dmop

#endif
