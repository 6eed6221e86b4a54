#ifndef DMOP_PROBLEMS_HPP
#define DMOP_PROBLEMS_HPP

#include <functional>
#include <vector>

#include "dmop/dynamics.hpp"

namespace dmop {

/// Step function G(t) = s * floor(tau / tau_T) driving all scheduled
/// benchmark changes.
double g_step(long tau, double severity, int tau_T);

// ---------------------------------------------------------------------
// DSW (first order)

struct DswConfig {
    double a11 = 1.0, a12 = 0.0, a21 = 1.0, a22 = 0.0;
    double b1 = 1.0, b2 = 1.0;
    std::size_t n = 2;
    double severity = 1.0; // s
    int tau_T = 10;
    // The printed d_1/d_2 use a_{i2}*x_1 and b_1 in both transforms;
    // corrected switches to a_{i2}*x_2 and b_2 in d_2.
    bool corrected = false;
    double bound_lo = -5.0, bound_hi = 5.0;
};

/// Twin-sphere first-order instance: f_j = sum x_i^2 composed with the
/// shifted-coordinate transforms d_1, d_2.
DynamicProblem dsw_make(const DswConfig& cfg, Environment env = {});

// ---------------------------------------------------------------------
// Dynamic DTLZ2 (second order)

enum class Dtlz2GMode {
    Product,      // f_i * g(x_k, t)
    OnePlusG      // f_i * (1 + g(x_k, t))
};

struct Dtlz2DynConfig {
    std::size_t k = 2; // objectives
    std::size_t p = 1; // size of the x_k block; total dimension p + k - 1
    Dtlz2GMode g_mode = Dtlz2GMode::OnePlusG;
    double severity = 0.1;
    int tau_T = 10;
    // G(t); defaults to clamp(severity * t, 0, 1).
    std::function<double(double)> g_of_t;
};

/// Product-of-cosines support with sum f_i^2 = 1 identically. x holds
/// the k-1 position variables first.
ObjectiveVector dtlz2_support(const DecisionVector& x, std::size_t k);

DynamicProblem dtlz2_dynamic_make(const Dtlz2DynConfig& cfg, Environment env = {});

/// The static baseline: f_i * (1 + g) with g = sum (x_i - 0.5)^2 over
/// the x_k block.
DynamicProblem dtlz2_static_make(std::size_t k, std::size_t p, Environment env = {});

// ---------------------------------------------------------------------
// Moving peaks (third order)

struct Peak {
    double height = 10.0;
    double width = 1.0;
    DecisionVector location;
};

struct PeakSet {
    std::vector<Peak> peaks;
    double sigma_height = 0.0;
    double sigma_width = 0.0;
    double sigma_location = 0.0;
    double width_floor = 1e-3;
};

enum class PeakDependency { StateParam, StateFunc };

/// Cone landscape max(0, max_i h_i - w_i * ||x - p_i||_2).
double moving_peaks_landscape(const DecisionVector& x, const PeakSet& peaks);

/// Seeded random PeakSet within bounds.
PeakSet random_peak_set(std::size_t m, const Bounds& bounds, Rng& rng,
                        double sigma_h = 0.5, double sigma_w = 0.05, double sigma_p = 0.1);

/// Two objectives: negated landscape and the static distance ||x - c||
/// to the bounds center. StateParam evaluates the walked parameters of
/// the newest state; StateFunc evaluates the frozen landscape of the
/// previous state.
DynamicProblem moving_peaks_make(PeakSet peaks, Bounds bounds, PeakDependency dependency,
                                 std::size_t window, Environment env = {});

std::vector<double> serialize_peaks(const PeakSet& peaks);
PeakSet deserialize_peaks(const std::vector<double>& params, std::size_t dimension,
                          const PeakSet& prototype);

// ---------------------------------------------------------------------
// MNK landscape (fourth order)

struct MnkConfig {
    std::size_t M = 2;  // objectives
    std::size_t N = 12; // bit-string length
    std::size_t K = 2;  // epistatic neighbors per bit
    double rho = 1.0;   // per-step table regeneration fraction
    bool adjacent_neighbors = false;
};

/// Interaction tables and neighborhoods for one time step.
struct MnkTables {
    std::size_t M, N, K;
    // neighbors[m][i]: K neighbor indices of bit i in objective m.
    std::vector<std::vector<std::vector<std::size_t>>> neighbors;
    // table[m][i]: 2^(K+1) contribution values in [0, 1].
    std::vector<std::vector<std::vector<double>>> table;
};

/// Tables for a given change step, rebuilt deterministically from the
/// seed by applying `step` regeneration rounds to the base tables.
MnkTables mnk_tables_at(const MnkConfig& cfg, std::uint64_t seed, long step);

/// Raw (maximization) fitness vector, components in [0, 1].
ObjectiveVector mnk_fitness(const std::vector<int>& bits, const MnkTables& tables);

/// Fourth-order problem over bit strings encoded as 0/1 decision
/// variables; fitness negated for minimization.
DynamicProblem mnk_make(const MnkConfig& cfg, Environment env);

// ---------------------------------------------------------------------
// Fixtures

/// Static two-sphere: f1 = sum x_i^2, f2 = (x_1 - 2)^2 + rest. The
/// analytic front satisfies sqrt(f1) + sqrt(f2) = 2.
DynamicProblem two_sphere_make(std::size_t n = 1, double lo = 0.0, double hi = 3.0,
                               Environment env = {});

/// POF-scaling fixture (second order): f_i * (1 + G(t)) over the static
/// DTLZ2 baseline, so the POS stays pinned while the POF scales.
DynamicProblem pof_scaling_make(std::size_t k, std::size_t p, double severity, int tau_T,
                                Environment env = {});

} // namespace dmop

#endif
