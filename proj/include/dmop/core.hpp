#ifndef DMOP_CORE_HPP
#define DMOP_CORE_HPP

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace dmop {

/// Point in the decision space X.
using DecisionVector = std::vector<double>;

/// Point in the objective space Y (minimization convention).
using ObjectiveVector = std::vector<double>;

/// Box constraints on the decision space.
struct Bounds {
    std::vector<double> lower;
    std::vector<double> upper;

    Bounds() = default;
    Bounds(std::vector<double> lo, std::vector<double> hi);

    /// Uniform box [lo, hi]^n.
    static Bounds uniform(std::size_t n, double lo, double hi);

    std::size_t dimension() const { return lower.size(); }
    bool contains(const DecisionVector& x) const;
    double center(std::size_t i) const { return 0.5 * (lower[i] + upper[i]); }
    DecisionVector center() const;
};

/// Discrete-to-continuous time mapping: problem time advances by
/// time_step once every tau_T generations.
struct TimeModel {
    int tau_T = 10;        // generations per change period
    double severity = 1.0; // per-change severity step s, used by G(t)
    double t0 = 0.0;
    double t_end = 10.0;
    double time_step = 1.0;

    long step_index(long tau) const;
    double time_of(long tau) const;
    long step_of_time(double t) const;
};

/// Instance-level constants: seed plus named real parameters.
/// Treated as immutable; dynamic environments are produced as new values.
struct Environment {
    std::uint64_t seed = 0;
    std::map<std::string, double> params;

    Environment() = default;
    explicit Environment(std::uint64_t s) : seed(s) {}

    double get(const std::string& key, double fallback) const;
    Environment with(const std::string& key, double value) const;
};

/// Deterministic pseudo-random stream. Substreams are derived from
/// (seed, label[, index]) so adding a consumer never perturbs another's
/// stream. All draws avoid std:: distributions to stay bit-identical
/// across platforms.
class Rng {
public:
    explicit Rng(std::uint64_t seed);

    static Rng derive(std::uint64_t seed, std::string_view label);
    static Rng derive(std::uint64_t seed, std::string_view label, std::uint64_t index);

    std::uint64_t next_u64();

    /// Uniform in [0, 1).
    double uniform();
    /// Uniform in [a, b).
    double uniform(double a, double b);
    /// Uniform integer in [lo, hi] inclusive.
    long uniform_int(long lo, long hi);
    /// Standard normal via Box-Muller.
    double gaussian();
    double gaussian(double mean, double sigma);

private:
    std::uint64_t state_;
};

double time_of(long tau, const TimeModel& model);

/// Componentwise clamp of x into b. Throws std::invalid_argument on
/// dimension mismatch.
DecisionVector clamp_to_bounds(const DecisionVector& x, const Bounds& b);

} // namespace dmop

#endif
