#ifndef DMOP_DYNAMICS_HPP
#define DMOP_DYNAMICS_HPP

#include <deque>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <vector>

#include "dmop/core.hpp"

namespace dmop {

/// Static multi-objective support function F_sigma. eval must be pure:
/// same (x, env, t) gives the same output. Static supports ignore t;
/// the parameter exists so a composed dynamic problem can itself serve
/// as the support of an outer composition.
struct SupportFunction {
    std::size_t dimension = 0;
    std::size_t objectives = 0;
    Bounds bounds;
    std::function<ObjectiveVector(const DecisionVector&, const Environment&, double)> eval;

    ObjectiveVector operator()(const DecisionVector& x, const Environment& env,
                               double t = 0.0) const {
        return eval(x, env, t);
    }
};

/// First-order component: per-objective decision-space maps d_i(x, t).
struct ParameterTransform {
    std::vector<std::function<DecisionVector(const DecisionVector&, double)>> components;

    static ParameterTransform identity(std::size_t k);
};

/// Second-order component: per-objective maps d_i(F, x, t) -> real.
struct ObjectiveTransform {
    std::vector<std::function<double(const SupportFunction&, const DecisionVector&, double)>>
        components;
};

/// One frozen state of the system: generation, time, parameter values
/// and (optionally) a frozen landscape evaluator.
struct SystemState {
    long tau = 0;
    double t = 0.0;
    std::vector<double> params;
    std::function<double(const DecisionVector&)> landscape;
};

/// Bounded window of the last j system states, newest last. Entries are
/// immutable snapshots.
class StateHistory {
public:
    explicit StateHistory(std::size_t window);

    std::size_t window() const { return window_; }
    std::size_t size() const { return entries_.size(); }
    const SystemState& newest() const { return entries_.back(); }
    /// Entry one step behind the newest; the newest itself when the
    /// history holds a single entry.
    const SystemState& previous() const;
    const SystemState& at(std::size_t i) const { return entries_.at(i); }

    void push(SystemState state);

    /// Parameter payloads of all entries, oldest first. Used by the
    /// immutability checks.
    std::vector<std::vector<double>> serialize_params() const;

private:
    std::size_t window_;
    std::deque<SystemState> entries_;
};

/// Fourth-order component: deterministic map (sigma, t) -> sigma'.
using EnvironmentSchedule = std::function<Environment(const Environment&, double)>;

enum class Order { Static, First, Second, ThirdParam, ThirdFunc, Fourth };

const char* order_name(Order o);

/// The composed system H(F_sigma, D, x, t). evaluate at a frozen state
/// is pure and thread-safe; advance requires exclusive access.
class DynamicProblem {
public:
    Order order() const { return order_; }
    std::size_t dimension() const { return dimension_; }
    std::size_t objectives() const { return objectives_; }
    const Bounds& bounds() const { return bounds_; }
    const Environment& environment() const { return env_; }
    const TimeModel& time_model() const { return time_; }
    void set_time_model(const TimeModel& tm) { time_ = tm; }
    bool discrete() const { return discrete_; }

    const StateHistory* history() const { return history_.get(); }
    long step_index() const { return step_; }

    ObjectiveVector evaluate(const DecisionVector& x, double t) const;

    /// Generation-boundary state transition: pushes the next state into
    /// the history (third order), moves the step index. No-op on state
    /// for Static/First/Second/Fourth orders.
    void advance(Rng& rng);

    /// Wrap this problem as a support function for nested composition.
    SupportFunction as_support() const;

    friend DynamicProblem make_static(SupportFunction support, Environment env);
    friend DynamicProblem first_order_compose(SupportFunction support, ParameterTransform d,
                                              Environment env);
    friend DynamicProblem second_order_compose(SupportFunction support, ObjectiveTransform d,
                                               Environment env);
    friend DynamicProblem third_order_param(
        SupportFunction support,
        std::function<DecisionVector(const StateHistory&, const DecisionVector&)> transform,
        std::size_t window, std::vector<double> initial_state,
        std::function<SystemState(const SystemState&, long, Rng&)> update, Environment env);
    friend DynamicProblem third_order_func(
        SupportFunction support,
        std::function<ObjectiveVector(const StateHistory&, const ObjectiveVector&,
                                      const DecisionVector&)>
            transform,
        std::size_t window, std::vector<double> initial_state,
        std::function<SystemState(const SystemState&, long, Rng&)> update, Environment env);
    friend DynamicProblem fourth_order_compose(
        std::function<SupportFunction(const Environment&)> family, EnvironmentSchedule schedule,
        Environment initial, Bounds bounds, std::size_t dimension, std::size_t objectives);
    friend DynamicProblem third_order_custom(
        Order order, std::size_t dimension, std::size_t objectives, Bounds bounds,
        std::function<ObjectiveVector(const StateHistory&, const DecisionVector&, double)> eval,
        std::size_t window, SystemState initial_state,
        std::function<SystemState(const SystemState&, long, Rng&)> update, Environment env);

    void set_discrete(bool d) { discrete_ = d; }

private:
    DynamicProblem() = default;

    Order order_ = Order::Static;
    std::size_t dimension_ = 0;
    std::size_t objectives_ = 0;
    Bounds bounds_;
    Environment env_;
    TimeModel time_;
    bool discrete_ = false;
    long step_ = 0;

    std::function<ObjectiveVector(const DecisionVector&, double)> eval_;
    // Third order only.
    std::shared_ptr<StateHistory> history_;
    std::function<SystemState(const SystemState&, long, Rng&)> update_;
    // Fourth order only.
    std::function<SupportFunction(const Environment&)> family_;
    EnvironmentSchedule schedule_;
    struct EnvCache {
        std::mutex mutex;
        std::map<long, SupportFunction> by_step;
    };
    std::shared_ptr<EnvCache> env_cache_;

    SupportFunction support_at_step(long step) const;
};

DynamicProblem make_static(SupportFunction support, Environment env = {});

/// H(F, D, x, t) = F(D(x, t)).
DynamicProblem first_order_compose(SupportFunction support, ParameterTransform d,
                                   Environment env = {});

/// H(F, D, x, t) = D(F, x, t) = (d_i(F, x, t)).
DynamicProblem second_order_compose(SupportFunction support, ObjectiveTransform d,
                                    Environment env = {});

/// H(F, T, x, t) = F(T(history, x)). The initial state is always
/// present, so a single-entry window is well defined. update, when
/// given, produces the next state from the newest one at each advance.
DynamicProblem third_order_param(
    SupportFunction support,
    std::function<DecisionVector(const StateHistory&, const DecisionVector&)> transform,
    std::size_t window, std::vector<double> initial_state = {},
    std::function<SystemState(const SystemState&, long, Rng&)> update = {},
    Environment env = {});

/// H(F, T, x, t) = T(history, F(x)).
DynamicProblem third_order_func(
    SupportFunction support,
    std::function<ObjectiveVector(const StateHistory&, const ObjectiveVector&,
                                  const DecisionVector&)>
        transform,
    std::size_t window, std::vector<double> initial_state = {},
    std::function<SystemState(const SystemState&, long, Rng&)> update = {},
    Environment env = {});

/// General third-order form for problems whose landscape itself lives
/// in the state (moving peaks): eval sees the full history and x.
/// order must be ThirdParam or ThirdFunc.
DynamicProblem third_order_custom(
    Order order, std::size_t dimension, std::size_t objectives, Bounds bounds,
    std::function<ObjectiveVector(const StateHistory&, const DecisionVector&, double)> eval,
    std::size_t window, SystemState initial_state,
    std::function<SystemState(const SystemState&, long, Rng&)> update, Environment env = {});

/// H(F, D, x, t) = F_{D(sigma, t)}(x). Environments are produced per
/// time step and cached by step index.
DynamicProblem fourth_order_compose(std::function<SupportFunction(const Environment&)> family,
                                    EnvironmentSchedule schedule, Environment initial,
                                    Bounds bounds, std::size_t dimension,
                                    std::size_t objectives);

/// Componentwise left-Riemann sum of F(x(t), t) over [t0, t_end].
ObjectiveVector trajectory_integral(const DynamicProblem& problem,
                                    const std::function<DecisionVector(double)>& trajectory,
                                    double t0, double t_end, std::size_t steps);

} // namespace dmop

#endif
