#include "dmop/dynamics.hpp"

#include <stdexcept>
#include <utility>

namespace dmop {

ParameterTransform ParameterTransform::identity(std::size_t k) {
    ParameterTransform d;
    d.components.assign(k, [](const DecisionVector& x, double) { return x; });
    return d;
}

StateHistory::StateHistory(std::size_t window) : window_(window) {
    if (window < 1) throw std::invalid_argument("StateHistory: window must be >= 1");
}

const SystemState& StateHistory::previous() const {
    if (entries_.empty()) throw std::logic_error("StateHistory: empty");
    return entries_.size() >= 2 ? entries_[entries_.size() - 2] : entries_.back();
}

void StateHistory::push(SystemState state) {
    entries_.push_back(std::move(state));
    while (entries_.size() > window_) entries_.pop_front();
}

std::vector<std::vector<double>> StateHistory::serialize_params() const {
    std::vector<std::vector<double>> out;
    out.reserve(entries_.size());
    for (const auto& e : entries_) out.push_back(e.params);
    return out;
}

const char* order_name(Order o) {
    switch (o) {
        case Order::Static: return "static";
        case Order::First: return "first";
        case Order::Second: return "second";
        case Order::ThirdParam: return "third-param";
        case Order::ThirdFunc: return "third-func";
        case Order::Fourth: return "fourth";
    }
    return "?";
}

ObjectiveVector DynamicProblem::evaluate(const DecisionVector& x, double t) const {
    if (order_ == Order::Fourth) {
        long step = std::max(0L, time_.step_of_time(t));
        SupportFunction sf = support_at_step(step);
        return sf.eval(x, env_, t);
    }
    return eval_(x, t);
}

SupportFunction DynamicProblem::support_at_step(long step) const {
    std::lock_guard<std::mutex> lock(env_cache_->mutex);
    auto it = env_cache_->by_step.find(step);
    if (it != env_cache_->by_step.end()) return it->second;
    double t = time_.t0 + static_cast<double>(step) * time_.time_step;
    Environment sigma = schedule_(env_, t);
    SupportFunction sf = family_(sigma);
    if (sf.dimension != dimension_ || sf.objectives != objectives_)
        throw std::runtime_error("fourth order: schedule produced an environment the family rejects");
    env_cache_->by_step.emplace(step, sf);
    return sf;
}

void DynamicProblem::advance(Rng& rng) {
    ++step_;
    if (history_) {
        SystemState next;
        if (update_) {
            next = update_(history_->newest(), step_, rng);
        } else {
            next = history_->newest();
        }
        next.tau = step_ * time_.tau_T;
        next.t = time_.t0 + static_cast<double>(step_) * time_.time_step;
        history_->push(std::move(next));
    }
}

SupportFunction DynamicProblem::as_support() const {
    SupportFunction sf;
    sf.dimension = dimension_;
    sf.objectives = objectives_;
    sf.bounds = bounds_;
    DynamicProblem self = *this; // shares state via the history pointer
    sf.eval = [self](const DecisionVector& x, const Environment&, double t) {
        return self.evaluate(x, t);
    };
    return sf;
}

DynamicProblem make_static(SupportFunction support, Environment env) {
    DynamicProblem p;
    p.order_ = Order::Static;
    p.dimension_ = support.dimension;
    p.objectives_ = support.objectives;
    p.bounds_ = support.bounds;
    p.env_ = env;
    p.eval_ = [support, env](const DecisionVector& x, double t) {
        return support.eval(x, env, t);
    };
    return p;
}

DynamicProblem first_order_compose(SupportFunction support, ParameterTransform d,
                                   Environment env) {
    if (d.components.size() != support.objectives)
        throw std::invalid_argument("first_order_compose: need one d_i per objective");
    // Probe the transforms once so dimension mismatches fail at
    // composition time, not mid-run.
    DecisionVector probe = support.bounds.center();
    for (const auto& di : d.components)
        if (di(probe, 0.0).size() != support.dimension)
            throw std::invalid_argument("first_order_compose: d_i output dimension mismatch");

    DynamicProblem p;
    p.order_ = Order::First;
    p.dimension_ = support.dimension;
    p.objectives_ = support.objectives;
    p.bounds_ = support.bounds;
    p.env_ = env;
    p.eval_ = [support, d, env](const DecisionVector& x, double t) {
        ObjectiveVector out(support.objectives);
        for (std::size_t i = 0; i < support.objectives; ++i)
            out[i] = support.eval(d.components[i](x, t), env, t)[i];
        return out;
    };
    return p;
}

DynamicProblem second_order_compose(SupportFunction support, ObjectiveTransform d,
                                    Environment env) {
    if (d.components.size() != support.objectives)
        throw std::invalid_argument("second_order_compose: need one d_i per objective");
    DynamicProblem p;
    p.order_ = Order::Second;
    p.dimension_ = support.dimension;
    p.objectives_ = support.objectives;
    p.bounds_ = support.bounds;
    p.env_ = env;
    p.eval_ = [support, d](const DecisionVector& x, double t) {
        ObjectiveVector out(support.objectives);
        for (std::size_t i = 0; i < support.objectives; ++i)
            out[i] = d.components[i](support, x, t);
        return out;
    };
    return p;
}

namespace {

std::shared_ptr<StateHistory> seed_history(std::size_t window, std::vector<double> initial,
                                           const TimeModel& tm) {
    auto h = std::make_shared<StateHistory>(window);
    SystemState s0;
    s0.tau = 0;
    s0.t = tm.t0;
    s0.params = std::move(initial);
    h->push(std::move(s0));
    return h;
}

} // namespace

DynamicProblem third_order_param(
    SupportFunction support,
    std::function<DecisionVector(const StateHistory&, const DecisionVector&)> transform,
    std::size_t window, std::vector<double> initial_state,
    std::function<SystemState(const SystemState&, long, Rng&)> update, Environment env) {
    DynamicProblem p;
    p.order_ = Order::ThirdParam;
    p.dimension_ = support.dimension;
    p.objectives_ = support.objectives;
    p.bounds_ = support.bounds;
    p.env_ = env;
    p.history_ = seed_history(window, std::move(initial_state), p.time_);
    p.update_ = std::move(update);
    auto history = p.history_;
    p.eval_ = [support, transform, history, env](const DecisionVector& x, double t) {
        return support.eval(transform(*history, x), env, t);
    };
    return p;
}

DynamicProblem third_order_func(
    SupportFunction support,
    std::function<ObjectiveVector(const StateHistory&, const ObjectiveVector&,
                                  const DecisionVector&)>
        transform,
    std::size_t window, std::vector<double> initial_state,
    std::function<SystemState(const SystemState&, long, Rng&)> update, Environment env) {
    DynamicProblem p;
    p.order_ = Order::ThirdFunc;
    p.dimension_ = support.dimension;
    p.objectives_ = support.objectives;
    p.bounds_ = support.bounds;
    p.env_ = env;
    p.history_ = seed_history(window, std::move(initial_state), p.time_);
    p.update_ = std::move(update);
    auto history = p.history_;
    p.eval_ = [support, transform, history, env](const DecisionVector& x, double t) {
        return transform(*history, support.eval(x, env, t), x);
    };
    return p;
}

DynamicProblem third_order_custom(
    Order order, std::size_t dimension, std::size_t objectives, Bounds bounds,
    std::function<ObjectiveVector(const StateHistory&, const DecisionVector&, double)> eval,
    std::size_t window, SystemState initial_state,
    std::function<SystemState(const SystemState&, long, Rng&)> update, Environment env) {
    if (order != Order::ThirdParam && order != Order::ThirdFunc)
        throw std::invalid_argument("third_order_custom: order must be a third-order variant");
    DynamicProblem p;
    p.order_ = order;
    p.dimension_ = dimension;
    p.objectives_ = objectives;
    p.bounds_ = std::move(bounds);
    p.env_ = std::move(env);
    p.history_ = std::make_shared<StateHistory>(window);
    initial_state.tau = 0;
    initial_state.t = p.time_.t0;
    p.history_->push(std::move(initial_state));
    p.update_ = std::move(update);
    auto history = p.history_;
    p.eval_ = [eval, history](const DecisionVector& x, double t) {
        return eval(*history, x, t);
    };
    return p;
}

DynamicProblem fourth_order_compose(std::function<SupportFunction(const Environment&)> family,
                                    EnvironmentSchedule schedule, Environment initial,
                                    Bounds bounds, std::size_t dimension,
                                    std::size_t objectives) {
    DynamicProblem p;
    p.order_ = Order::Fourth;
    p.dimension_ = dimension;
    p.objectives_ = objectives;
    p.bounds_ = std::move(bounds);
    p.env_ = std::move(initial);
    p.family_ = std::move(family);
    p.schedule_ = std::move(schedule);
    p.env_cache_ = std::make_shared<DynamicProblem::EnvCache>();
    return p;
}

ObjectiveVector trajectory_integral(const DynamicProblem& problem,
                                    const std::function<DecisionVector(double)>& trajectory,
                                    double t0, double t_end, std::size_t steps) {
    if (steps < 1) throw std::invalid_argument("trajectory_integral: steps must be >= 1");
    if (t0 > t_end) throw std::invalid_argument("trajectory_integral: t0 > t_end");
    double delta = (t_end - t0) / static_cast<double>(steps);
    ObjectiveVector acc(problem.objectives(), 0.0);
    for (std::size_t m = 0; m < steps; ++m) {
        double tm = t0 + static_cast<double>(m) * delta;
        DecisionVector x = trajectory(tm);
        if (x.size() != problem.dimension())
            throw std::invalid_argument("trajectory_integral: trajectory undefined at t");
        ObjectiveVector f = problem.evaluate(x, tm);
        for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += f[i];
    }
    for (double& v : acc) v *= delta;
    return acc;
}

} // namespace dmop
