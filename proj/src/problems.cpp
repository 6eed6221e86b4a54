#include "dmop/problems.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace dmop {

double g_step(long tau, double severity, int tau_T) {
    if (tau < 0 || tau_T < 1) throw std::invalid_argument("g_step: tau >= 0, tau_T >= 1");
    return severity * static_cast<double>(tau / tau_T);
}

namespace {

constexpr double kHalfPi = 1.5707963267948966192313216916398;

double sum_of_squares(const DecisionVector& x) {
    double s = 0.0;
    for (double v : x) s += v * v;
    return s;
}

double euclidean(const DecisionVector& a, const DecisionVector& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        double d = a[i] - b[i];
        s += d * d;
    }
    return std::sqrt(s);
}

} // namespace

// ---------------------------------------------------------------------
// DSW

DynamicProblem dsw_make(const DswConfig& cfg, Environment env) {
    if (cfg.n < 1) throw std::invalid_argument("dsw_make: n must be >= 1");
    const std::size_t n = cfg.n;

    SupportFunction sphere;
    sphere.dimension = n;
    sphere.objectives = 2;
    sphere.bounds = Bounds::uniform(n, cfg.bound_lo, cfg.bound_hi);
    sphere.eval = [](const DecisionVector& x, const Environment&, double) {
        double s = sum_of_squares(x);
        return ObjectiveVector{s, s};
    };

    const double s = cfg.severity;
    auto second_term = [corrected = cfg.corrected, n](const DecisionVector& x) {
        // The model as printed applies a_{i2} to x_1; the corrected
        // reading uses x_2.
        return (corrected && n >= 2) ? x[1] : x[0];
    };
    ParameterTransform d;
    d.components.push_back([cfg, s, second_term](const DecisionVector& x, double t) {
        DecisionVector y = x;
        y[0] = cfg.a11 * x[0] + cfg.a12 * second_term(x) - cfg.b1 * (s * t);
        return y;
    });
    double b_d2 = cfg.corrected ? cfg.b2 : cfg.b1;
    d.components.push_back([cfg, s, b_d2, second_term](const DecisionVector& x, double t) {
        DecisionVector y = x;
        y[0] = cfg.a21 * x[0] + cfg.a22 * second_term(x) - b_d2 * (s * t) - 2.0;
        return y;
    });

    DynamicProblem p = first_order_compose(std::move(sphere), std::move(d), std::move(env));
    TimeModel tm;
    tm.tau_T = cfg.tau_T;
    tm.severity = cfg.severity;
    p.set_time_model(tm);
    return p;
}

// ---------------------------------------------------------------------
// DTLZ2

ObjectiveVector dtlz2_support(const DecisionVector& x, std::size_t k) {
    if (k < 2) throw std::invalid_argument("dtlz2_support: k must be >= 2");
    if (x.size() < k - 1) throw std::invalid_argument("dtlz2_support: need k-1 position variables");
    for (std::size_t i = 0; i + 1 < k; ++i)
        if (x[i] < 0.0 || x[i] > 1.0)
            throw std::invalid_argument("dtlz2_support: position variables must lie in [0, 1]");

    ObjectiveVector f(k);
    for (std::size_t i = 1; i <= k; ++i) {
        double v = 1.0;
        for (std::size_t j = 1; j + i <= k; ++j) v *= std::cos(x[j - 1] * kHalfPi);
        if (i > 1) v *= std::sin(x[k - i] * kHalfPi);
        f[i - 1] = v;
    }
    return f;
}

namespace {

DynamicProblem dtlz2_compose(std::size_t k, std::size_t p,
                             std::function<double(const DecisionVector&, double)> factor,
                             Environment env) {
    const std::size_t n = p + k - 1;
    SupportFunction support;
    support.dimension = n;
    support.objectives = k;
    support.bounds = Bounds::uniform(n, 0.0, 1.0);
    support.eval = [k](const DecisionVector& x, const Environment&, double) {
        return dtlz2_support(x, k);
    };

    ObjectiveTransform d;
    for (std::size_t i = 0; i < k; ++i) {
        d.components.push_back(
            [i, factor](const SupportFunction& F, const DecisionVector& x, double t) {
                return factor(x, t) * F.eval(x, {}, t)[i];
            });
    }
    return second_order_compose(std::move(support), std::move(d), std::move(env));
}

} // namespace

DynamicProblem dtlz2_dynamic_make(const Dtlz2DynConfig& cfg, Environment env) {
    if (cfg.p < 1) throw std::invalid_argument("dtlz2_dynamic_make: p must be >= 1");
    const std::size_t k = cfg.k;
    const std::size_t block_start = k - 1;
    std::function<double(double)> G = cfg.g_of_t;
    if (!G) {
        double s = cfg.severity;
        G = [s](double t) { return std::clamp(s * t, 0.0, 1.0); };
    }
    auto mode = cfg.g_mode;
    auto factor = [G, block_start, mode](const DecisionVector& x, double t) {
        double gt = G(t);
        double g = gt;
        for (std::size_t i = block_start; i < x.size(); ++i)
            g += (x[i] - gt) * (x[i] - gt);
        return mode == Dtlz2GMode::Product ? g : 1.0 + g;
    };
    DynamicProblem prob = dtlz2_compose(k, cfg.p, factor, std::move(env));
    TimeModel tm;
    tm.tau_T = cfg.tau_T;
    tm.severity = cfg.severity;
    prob.set_time_model(tm);
    return prob;
}

DynamicProblem dtlz2_static_make(std::size_t k, std::size_t p, Environment env) {
    const std::size_t block_start = k - 1;
    auto factor = [block_start](const DecisionVector& x, double) {
        double g = 0.0;
        for (std::size_t i = block_start; i < x.size(); ++i)
            g += (x[i] - 0.5) * (x[i] - 0.5);
        return 1.0 + g;
    };
    DynamicProblem prob = dtlz2_compose(k, p, factor, std::move(env));
    // The transform is time-free; tag accordingly so classifiers treat
    // it as the static baseline.
    return make_static(prob.as_support(), prob.environment());
}

// ---------------------------------------------------------------------
// Moving peaks

double moving_peaks_landscape(const DecisionVector& x, const PeakSet& peaks) {
    double best = 0.0; // base level B(x) = 0
    for (const Peak& pk : peaks.peaks) {
        double v = pk.height - pk.width * euclidean(x, pk.location);
        best = std::max(best, v);
    }
    return best;
}

std::vector<double> serialize_peaks(const PeakSet& peaks) {
    std::vector<double> out;
    for (const Peak& pk : peaks.peaks) {
        out.push_back(pk.height);
        out.push_back(pk.width);
        out.insert(out.end(), pk.location.begin(), pk.location.end());
    }
    return out;
}

PeakSet deserialize_peaks(const std::vector<double>& params, std::size_t dimension,
                          const PeakSet& prototype) {
    PeakSet ps = prototype;
    ps.peaks.clear();
    const std::size_t stride = 2 + dimension;
    if (params.size() % stride != 0)
        throw std::invalid_argument("deserialize_peaks: bad parameter payload");
    for (std::size_t off = 0; off < params.size(); off += stride) {
        Peak pk;
        pk.height = params[off];
        pk.width = params[off + 1];
        pk.location.assign(params.begin() + off + 2, params.begin() + off + 2 + dimension);
        ps.peaks.push_back(std::move(pk));
    }
    return ps;
}

PeakSet random_peak_set(std::size_t m, const Bounds& bounds, Rng& rng, double sigma_h,
                        double sigma_w, double sigma_p) {
    PeakSet ps;
    ps.sigma_height = sigma_h;
    ps.sigma_width = sigma_w;
    ps.sigma_location = sigma_p;
    for (std::size_t i = 0; i < m; ++i) {
        Peak pk;
        pk.height = rng.uniform(5.0, 15.0);
        pk.width = rng.uniform(0.5, 2.0);
        for (std::size_t d = 0; d < bounds.dimension(); ++d)
            pk.location.push_back(rng.uniform(bounds.lower[d], bounds.upper[d]));
        ps.peaks.push_back(std::move(pk));
    }
    return ps;
}

DynamicProblem moving_peaks_make(PeakSet peaks, Bounds bounds, PeakDependency dependency,
                                 std::size_t window, Environment env) {
    const std::size_t n = bounds.dimension();
    for (const Peak& pk : peaks.peaks) {
        if (pk.height <= 0.0 || pk.width <= 0.0)
            throw std::invalid_argument("moving_peaks_make: peak height/width must be positive");
        if (pk.location.size() != n)
            throw std::invalid_argument("moving_peaks_make: peak location dimension mismatch");
    }

    DecisionVector companion_center = bounds.center();
    PeakSet prototype = peaks;
    prototype.peaks.clear();

    auto freeze = [](PeakSet ps) {
        return [ps = std::move(ps)](const DecisionVector& x) {
            return moving_peaks_landscape(x, ps);
        };
    };

    SystemState initial;
    initial.params = serialize_peaks(peaks);
    initial.landscape = freeze(peaks);

    auto update = [prototype, bounds, n, freeze](const SystemState& state, long, Rng& rng) {
        PeakSet ps = deserialize_peaks(state.params, n, prototype);
        for (Peak& pk : ps.peaks) {
            pk.height += rng.gaussian(0.0, ps.sigma_height);
            pk.width = std::max(ps.width_floor, pk.width + rng.gaussian(0.0, ps.sigma_width));
            for (std::size_t d = 0; d < n; ++d) {
                pk.location[d] += rng.gaussian(0.0, ps.sigma_location);
                pk.location[d] = std::clamp(pk.location[d], bounds.lower[d], bounds.upper[d]);
            }
        }
        SystemState next;
        next.params = serialize_peaks(ps);
        next.landscape = freeze(std::move(ps));
        return next;
    };

    std::function<ObjectiveVector(const StateHistory&, const DecisionVector&, double)> eval;
    if (dependency == PeakDependency::StateParam) {
        eval = [prototype, n, companion_center](const StateHistory& h, const DecisionVector& x,
                                                double) {
            PeakSet ps = deserialize_peaks(h.newest().params, n, prototype);
            return ObjectiveVector{-moving_peaks_landscape(x, ps),
                                   euclidean(x, companion_center)};
        };
    } else {
        // Objective computed on the landscape frozen one step back.
        eval = [companion_center](const StateHistory& h, const DecisionVector& x, double) {
            return ObjectiveVector{-h.previous().landscape(x), euclidean(x, companion_center)};
        };
    }

    Order order = dependency == PeakDependency::StateParam ? Order::ThirdParam : Order::ThirdFunc;
    return third_order_custom(order, n, 2, std::move(bounds), std::move(eval), window,
                              std::move(initial), std::move(update), std::move(env));
}

// ---------------------------------------------------------------------
// MNK landscape

namespace {

void fill_neighbors(MnkTables& t, const MnkConfig& cfg, std::uint64_t seed) {
    Rng rng = Rng::derive(seed, "mnk-neighbors");
    t.neighbors.assign(cfg.M, {});
    for (std::size_t m = 0; m < cfg.M; ++m) {
        t.neighbors[m].assign(cfg.N, {});
        for (std::size_t i = 0; i < cfg.N; ++i) {
            auto& nb = t.neighbors[m][i];
            if (cfg.adjacent_neighbors) {
                for (std::size_t j = 1; j <= cfg.K; ++j) nb.push_back((i + j) % cfg.N);
            } else {
                while (nb.size() < cfg.K) {
                    std::size_t c =
                        static_cast<std::size_t>(rng.uniform_int(0, static_cast<long>(cfg.N) - 1));
                    if (c == i || std::find(nb.begin(), nb.end(), c) != nb.end()) continue;
                    nb.push_back(c);
                }
            }
        }
    }
}

} // namespace

MnkTables mnk_tables_at(const MnkConfig& cfg, std::uint64_t seed, long step) {
    if (cfg.K + 1 > cfg.N) throw std::invalid_argument("mnk: K must be <= N-1");
    if (cfg.rho < 0.0 || cfg.rho > 1.0) throw std::invalid_argument("mnk: rho must be in [0, 1]");
    MnkTables t;
    t.M = cfg.M;
    t.N = cfg.N;
    t.K = cfg.K;
    fill_neighbors(t, cfg, seed);

    const std::size_t patterns = std::size_t{1} << (cfg.K + 1);
    Rng base = Rng::derive(seed, "mnk-table");
    t.table.assign(cfg.M, {});
    for (std::size_t m = 0; m < cfg.M; ++m) {
        t.table[m].assign(cfg.N, {});
        for (std::size_t i = 0; i < cfg.N; ++i) {
            t.table[m][i].resize(patterns);
            for (std::size_t p = 0; p < patterns; ++p) t.table[m][i][p] = base.uniform();
        }
    }
    // Replay the per-step regeneration rounds; each round replaces a
    // rho-fraction of entries with fresh draws.
    for (long r = 1; r <= step; ++r) {
        if (cfg.rho == 0.0) break;
        Rng round = Rng::derive(seed, "mnk-retable", static_cast<std::uint64_t>(r));
        for (std::size_t m = 0; m < cfg.M; ++m)
            for (std::size_t i = 0; i < cfg.N; ++i)
                for (std::size_t p = 0; p < patterns; ++p)
                    if (round.uniform() < cfg.rho) t.table[m][i][p] = round.uniform();
    }
    return t;
}

ObjectiveVector mnk_fitness(const std::vector<int>& bits, const MnkTables& tables) {
    if (bits.size() != tables.N) throw std::invalid_argument("mnk_fitness: bad bit-string length");
    ObjectiveVector f(tables.M, 0.0);
    for (std::size_t m = 0; m < tables.M; ++m) {
        double acc = 0.0;
        for (std::size_t i = 0; i < tables.N; ++i) {
            std::size_t idx = static_cast<std::size_t>(bits[i] != 0);
            const auto& nb = tables.neighbors[m][i];
            for (std::size_t j = 0; j < nb.size(); ++j)
                idx |= static_cast<std::size_t>(bits[nb[j]] != 0) << (j + 1);
            acc += tables.table[m][i][idx];
        }
        f[m] = acc / static_cast<double>(tables.N);
    }
    return f;
}

DynamicProblem mnk_make(const MnkConfig& cfg, Environment env) {
    auto family = [cfg](const Environment& sigma) {
        long step = static_cast<long>(sigma.get("step", 0.0));
        auto tables = std::make_shared<MnkTables>(mnk_tables_at(cfg, sigma.seed, step));
        SupportFunction sf;
        sf.dimension = cfg.N;
        sf.objectives = cfg.M;
        sf.bounds = Bounds::uniform(cfg.N, 0.0, 1.0);
        sf.eval = [tables, N = cfg.N](const DecisionVector& x, const Environment&, double) {
            if (x.size() != N)
                throw std::invalid_argument("mnk: wrong bit-string length");
            std::vector<int> bits(N);
            for (std::size_t i = 0; i < N; ++i) bits[i] = x[i] >= 0.5 ? 1 : 0;
            ObjectiveVector f = mnk_fitness(bits, *tables);
            for (double& v : f) v = -v;
            return f;
        };
        return sf;
    };
    EnvironmentSchedule schedule = [](const Environment& sigma, double t) {
        return sigma.with("step", std::floor(t + 1e-9));
    };
    DynamicProblem p = fourth_order_compose(family, schedule, env,
                                            Bounds::uniform(cfg.N, 0.0, 1.0), cfg.N, cfg.M);
    p.set_discrete(true);
    return p;
}

// ---------------------------------------------------------------------
// Fixtures

DynamicProblem two_sphere_make(std::size_t n, double lo, double hi, Environment env) {
    SupportFunction sf;
    sf.dimension = n;
    sf.objectives = 2;
    sf.bounds = Bounds::uniform(n, lo, hi);
    sf.eval = [](const DecisionVector& x, const Environment&, double) {
        double f1 = sum_of_squares(x);
        double f2 = (x[0] - 2.0) * (x[0] - 2.0);
        for (std::size_t i = 1; i < x.size(); ++i) f2 += x[i] * x[i];
        return ObjectiveVector{f1, f2};
    };
    return make_static(std::move(sf), std::move(env));
}

DynamicProblem pof_scaling_make(std::size_t k, std::size_t p, double severity, int tau_T,
                                Environment env) {
    DynamicProblem base = dtlz2_static_make(k, p);
    SupportFunction support = base.as_support();
    ObjectiveTransform d;
    for (std::size_t i = 0; i < k; ++i) {
        d.components.push_back(
            [i, severity](const SupportFunction& F, const DecisionVector& x, double t) {
                return (1.0 + severity * t) * F.eval(x, {}, t)[i];
            });
    }
    DynamicProblem prob = second_order_compose(std::move(support), std::move(d), std::move(env));
    TimeModel tm;
    tm.tau_T = tau_T;
    tm.severity = severity;
    prob.set_time_model(tm);
    return prob;
}

} // namespace dmop
