#include "dmop/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>

#include "dmop/analysis.hpp"
#include "dmop/csv.hpp"

namespace dmop {

namespace {

struct Individual {
    DecisionVector x;
    ObjectiveVector f;
};

std::vector<std::size_t> rank_population(const std::vector<Individual>& pop) {
    std::vector<std::size_t> rank(pop.size(), 0);
    std::vector<std::size_t> remaining(pop.size());
    for (std::size_t i = 0; i < pop.size(); ++i) remaining[i] = i;
    std::size_t level = 0;
    while (!remaining.empty()) {
        std::vector<ObjectiveVector> objs;
        objs.reserve(remaining.size());
        for (std::size_t i : remaining) objs.push_back(pop[i].f);
        std::vector<std::size_t> nd = non_dominated_filter(objs);
        std::vector<bool> in_front(remaining.size(), false);
        for (std::size_t j : nd) in_front[j] = true;
        std::vector<std::size_t> next;
        for (std::size_t j = 0; j < remaining.size(); ++j) {
            if (in_front[j])
                rank[remaining[j]] = level;
            else
                next.push_back(remaining[j]);
        }
        remaining = std::move(next);
        ++level;
    }
    return rank;
}

std::vector<double> crowding_distance(const std::vector<Individual>& pop,
                                      const std::vector<std::size_t>& members) {
    std::vector<double> dist(members.size(), 0.0);
    if (members.size() <= 2) {
        std::fill(dist.begin(), dist.end(), std::numeric_limits<double>::infinity());
        return dist;
    }
    const std::size_t k = pop[members.front()].f.size();
    std::vector<std::size_t> order(members.size());
    for (std::size_t obj = 0; obj < k; ++obj) {
        for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
        std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            return pop[members[a]].f[obj] < pop[members[b]].f[obj];
        });
        double lo = pop[members[order.front()]].f[obj];
        double hi = pop[members[order.back()]].f[obj];
        dist[order.front()] = std::numeric_limits<double>::infinity();
        dist[order.back()] = std::numeric_limits<double>::infinity();
        if (hi <= lo) continue;
        for (std::size_t i = 1; i + 1 < order.size(); ++i)
            dist[order[i]] +=
                (pop[members[order[i + 1]]].f[obj] - pop[members[order[i - 1]]].f[obj]) / (hi - lo);
    }
    return dist;
}

DecisionVector random_point(const Bounds& b, bool discrete, Rng& rng) {
    DecisionVector x(b.dimension());
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (discrete)
            x[i] = rng.uniform() < 0.5 ? 0.0 : 1.0;
        else
            x[i] = rng.uniform(b.lower[i], b.upper[i]);
    }
    return x;
}

void sbx_crossover(DecisionVector& a, DecisionVector& b, const Bounds& bounds, double eta,
                   Rng& rng) {
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (rng.uniform() >= 0.5) continue;
        double u = rng.uniform();
        double beta = u <= 0.5 ? std::pow(2.0 * u, 1.0 / (eta + 1.0))
                               : std::pow(1.0 / (2.0 * (1.0 - u)), 1.0 / (eta + 1.0));
        double c1 = 0.5 * ((1.0 + beta) * a[i] + (1.0 - beta) * b[i]);
        double c2 = 0.5 * ((1.0 - beta) * a[i] + (1.0 + beta) * b[i]);
        a[i] = std::clamp(c1, bounds.lower[i], bounds.upper[i]);
        b[i] = std::clamp(c2, bounds.lower[i], bounds.upper[i]);
    }
}

void polynomial_mutation(DecisionVector& x, const Bounds& bounds, double pm, double eta,
                         Rng& rng) {
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (rng.uniform() >= pm) continue;
        double u = rng.uniform();
        double delta = u < 0.5 ? std::pow(2.0 * u, 1.0 / (eta + 1.0)) - 1.0
                               : 1.0 - std::pow(2.0 * (1.0 - u), 1.0 / (eta + 1.0));
        x[i] = std::clamp(x[i] + delta * (bounds.upper[i] - bounds.lower[i]), bounds.lower[i],
                          bounds.upper[i]);
    }
}

void bit_variation(DecisionVector& a, DecisionVector& b, double pm, Rng& rng) {
    for (std::size_t i = 0; i < a.size(); ++i)
        if (rng.uniform() < 0.5) std::swap(a[i], b[i]);
    for (std::size_t i = 0; i < a.size(); ++i)
        if (rng.uniform() < pm) a[i] = 1.0 - a[i];
    for (std::size_t i = 0; i < b.size(); ++i)
        if (rng.uniform() < pm) b[i] = 1.0 - b[i];
}

} // namespace

bool sentinel_change_detect(SentinelSet& sentinels, const DynamicProblem& problem, double t,
                            double delta, std::size_t& evaluations) {
    bool changed = false;
    for (std::size_t i = 0; i < sentinels.points.size(); ++i) {
        ObjectiveVector f = problem.evaluate(sentinels.points[i], t);
        ++evaluations;
        for (std::size_t j = 0; j < f.size(); ++j)
            if (std::abs(f[j] - sentinels.values[i][j]) > delta) changed = true;
        sentinels.values[i] = std::move(f);
    }
    return changed;
}

void RunTimeline::write_csv(std::ostream& os) const {
    os << "tau,t,evaluations,change,archive_size,hv\n";
    // Fixed hv reference taken from the first archive, so the column is
    // comparable along the run.
    ObjectiveVector ref;
    if (!rows.empty() && !rows.front().archive.pof.empty() &&
        rows.front().archive.pof.front().size() == 2) {
        ref.assign(2, -std::numeric_limits<double>::infinity());
        for (const auto& f : rows.front().archive.pof)
            for (int i = 0; i < 2; ++i) ref[i] = std::max(ref[i], f[i]);
        for (double& v : ref) v += 1.0;
    }
    for (const auto& row : rows) {
        os << row.tau << "," << format_double(row.t) << "," << row.evaluations << ","
           << (row.change_detected ? 1 : 0) << "," << row.archive.pos.size() << ",";
        if (!ref.empty()) os << format_double(hypervolume_2d(row.archive.pof, ref));
        os << "\n";
    }
}

RunTimeline run_dynamic_ea(DynamicProblem& problem, const EaConfig& cfg, Rng rng) {
    if (cfg.budget < cfg.mu) throw std::invalid_argument("run_dynamic_ea: budget < mu");
    const Bounds& bounds = problem.bounds();
    const std::size_t n = problem.dimension();
    const bool discrete = problem.discrete();
    const double pm = cfg.mutation_rate > 0.0 ? cfg.mutation_rate : 1.0 / static_cast<double>(n);
    const TimeModel tm = problem.time_model();

    std::size_t evaluations = 0;
    long tau = 0;
    double t = tm.time_of(tau);

    // Initial population.
    std::vector<Individual> pop(cfg.mu);
    for (auto& ind : pop) {
        ind.x = random_point(bounds, discrete, rng);
        ind.f = problem.evaluate(ind.x, t);
        ++evaluations;
    }

    // Sentinels: bounds center plus seeded random points, pinned.
    SentinelSet sentinels;
    sentinels.points.push_back(discrete ? random_point(bounds, true, rng) : bounds.center());
    for (std::size_t i = 1; i < cfg.sentinel_count; ++i)
        sentinels.points.push_back(random_point(bounds, discrete, rng));
    for (const auto& s : sentinels.points) {
        sentinels.values.push_back(problem.evaluate(s, t));
        ++evaluations;
    }

    std::vector<Individual> archive;
    auto archive_insert = [&archive, &cfg](const std::vector<Individual>& batch) {
        for (const auto& ind : batch) archive.push_back(ind);
        std::vector<ObjectiveVector> objs;
        objs.reserve(archive.size());
        for (const auto& a : archive) objs.push_back(a.f);
        std::vector<std::size_t> keep = non_dominated_filter(objs);
        std::vector<Individual> next;
        next.reserve(keep.size());
        for (std::size_t i : keep) next.push_back(archive[i]);
        archive = std::move(next);
        if (cfg.archive_capacity > 0 && archive.size() > cfg.archive_capacity) {
            // Thin the (mutually non-dominated) archive by crowding
            // distance so its size stays bounded.
            std::vector<std::size_t> members(archive.size());
            for (std::size_t i = 0; i < members.size(); ++i) members[i] = i;
            std::vector<double> crowd = crowding_distance(archive, members);
            std::stable_sort(members.begin(), members.end(),
                             [&](std::size_t a, std::size_t b) { return crowd[a] > crowd[b]; });
            members.resize(cfg.archive_capacity);
            std::sort(members.begin(), members.end());
            std::vector<Individual> trimmed;
            trimmed.reserve(members.size());
            for (std::size_t i : members) trimmed.push_back(std::move(archive[i]));
            archive = std::move(trimmed);
        }
    };
    archive_insert(pop);

    RunTimeline timeline;
    auto record = [&](bool changed) {
        TimelineRow row;
        row.tau = tau;
        row.t = t;
        row.evaluations = evaluations;
        row.change_detected = changed;
        row.archive.t = t;
        for (const auto& a : archive) {
            row.archive.pos.push_back(a.x);
            row.archive.pof.push_back(a.f);
        }
        timeline.rows.push_back(std::move(row));
    };
    record(false);

    const std::size_t per_generation = cfg.mu + cfg.sentinel_count;
    while (evaluations + per_generation <= cfg.budget) {
        ++tau;
        t = tm.time_of(tau);
        if (tau % tm.tau_T == 0) problem.advance(rng);

        bool changed = sentinel_change_detect(sentinels, problem, t, cfg.sentinel_delta,
                                              evaluations);
        if (changed) {
            // Stale objectives: re-evaluate everyone, then inject
            // random immigrants.
            for (auto& ind : pop) {
                ind.f = problem.evaluate(ind.x, t);
                ++evaluations;
            }
            std::size_t immigrants =
                static_cast<std::size_t>(cfg.immigrant_fraction * static_cast<double>(cfg.mu));
            for (std::size_t i = 0; i < immigrants && i < pop.size(); ++i) {
                std::size_t victim = pop.size() - 1 - i;
                pop[victim].x = random_point(bounds, discrete, rng);
                pop[victim].f = problem.evaluate(pop[victim].x, t);
                ++evaluations;
            }
            archive.clear();
            archive_insert(pop);
        }

        // Variation.
        std::vector<std::size_t> rank = rank_population(pop);
        std::vector<double> crowd(pop.size(), 0.0);
        {
            std::size_t max_rank = *std::max_element(rank.begin(), rank.end());
            for (std::size_t level = 0; level <= max_rank; ++level) {
                std::vector<std::size_t> members;
                for (std::size_t i = 0; i < pop.size(); ++i)
                    if (rank[i] == level) members.push_back(i);
                std::vector<double> d = crowding_distance(pop, members);
                for (std::size_t i = 0; i < members.size(); ++i) crowd[members[i]] = d[i];
            }
        }
        auto tournament = [&]() -> const Individual& {
            std::size_t a = static_cast<std::size_t>(rng.uniform_int(0, static_cast<long>(pop.size()) - 1));
            std::size_t b = static_cast<std::size_t>(rng.uniform_int(0, static_cast<long>(pop.size()) - 1));
            if (rank[a] != rank[b]) return pop[rank[a] < rank[b] ? a : b];
            return pop[crowd[a] >= crowd[b] ? a : b];
        };

        std::vector<Individual> offspring;
        offspring.reserve(cfg.mu);
        while (offspring.size() < cfg.mu) {
            DecisionVector c1 = tournament().x;
            DecisionVector c2 = tournament().x;
            if (discrete) {
                bit_variation(c1, c2, pm, rng);
            } else {
                if (rng.uniform() < cfg.crossover_rate)
                    sbx_crossover(c1, c2, bounds, cfg.sbx_eta, rng);
                polynomial_mutation(c1, bounds, pm, cfg.mutation_eta, rng);
                polynomial_mutation(c2, bounds, pm, cfg.mutation_eta, rng);
            }
            offspring.push_back({std::move(c1), {}});
            if (offspring.size() < cfg.mu) offspring.push_back({std::move(c2), {}});
        }
        for (auto& ind : offspring) {
            ind.f = problem.evaluate(ind.x, t);
            ++evaluations;
        }

        // Environmental selection over parents + offspring.
        std::vector<Individual> merged = pop;
        merged.insert(merged.end(), offspring.begin(), offspring.end());
        std::vector<std::size_t> mrank = rank_population(merged);
        std::vector<std::size_t> order(merged.size());
        for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
        std::vector<double> mcrowd(merged.size(), 0.0);
        {
            std::size_t max_rank = *std::max_element(mrank.begin(), mrank.end());
            for (std::size_t level = 0; level <= max_rank; ++level) {
                std::vector<std::size_t> members;
                for (std::size_t i = 0; i < merged.size(); ++i)
                    if (mrank[i] == level) members.push_back(i);
                std::vector<double> d = crowding_distance(merged, members);
                for (std::size_t i = 0; i < members.size(); ++i) mcrowd[members[i]] = d[i];
            }
        }
        std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            if (mrank[a] != mrank[b]) return mrank[a] < mrank[b];
            return mcrowd[a] > mcrowd[b];
        });
        std::vector<Individual> next;
        next.reserve(cfg.mu);
        for (std::size_t i = 0; i < cfg.mu; ++i) next.push_back(merged[order[i]]);
        pop = std::move(next);

        archive_insert(pop);
        record(changed);
    }
    return timeline;
}

} // namespace dmop
