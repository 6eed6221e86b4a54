#include "dmop/pareto.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numeric>
#include <ostream>

#include "dmop/csv.hpp"
#include "dmop/dynamics.hpp"

namespace dmop {

std::string format_double(double v) {
    char buf[40];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

CapacityError::CapacityError(std::size_t req)
    : std::runtime_error("grid evaluation budget exceeded; required " + std::to_string(req)),
      required(req) {}

void FrontSnapshot::write_csv(std::ostream& os) const {
    std::size_t n = pos.empty() ? 0 : pos.front().size();
    std::size_t k = pof.empty() ? 0 : pof.front().size();
    os << "t";
    for (std::size_t i = 1; i <= n; ++i) os << ",x_" << i;
    for (std::size_t i = 1; i <= k; ++i) os << ",f_" << i;
    os << "\n";
    for (std::size_t r = 0; r < pos.size(); ++r) {
        os << format_double(t);
        for (double v : pos[r]) os << "," << format_double(v);
        for (double v : pof[r]) os << "," << format_double(v);
        os << "\n";
    }
}

namespace {

void check_dims(const ObjectiveVector& a, const ObjectiveVector& b) {
    if (a.size() != b.size())
        throw std::invalid_argument("objective vector dimension mismatch");
}

} // namespace

bool strictly_less(const ObjectiveVector& v, const ObjectiveVector& w) {
    check_dims(v, w);
    for (std::size_t i = 0; i < v.size(); ++i)
        if (!(v[i] < w[i])) return false;
    return true;
}

bool weakly_less(const ObjectiveVector& v, const ObjectiveVector& w) {
    check_dims(v, w);
    for (std::size_t i = 0; i < v.size(); ++i)
        if (v[i] > w[i]) return false;
    return true;
}

bool dominates(const ObjectiveVector& u, const ObjectiveVector& v) {
    check_dims(u, v);
    bool strict = false;
    for (std::size_t i = 0; i < u.size(); ++i) {
        if (u[i] > v[i]) return false;
        if (u[i] < v[i]) strict = true;
    }
    return strict;
}

std::vector<std::size_t> non_dominated_filter(const std::vector<ObjectiveVector>& points) {
    const std::size_t n = points.size();
    if (n == 0) return {};

    // Dominance implies a strictly smaller objective sum, so a point can
    // only be dominated by members of the non-dominated set with smaller
    // sum: process in ascending-sum order and compare against the
    // running front only.
    std::vector<double> sums(n);
    for (std::size_t i = 0; i < n; ++i)
        sums[i] = std::accumulate(points[i].begin(), points[i].end(), 0.0);
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return sums[a] < sums[b]; });

    std::vector<std::size_t> front;
    for (std::size_t idx : order) {
        bool dominated = false;
        for (std::size_t f : front) {
            if (dominates(points[f], points[idx])) {
                dominated = true;
                break;
            }
        }
        if (!dominated) front.push_back(idx);
    }
    std::sort(front.begin(), front.end());
    return front;
}

bool mutually_non_dominated(const std::vector<ObjectiveVector>& points) {
    for (std::size_t i = 0; i < points.size(); ++i)
        for (std::size_t j = 0; j < points.size(); ++j)
            if (i != j && dominates(points[i], points[j])) return false;
    return true;
}

namespace {

// idx in [0, total) -> lattice point, row-major over dimensions.
DecisionVector lattice_point(std::size_t idx, std::size_t grid, const Bounds& b) {
    const std::size_t n = b.dimension();
    DecisionVector x(n);
    for (std::size_t d = n; d-- > 0;) {
        std::size_t cell = idx % grid;
        idx /= grid;
        double frac = static_cast<double>(cell) / static_cast<double>(grid - 1);
        x[d] = b.lower[d] + frac * (b.upper[d] - b.lower[d]);
    }
    return x;
}

FrontSnapshot front_from_grid(const DynamicProblem& problem, double t, std::size_t grid,
                              std::size_t budget, bool parallel) {
    if (grid < 2) throw std::invalid_argument("brute_force_front: grid must be >= 2 per dimension");
    const std::size_t n = problem.dimension();
    const Bounds& b = problem.bounds();

    std::size_t total = 1;
    for (std::size_t d = 0; d < n; ++d) {
        if (total > SIZE_MAX / grid) throw CapacityError(SIZE_MAX);
        total *= grid;
    }
    if (total > budget) throw CapacityError(total);

    std::vector<ObjectiveVector> values(total);
    if (parallel) {
#pragma omp parallel for schedule(static)
        for (long long i = 0; i < static_cast<long long>(total); ++i) {
            values[static_cast<std::size_t>(i)] =
                problem.evaluate(lattice_point(static_cast<std::size_t>(i), grid, b), t);
        }
    } else {
        for (std::size_t i = 0; i < total; ++i)
            values[i] = problem.evaluate(lattice_point(i, grid, b), t);
    }

    std::vector<std::size_t> keep = non_dominated_filter(values);
    FrontSnapshot snap;
    snap.t = t;
    snap.pos.reserve(keep.size());
    snap.pof.reserve(keep.size());
    for (std::size_t i : keep) {
        snap.pos.push_back(lattice_point(i, grid, b));
        snap.pof.push_back(values[i]);
    }
    return snap;
}

} // namespace

FrontSnapshot brute_force_front(const DynamicProblem& problem, double t, std::size_t grid_per_dim,
                                std::size_t budget) {
    return front_from_grid(problem, t, grid_per_dim, budget, true);
}

FrontSnapshot brute_force_front_serial(const DynamicProblem& problem, double t,
                                       std::size_t grid_per_dim, std::size_t budget) {
    return front_from_grid(problem, t, grid_per_dim, budget, false);
}

} // namespace dmop
