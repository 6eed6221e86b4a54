#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>

#include "dmop/pareto.hpp"
#include "dmop/problems.hpp"

using namespace dmop;

namespace {

// Independent O(n^2) oracle, kept deliberately naive.
std::vector<std::size_t> oracle_filter(const std::vector<ObjectiveVector>& pts) {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        bool dominated = false;
        for (std::size_t j = 0; j < pts.size(); ++j) {
            if (i == j) continue;
            bool weak = true, strict = false;
            for (std::size_t c = 0; c < pts[i].size(); ++c) {
                if (pts[j][c] > pts[i][c]) weak = false;
                if (pts[j][c] < pts[i][c]) strict = true;
            }
            if (weak && strict) {
                dominated = true;
                break;
            }
        }
        if (!dominated) out.push_back(i);
    }
    return out;
}

ObjectiveVector random_vec(Rng& rng, std::size_t k) {
    ObjectiveVector v(k);
    for (double& x : v) x = rng.uniform(0, 10);
    return v;
}

} // namespace

TEST_CASE("strictly_less") {
    CHECK(strictly_less({1, 2}, {2, 3}));
    CHECK_FALSE(strictly_less({1, 2}, {1, 3}));
    CHECK_FALSE(strictly_less({1, 2}, {1, 2}));
    CHECK_THROWS_AS(strictly_less({1}, {1, 2}), std::invalid_argument);
}

TEST_CASE("dominates") {
    CHECK(dominates({1, 2}, {2, 3}));
    CHECK_FALSE(dominates({1, 2}, {1, 2}));
    CHECK_FALSE(dominates({1, 3}, {2, 2}));
    CHECK_FALSE(dominates({2, 2}, {1, 3}));
}

TEST_CASE("dominance laws on random triples") {
    Rng rng = Rng::derive(1, "triples");
    for (int iter = 0; iter < 2000; ++iter) {
        std::size_t k = 2 + iter % 3;
        ObjectiveVector u = random_vec(rng, k), v = random_vec(rng, k), w = random_vec(rng, k);
        CHECK_FALSE(dominates(u, u));
        if (dominates(u, v)) CHECK_FALSE(dominates(v, u));
        if (dominates(u, v) && dominates(v, w)) CHECK(dominates(u, w));
    }
}

TEST_CASE("non_dominated_filter basics") {
    std::vector<ObjectiveVector> pts = {{1, 2}, {2, 1}, {2, 2}};
    CHECK(non_dominated_filter(pts) == std::vector<std::size_t>{0, 1});

    CHECK(non_dominated_filter({{0, 0}}) == std::vector<std::size_t>{0});
    CHECK(non_dominated_filter({}).empty());

    // Duplicates of a non-dominated value are all retained.
    std::vector<ObjectiveVector> dup = {{0, 0}, {1, 1}, {0, 0}};
    CHECK(non_dominated_filter(dup) == std::vector<std::size_t>{0, 2});
}

TEST_CASE("filter matches the pairwise oracle") {
    Rng rng = Rng::derive(2, "filter");
    for (int iter = 0; iter < 100; ++iter) {
        std::size_t k = 2 + iter % 3;
        std::size_t n = 1 + static_cast<std::size_t>(rng.uniform_int(0, 199));
        std::vector<ObjectiveVector> pts;
        for (std::size_t i = 0; i < n; ++i) {
            // Coarse values so duplicates and ties actually occur.
            ObjectiveVector v(k);
            for (double& x : v) x = static_cast<double>(rng.uniform_int(0, 6));
            pts.push_back(v);
        }
        CHECK(non_dominated_filter(pts) == oracle_filter(pts));
    }
}

TEST_CASE("brute force front of the two-sphere problem") {
    DynamicProblem prob = two_sphere_make(1, 0.0, 3.0);
    FrontSnapshot snap = brute_force_front(prob, 0.0, 301);

    // POS is exactly the grid points in [0, 2].
    CHECK(snap.pos.size() == 201);
    for (const auto& x : snap.pos) {
        CHECK(x[0] >= 0.0);
        CHECK(x[0] <= 2.0 + 1e-12);
    }
    // POF satisfies sqrt(f1) + sqrt(f2) = 2 within grid resolution.
    for (const auto& f : snap.pof)
        CHECK(std::abs(std::sqrt(f[0]) + std::sqrt(f[1]) - 2.0) < 1e-9);
    CHECK(mutually_non_dominated(snap.pof));
}

TEST_CASE("static DTLZ2 front lies on the unit circle") {
    DynamicProblem prob = dtlz2_static_make(2, 1);
    FrontSnapshot snap = brute_force_front(prob, 0.0, 101);
    REQUIRE(!snap.pof.empty());
    for (const auto& f : snap.pof)
        CHECK(std::abs(f[0] * f[0] + f[1] * f[1] - 1.0) <= 1e-12);
    // The x_k variable sits at its minimizer 0.5 on every POS member.
    for (const auto& x : snap.pos) CHECK(x[1] == 0.5);
}

TEST_CASE("parallel and serial grid kernels agree exactly") {
    DswConfig cfg;
    DynamicProblem prob = dsw_make(cfg);
    FrontSnapshot a = brute_force_front(prob, 1.0, 101);
    FrontSnapshot b = brute_force_front_serial(prob, 1.0, 101);
    CHECK(a.pos == b.pos);
    CHECK(a.pof == b.pof);
}

TEST_CASE("grid budget is enforced") {
    DswConfig cfg;
    cfg.n = 4;
    DynamicProblem prob = dsw_make(cfg);
    CHECK_THROWS_AS(brute_force_front(prob, 0.0, 101, 1000), CapacityError);
    try {
        brute_force_front(prob, 0.0, 11, 1000);
    } catch (const CapacityError& e) {
        CHECK(e.required == 14641);
    }
}
