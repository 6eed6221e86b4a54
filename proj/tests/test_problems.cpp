#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "dmop/problems.hpp"

using namespace dmop;

TEST_CASE("g_step") {
    CHECK(g_step(0, 1.0, 10) == 0.0);
    CHECK(g_step(25, 0.1, 10) == doctest::Approx(0.2).epsilon(1e-15));
    CHECK(g_step(10, -1.0, 10) == -1.0);
}

TEST_CASE("dsw verbatim formulas") {
    DswConfig cfg; // a11 = a21 = 1, a12 = a22 = 0, b1 = 1, s = 1
    DynamicProblem p = dsw_make(cfg);
    CHECK(p.order() == Order::First);
    CHECK(p.evaluate({0.0, 0.0}, 0.0)[0] == 0.0);
    CHECK(p.evaluate({2.0, 0.0}, 0.0)[1] == 0.0); // d_2 coord = 2 - 0 - 2
    CHECK(p.evaluate({2.0, 0.0}, 2.0)[0] == 0.0); // G = 2, d_1 coord = 2 - 2
}

TEST_CASE("dsw with zero severity is time-invariant") {
    DswConfig cfg;
    cfg.severity = 0.0;
    DynamicProblem p = dsw_make(cfg);
    Rng rng(4);
    for (int i = 0; i < 50; ++i) {
        DecisionVector x{rng.uniform(-5, 5), rng.uniform(-5, 5)};
        CHECK(p.evaluate(x, 0.0) == p.evaluate(x, 100.0));
    }
}

TEST_CASE("dsw printed vs corrected reading differ as expected") {
    DswConfig cfg;
    cfg.a12 = 0.5;
    cfg.b2 = 3.0;
    DynamicProblem verbatim = dsw_make(cfg);
    cfg.corrected = true;
    DynamicProblem corrected = dsw_make(cfg);
    // Verbatim: a12 multiplies x_1; corrected: x_2.
    DecisionVector x{1.0, 2.0};
    // verbatim d_1 coord = 1 + 0.5*1 - G, corrected = 1 + 0.5*2 - G; G(0)=0.
    CHECK(verbatim.evaluate(x, 0.0)[0] == doctest::Approx(1.5 * 1.5 + 4.0));
    CHECK(corrected.evaluate(x, 0.0)[0] == doctest::Approx(4.0 + 4.0));
    // b appearing in d_2: verbatim reuses b1 = 1, corrected uses b2 = 3.
    // d_2 first coord at x = (2, 0), G = 1: verbatim 2 - 1 - 2 = -1,
    // corrected 2 - 3 - 2 = -3.
    CHECK(verbatim.evaluate({2.0, 0.0}, 1.0)[1] == doctest::Approx(1.0));
    CHECK(corrected.evaluate({2.0, 0.0}, 1.0)[1] == doctest::Approx(9.0));
}

TEST_CASE("dtlz2 support values") {
    CHECK(dtlz2_support({0.0}, 2) == ObjectiveVector{1.0, 0.0});
    ObjectiveVector f = dtlz2_support({1.0}, 2);
    CHECK(f[0] == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(f[1] == 1.0);

    ObjectiveVector g = dtlz2_support({0.5, 0.5}, 3);
    CHECK(g[0] == doctest::Approx(0.5));
    CHECK(g[1] == doctest::Approx(0.5));
    CHECK(g[2] == doctest::Approx(std::sqrt(2.0) / 2.0));
}

TEST_CASE("dtlz2 support rejects out-of-bounds position variables") {
    CHECK_THROWS_AS(dtlz2_support({1.5}, 2), std::invalid_argument);
}

TEST_CASE("dtlz2 support sphere identity") {
    Rng rng = Rng::derive(11, "sphere-identity");
    for (std::size_t k : {2u, 3u, 4u}) {
        for (int i = 0; i < 1000; ++i) {
            DecisionVector x(k - 1);
            for (double& v : x) v = rng.uniform();
            ObjectiveVector f = dtlz2_support(x, k);
            double s = 0.0;
            for (double v : f) s += v * v;
            CHECK(std::abs(s - 1.0) <= 1e-12);
        }
    }
}

TEST_CASE("dynamic dtlz2 g modes") {
    Dtlz2DynConfig cfg;
    cfg.g_of_t = [](double) { return 0.5; };

    cfg.g_mode = Dtlz2GMode::Product;
    DynamicProblem product = dtlz2_dynamic_make(cfg);
    CHECK(product.order() == Order::Second);
    ObjectiveVector f = product.evaluate({0.0, 0.5}, 0.0); // g = 0.5, support (1, 0)
    CHECK(f[0] == doctest::Approx(0.5));
    CHECK(f[1] == 0.0);

    cfg.g_mode = Dtlz2GMode::OnePlusG;
    DynamicProblem oneplus = dtlz2_dynamic_make(cfg);
    ObjectiveVector h = oneplus.evaluate({0.0, 0.5}, 0.0);
    CHECK(h[0] == doctest::Approx(1.5));
    CHECK(h[1] == 0.0);
}

TEST_CASE("product mode degenerates when G = 0") {
    Dtlz2DynConfig cfg;
    cfg.g_mode = Dtlz2GMode::Product;
    cfg.g_of_t = [](double) { return 0.0; };
    DynamicProblem p = dtlz2_dynamic_make(cfg);
    for (double x1 : {0.0, 0.3, 0.9})
        CHECK(p.evaluate({x1, 0.0}, 0.0) == ObjectiveVector{0.0, 0.0});
}

TEST_CASE("moving peaks landscape shape") {
    PeakSet ps;
    ps.peaks.push_back({10.0, 1.0, {0.0, 0.0}});
    CHECK(moving_peaks_landscape({0.0, 0.0}, ps) == 10.0);
    CHECK(moving_peaks_landscape({10.0, 0.0}, ps) == 0.0); // cone meets base
    CHECK(moving_peaks_landscape({20.0, 0.0}, ps) == 0.0); // base dominates
    // Landscape never drops below the base level and attains peak
    // heights at peak centers.
    ps.peaks.push_back({5.0, 2.0, {3.0, 3.0}});
    Rng rng(8);
    for (int i = 0; i < 200; ++i) {
        DecisionVector x{rng.uniform(-10, 10), rng.uniform(-10, 10)};
        CHECK(moving_peaks_landscape(x, ps) >= 0.0);
    }
    CHECK(moving_peaks_landscape({3.0, 3.0}, ps) >= 5.0);
}

TEST_CASE("moving peaks zero-severity walk leaves the landscape unchanged") {
    Bounds bounds = Bounds::uniform(2, 0.0, 10.0);
    PeakSet ps;
    ps.peaks.push_back({10.0, 1.0, {5.0, 5.0}});
    ps.peaks.push_back({7.0, 0.5, {2.0, 8.0}});
    DynamicProblem p = moving_peaks_make(ps, bounds, PeakDependency::StateParam, 2);
    CHECK(p.order() == Order::ThirdParam);

    Rng probe_rng(21);
    std::vector<DecisionVector> probes;
    std::vector<ObjectiveVector> before;
    for (int i = 0; i < 100; ++i) {
        probes.push_back({probe_rng.uniform(0, 10), probe_rng.uniform(0, 10)});
        before.push_back(p.evaluate(probes.back(), 0.0));
    }
    Rng rng(99);
    p.advance(rng);
    for (int i = 0; i < 100; ++i) CHECK(p.evaluate(probes[i], 1.0) == before[i]);
}

TEST_CASE("moving peaks param walk moves the recorded peak") {
    Bounds bounds = Bounds::uniform(2, 0.0, 10.0);
    PeakSet ps;
    ps.sigma_location = 0.5;
    ps.peaks.push_back({10.0, 1.0, {5.0, 5.0}});
    DynamicProblem p = moving_peaks_make(ps, bounds, PeakDependency::StateParam, 2);

    Rng rng = Rng::derive(42, "walk-test");
    p.advance(rng);

    // Replay the identical walk independently.
    Rng replay = Rng::derive(42, "walk-test");
    double h = 10.0 + replay.gaussian(0.0, 0.0);
    double w = std::max(ps.width_floor, 1.0 + replay.gaussian(0.0, 0.0));
    double px = std::clamp(5.0 + replay.gaussian(0.0, 0.5), 0.0, 10.0);
    double py = std::clamp(5.0 + replay.gaussian(0.0, 0.5), 0.0, 10.0);
    const auto& params = p.history()->newest().params;
    CHECK(params[0] == h);
    CHECK(params[1] == w);
    CHECK(params[2] == px);
    CHECK(params[3] == py);

    // The old apex no longer attains the full height.
    CHECK(p.evaluate({5.0, 5.0}, 1.0)[0] > -10.0);
    CHECK(p.evaluate({px, py}, 1.0)[0] == doctest::Approx(-h));
}

TEST_CASE("moving peaks state-function mode evaluates the previous landscape") {
    Bounds bounds = Bounds::uniform(2, 0.0, 10.0);
    PeakSet ps;
    ps.sigma_location = 1.0;
    ps.sigma_height = 1.0;
    ps.peaks.push_back({10.0, 1.0, {5.0, 5.0}});

    DynamicProblem func = moving_peaks_make(ps, bounds, PeakDependency::StateFunc, 3);
    DynamicProblem param = moving_peaks_make(ps, bounds, PeakDependency::StateParam, 3);
    CHECK(func.order() == Order::ThirdFunc);

    // Before any advance: previous == current == initial.
    CHECK(func.evaluate({5.0, 5.0}, 0.0)[0] == -10.0);

    Rng r1 = Rng::derive(7, "w");
    Rng r2 = Rng::derive(7, "w");
    func.advance(r1);
    param.advance(r2);
    // func at step 1 sees the step-0 landscape.
    Rng probe(13);
    for (int i = 0; i < 100; ++i) {
        DecisionVector x{probe.uniform(0, 10), probe.uniform(0, 10)};
        CHECK(func.evaluate(x, 1.0)[0] ==
              doctest::Approx(-moving_peaks_landscape(x, ps)).epsilon(1e-15));
    }
    // After a second advance it sees the step-1 landscape, i.e. what
    // the param variant saw at step 1.
    std::vector<DecisionVector> probes;
    std::vector<double> param_step1;
    Rng probe2(14);
    for (int i = 0; i < 100; ++i) {
        probes.push_back({probe2.uniform(0, 10), probe2.uniform(0, 10)});
        param_step1.push_back(param.evaluate(probes.back(), 1.0)[0]);
    }
    func.advance(r1);
    for (int i = 0; i < 100; ++i)
        CHECK(std::abs(func.evaluate(probes[i], 2.0)[0] - param_step1[i]) <= 1e-12);
}

TEST_CASE("mnk single-entry landscape") {
    MnkConfig cfg;
    cfg.M = 1;
    cfg.N = 1;
    cfg.K = 0;
    MnkTables t = mnk_tables_at(cfg, 123, 0);
    for (int bit : {0, 1}) {
        ObjectiveVector f = mnk_fitness({bit}, t);
        CHECK(f[0] >= 0.0);
        CHECK(f[0] <= 1.0);
        CHECK(f[0] == t.table[0][0][static_cast<std::size_t>(bit)]);
    }
}

TEST_CASE("mnk rho = 0 is time-invariant") {
    MnkConfig cfg;
    cfg.rho = 0.0;
    DynamicProblem p = mnk_make(cfg, Environment(77));
    CHECK(p.order() == Order::Fourth);
    CHECK(p.discrete());
    Rng rng(1);
    for (int i = 0; i < 100; ++i) {
        DecisionVector bits(cfg.N);
        for (double& b : bits) b = rng.uniform() < 0.5 ? 0.0 : 1.0;
        CHECK(p.evaluate(bits, 0.0) == p.evaluate(bits, 5.0));
    }
}

TEST_CASE("mnk tables are deterministic per (seed, step)") {
    MnkConfig cfg;
    MnkTables a = mnk_tables_at(cfg, 9, 3);
    MnkTables b = mnk_tables_at(cfg, 9, 3);
    CHECK(a.table == b.table);
    CHECK(a.neighbors == b.neighbors);
    MnkTables c = mnk_tables_at(cfg, 9, 4);
    CHECK(a.table != c.table);
    MnkTables d = mnk_tables_at(cfg, 10, 3);
    CHECK(a.table != d.table);
}

TEST_CASE("mnk full regeneration is reproducible across rebuilds") {
    MnkConfig cfg;
    cfg.N = 10;
    DynamicProblem p1 = mnk_make(cfg, Environment(31));
    DynamicProblem p2 = mnk_make(cfg, Environment(31));
    Rng r1(0), r2(0);
    p1.advance(r1);
    p2.advance(r2);
    for (std::size_t v = 0; v < (1u << cfg.N); ++v) {
        DecisionVector bits(cfg.N);
        for (std::size_t i = 0; i < cfg.N; ++i) bits[i] = (v >> i) & 1u ? 1.0 : 0.0;
        CHECK(p1.evaluate(bits, 1.0) == p2.evaluate(bits, 1.0));
    }
}

TEST_CASE("mnk validates bit-string length and config") {
    MnkConfig cfg;
    DynamicProblem p = mnk_make(cfg, Environment(1));
    CHECK_THROWS(p.evaluate(DecisionVector(5, 0.0), 0.0));
    MnkConfig bad;
    bad.K = 20;
    bad.N = 4;
    CHECK_THROWS_AS(mnk_tables_at(bad, 1, 0), std::invalid_argument);
}
