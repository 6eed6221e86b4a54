#include "dmop/scenario.hpp"

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

#include "dmop/analysis.hpp"
#include "dmop/csv.hpp"
#include "dmop/optimizer.hpp"
#include "dmop/problems.hpp"

namespace dmop {

namespace fs = std::filesystem;

std::vector<std::string> problem_names() {
    return {"dsw", "dtlz2-dynamic", "moving-peaks", "mnk", "two-sphere", "pof-scaling"};
}

namespace {

const std::set<std::string> kCommonKeys = {"problem", "mode",  "seed", "tau_T", "s",
                                           "t0",      "t_end", "times", "grid", "eps",
                                           "budget",  "mu"};

// Problem-specific numeric keys with their defaults and allowed ranges.
struct ParamSpec {
    std::string key;
    double def;
    double lo;
    double hi;
};

const std::map<std::string, std::vector<ParamSpec>> kProblemParams = {
    {"dsw",
     {{"a11", 1, -100, 100},
      {"a12", 0, -100, 100},
      {"a21", 1, -100, 100},
      {"a22", 0, -100, 100},
      {"b1", 1, -100, 100},
      {"b2", 1, -100, 100},
      {"n", 2, 1, 8},
      {"corrected", 0, 0, 1},
      {"bound_lo", -5, -1e6, 1e6},
      {"bound_hi", 5, -1e6, 1e6}}},
    {"dtlz2-dynamic", {{"k", 2, 2, 6}, {"p", 1, 1, 16}}},
    {"moving-peaks",
     {{"n", 2, 1, 8},
      {"m", 3, 1, 64},
      {"window", 2, 1, 64},
      {"sigma_h", 0.5, 0, 100},
      {"sigma_w", 0.05, 0, 100},
      {"sigma_p", 0.1, 0, 100}}},
    {"mnk", {{"M", 2, 1, 8}, {"N", 12, 1, 24}, {"K", 2, 0, 12}, {"rho", 1, 0, 1},
             {"adjacent", 0, 0, 1}}},
    {"two-sphere", {{"n", 1, 1, 8}}},
    {"pof-scaling", {{"k", 2, 2, 6}, {"p", 1, 1, 16}}},
};

const std::map<std::string, std::set<std::string>> kProblemStringKeys = {
    {"dtlz2-dynamic", {"g_mode"}},
    {"moving-peaks", {"dependency"}},
};

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

double parse_number(const std::string& key, const std::string& value) {
    try {
        std::size_t pos = 0;
        double v = std::stod(value, &pos);
        if (pos != value.size()) throw std::invalid_argument("");
        return v;
    } catch (...) {
        throw ScenarioError("key '" + key + "': not a number: '" + value + "'");
    }
}

} // namespace

Scenario parse_scenario(const std::string& text) {
    std::map<std::string, std::string> kv;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ScenarioError("line " + std::to_string(lineno) + ": expected key=value");
        std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        if (key.empty())
            throw ScenarioError("line " + std::to_string(lineno) + ": empty key");
        if (kv.count(key))
            throw ScenarioError("line " + std::to_string(lineno) + ": duplicate key '" + key + "'");
        kv[key] = value;
    }

    auto problem_it = kv.find("problem");
    if (problem_it == kv.end()) throw ScenarioError("missing required key 'problem'");
    Scenario s;
    s.problem = problem_it->second;
    auto names = problem_names();
    if (std::find(names.begin(), names.end(), s.problem) == names.end())
        throw ScenarioError("key 'problem': unknown problem '" + s.problem + "'");

    // Strict key policy: only common keys plus this problem's keys.
    std::set<std::string> allowed = kCommonKeys;
    for (const auto& ps : kProblemParams.at(s.problem)) allowed.insert(ps.key);
    if (auto it = kProblemStringKeys.find(s.problem); it != kProblemStringKeys.end())
        allowed.insert(it->second.begin(), it->second.end());
    for (const auto& [key, value] : kv)
        if (!allowed.count(key)) throw ScenarioError("unknown key '" + key + "'");

    auto take = [&kv](const std::string& key) -> const std::string* {
        auto it = kv.find(key);
        return it == kv.end() ? nullptr : &it->second;
    };

    if (auto* v = take("mode")) {
        if (*v == "analyze")
            s.mode = RunMode::Analyze;
        else if (*v == "optimize")
            s.mode = RunMode::Optimize;
        else if (*v == "both")
            s.mode = RunMode::Both;
        else
            throw ScenarioError("key 'mode': must be analyze|optimize|both");
    }
    if (auto* v = take("seed")) {
        double d = parse_number("seed", *v);
        if (d < 0) throw ScenarioError("key 'seed': must be >= 0");
        s.seed = static_cast<std::uint64_t>(d);
    }
    if (auto* v = take("tau_T")) {
        double d = parse_number("tau_T", *v);
        if (d < 1) throw ScenarioError("key 'tau_T': must be >= 1");
        s.tau_T = static_cast<int>(d);
    }
    if (auto* v = take("s")) s.severity = parse_number("s", *v);
    if (auto* v = take("t0")) s.t0 = parse_number("t0", *v);
    if (auto* v = take("t_end")) s.t_end = parse_number("t_end", *v);
    if (s.t0 > s.t_end) throw ScenarioError("key 't_end': must be >= t0");
    if (auto* v = take("grid")) {
        double d = parse_number("grid", *v);
        if (d < 2) throw ScenarioError("key 'grid': must be >= 2");
        s.grid = static_cast<std::size_t>(d);
    }
    if (auto* v = take("eps")) {
        s.eps = parse_number("eps", *v);
        if (s.eps <= 0) throw ScenarioError("key 'eps': must be > 0");
    }
    if (auto* v = take("budget")) {
        double d = parse_number("budget", *v);
        if (d < 1) throw ScenarioError("key 'budget': must be >= 1");
        s.budget = static_cast<std::size_t>(d);
    }
    if (auto* v = take("mu")) {
        double d = parse_number("mu", *v);
        if (d < 2) throw ScenarioError("key 'mu': must be >= 2");
        s.mu = static_cast<std::size_t>(d);
    }
    if (auto* v = take("times")) {
        s.times.clear();
        std::istringstream ts(*v);
        std::string tok;
        while (std::getline(ts, tok, ','))
            s.times.push_back(parse_number("times", trim(tok)));
        if (s.times.size() < 2) throw ScenarioError("key 'times': need at least 2 values");
    }
    if (auto* v = take("g_mode")) {
        if (*v != "oneplus" && *v != "product")
            throw ScenarioError("key 'g_mode': must be oneplus|product");
        s.g_mode = *v;
    }
    if (auto* v = take("dependency")) {
        if (*v != "param" && *v != "func")
            throw ScenarioError("key 'dependency': must be param|func");
        s.dependency = *v;
    }

    for (const auto& ps : kProblemParams.at(s.problem)) {
        double val = ps.def;
        if (auto* v = take(ps.key)) val = parse_number(ps.key, *v);
        if (val < ps.lo || val > ps.hi)
            throw ScenarioError("key '" + ps.key + "': out of range [" + format_double(ps.lo) +
                                ", " + format_double(ps.hi) + "]");
        s.params[ps.key] = val;
    }
    return s;
}

DynamicProblem build_problem(const Scenario& s) {
    Environment env(s.seed);
    TimeModel tm;
    tm.tau_T = s.tau_T;
    tm.severity = s.severity;
    tm.t0 = s.t0;
    tm.t_end = s.t_end;

    DynamicProblem p = [&]() -> DynamicProblem {
        if (s.problem == "dsw") {
            DswConfig cfg;
            cfg.a11 = s.params.at("a11");
            cfg.a12 = s.params.at("a12");
            cfg.a21 = s.params.at("a21");
            cfg.a22 = s.params.at("a22");
            cfg.b1 = s.params.at("b1");
            cfg.b2 = s.params.at("b2");
            cfg.n = static_cast<std::size_t>(s.params.at("n"));
            cfg.corrected = s.params.at("corrected") != 0.0;
            cfg.bound_lo = s.params.at("bound_lo");
            cfg.bound_hi = s.params.at("bound_hi");
            cfg.severity = s.severity;
            cfg.tau_T = s.tau_T;
            return dsw_make(cfg, env);
        }
        if (s.problem == "dtlz2-dynamic") {
            Dtlz2DynConfig cfg;
            cfg.k = static_cast<std::size_t>(s.params.at("k"));
            cfg.p = static_cast<std::size_t>(s.params.at("p"));
            cfg.g_mode = s.g_mode == "product" ? Dtlz2GMode::Product : Dtlz2GMode::OnePlusG;
            cfg.severity = s.severity;
            cfg.tau_T = s.tau_T;
            return dtlz2_dynamic_make(cfg, env);
        }
        if (s.problem == "moving-peaks") {
            std::size_t n = static_cast<std::size_t>(s.params.at("n"));
            Bounds bounds = Bounds::uniform(n, 0.0, 10.0);
            Rng peak_rng = Rng::derive(s.seed, "peaks");
            PeakSet peaks = random_peak_set(static_cast<std::size_t>(s.params.at("m")), bounds,
                                            peak_rng, s.params.at("sigma_h"),
                                            s.params.at("sigma_w"), s.params.at("sigma_p"));
            PeakDependency dep = s.dependency == "func" ? PeakDependency::StateFunc
                                                        : PeakDependency::StateParam;
            return moving_peaks_make(std::move(peaks), std::move(bounds), dep,
                                     static_cast<std::size_t>(s.params.at("window")), env);
        }
        if (s.problem == "mnk") {
            MnkConfig cfg;
            cfg.M = static_cast<std::size_t>(s.params.at("M"));
            cfg.N = static_cast<std::size_t>(s.params.at("N"));
            cfg.K = static_cast<std::size_t>(s.params.at("K"));
            cfg.rho = s.params.at("rho");
            cfg.adjacent_neighbors = s.params.at("adjacent") != 0.0;
            return mnk_make(cfg, env);
        }
        if (s.problem == "two-sphere")
            return two_sphere_make(static_cast<std::size_t>(s.params.at("n")), 0.0, 3.0, env);
        if (s.problem == "pof-scaling")
            return pof_scaling_make(static_cast<std::size_t>(s.params.at("k")),
                                    static_cast<std::size_t>(s.params.at("p")), s.severity,
                                    s.tau_T, env);
        throw ScenarioError("unknown problem '" + s.problem + "'");
    }();
    p.set_time_model(tm);
    return p;
}

std::string scenario_manifest(const Scenario& s) {
    std::ostringstream os;
    os << "problem=" << s.problem << "\n";
    os << "mode=" << (s.mode == RunMode::Analyze ? "analyze"
                      : s.mode == RunMode::Optimize ? "optimize" : "both")
       << "\n";
    os << "seed=" << s.seed << "\n";
    os << "tau_T=" << s.tau_T << "\n";
    os << "s=" << format_double(s.severity) << "\n";
    os << "t0=" << format_double(s.t0) << "\n";
    os << "t_end=" << format_double(s.t_end) << "\n";
    os << "times=";
    for (std::size_t i = 0; i < s.times.size(); ++i)
        os << (i ? "," : "") << format_double(s.times[i]);
    os << "\n";
    os << "grid=" << s.grid << "\n";
    os << "eps=" << (s.eps > 0 ? format_double(s.eps) : std::string("auto")) << "\n";
    os << "budget=" << s.budget << "\n";
    os << "mu=" << s.mu << "\n";
    if (s.problem == "dtlz2-dynamic") os << "g_mode=" << s.g_mode << "\n";
    if (s.problem == "moving-peaks") os << "dependency=" << s.dependency << "\n";
    for (const auto& [k, v] : s.params) os << k << "=" << format_double(v) << "\n";
    return os.str();
}

int run_scenario(const Scenario& s, const std::string& out_dir) {
    std::vector<fs::path> written;
    try {
        fs::create_directories(out_dir);
        auto open = [&](const std::string& name) {
            fs::path path = fs::path(out_dir) / name;
            written.push_back(path);
            std::ofstream f(path, std::ios::binary);
            if (!f) throw ScenarioError("cannot write " + path.string());
            return f;
        };

        DynamicProblem problem = build_problem(s);

        if (s.mode == RunMode::Analyze || s.mode == RunMode::Both) {
            double eps = s.eps > 0 ? s.eps : default_change_eps(problem.bounds(), s.grid);
            ChangeReport report = classify_change(problem, s.times, s.grid, eps);
            {
                auto f = open("fronts.csv");
                std::size_t n = problem.dimension();
                std::size_t k = problem.objectives();
                f << "t";
                for (std::size_t i = 1; i <= n; ++i) f << ",x_" << i;
                for (std::size_t i = 1; i <= k; ++i) f << ",f_" << i;
                f << "\n";
                for (const auto& snap : report.snapshots)
                    for (std::size_t r = 0; r < snap.pos.size(); ++r) {
                        f << format_double(snap.t);
                        for (double v : snap.pos[r]) f << "," << format_double(v);
                        for (double v : snap.pof[r]) f << "," << format_double(v);
                        f << "\n";
                    }
            }
            {
                auto f = open("classification.csv");
                write_classification_csv(f, order_of(problem), report);
            }
        }

        if (s.mode == RunMode::Optimize || s.mode == RunMode::Both) {
            EaConfig cfg;
            cfg.budget = s.budget;
            cfg.mu = s.mu;
            RunTimeline timeline = run_dynamic_ea(problem, cfg, Rng::derive(s.seed, "ea"));
            auto f = open("timeline.csv");
            timeline.write_csv(f);
        }

        {
            auto f = open("manifest.txt");
            f << scenario_manifest(s);
            auto now = std::chrono::system_clock::now();
            f << "completed_unix="
              << std::chrono::duration_cast<std::chrono::seconds>(now.time_since_epoch()).count()
              << "\n";
        }
        return 0;
    } catch (const std::exception& e) {
        for (const auto& path : written) {
            std::error_code ec;
            fs::remove(path, ec);
        }
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}

} // namespace dmop
