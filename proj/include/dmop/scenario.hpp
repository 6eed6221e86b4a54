#ifndef DMOP_SCENARIO_HPP
#define DMOP_SCENARIO_HPP

#include <map>
#include <string>
#include <vector>

#include "dmop/dynamics.hpp"

namespace dmop {

enum class RunMode { Analyze, Optimize, Both };

/// Declarative run description parsed from a flat key=value file.
struct Scenario {
    std::string problem;
    RunMode mode = RunMode::Both;
    std::uint64_t seed = 42;
    int tau_T = 10;
    double severity = 1.0;
    double t0 = 0.0;
    double t_end = 10.0;
    std::vector<double> times = {0.0, 1.0};
    std::size_t grid = 101;
    double eps = -1.0; // < 0: use the grid-derived default
    std::size_t budget = 20000;
    std::size_t mu = 100;

    // Problem-specific parameters, already validated.
    std::map<std::string, double> params;
    std::string g_mode = "oneplus";      // dtlz2-dynamic
    std::string dependency = "param";    // moving-peaks
};

struct ScenarioError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Names accepted by the problem= key.
std::vector<std::string> problem_names();

/// Parse and validate. Unknown keys are a hard error; errors carry the
/// line number or the offending key.
Scenario parse_scenario(const std::string& text);

/// Construct the configured problem instance.
DynamicProblem build_problem(const Scenario& s);

/// The fully resolved configuration, one key=value per line.
std::string scenario_manifest(const Scenario& s);

/// Execute and write fronts.csv / classification.csv / timeline.csv /
/// manifest.txt into out_dir. Partial files are removed on failure.
/// Returns the process exit status.
int run_scenario(const Scenario& s, const std::string& out_dir);

} // namespace dmop

#endif
