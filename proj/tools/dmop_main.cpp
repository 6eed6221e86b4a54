#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "dmop/scenario.hpp"

namespace {

std::string read_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw dmop::ScenarioError("cannot read scenario file: " + path);
    std::ostringstream os;
    os << f.rdbuf();
    return os.str();
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Dynamic multi-objective benchmark scenario runner"};
    app.require_subcommand(1);

    std::string scenario_path;
    std::string out_dir = "out";
    std::string mode_override;

    auto* run = app.add_subcommand("run", "Run a scenario file");
    run->add_option("scenario", scenario_path, "Scenario file")->required();
    run->add_option("--out", out_dir, "Output directory");
    run->add_option("--mode", mode_override, "Override mode: analyze|optimize|both")
        ->check(CLI::IsMember({"analyze", "optimize", "both"}));

    auto* validate = app.add_subcommand("validate", "Parse and validate a scenario file");
    validate->add_option("scenario", scenario_path, "Scenario file")->required();

    auto* list = app.add_subcommand("list-problems", "List available problem names");

    CLI11_PARSE(app, argc, argv);

    try {
        if (list->parsed()) {
            for (const auto& name : dmop::problem_names()) std::cout << name << "\n";
            return 0;
        }
        dmop::Scenario s = dmop::parse_scenario(read_file(scenario_path));
        if (validate->parsed()) {
            std::cout << dmop::scenario_manifest(s);
            return 0;
        }
        if (!mode_override.empty()) {
            s.mode = mode_override == "analyze"    ? dmop::RunMode::Analyze
                     : mode_override == "optimize" ? dmop::RunMode::Optimize
                                                   : dmop::RunMode::Both;
        }
        if (const char* env_out = std::getenv("DMOP_OUT"); env_out && out_dir == "out")
            out_dir = env_out;
        return dmop::run_scenario(s, out_dir);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
