#include <cstdint>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "l0lms/runner.hpp"

int main(int argc, char** argv) {
    CLI::App app{"l0sim - sparse system identification learning-curve simulator"};

    std::string preset_name;
    std::string config_path;
    std::string out_dir = ".";
    std::uint64_t seed = 0;
    long long runs = -1;
    bool linear = false;

    auto* preset_opt = app.add_option("--preset", preset_name,
                                      "built-in experiment (exp1, exp2 or exp3)")
                           ->check(CLI::IsMember({"exp1", "exp2", "exp3"}));
    auto* config_opt =
        app.add_option("--config", config_path, "experiment configuration file");
    preset_opt->excludes(config_opt);
    app.add_option("--out", out_dir, "output directory (created if missing)");
    app.add_option("--runs", runs, "override the Monte-Carlo ensemble size")
        ->check(CLI::PositiveNumber);
    app.add_option("--seed", seed, "ensemble base seed");
    app.add_flag("--linear", linear, "write linear MSD values instead of dB");

    CLI11_PARSE(app, argc, argv);

    if (preset_name.empty() == config_path.empty()) {
        std::cerr << "error: exactly one of --preset and --config must be given\n";
        return 2;
    }

    l0lms::RunRequest req;
    if (!preset_name.empty()) req.preset = l0lms::preset_from_name(preset_name);
    if (!config_path.empty()) req.config_path = config_path;
    req.output_dir = out_dir;
    if (runs > 0) req.runs_override = static_cast<std::size_t>(runs);
    req.seed = seed;
    req.linear = linear;
    return l0lms::run(req);
}
