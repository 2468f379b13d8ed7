#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "lde/scenario.hpp"
#include "lde/version.hpp"

namespace {

constexpr int exit_ok = 0;
constexpr int exit_config = 2;
constexpr int exit_numerical = 3;

int cmd_run(const std::string& config_path, const std::string& output_dir, int threads,
            bool strict) {
    lde::ScenarioOptions opts;
    opts.output_dir = output_dir;
    opts.threads = threads;
    opts.strict = strict;
    opts.progress = &std::cerr;
    try {
        const lde::RunReport report = lde::run_scenario_file(config_path, opts);
        std::cout << report.output_file.string() << "\n";
        if (!report.summary.empty())
            std::cerr << "lde: summary " << report.summary.dump() << "\n";
        return exit_ok;
    } catch (const lde::ConfigError& e) {
        std::cerr << "lde: " << e.what() << "\n";
        return exit_config;
    } catch (const std::exception& e) {
        std::cerr << "lde: numerical failure: " << e.what() << "\n";
        return exit_numerical;
    }
}

int cmd_validate(const std::string& config_path) {
    try {
        std::ifstream in(config_path, std::ios::binary);
        if (!in) {
            std::cerr << "lde: cannot read config file " << config_path << "\n";
            return exit_config;
        }
        std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
        lde::validate_config_text(text);
        std::cout << "ok\n";
        return exit_ok;
    } catch (const lde::ConfigError& e) {
        std::cerr << "lde: " << e.what() << "\n";
        return exit_config;
    } catch (const std::exception& e) {
        std::cerr << "lde: " << e.what() << "\n";
        return exit_numerical;
    }
}

int cmd_list_scenarios() {
    for (const auto& name : lde::scenario_names())
        std::cout << name << "\n";
    return exit_ok;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"long-distance entanglement toolkit for gapped spin chains"};
    app.set_version_flag("--version", lde::version_string);
    app.require_subcommand(1);

    std::string config_path;
    std::string output_dir = ".";
    int threads = 1;
    bool strict = false;

    CLI::App* run = app.add_subcommand("run", "run a scenario from a JSON config");
    run->add_option("config", config_path, "scenario config (JSON)")->required();
    run->add_option("--output", output_dir, "output directory (default: current)");
    run->add_option("--threads", threads, "worker threads for sweeps")->check(CLI::PositiveNumber);
    run->add_flag("--strict", strict, "fail when the validity verdict is 'invalid'");

    CLI::App* validate = app.add_subcommand("validate", "check a config against the schema");
    validate->add_option("config", config_path, "scenario config (JSON)")->required();

    app.add_subcommand("list-scenarios", "print the available scenario names");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? exit_ok : exit_config;
    }

    if (run->parsed())
        return cmd_run(config_path, output_dir, threads, strict);
    if (validate->parsed())
        return cmd_validate(config_path);
    return cmd_list_scenarios();
}
