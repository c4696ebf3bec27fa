#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "scalevar/cli.hpp"

int main(int argc, char** argv) {
    CLI::App app{"scalevar: scale-calculus experiment runner"};
    app.require_subcommand(1);

    std::string config;
    std::vector<std::string> overrides;
    CLI::App* run = app.add_subcommand("run", "Run the experiment described by a JSON config");
    run->add_option("config", config, "Path to the config file")->required();
    run->add_option("--set", overrides, "Override a config field, e.g. --set scale.epsilon=0.002");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : scalevar::cli::kValidationError;
    }
    return scalevar::cli::run(config, overrides, std::cout, std::cerr);
}
