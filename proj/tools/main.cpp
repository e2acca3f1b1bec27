#include <CLI11.hpp>

#include <iostream>
#include <string>
#include <vector>

#include "lpflow/cli/commands.hpp"
#include "lpflow/cli/config.hpp"

int main(int argc, char** argv) {
    using lpflow::cli::RunConfig;
    CLI::App app{"Littlewood-Paley diagnostics and projected flow demos"};
    app.require_subcommand(0, 1);

    std::string config_path;
    std::string out = "lpflow-out";
    std::vector<std::string> sets;
    app.add_option("--config", config_path, "key=value config file (a persisted config.txt re-runs the same job)");
    app.add_option("--out", out, "output directory");
    auto* seed = app.add_option("--seed", "seed for random corpora (u64)");
    auto* grid = app.add_option("--grid", "grid as dxN or dxNxL");
    auto* lambda = app.add_option("--lambda", "lambda ladder start:factor:count");
    auto* mode = app.add_option("--mode", "trace mode weak|strong")->check(CLI::IsMember({"weak", "strong"}));
    app.add_option("--set", sets, "extra key=value overrides, repeatable");

    for (const auto& name : lpflow::cli::kCommands) {
        app.add_subcommand(name, "run the " + name + " diagnostic")->fallthrough();
    }

    CLI11_PARSE(app, argc, argv);

    try {
        RunConfig cfg = config_path.empty() ? RunConfig{} : RunConfig::load(config_path);
        if (!app.get_subcommands().empty()) cfg.set("command", app.get_subcommands().front()->get_name());
        if (*seed) cfg.set("seed", seed->as<std::string>());
        if (*grid) cfg.set("grid", grid->as<std::string>());
        if (*lambda) cfg.set("lambda", lambda->as<std::string>());
        if (*mode) cfg.set("mode", mode->as<std::string>());
        for (const auto& kv : sets) {
            const auto eq = kv.find('=');
            if (eq == std::string::npos) throw std::invalid_argument("--set expects key=value, got '" + kv + "'");
            cfg.set(kv.substr(0, eq), kv.substr(eq + 1));
        }
        if (!cfg.has("command")) {
            std::cerr << "no subcommand given and the config names none\n" << app.help();
            return 2;
        }
        const auto result = lpflow::cli::run_command(cfg, out, std::cout);
        for (const auto& f : result.failures) std::cerr << "failed: " << f << "\n";
        return result.exit_code();
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
