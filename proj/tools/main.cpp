#include <cstdio>
#include <exception>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "sinrperc/config.hpp"
#include "sinrperc/io.hpp"
#include "sinrperc/runner.hpp"

using namespace sinrperc;

namespace {

// apply repeatable --set key=value overrides on top of the parsed file
std::map<std::string, std::string> with_overrides(const std::string& path,
                                                  const std::vector<std::string>& sets) {
    auto kv = parse_config_text(read_text_file(path));
    for (const auto& s : sets) {
        auto eq = s.find('=');
        if (eq == std::string::npos || eq == 0)
            throw ConfigError("--set expects key=value, got '" + s + "'");
        std::string key = s.substr(0, eq), value = s.substr(eq + 1);
        while (!key.empty() && key.back() == ' ') key.pop_back();
        while (!value.empty() && value.front() == ' ') value.erase(value.begin());
        kv[key] = value;
    }
    return kv;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"percolation experiments on SINR graphs"};
    app.set_version_flag("--version", std::string(TOOL_VERSION));
    app.require_subcommand(1);

    std::string config_path, replay_path;
    std::vector<std::string> sets;

    auto* run = app.add_subcommand("run", "run the experiment described by a config file");
    run->add_option("config", config_path, "config file (ini)")->required();
    run->add_option("--set", sets, "override a config key, e.g. --set run.seed=7")
        ->take_all();

    auto* validate = app.add_subcommand("validate", "check a config without running it");
    validate->add_option("config", config_path, "config file (ini)")->required();
    validate->add_option("--set", sets, "override a config key")->take_all();

    auto* replay = app.add_subcommand("replay",
                                      "re-run the config embedded in an output file and compare");
    replay->add_option("output", replay_path, "output file produced by run")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (run->parsed()) {
            ExperimentConfig cfg = config_from_map(with_overrides(config_path, sets));
            RunOutcome out = run_experiment(std::move(cfg));
            std::fputs(out.summary.c_str(), stdout);
            return out.exit_code;
        }
        if (validate->parsed()) {
            ExperimentConfig cfg = config_from_map(with_overrides(config_path, sets));
            validate_config(cfg);
            std::printf("ok: %s (%s, hash %s)\n", config_path.c_str(),
                        experiment_kind_name(cfg.kind),
                        hash_hex(cfg.canonical_text()).c_str());
            return 0;
        }
        ReplayOutcome out = replay_output(replay_path);
        std::printf("%s\n", out.summary.c_str());
        return out.match ? 0 : 1;
    } catch (const ConfigError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 2;
    } catch (const ValidationError& e) {
        std::fprintf(stderr, "validation error: %s\n", e.what());
        return 3;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
}
