#include "nvpulse/cli.hpp"

#include <CLI11.hpp>

#include <iostream>

int main(int argc, char** argv) {
    CLI::App app{"Noise-robust sinc-basis pulse synthesis and NV-register simulation"};
    app.require_subcommand(1);
    nvpulse::RunOptions opts;
    std::uint64_t seed = 0;
    for (const char* name : {"synthesize", "refine", "simulate", "survey-misalignment"}) {
        auto* sub = app.add_subcommand(name);
        sub->add_option("--config", opts.config_path, "JSON config file")->required();
        sub->add_option("--out", opts.out_dir, "output directory")->capture_default_str();
        sub->add_option("--seed", seed, "seed for the shot sampler (overrides the config)");
        sub->add_option("--threads", opts.threads, "worker threads")->check(CLI::PositiveNumber)->capture_default_str();
    }
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }
    auto* sub = app.get_subcommands().front();
    if (sub->count("--seed") > 0) opts.seed = seed;
    std::string message;
    const int code = nvpulse::run_subcommand(sub->get_name(), opts, message);
    (code == 0 ? std::cout : std::cerr) << message;
    return code;
}
