// Batch front end for the grenlab shared library.
//
//   grenlab run <config> --out <path> [--seed <u64>] [--threads <k>]
//   grenlab report <results.csv> --regressor {lognlogn|logn} --out <path>
//
// Exit codes: 0 success, 2 invalid configuration or data, 3 I/O failure.
#include <cstdint>
#include <cstdio>
#include <string>

#include <CLI11.hpp>

#include "grenlab/grenlab.h"

namespace {

int status_to_exit_code(grenlab_status status) {
    switch (status) {
        case GRENLAB_OK:
            return 0;
        case GRENLAB_ERR_IO:
            return 3;
        default:
            return 2;
    }
}

int finish(grenlab_status status) {
    if (status != GRENLAB_OK)
        std::fprintf(stderr, "grenlab: %s\n", grenlab_last_error());
    return status_to_exit_code(status);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Shape-constrained estimators and Monte Carlo rate experiments"};
    app.require_subcommand(1);

    std::string config_path, out_path;
    std::uint64_t seed = 0;
    bool has_seed = false;
    int threads = 1;
    auto* run = app.add_subcommand("run", "Run a configured experiment to a results CSV");
    run->add_option("config", config_path, "Configuration file")->required();
    run->add_option("--out", out_path, "Output CSV path")->required();
    run->add_option("--seed", seed, "Override the config seed")
        ->each([&](const std::string&) { has_seed = true; });
    run->add_option("--threads", threads, "Worker threads (default 1)");

    std::string results_path, report_out, regressor = "lognlogn";
    auto* report = app.add_subcommand("report", "Fit log-log rates from a results CSV");
    report->add_option("results", results_path, "Results CSV")->required();
    report->add_option("--regressor", regressor, "lognlogn (log((log n)/n)) or logn")
        ->check(CLI::IsMember({"lognlogn", "logn"}));
    report->add_option("--out", report_out, "Output CSV path")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    }

    if (run->parsed())
        return finish(grenlab_run_config(config_path.c_str(), out_path.c_str(),
                                         has_seed ? 1 : 0, seed, threads));
    return finish(grenlab_report(results_path.c_str(), regressor.c_str(),
                                 report_out.c_str()));
}
