// qxfer: six-state BEC / flux-qubit state-transfer simulator.
//
//   qxfer <mode> [--config <path>] [--out <dir>] [--threads N] [--angular]
//
// Modes: transfer, avg-fidelity, ramp-sweep, estimate-params.
// Exit codes: 0 ok, 1 usage/config error, 2 integration failure, 3 I/O failure.

#include <cstdio>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "qxfer/run.hpp"

namespace {

void print_summary(const qxfer::RunSummary& summary) {
    std::printf("mode: %s\n", std::string(qxfer::mode_name(summary.mode)).c_str());
    for (const auto& [key, value] : summary.scalars)
        std::printf("%-28s %.17g\n", key.c_str(), value);
    for (const auto& f : summary.files_written)
        std::printf("wrote %s\n", f.string().c_str());
    std::printf("wall clock: %.2f s\n", summary.wall_seconds);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "Simulator of two-photon qubit transfer between a flux qubit and a "
        "BEC-Rydberg memory (six-state model)"};
    app.footer("Config document keys (flat key/value sections):\n" +
               qxfer::config_reference());

    std::string mode_arg;
    std::string config_path;
    std::string out_dir = ".";
    int threads = 1;
    bool angular = false;

    app.add_option("mode", mode_arg,
                   "transfer | avg-fidelity | ramp-sweep | estimate-params")
        ->required();
    app.add_option("--config", config_path,
                   "run configuration file (omit for the table1 defaults)");
    app.add_option("--out", out_dir, "output directory (default: .)");
    app.add_option("--threads", threads, "worker threads (default: 1)")
        ->check(CLI::PositiveNumber);
    app.add_flag("--angular", angular,
                 "treat physical frequencies as cycles/s (multiply rates by 2 pi "
                 "in estimate-params)");

    CLI11_PARSE(app, argc, argv);

    try {
        const qxfer::Mode mode = qxfer::mode_from_name(mode_arg);
        qxfer::RunConfig config;
        if (!config_path.empty()) {
            config = qxfer::parse_config_file(config_path, mode);
        } else {
            config = qxfer::parse_config("", mode);
        }
        config.out_dir = out_dir;
        config.threads = threads;
        config.angular = config.angular || angular;
        print_summary(qxfer::run(config));
        return 0;
    } catch (const qxfer::config_error& e) {
        std::cerr << "qxfer: error: " << e.what() << "\n";
        return 1;
    } catch (const qxfer::io_error& e) {
        std::cerr << "qxfer: error: " << e.what() << "\n";
        return 3;
    } catch (const qxfer::integration_error& e) {
        std::cerr << "qxfer: error: integration: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "qxfer: error: " << e.what() << "\n";
        return 1;
    }
}
