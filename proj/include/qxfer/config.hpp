#pragma once

// Run configuration: a flat key/value document with sections
// [params] [schedule] [integrator] [quad] [sweep] [physical] [angles]
// plus an optional top-level `mode` key.  Unknown keys are rejected;
// every diagnostic carries the offending key path.

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "qxfer/protocol.hpp"

namespace qxfer {

enum class Mode { Transfer, AvgFidelity, RampSweep, EstimateParams };

std::string_view mode_name(Mode m);
Mode mode_from_name(std::string_view name);

class config_error : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

class io_error : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Sweep grid of nominal ramp times; required in ramp-sweep mode.
struct SweepSpec {
    double t_ramp_min = 0.0;
    double t_ramp_max = 0.0;
    int points = 0;
    bool log_spacing = false;

    std::vector<double> grid() const;
    void validate() const;
};

struct RunConfig {
    Mode mode = Mode::Transfer;
    SystemParams params;
    RampSchedule schedule;
    IntegratorConfig integrator;
    QuadratureSpec quad;
    BlochAngles angles;
    std::optional<SweepSpec> sweep;
    PhysicalInputs physical;
    bool optimize_hold = false;  ///< tune t_hold before running
    bool haar = false;           ///< Haar average instead of the flat measure
    bool angular = false;        ///< treat physical frequencies as cycles/s
    int threads = 1;
    std::filesystem::path out_dir = ".";
};

/// Parses the document and applies defaults.  `cli_mode`, when given, must
/// agree with any `mode` key present in the document.  Throws config_error.
RunConfig parse_config(const std::string& text,
                       std::optional<Mode> cli_mode = std::nullopt);

/// Reads a file into parse_config (io_error on unreadable paths).
RunConfig parse_config_file(const std::filesystem::path& path,
                            std::optional<Mode> cli_mode = std::nullopt);

/// Resolved-config echo: a document that parses back to exactly `config`.
std::string render_config(const RunConfig& config);

/// One line per key: "<section>.<key>  <domain>  <default>" for --help.
std::string config_reference();

}  // namespace qxfer
