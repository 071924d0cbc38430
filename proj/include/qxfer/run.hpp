#pragma once

// Executes a RunConfig: runs the selected experiment, writes the data files
// (trace.csv / sweep.csv / summary.json / resolved.cfg) into the output
// directory, and returns the scalar summary.  Identical configs produce
// byte-identical data files; the wall-clock time is returned to the caller
// but kept out of the files.

#include <map>

#include "qxfer/config.hpp"

namespace qxfer {

struct RunSummary {
    Mode mode = Mode::Transfer;
    std::map<std::string, double> scalars;  ///< flat, key-sorted
    std::string resolved_config;            ///< re-parsable echo
    std::vector<std::filesystem::path> files_written;
    double wall_seconds = 0.0;
};

RunSummary run(const RunConfig& config);

}  // namespace qxfer
