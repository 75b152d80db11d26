// config_file.hpp: Plain-text device/run description
//
//   [dots]
//   e11 = 1
//   e22 = 1
//   e12 = 0.5          ; or "re,im"
//
//   [left]             ; same keys for [right]
//   series = 0.2       ; or parallel = 0.2, or gamma = g11,g12,g22
//   W = 1
//   mu = 5
//   kT = 0.1
//
//   [run]
//   tau_min = 0.1
//   tau_max = 10
//   tau_steps = 100
//   grid_dt = 0.01
//   scenario = open-c3 ; closed-c3, closed-c4, open-c3, open-c4
//
// Text after ';' or '#' is a comment. A missing [left]/[right] section means
// a decoupled lead. Unknown keys are rejected.

#pragma once

#include <iosfwd>
#include <string>

#include "lgdot/sweep.hpp"

namespace lgdot {

struct RunSection {
    double tau_min{0.1};
    double tau_max{10.0};
    std::size_t tau_steps{100};
    double grid_dt{0.01};
    sweep::Scenario scenario{sweep::Scenario::OpenC3};
};

struct ConfigFile {
    DeviceConfig device;
    RunSection run;

    /// Sweep over the [run] tau range with a single curve labelled `label`.
    sweep::SweepSpec to_sweep(const std::string& label = "config") const;
};

/// ParameterError with the offending key on malformed input.
ConfigFile parse_config(std::istream& in);
ConfigFile parse_config_string(const std::string& text);
ConfigFile load_config(const std::string& path);

}  // namespace lgdot
