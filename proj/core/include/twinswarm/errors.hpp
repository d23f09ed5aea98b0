#pragma once

#include <stdexcept>
#include <string>

namespace twinswarm {

/// Invalid scenario, batch, or config-file content. Messages name the
/// offending field and the violated bound.
class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A failure while simulating a valid configuration, e.g. a comms scheme
/// producing a corrupted report.
class SimulationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace twinswarm
