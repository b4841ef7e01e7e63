#pragma once

#include <optional>
#include <stdexcept>
#include <string>

#include "fluxmol/circuit.hpp"
#include "fluxmol/noise.hpp"

namespace fluxmol {

struct AntennaParams {
    double f_a = 0.0;               // GHz
    double kappa_over_2pi = 0.0;    // MHz
};

struct DeviceConfig {
    std::string name = "device";
    MoleculeParams params;
    int basis_dim = 30;
    FluxNoiseModel noise;
    std::optional<AntennaParams> antenna;
};

/// Raised on malformed or missing configuration input; `key` names the
/// offending entry.
struct ConfigError : std::runtime_error {
    ConfigError(const std::string& key_, const std::string& message)
        : std::runtime_error(message), key(key_) {}
    std::string key;
};

/// Parses the flat key = value format:
///   name = deviceA
///   basis_dim = 30
///   [params]
///   e_j = 9.4
///   ...
/// Sections: [params], [noise], [antenna]; '#' starts a comment.
DeviceConfig parse_device_config(const std::string& text);
DeviceConfig load_device_config(const std::string& path);

}  // namespace fluxmol
