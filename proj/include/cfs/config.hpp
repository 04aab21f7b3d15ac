#pragma once

#include "cfs/besselt.hpp"
#include "cfs/coeffs.hpp"
#include "cfs/currents.hpp"

#include <istream>
#include <stdexcept>
#include <string>
#include <vector>

namespace cfs {

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Square grid over [-extent eps, extent eps]^2 in (t, r).
struct GridSpec {
    int n_t = 50;
    int n_r = 50;
    double extent = 3.0;
};

struct RunConfig {
    Params params;
    QuadratureSpec quad;
    GridSpec grid;
    MaxwellMode mode = MaxwellMode::frozen;
    std::vector<Coefficient> coefficients{kAllCoefficients.begin(), kAllCoefficients.end()};
    std::vector<double> eps_list{0.01, 0.03, 0.1};
    bool tail_check = true;
    bool verbose = false;
    std::string output;
};

/// Sets one key. Throws ConfigError for unknown keys or malformed values.
void set_config_value(RunConfig& cfg, const std::string& key, const std::string& value);

/// key=value lines, '#' starts a comment. Throws ConfigError.
RunConfig parse_config(std::istream& in, RunConfig base = {});
RunConfig load_config(const std::string& path, RunConfig base = {});

/// Throws ConfigError if a value is out of range.
void validate_config(const RunConfig& cfg);

}  // namespace cfs
