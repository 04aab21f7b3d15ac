#include "cfs/config.hpp"

#include <fstream>
#include <sstream>

namespace cfs {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

double to_double(const std::string& key, const std::string& v) {
    std::size_t pos = 0;
    double x = 0.0;
    try {
        x = std::stod(v, &pos);
    } catch (const std::exception&) {
        throw ConfigError("invalid number for " + key + ": '" + v + "'");
    }
    if (pos != v.size()) throw ConfigError("invalid number for " + key + ": '" + v + "'");
    return x;
}

int to_int(const std::string& key, const std::string& v) {
    std::size_t pos = 0;
    int x = 0;
    try {
        x = std::stoi(v, &pos);
    } catch (const std::exception&) {
        throw ConfigError("invalid integer for " + key + ": '" + v + "'");
    }
    if (pos != v.size()) throw ConfigError("invalid integer for " + key + ": '" + v + "'");
    return x;
}

bool to_bool(const std::string& key, const std::string& v) {
    if (v == "true" || v == "1" || v == "yes") return true;
    if (v == "false" || v == "0" || v == "no") return false;
    throw ConfigError("invalid boolean for " + key + ": '" + v + "'");
}

std::vector<std::string> split_list(const std::string& v) {
    std::vector<std::string> out;
    std::stringstream ss(v);
    std::string item;
    while (std::getline(ss, item, ','))
        if (auto t = trim(item); !t.empty()) out.push_back(t);
    return out;
}

}  // namespace

void set_config_value(RunConfig& cfg, const std::string& key, const std::string& value) {
    const std::string v = trim(value);
    if (key == "mass") cfg.params.mass = to_double(key, v);
    else if (key == "epsilon") cfg.params.epsilon = to_double(key, v);
    else if (key == "c") cfg.params.c = to_double(key, v);
    else if (key == "domain_scale") cfg.quad.domain_scale = to_double(key, v);
    else if (key == "rel_tol") cfg.quad.rel_tol = to_double(key, v);
    else if (key == "max_subdivisions") cfg.quad.max_subdivisions = to_int(key, v);
    else if (key == "enforce_tail") cfg.quad.enforce_tail = to_bool(key, v);
    else if (key == "tail_check") cfg.tail_check = to_bool(key, v);
    else if (key == "grid_n") cfg.grid.n_t = cfg.grid.n_r = to_int(key, v);
    else if (key == "grid_nt") cfg.grid.n_t = to_int(key, v);
    else if (key == "grid_nr") cfg.grid.n_r = to_int(key, v);
    else if (key == "grid_extent") cfg.grid.extent = to_double(key, v);
    else if (key == "verbose") cfg.verbose = to_bool(key, v);
    else if (key == "output") cfg.output = v;
    else if (key == "mode") {
        if (v == "frozen") cfg.mode = MaxwellMode::frozen;
        else if (v == "exact") cfg.mode = MaxwellMode::exact;
        else throw ConfigError("mode must be frozen or exact");
    } else if (key == "coefficients") {
        cfg.coefficients.clear();
        for (const auto& name : split_list(v)) {
            const auto c = parse_coefficient(name);
            if (!c) throw ConfigError("unknown coefficient '" + name + "'");
            cfg.coefficients.push_back(*c);
        }
    } else if (key == "eps_list") {
        cfg.eps_list.clear();
        for (const auto& x : split_list(v)) cfg.eps_list.push_back(to_double(key, x));
    } else {
        throw ConfigError("unknown config key '" + key + "'");
    }
}

RunConfig parse_config(std::istream& in, RunConfig base) {
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("line " + std::to_string(lineno) + ": expected key=value");
        set_config_value(base, trim(line.substr(0, eq)), line.substr(eq + 1));
    }
    return base;
}

RunConfig load_config(const std::string& path, RunConfig base) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read config file " + path);
    return parse_config(in, std::move(base));
}

void validate_config(const RunConfig& cfg) {
    try {
        cfg.params.validate();
        cfg.quad.validate();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
    if (cfg.grid.n_t < 1 || cfg.grid.n_r < 1) throw ConfigError("grid sizes must be positive");
    if (!(cfg.grid.extent > 0.0)) throw ConfigError("grid_extent must be positive");
    for (double e : cfg.eps_list)
        if (!(e > 0.0)) throw ConfigError("eps_list entries must be positive");
}

}  // namespace cfs
