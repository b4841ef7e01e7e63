#include "fluxmol/config.hpp"

#include <charconv>
#include <fstream>
#include <map>
#include <sstream>

namespace fluxmol {

namespace {

std::string trim(const std::string& s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string::npos) return "";
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

double parse_double(const std::string& key, const std::string& value) {
    double out = 0.0;
    const char* begin = value.data();
    const char* end = begin + value.size();
    const auto [ptr, ec] = std::from_chars(begin, end, out);
    if (ec != std::errc() || ptr != end)
        throw ConfigError(key, "config: invalid numeric value for key '" + key + "': " + value);
    return out;
}

int parse_int(const std::string& key, const std::string& value) {
    int out = 0;
    const char* begin = value.data();
    const char* end = begin + value.size();
    const auto [ptr, ec] = std::from_chars(begin, end, out);
    if (ec != std::errc() || ptr != end)
        throw ConfigError(key, "config: invalid integer value for key '" + key + "': " + value);
    return out;
}

}  // namespace

DeviceConfig parse_device_config(const std::string& text) {
    std::map<std::string, std::string> entries;  // "section.key" -> value
    std::string section;
    std::istringstream stream(text);
    std::string line;
    int line_no = 0;
    while (std::getline(stream, line)) {
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                throw ConfigError(line, "config: malformed section header at line " +
                                            std::to_string(line_no));
            section = trim(line.substr(1, line.size() - 2));
            if (section != "params" && section != "noise" && section != "antenna")
                throw ConfigError(section, "config: unknown section '" + section + "'");
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError(line, "config: expected 'key = value' at line " +
                                        std::to_string(line_no));
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty() || value.empty())
            throw ConfigError(key, "config: empty key or value at line " + std::to_string(line_no));
        const std::string qualified = section.empty() ? key : section + "." + key;
        if (entries.count(qualified))
            throw ConfigError(key, "config: duplicate key '" + qualified + "'");
        entries[qualified] = value;
    }

    DeviceConfig config;
    auto take = [&entries](const std::string& qualified) -> std::optional<std::string> {
        auto it = entries.find(qualified);
        if (it == entries.end()) return std::nullopt;
        std::string value = it->second;
        entries.erase(it);
        return value;
    };
    auto require = [&take](const std::string& qualified) {
        auto value = take(qualified);
        if (!value)
            throw ConfigError(qualified, "config: missing required key '" + qualified + "'");
        return *value;
    };

    if (auto name = take("name")) config.name = *name;
    if (auto dim = take("basis_dim")) config.basis_dim = parse_int("basis_dim", *dim);

    config.params.e_j = parse_double("params.e_j", require("params.e_j"));
    config.params.e_c = parse_double("params.e_c", require("params.e_c"));
    config.params.e_l = parse_double("params.e_l", require("params.e_l"));
    if (auto alpha = take("params.alpha"))
        config.params.alpha = parse_double("params.alpha", *alpha);

    config.noise.a_com = parse_double("noise.a_com", require("noise.a_com"));
    config.noise.a_diff = parse_double("noise.a_diff", require("noise.a_diff"));
    if (auto f_ir = take("noise.f_ir")) config.noise.f_ir = parse_double("noise.f_ir", *f_ir);

    const auto f_a = take("antenna.f_a");
    const auto kappa = take("antenna.kappa_over_2pi");
    if (f_a.has_value() != kappa.has_value())
        throw ConfigError("antenna", "config: [antenna] requires both f_a and kappa_over_2pi");
    if (f_a) {
        AntennaParams antenna;
        antenna.f_a = parse_double("antenna.f_a", *f_a);
        antenna.kappa_over_2pi = parse_double("antenna.kappa_over_2pi", *kappa);
        if (!(antenna.f_a > 0.0) || !(antenna.kappa_over_2pi > 0.0))
            throw ConfigError("antenna.f_a", "config: antenna values must be positive");
        config.antenna = antenna;
    }

    if (!entries.empty())
        throw ConfigError(entries.begin()->first,
                          "config: unknown key '" + entries.begin()->first + "'");

    if (config.basis_dim < 2)
        throw ConfigError("basis_dim", "config: basis_dim must be >= 2");
    try {
        validate(config.params);
    } catch (const std::exception& e) {
        throw ConfigError("params", std::string("config: ") + e.what());
    }
    try {
        validate(config.noise);
    } catch (const std::exception& e) {
        throw ConfigError("noise", std::string("config: ") + e.what());
    }
    return config;
}

DeviceConfig load_device_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError(path, "config: cannot open file '" + path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_device_config(buffer.str());
}

}  // namespace fluxmol
