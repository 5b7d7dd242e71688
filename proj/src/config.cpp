#include "phfem/config.hpp"

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace phfem {

namespace {

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

std::string fnv1a_hex(const std::string& data) {
    uint64_t h = 1469598103934665603ull;
    for (unsigned char c : data) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[20];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

double to_double(const std::string& v, const std::string& key) {
    size_t pos = 0;
    double d = 0;
    try {
        d = std::stod(v, &pos);
    } catch (const std::exception&) {
        throw ConfigError("config key '" + key + "': expected a number, got '" + v + "'");
    }
    if (pos != v.size()) throw ConfigError("config key '" + key + "': trailing characters in '" + v + "'");
    return d;
}

int to_int(const std::string& v, const std::string& key) {
    const double d = to_double(v, key);
    const int i = static_cast<int>(d);
    if (d != i) throw ConfigError("config key '" + key + "': expected an integer, got '" + v + "'");
    return i;
}

bool to_bool(const std::string& v, const std::string& key) {
    if (v == "true" || v == "1" || v == "yes") return true;
    if (v == "false" || v == "0" || v == "no") return false;
    throw ConfigError("config key '" + key + "': expected a boolean, got '" + v + "'");
}

} // namespace

ExperimentConfig parse_config_text(const std::string& text, const std::string& origin) {
    std::map<std::string, std::string> kv;
    std::istringstream in(text);
    std::string line, section;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                throw ConfigError(origin + ":" + std::to_string(lineno) + ": unterminated section header");
            section = trim(line.substr(1, line.size() - 2));
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError(origin + ":" + std::to_string(lineno) + ": expected 'key = value'");
        const std::string key = (section.empty() ? "" : section + ".") + trim(line.substr(0, eq));
        kv[key] = trim(line.substr(eq + 1));
    }

    ExperimentConfig c;
    c.config_hash = fnv1a_hex(text);
    const auto take = [&](const std::string& key) {
        const auto it = kv.find(key);
        if (it == kv.end()) return std::string();
        const std::string v = it->second;
        kv.erase(it);
        return v;
    };
    c.experiment = take("experiment");
    static const char* known[] = {"beam-sim",  "beam-spectrum", "beam-convergence", "wave-sim",
                                  "wave-spectrum", "wave-convergence", "conservation"};
    if (std::find_if(std::begin(known), std::end(known),
                     [&](const char* k) { return c.experiment == k; }) == std::end(known))
        throw ConfigError("config key 'experiment': unknown experiment '" + c.experiment + "'");
    if (auto v = take("out"); !v.empty()) c.out_dir = v;
    if (auto v = take("plots"); !v.empty()) c.plots = to_bool(v, "plots");
    if (auto v = take("sigma"); !v.empty()) {
        c.sigma = to_double(v, "sigma");
        if (c.sigma != 1.0 && c.sigma != -1.0) throw ConfigError("config key 'sigma': must be +1 or -1");
    }
    if (auto v = take("bootstrap"); !v.empty()) {
        if (v == "half")
            c.bootstrap = BootstrapMode::HalfStep;
        else if (v == "printed")
            c.bootstrap = BootstrapMode::Printed;
        else
            throw ConfigError("config key 'bootstrap': must be 'half' or 'printed'");
    }
    if (auto v = take("integrator"); !v.empty()) {
        if (v == "monolithic")
            c.monolithic = true;
        else if (v == "staggered")
            c.monolithic = false;
        else
            throw ConfigError("config key 'integrator': must be 'staggered' or 'monolithic'");
    }
    if (auto v = take("modes"); !v.empty()) c.n_modes = to_int(v, "modes");
    if (auto v = take("vectors"); !v.empty()) c.vectors = to_bool(v, "vectors");

    if (auto v = take("beam.EI"); !v.empty()) c.beam.EI = to_double(v, "beam.EI");
    if (auto v = take("beam.rhoA"); !v.empty()) c.beam.rhoA = to_double(v, "beam.rhoA");
    if (auto v = take("beam.L"); !v.empty()) c.beam.L = to_double(v, "beam.L");
    if (auto v = take("beam.omega"); !v.empty()) c.beam.omega = to_double(v, "beam.omega");
    if (auto v = take("beam.n1"); !v.empty()) c.beam.n1 = to_int(v, "beam.n1");
    if (auto v = take("beam.n2"); !v.empty()) c.beam.n2 = to_int(v, "beam.n2");
    if (auto v = take("beam.dt"); !v.empty()) c.beam.dt = to_double(v, "beam.dt");
    if (auto v = take("beam.t_end"); !v.empty()) c.beam.t_end = to_double(v, "beam.t_end");
    if (auto v = take("wave.n"); !v.empty()) c.wave.n = to_int(v, "wave.n");
    if (auto v = take("wave.k"); !v.empty()) c.wave.k = to_int(v, "wave.k");
    if (auto v = take("wave.dt"); !v.empty()) c.wave.dt = to_double(v, "wave.dt");
    if (auto v = take("wave.t_end"); !v.empty()) c.wave.t_end = to_double(v, "wave.t_end");

    if (!kv.empty()) throw ConfigError("config: unknown key '" + kv.begin()->first + "'");
    c.beam.validate();
    c.wave.validate();
    return c;
}

ExperimentConfig parse_config(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw ConfigError("cannot open config file " + path);
    std::ostringstream ss;
    ss << f.rdbuf();
    return parse_config_text(ss.str(), path);
}

} // namespace phfem
